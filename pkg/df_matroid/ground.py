"""
Ground sets, set systems and bipartite matchings.

Subsets of a ground set ``{0, ..., n-1}`` are stored as integer bit masks so
that the exhaustive oracles can sweep ``2**n`` subsets cheaply.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from .exceptions import (
    ElementOutOfRangeError,
    GroundSizeError,
    InvalidPresentationError,
    NoTransversalError,
)
from .settings import api_settings
from .utils import bits, popcount

logger = logging.getLogger(__name__)


def check_ground_size(ground_size: int) -> None:
    if ground_size < 0 or ground_size > int(api_settings.MAX_GROUND_SIZE):
        raise GroundSizeError(
            f"ground size {ground_size} is outside [0, {api_settings.MAX_GROUND_SIZE}]"
        )


def check_element(ground_size: int, element: int) -> None:
    if not 0 <= element < ground_size:
        raise ElementOutOfRangeError(
            f"element {element} is outside [0, {ground_size})"
        )


@dataclass(frozen=True)
class ElementSet:
    ground_size: int
    mask: int = 0

    def __post_init__(self) -> None:
        check_ground_size(self.ground_size)
        if self.mask < 0 or self.mask >> self.ground_size:
            raise ElementOutOfRangeError(
                f"set {bits(self.mask)} is not inside a ground set of size {self.ground_size}"
            )

    @classmethod
    def of(cls, ground_size: int, elements: Iterable[int]) -> "ElementSet":
        mask = 0
        for element in elements:
            check_element(ground_size, element)
            mask |= 1 << element
        return cls(ground_size, mask)

    @classmethod
    def full(cls, ground_size: int) -> "ElementSet":
        return cls(ground_size, (1 << ground_size) - 1)

    @classmethod
    def empty(cls, ground_size: int) -> "ElementSet":
        return cls(ground_size, 0)

    def _coerce(self, other: "ElementSet") -> int:
        if other.ground_size != self.ground_size:
            raise GroundSizeError(
                f"cannot combine sets over ground sizes {self.ground_size} and {other.ground_size}"
            )
        return other.mask

    def __iter__(self) -> Iterator[int]:
        return iter(bits(self.mask))

    def __len__(self) -> int:
        return popcount(self.mask)

    def __bool__(self) -> bool:
        return bool(self.mask)

    def __contains__(self, element: object) -> bool:
        return isinstance(element, int) and 0 <= element < self.ground_size and bool(
            self.mask >> element & 1
        )

    def __or__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.ground_size, self.mask | self._coerce(other))

    def __and__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.ground_size, self.mask & self._coerce(other))

    def __sub__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.ground_size, self.mask & ~self._coerce(other))

    def __invert__(self) -> "ElementSet":
        return ElementSet(self.ground_size, ~self.mask & ((1 << self.ground_size) - 1))

    def __le__(self, other: "ElementSet") -> bool:
        return self.mask & ~self._coerce(other) == 0

    def __lt__(self, other: "ElementSet") -> bool:
        return self <= other and self.mask != other.mask

    def complement(self) -> "ElementSet":
        return ~self

    def add(self, element: int) -> "ElementSet":
        check_element(self.ground_size, element)
        return ElementSet(self.ground_size, self.mask | 1 << element)

    def discard(self, element: int) -> "ElementSet":
        check_element(self.ground_size, element)
        return ElementSet(self.ground_size, self.mask & ~(1 << element))

    @property
    def sort_key(self) -> Tuple[int, int]:
        return popcount(self.mask), self.mask

    def __str__(self) -> str:
        return "{" + ",".join(str(e) for e in self) + "}"


@dataclass(frozen=True)
class SetSystem:
    """Ordered multiset of subsets; position ``j`` is the set index."""

    ground_size: int
    sets: Tuple[ElementSet, ...] = ()
    names: Tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        check_ground_size(self.ground_size)
        for member in self.sets:
            if member.ground_size != self.ground_size:
                raise GroundSizeError(
                    f"set {member} is over ground size {member.ground_size}, "
                    f"system is over {self.ground_size}"
                )
        if not self.names:
            object.__setattr__(
                self, "names", tuple(f"A{j}" for j in range(len(self.sets)))
            )
        elif len(self.names) != len(self.sets):
            raise InvalidPresentationError("one name per set is required")

    @classmethod
    def of(
        cls,
        ground_size: int,
        sets: Iterable[Iterable[int]],
        names: Sequence[str] = (),
    ) -> "SetSystem":
        return cls(
            ground_size,
            tuple(ElementSet.of(ground_size, members) for members in sets),
            tuple(names),
        )

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self) -> Iterator[ElementSet]:
        return iter(self.sets)

    def __getitem__(self, index: int) -> ElementSet:
        return self.sets[index]

    @property
    def masks(self) -> Tuple[int, ...]:
        return tuple(member.mask for member in self.sets)

    def union(self) -> ElementSet:
        mask = 0
        for member in self.sets:
            mask |= member.mask
        return ElementSet(self.ground_size, mask)

    def select(self, indices: Iterable[int]) -> "SetSystem":
        chosen = list(indices)
        return SetSystem(
            self.ground_size,
            tuple(self.sets[j] for j in chosen),
            tuple(self.names[j] for j in chosen),
        )

    def delete_element(self, element: int) -> "SetSystem":
        """Drop ``element`` from the ground set and every set, shifting higher indices down."""
        check_element(self.ground_size, element)
        low = (1 << element) - 1

        def shift(mask: int) -> int:
            return (mask & low) | (mask >> (element + 1) << element)

        return SetSystem(
            self.ground_size - 1,
            tuple(
                ElementSet(self.ground_size - 1, shift(member.mask))
                for member in self.sets
            ),
            self.names,
        )


@dataclass(frozen=True)
class Matching:
    """Partial injection from elements to set indices."""

    pairs: Tuple[Tuple[int, int], ...] = ()

    @property
    def size(self) -> int:
        return len(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def as_dict(self) -> Dict[int, int]:
        return dict(self.pairs)

    def set_of(self, element: int) -> Optional[int]:
        return self.as_dict().get(element)

    def element_of(self, set_index: int) -> Optional[int]:
        for element, j in self.pairs:
            if j == set_index:
                return element
        return None

    @property
    def elements_mask(self) -> int:
        mask = 0
        for element, _j in self.pairs:
            mask |= 1 << element
        return mask

    @property
    def set_indices(self) -> Tuple[int, ...]:
        return tuple(sorted(j for _e, j in self.pairs))


@dataclass(frozen=True)
class HallViolation:
    """Set indices ``K`` whose union has fewer than ``len(K)`` elements."""

    indices: Tuple[int, ...]
    union: ElementSet

    @property
    def deficiency(self) -> int:
        return len(self.indices) - len(self.union)


class _Matcher:
    """
    Augmenting-path matching driven by the sets.

    Each set in ascending order first takes its lowest free element and only
    otherwise searches for an augmenting path, scanning elements ascending.
    """

    def __init__(self, masks: Sequence[int], allowed: int):
        self.masks = [mask & allowed for mask in masks]
        self.owner: Dict[int, int] = {}
        self.chosen: Dict[int, int] = {}

    def _augment(self, j: int, visited: Set[int]) -> bool:
        for element in bits(self.masks[j]):
            if element in visited:
                continue
            visited.add(element)
            holder = self.owner.get(element)
            if holder is None or self._augment(holder, visited):
                self.owner[element] = j
                self.chosen[j] = element
                return True
        return False

    def place(self, j: int) -> Optional[List[int]]:
        """Match set ``j``; return the alternating tree's set indices on failure."""
        for element in bits(self.masks[j]):
            if element not in self.owner:
                self.owner[element] = j
                self.chosen[j] = element
                return None
        visited: Set[int] = set()
        if self._augment(j, visited):
            return None
        return sorted({j, *(self.owner[element] for element in visited)})

    def matching(self) -> Matching:
        return Matching(tuple(sorted(self.owner.items())))


def max_matching(system: SetSystem, restrict_to: Optional[ElementSet] = None) -> Matching:
    allowed = (
        (1 << system.ground_size) - 1 if restrict_to is None else restrict_to.mask
    )
    matcher = _Matcher(system.masks, allowed)
    for j in range(len(system)):
        matcher.place(j)
    return matcher.matching()


def matching_size(masks: Sequence[int], allowed: int) -> int:
    """Size of a maximum matching between ``allowed`` and ``masks``."""
    matcher = _Matcher(masks, allowed)
    for j in range(len(masks)):
        matcher.place(j)
    return len(matcher.owner)


def _deficient_subfamily(masks: Sequence[int], indices: Sequence[int]) -> Optional[List[int]]:
    sub = [masks[j] for j in indices]
    matcher = _Matcher(sub, -1)
    for position in range(len(sub)):
        tree = matcher.place(position)
        if tree is not None:
            return [indices[p] for p in tree]
    return None


def hall_check(system: SetSystem) -> Optional[HallViolation]:
    """Return ``None`` when the system has a transversal, else an inclusion-minimal violation."""
    masks = system.masks
    violating = _deficient_subfamily(masks, list(range(len(masks))))
    if violating is None:
        return None
    # Hall's condition is inherited by subfamilies, so K is minimal once
    # every K - k satisfies it.
    shrinking = True
    while shrinking:
        shrinking = False
        for k in violating:
            rest = [j for j in violating if j != k]
            smaller = _deficient_subfamily(masks, rest)
            if smaller is not None:
                violating = smaller
                shrinking = True
                break
    union = 0
    for j in violating:
        union |= masks[j]
    return HallViolation(tuple(violating), ElementSet(system.ground_size, union))


def transversal_of(system: SetSystem) -> Matching:
    matching = max_matching(system)
    if matching.size == len(system):
        return matching
    violation = hall_check(system)
    assert violation is not None
    logger.debug("no transversal, Hall violation at %s", violation.indices)
    raise NoTransversalError(
        f"sets {list(violation.indices)} cover only {len(violation.union)} elements",
        extra_data={"violation": violation},
    )
