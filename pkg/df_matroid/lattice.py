"""
Cyclic flats, their lattice, and the beta/gamma function family.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .ground import ElementSet
from .matroids import Matroid
from .utils import check_oracle_limit, popcount

logger = logging.getLogger(__name__)


def _sort_key(mask: int) -> Tuple[int, int]:
    return popcount(mask), mask


@dataclass(frozen=True)
class CyclicFlat:
    flat: ElementSet
    rank: int
    gamma: Optional[int] = None

    @property
    def mask(self) -> int:
        return self.flat.mask

    @property
    def nullity(self) -> int:
        return len(self.flat) - self.rank


@dataclass(frozen=True)
class CyclicFlatFamily:
    """Cyclic flats ordered by ``(size, mask)``; ``gamma`` is optional per record."""

    ground_size: int
    flats: Tuple[CyclicFlat, ...] = field(default=())

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.flats, key=lambda record: _sort_key(record.mask)))
        object.__setattr__(self, "flats", ordered)

    @classmethod
    def build(
        cls,
        ground_size: int,
        records: Iterable[Tuple[Iterable[int], int, Optional[int]]],
    ) -> "CyclicFlatFamily":
        return cls(
            ground_size,
            tuple(
                CyclicFlat(ElementSet.of(ground_size, members), rank, gamma)
                for members, rank, gamma in records
            ),
        )

    @classmethod
    def from_masks(
        cls,
        matroid: Matroid,
        masks: Iterable[int],
        gammas: Optional[Dict[int, int]] = None,
    ) -> "CyclicFlatFamily":
        return cls(
            matroid.ground_size,
            tuple(
                CyclicFlat(
                    matroid.element_set(mask),
                    matroid.rank_mask(mask),
                    None if gammas is None else gammas[mask],
                )
                for mask in set(masks)
            ),
        )

    def __iter__(self) -> Iterator[CyclicFlat]:
        return iter(self.flats)

    def __len__(self) -> int:
        return len(self.flats)

    @property
    def masks(self) -> List[int]:
        return [record.mask for record in self.flats]

    def sets(self) -> List[ElementSet]:
        return [record.flat for record in self.flats]

    def get(self, subset: ElementSet) -> Optional[CyclicFlat]:
        for record in self.flats:
            if record.mask == subset.mask:
                return record
        return None

    def gamma_total(self) -> int:
        return sum(record.gamma or 0 for record in self.flats)


class CyclicFlatLattice:
    """
    The cyclic flats of a matroid with rank, gamma and beta tables.

    Enumeration is exhaustive, so construction is refused above the oracle
    limit.
    """

    def __init__(self, matroid: Matroid, limit: Optional[int] = None):
        check_oracle_limit(matroid.ground_size, limit)
        self.matroid = matroid
        self.masks: List[int] = sorted(
            (
                mask
                for mask in range(1 << matroid.ground_size)
                if matroid.is_cyclic_flat_mask(mask)
            ),
            key=_sort_key,
        )
        self._gamma: Optional[Dict[int, int]] = None
        self._beta: Optional[Dict[int, int]] = None
        logger.debug(
            "%r has %d cyclic flats", matroid, len(self.masks)
        )

    @property
    def bottom(self) -> int:
        return self.masks[0]

    @property
    def top(self) -> int:
        return self.masks[-1]

    @property
    def gamma_table(self) -> Dict[int, int]:
        if self._gamma is None:
            table: Dict[int, int] = {}
            for mask in self.masks:
                table[mask] = self._gamma_of(mask, table)
            self._gamma = table
        return self._gamma

    @property
    def beta_table(self) -> Dict[int, int]:
        if self._beta is None:
            table: Dict[int, int] = {}
            for mask in reversed(self.masks):
                table[mask] = self._beta_of(mask, table)
            self._beta = table
        return self._beta

    def _gamma_of(self, mask: int, table: Dict[int, int]) -> int:
        value = self.matroid.nullity_mask(mask)
        for inner, inner_gamma in table.items():
            if inner != mask and inner & ~mask == 0:
                value -= inner_gamma
        return value

    def _beta_of(self, mask: int, table: Dict[int, int]) -> int:
        matroid = self.matroid
        value = matroid.rank_mask(matroid.ground_mask) - matroid.rank_mask(mask)
        for outer, outer_beta in table.items():
            if outer != mask and mask & ~outer == 0:
                value -= outer_beta
        return value

    def gamma(self, mask: int) -> int:
        return self._gamma_of(mask, self.gamma_table)

    def beta(self, mask: int) -> int:
        return self._beta_of(mask, self.beta_table)

    def family(self, with_gamma: bool = True) -> CyclicFlatFamily:
        return CyclicFlatFamily.from_masks(
            self.matroid, self.masks, self.gamma_table if with_gamma else None
        )

    def join(self, first: int, second: int) -> int:
        return self.matroid.closure_mask(first | second)

    def meet(self, first: int, second: int) -> int:
        common = first & second
        return common & ~self.matroid.coloops_mask(common)

    def join_all(self, masks: Sequence[int]) -> int:
        union = 0
        for mask in masks:
            union |= mask
        return self.matroid.closure_mask(union)

    def meet_all(self, masks: Sequence[int]) -> int:
        if not masks:
            return self.top
        common = self.matroid.ground_mask
        for mask in masks:
            common &= mask
        return common & ~self.matroid.coloops_mask(common)


def cyclic_flat_lattice(matroid: Matroid, limit: Optional[int] = None) -> CyclicFlatLattice:
    """Return the lattice of ``matroid``, computed once per matroid."""
    if matroid._lattice is not None:
        check_oracle_limit(matroid.ground_size, limit)
    else:
        matroid._lattice = CyclicFlatLattice(matroid, limit)
    return matroid._lattice


def enumerate_cyclic_flats(matroid: Matroid, limit: Optional[int] = None) -> CyclicFlatFamily:
    return cyclic_flat_lattice(matroid, limit).family(with_gamma=False)


def max_cyclic_subset(matroid: Matroid, subset: ElementSet) -> ElementSet:
    return subset - matroid.coloops_of_restriction(subset)


def _as_cyclic_flat(matroid: Matroid, mask: int) -> CyclicFlat:
    return CyclicFlat(matroid.element_set(mask), matroid.rank_mask(mask))


def join(matroid: Matroid, first: ElementSet, second: ElementSet) -> CyclicFlat:
    return _as_cyclic_flat(matroid, matroid.closure_mask(first.mask | second.mask))


def meet(matroid: Matroid, first: ElementSet, second: ElementSet) -> CyclicFlat:
    common = first & second
    return _as_cyclic_flat(matroid, max_cyclic_subset(matroid, common).mask)


@dataclass(frozen=True)
class AxiomReport:
    ok: bool
    axiom: Optional[str] = None
    first: Optional[ElementSet] = None
    second: Optional[ElementSet] = None
    message: str = ""

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        pair = f"{self.first}" if self.second is None else f"{self.first}, {self.second}"
        return f"{self.axiom} fails at {pair}: {self.message}"


def _family_bound(candidates: Sequence[int], lower: bool) -> Optional[int]:
    """The unique least (or greatest) member of ``candidates``, if there is one."""
    for candidate in candidates:
        if lower and all(candidate & ~other == 0 for other in candidates):
            return candidate
        if not lower and all(other & ~candidate == 0 for other in candidates):
            return candidate
    return None


def validate_axioms(family: CyclicFlatFamily) -> AxiomReport:
    """Check that ``family`` with its ranks is the cyclic flat lattice of some matroid."""
    n = family.ground_size
    records = list(family)
    masks = [record.mask for record in records]
    ranks = {record.mask: record.rank for record in records}

    def flat(mask: int) -> ElementSet:
        return ElementSet(n, mask)

    if len(set(masks)) != len(masks):
        return AxiomReport(False, "Z1", message="family contains repeated sets")
    if not records:
        return AxiomReport(False, "Z1", message="family is empty")

    joins: Dict[Tuple[int, int], int] = {}
    meets: Dict[Tuple[int, int], int] = {}
    for i, first in enumerate(masks):
        for second in masks[i:]:
            upper = [m for m in masks if (first | second) & ~m == 0]
            lower = [m for m in masks if m & ~(first & second) == 0]
            least = _family_bound(upper, lower=True)
            greatest = _family_bound(lower, lower=False)
            if least is None or greatest is None:
                return AxiomReport(
                    False,
                    "Z1",
                    flat(first),
                    flat(second),
                    "pair has no join or no meet in the family",
                )
            joins[first, second] = least
            meets[first, second] = greatest

    bottom = _family_bound(masks, lower=True)
    assert bottom is not None
    if ranks[bottom] != 0:
        return AxiomReport(
            False, "Z2", flat(bottom), message=f"bottom has rank {ranks[bottom]}"
        )

    for smaller in masks:
        for larger in masks:
            if smaller == larger or smaller & ~larger:
                continue
            gap = ranks[larger] - ranks[smaller]
            size = popcount(larger & ~smaller)
            if not 0 < gap < size:
                return AxiomReport(
                    False,
                    "Z3",
                    flat(smaller),
                    flat(larger),
                    f"rank gap {gap} is not strictly between 0 and {size}",
                )

    for (first, second), joined in joins.items():
        met = meets[first, second]
        left = ranks[first] + ranks[second]
        right = ranks[joined] + ranks[met] + popcount((first & second) & ~met)
        if left < right:
            return AxiomReport(
                False,
                "Z4",
                flat(first),
                flat(second),
                f"{left} < {right}",
            )
    return AxiomReport(True)


def gamma(matroid: Matroid, subset: ElementSet, limit: Optional[int] = None) -> int:
    return cyclic_flat_lattice(matroid, limit).gamma(subset.mask)


def beta(matroid: Matroid, subset: ElementSet, limit: Optional[int] = None) -> int:
    return cyclic_flat_lattice(matroid, limit).beta(subset.mask)


def positive_gamma_flats(matroid: Matroid, limit: Optional[int] = None) -> CyclicFlatFamily:
    lattice = cyclic_flat_lattice(matroid, limit)
    table = lattice.gamma_table
    return CyclicFlatFamily.from_masks(
        matroid, [mask for mask in lattice.masks if table[mask] > 0], table
    )


@dataclass(frozen=True)
class OracleVerdict:
    holds: bool
    witness: Optional[ElementSet] = None
    value: Optional[int] = None


def _sweep_order(ground_size: int) -> List[int]:
    return sorted(range(1 << ground_size), key=_sort_key)


def is_strict_gammoid_bruteforce(
    matroid: Matroid, limit: Optional[int] = None, pruned: bool = False
) -> OracleVerdict:
    """
    Check gamma on every subset; the witness is the first negative subset in
    ``(size, mask)`` order.

    With ``pruned`` only cyclic subsets are visited.
    """
    lattice = cyclic_flat_lattice(matroid, limit)
    for mask in _sweep_order(matroid.ground_size):
        if pruned and not matroid.is_cyclic_mask(mask):
            continue
        value = lattice.gamma(mask)
        if value < 0:
            return OracleVerdict(False, matroid.element_set(mask), value)
    return OracleVerdict(True)


def is_transversal_bruteforce(matroid: Matroid, limit: Optional[int] = None) -> OracleVerdict:
    lattice = cyclic_flat_lattice(matroid, limit)
    for mask in _sweep_order(matroid.ground_size):
        value = lattice.beta(mask)
        if value < 0:
            return OracleVerdict(False, matroid.element_set(mask), value)
    return OracleVerdict(True)


def gamma_all(matroid: Matroid, limit: Optional[int] = None) -> Dict[int, int]:
    lattice = cyclic_flat_lattice(matroid, limit)
    return {mask: lattice.gamma(mask) for mask in _sweep_order(matroid.ground_size)}


def beta_all(matroid: Matroid, limit: Optional[int] = None) -> Dict[int, int]:
    lattice = cyclic_flat_lattice(matroid, limit)
    return {mask: lattice.beta(mask) for mask in _sweep_order(matroid.ground_size)}


def delta_gamma(
    mplus: Matroid, element: int, subset: ElementSet, limit: Optional[int] = None
) -> int:
    deleted = mplus.delete_element(element)
    reduced = deleted.lower_mask(subset.mask & ~(1 << element))
    return cyclic_flat_lattice(deleted, limit).gamma(reduced) - cyclic_flat_lattice(
        mplus, limit
    ).gamma(subset.mask)


def downset(family: CyclicFlatFamily, targets: Sequence[ElementSet]) -> CyclicFlatFamily:
    kept = tuple(
        record
        for record in family
        if any(record.mask & ~target.mask == 0 for target in targets)
    )
    return CyclicFlatFamily(family.ground_size, kept)
