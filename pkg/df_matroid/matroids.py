"""
Rank oracles and the matroid operations derived from them.
"""
import logging
from abc import ABC, abstractmethod
from typing import TYPE_CHECKING, Any, Dict, Optional, Sequence, Tuple

from .exceptions import CyclicFlatAxiomError, GroundSizeError
from .ground import ElementSet, SetSystem, check_ground_size, matching_size
from .utils import bits, popcount

if TYPE_CHECKING:
    from .lattice import CyclicFlatFamily

logger = logging.getLogger(__name__)


class Matroid(ABC):
    """
    A rank oracle over the ground set ``{0, ..., ground_size - 1}``.

    Subclasses implement ``_compute_rank`` on bit masks; results are memoized
    per instance. ``labels[i]`` names element ``i`` in the parent structure it
    was derived from (identity for matroids built directly).
    """

    def __init__(self, ground_size: int, labels: Optional[Sequence[int]] = None):
        check_ground_size(ground_size)
        self.ground_size = ground_size
        self.labels: Tuple[int, ...] = (
            tuple(range(ground_size)) if labels is None else tuple(labels)
        )
        if len(self.labels) != ground_size:
            raise GroundSizeError("one label per element is required")
        self._rank_cache: Dict[int, int] = {}
        self._lattice: Any = None
        self._deletions: Dict[int, "Matroid"] = {}

    @abstractmethod
    def _compute_rank(self, mask: int) -> int:
        ...

    # mask-level API used by the algorithms

    @property
    def ground_mask(self) -> int:
        return (1 << self.ground_size) - 1

    def rank_mask(self, mask: int) -> int:
        cached = self._rank_cache.get(mask)
        if cached is None:
            cached = self._rank_cache[mask] = self._compute_rank(mask)
        return cached

    def nullity_mask(self, mask: int) -> int:
        return popcount(mask) - self.rank_mask(mask)

    def closure_mask(self, mask: int) -> int:
        rank = self.rank_mask(mask)
        closed = mask
        for element in bits(self.ground_mask & ~mask):
            if self.rank_mask(mask | 1 << element) == rank:
                closed |= 1 << element
        return closed

    def coloops_mask(self, mask: int) -> int:
        rank = self.rank_mask(mask)
        coloops = 0
        for element in bits(mask):
            if self.rank_mask(mask & ~(1 << element)) < rank:
                coloops |= 1 << element
        return coloops

    def is_flat_mask(self, mask: int) -> bool:
        return self.closure_mask(mask) == mask

    def is_cyclic_mask(self, mask: int) -> bool:
        return self.coloops_mask(mask) == 0

    def is_cyclic_flat_mask(self, mask: int) -> bool:
        return self.is_cyclic_mask(mask) and self.is_flat_mask(mask)

    def lift_mask(self, mask: int) -> int:
        """Translate an element mask into the parent's labels."""
        lifted = 0
        for element in bits(mask):
            lifted |= 1 << self.labels[element]
        return lifted

    def lower_mask(self, parent_mask: int) -> int:
        """Translate a parent mask into element indices, dropping unlabelled members."""
        lowered = 0
        for element, label in enumerate(self.labels):
            if parent_mask >> label & 1:
                lowered |= 1 << element
        return lowered

    # ElementSet API

    @property
    def ground(self) -> ElementSet:
        return ElementSet.full(self.ground_size)

    def element_set(self, mask: int) -> ElementSet:
        return ElementSet(self.ground_size, mask)

    def _mask(self, subset: ElementSet) -> int:
        if subset.ground_size != self.ground_size:
            raise GroundSizeError(
                f"set over ground size {subset.ground_size} given to a matroid on {self.ground_size}"
            )
        return subset.mask

    def rank(self, subset: Optional[ElementSet] = None) -> int:
        return self.rank_mask(self.ground_mask if subset is None else self._mask(subset))

    def nullity(self, subset: Optional[ElementSet] = None) -> int:
        return self.nullity_mask(
            self.ground_mask if subset is None else self._mask(subset)
        )

    def closure(self, subset: ElementSet) -> ElementSet:
        return self.element_set(self.closure_mask(self._mask(subset)))

    def is_flat(self, subset: ElementSet) -> bool:
        return self.is_flat_mask(self._mask(subset))

    def is_cyclic(self, subset: ElementSet) -> bool:
        return self.is_cyclic_mask(self._mask(subset))

    def coloops_of_restriction(self, subset: ElementSet) -> ElementSet:
        return self.element_set(self.coloops_mask(self._mask(subset)))

    def loops(self) -> ElementSet:
        return self.element_set(self.closure_mask(0))

    # derived matroids

    def dual(self) -> "Matroid":
        return DualMatroid(self)

    def delete(self, subset: ElementSet) -> "Matroid":
        removed = self._mask(subset)
        return Minor(self, self.ground_mask & ~removed, 0)

    def contract(self, subset: ElementSet) -> "Minor":
        removed = self._mask(subset)
        return Minor(self, self.ground_mask & ~removed, removed)

    def restrict(self, subset: ElementSet) -> "Minor":
        return Minor(self, self._mask(subset), 0)

    def delete_element(self, element: int) -> "Matroid":
        """``self \\ element``, memoized per element."""
        if element not in self._deletions:
            self._deletions[element] = self.delete(
                ElementSet.of(self.ground_size, [element])
            )
        return self._deletions[element]

    def __repr__(self) -> str:
        return f"<{type(self).__name__} on {self.ground_size} elements>"


class DualMatroid(Matroid):
    def __init__(self, base: Matroid):
        super().__init__(base.ground_size, base.labels)
        self.base = base

    def _compute_rank(self, mask: int) -> int:
        base = self.base
        return (
            base.rank_mask(base.ground_mask & ~mask)
            + popcount(mask)
            - base.rank_mask(base.ground_mask)
        )

    def dual(self) -> Matroid:
        return self.base


class Minor(Matroid):
    """
    ``(base / contracted) | kept`` with elements renumbered in ascending order
    of their index in ``base``.
    """

    def __init__(self, base: Matroid, kept: int, contracted: int):
        if kept & contracted:
            raise ValueError("kept and contracted elements must be disjoint")
        self.base = base
        self.kept = kept
        self.contracted = contracted
        self._base_offset = base.rank_mask(contracted)
        super().__init__(popcount(kept), bits(kept))

    def _compute_rank(self, mask: int) -> int:
        return (
            self.base.rank_mask(self.lift_mask(mask) | self.contracted)
            - self._base_offset
        )

    def closure_mask(self, mask: int) -> int:
        closed = self.base.closure_mask(self.lift_mask(mask) | self.contracted)
        return self.lower_mask(closed)


class TransversalMatroid(Matroid):
    """Partial transversals of ``presentation`` are the independent sets."""

    def __init__(self, presentation: SetSystem, labels: Optional[Sequence[int]] = None):
        super().__init__(presentation.ground_size, labels)
        self.presentation = presentation
        self._masks = presentation.masks

    def _compute_rank(self, mask: int) -> int:
        return matching_size(self._masks, mask)


class CyclicFlatDefinedMatroid(Matroid):
    """Matroid given by its cyclic flats and their ranks."""

    def __init__(self, flats: "CyclicFlatFamily"):
        super().__init__(flats.ground_size)
        self.flats = flats
        self._table = [(flat.flat.mask, flat.rank) for flat in flats]

    def _compute_rank(self, mask: int) -> int:
        best = popcount(mask)
        for flat_mask, flat_rank in self._table:
            candidate = flat_rank + popcount(mask & ~flat_mask)
            if candidate < best:
                best = candidate
        return best


def matroid_from_cyclic_flats(family: "CyclicFlatFamily") -> CyclicFlatDefinedMatroid:
    from .lattice import validate_axioms

    report = validate_axioms(family)
    if not report.ok:
        logger.warning("cyclic flat family rejected: %s", report)
        raise CyclicFlatAxiomError(str(report), report=report)
    return CyclicFlatDefinedMatroid(family)
