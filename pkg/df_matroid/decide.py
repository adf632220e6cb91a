"""
Single-element deletion for strict gammoids and single-element contraction
for transversal matroids.

``decide_deletion`` never enumerates subsets: every family it builds comes
from closed neighbourhoods of the maximal presentation and their first and
second rounds of pairwise joins.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Set, Tuple, Union

from .exceptions import (
    BoundExceededError,
    NoTransversalError,
    NormalizationFailed,
)
from .gammoid import (
    DigraphRep,
    GammoidMatroid,
    construct_from_flats,
    flats_multiset,
    gammoid_matroid,
    maximalize,
    neighbourhood_multiset,
    read_flats,
    remove_vertex,
)
from .ground import (
    ElementSet,
    HallViolation,
    SetSystem,
    check_element,
    max_matching,
    transversal_of,
)
from .lattice import CyclicFlatFamily
from .matroids import Matroid, TransversalMatroid
from .settings import api_settings
from .utils import popcount

logger = logging.getLogger(__name__)

YES = "yes"
NO = "no"


@dataclass(frozen=True)
class NegativeEta:
    flat: ElementSet
    value: int
    kind: str = "negative_eta"


@dataclass(frozen=True)
class BoundExceeded:
    total: int
    limit: int
    kind: str = "bound_exceeded"


@dataclass(frozen=True)
class NoTransversal:
    violation: HallViolation
    kind: str = "no_transversal"


@dataclass(frozen=True)
class RankMismatch:
    first: ElementSet
    second: ElementSet
    rank: int
    constructed_rank: int
    kind: str = "rank_mismatch"


@dataclass(frozen=True)
class ClosureMismatch:
    first: ElementSet
    second: ElementSet
    closure: ElementSet
    constructed_closure: ElementSet
    kind: str = "closure_mismatch"


Witness = Union[NegativeEta, BoundExceeded, NoTransversal, RankMismatch, ClosureMismatch]


@dataclass(frozen=True)
class DeletionTrace:
    """
    Families built along the way. ``neighbourhoods`` and its joins are over the
    vertices of the input; ``candidates`` (with eta in the gamma slot) and
    ``positive`` are over the elements of the deletion.
    """

    neighbourhoods: CyclicFlatFamily
    first_joins: CyclicFlatFamily
    second_joins: CyclicFlatFamily
    candidates: Optional[CyclicFlatFamily] = None
    positive: Optional[CyclicFlatFamily] = None


@dataclass(frozen=True)
class DeletionDecision:
    element: int
    verdict: str
    representation: Optional[DigraphRep] = None
    witness: Optional[Witness] = None
    trace: Optional[DeletionTrace] = None
    # labels[i] is the input vertex that became vertex i of the deletion
    labels: Tuple[int, ...] = ()
    trivial: Optional[str] = None

    @property
    def is_yes(self) -> bool:
        return self.verdict == YES


@dataclass(frozen=True)
class ContractionDecision:
    element: int
    verdict: str
    presentation: Optional[SetSystem] = None
    witness: Optional[Witness] = None
    dual_trace: Optional[DeletionDecision] = None
    normalized: Optional[SetSystem] = None
    labels: Tuple[int, ...] = field(default=())
    trivial: Optional[str] = None

    @property
    def is_yes(self) -> bool:
        return self.verdict == YES


def family_joins(matroid: Matroid, family: CyclicFlatFamily) -> CyclicFlatFamily:
    """All pairwise joins in ``matroid``, self-joins included."""
    masks = family.masks
    closures: Dict[int, int] = {}
    joined = set(masks)
    for i, first in enumerate(masks):
        for second in masks[i + 1 :]:
            if first & ~second == 0:
                continue
            if second & ~first == 0:
                continue
            union = first | second
            if union in joined:
                continue
            if union not in closures:
                closures[union] = matroid.closure_mask(union)
            joined.add(closures[union])
    return CyclicFlatFamily.from_masks(matroid, joined)


def family_E(
    mplus: Matroid, element: int, candidates: CyclicFlatFamily
) -> CyclicFlatFamily:
    """``F - e`` for every candidate ``F`` that is a cyclic flat of ``mplus \\ e``."""
    deleted = mplus.delete_element(element)
    kept: Set[int] = set()
    for mask in candidates.masks:
        reduced = deleted.lower_mask(mask & ~(1 << element))
        if reduced not in kept and deleted.is_cyclic_flat_mask(reduced):
            kept.add(reduced)
    return CyclicFlatFamily.from_masks(deleted, kept)


def eta_table(matroid: Matroid, family: CyclicFlatFamily) -> Dict[int, int]:
    table: Dict[int, int] = {}
    nonzero: Dict[int, int] = {}
    for mask in family.masks:
        table[mask] = _eta_of(matroid, nonzero, mask)
        if table[mask]:
            nonzero[mask] = table[mask]
    return table


def _eta_of(matroid: Matroid, table: Dict[int, int], mask: int) -> int:
    value = matroid.nullity_mask(mask)
    for inner, inner_eta in table.items():
        if inner != mask and inner & ~mask == 0:
            value -= inner_eta
    return value


def eta(matroid: Matroid, family: CyclicFlatFamily, subset: ElementSet) -> int:
    return _eta_of(matroid, eta_table(matroid, family), subset.mask)


def _labels_without(ground_size: int, element: int) -> Tuple[int, ...]:
    return tuple(v for v in range(ground_size) if v != element)


def _compare_unions(
    deleted: GammoidMatroid, constructed: GammoidMatroid, positive: CyclicFlatFamily
) -> Optional[Witness]:
    records = list(positive)
    for i, first in enumerate(records):
        for second in records[i:]:
            union = first.mask | second.mask
            rank = deleted.rank_mask(union)
            constructed_rank = constructed.rank_mask(union)
            if rank != constructed_rank:
                return RankMismatch(first.flat, second.flat, rank, constructed_rank)
            closure = deleted.closure_mask(union)
            constructed_closure = constructed.closure_mask(union)
            if closure != constructed_closure:
                return ClosureMismatch(
                    first.flat,
                    second.flat,
                    deleted.element_set(closure),
                    deleted.element_set(constructed_closure),
                )
    return None


def decide_deletion(digraph: DigraphRep, element: int) -> DeletionDecision:
    """Decide whether ``M(D) \\ element`` is a strict gammoid, building a presentation if so."""
    n = digraph.ground_size
    check_element(n, element)
    labels = _labels_without(n, element)
    maximal = maximalize(digraph)
    mplus = gammoid_matroid(maximal)

    single = 1 << element
    full_rank = mplus.rank_mask(mplus.ground_mask)
    trivial = None
    if mplus.rank_mask(single) == 0:
        trivial = "loop"
    elif mplus.rank_mask(mplus.ground_mask & ~single) < full_rank:
        trivial = "coloop"
    if trivial is not None:
        logger.info("element %d is a %s, deleting its vertex", element, trivial)
        return DeletionDecision(
            element,
            YES,
            representation=maximalize(remove_vertex(maximal, element)),
            labels=labels,
            trivial=trivial,
        )

    neighbourhoods = read_flats(maximal)
    first_joins = family_joins(mplus, neighbourhoods)
    second_joins = family_joins(mplus, first_joins)
    logger.debug(
        "families: %d neighbourhoods, %d first joins, %d second joins",
        len(neighbourhoods),
        len(first_joins),
        len(second_joins),
    )
    # neighbourhoods and first_joins are contained in second_joins
    candidates = family_E(mplus, element, second_joins)
    deleted = mplus.delete_element(element)
    assert isinstance(deleted, GammoidMatroid)
    etas = eta_table(deleted, candidates)
    candidates = CyclicFlatFamily.from_masks(deleted, etas, etas)
    trace = DeletionTrace(neighbourhoods, first_joins, second_joins, candidates)

    def no(witness: Witness, positive: Optional[CyclicFlatFamily] = None) -> DeletionDecision:
        logger.info("deleting %d: no (%s)", element, witness.kind)
        return DeletionDecision(
            element,
            NO,
            witness=witness,
            trace=DeletionTrace(
                neighbourhoods, first_joins, second_joins, candidates, positive
            ),
            labels=labels,
        )

    for record in candidates:
        assert record.gamma is not None
        if record.gamma < 0:
            return no(NegativeEta(record.flat, record.gamma))

    positive = CyclicFlatFamily(
        deleted.ground_size,
        tuple(record for record in candidates if (record.gamma or 0) > 0),
    )
    proper_total = sum(
        record.gamma or 0 for record in positive if record.mask != deleted.ground_mask
    )
    if proper_total > deleted.ground_size:
        return no(BoundExceeded(proper_total, deleted.ground_size), positive)

    try:
        constructed_rep = construct_from_flats(positive, deleted.ground_size)
    except BoundExceededError as exc:
        return no(BoundExceeded(exc.extra_data["total"], exc.extra_data["limit"]), positive)
    except NoTransversalError as exc:
        return no(NoTransversal(exc.extra_data["violation"]), positive)

    mismatch = _compare_unions(deleted, gammoid_matroid(constructed_rep), positive)
    if mismatch is not None:
        return no(mismatch, positive)

    logger.info("deleting %d: yes", element)
    return DeletionDecision(
        element,
        YES,
        representation=maximalize(constructed_rep),
        trace=DeletionTrace(neighbourhoods, first_joins, second_joins, candidates, positive),
        labels=labels,
    )


def dual_digraph_of_transversal(system: SetSystem) -> DigraphRep:
    """
    Presentation of the dual: a transversal ``T`` becomes the non-sinks, each
    ``t`` pointing at the rest of the set it is matched to.
    """
    matching = transversal_of(system)
    n = system.ground_size
    arcs: Set[Tuple[int, int]] = set()
    for t, j in matching.pairs:
        arcs.update((t, head) for head in system[j] if head != t)
    sinks = ElementSet(n, ((1 << n) - 1) & ~matching.elements_mask)
    return DigraphRep(n, frozenset(arcs), sinks)


def normalize_presentation(system: SetSystem, verify_limit: Optional[int] = None) -> SetSystem:
    """
    Keep only the sets covered by a maximum matching of the ground set.

    A maximum matching saturating the kept sets can be re-routed to cover any
    independent set, so the matroid is unchanged; ground sets up to
    ``verify_limit`` are re-checked subset by subset anyway.
    """
    matching = max_matching(system)
    if matching.size == len(system):
        return system
    kept = system.select(matching.set_indices)
    limit = int(api_settings.NORMALIZE_VERIFY_LIMIT) if verify_limit is None else verify_limit
    if system.ground_size <= limit:
        before = TransversalMatroid(system)
        after = TransversalMatroid(kept)
        for mask in range(1 << system.ground_size):
            if before.rank_mask(mask) != after.rank_mask(mask):
                raise NormalizationFailed(
                    f"dropping sets changed the rank of {ElementSet(system.ground_size, mask)}",
                    extra_data={"presentation": system},
                )
    else:
        logger.warning(
            "presentation on %d elements normalized without subset verification",
            system.ground_size,
        )
    logger.debug("normalized %d sets to %d", len(system), len(kept))
    return kept


def decide_contraction(system: SetSystem, element: int) -> ContractionDecision:
    """Decide whether ``M[system] / element`` is transversal, building a presentation if so."""
    n = system.ground_size
    check_element(n, element)
    labels = _labels_without(n, element)
    if not system.union().mask >> element & 1:
        logger.info("element %d is a loop, contracting it deletes it", element)
        return ContractionDecision(
            element,
            YES,
            presentation=system.delete_element(element),
            labels=labels,
            trivial="loop",
        )
    normalized = normalize_presentation(system)
    dual = dual_digraph_of_transversal(normalized)
    decision = decide_deletion(dual, element)
    if not decision.is_yes:
        return ContractionDecision(
            element,
            NO,
            witness=decision.witness,
            dual_trace=decision,
            normalized=normalized,
            labels=labels,
        )
    assert decision.representation is not None
    return ContractionDecision(
        element,
        YES,
        presentation=neighbourhood_multiset(decision.representation),
        dual_trace=decision,
        normalized=normalized,
        labels=labels,
    )


def witness_holds(
    decision: Union[DeletionDecision, ContractionDecision],
    digraph: Optional[DigraphRep] = None,
) -> bool:
    """Re-check a NO witness against the deletion it refers to."""
    if isinstance(decision, ContractionDecision):
        if decision.dual_trace is None or decision.normalized is None:
            return False
        return witness_holds(decision.dual_trace, dual_digraph_of_transversal(decision.normalized))
    witness = decision.witness
    if digraph is None or witness is None:
        return False
    deleted = gammoid_matroid(digraph).delete_element(decision.element)
    if isinstance(witness, NegativeEta):
        assert decision.trace is not None and decision.trace.candidates is not None
        return eta(deleted, decision.trace.candidates, witness.flat) == witness.value < 0
    if isinstance(witness, NoTransversal):
        if decision.trace is None or decision.trace.positive is None:
            return False
        multiset = flats_multiset(decision.trace.positive)
        members = set(witness.violation.indices)
        if not members or not all(0 <= i < len(multiset) for i in members):
            return False
        union = 0
        for i in members:
            union |= multiset.masks[i]
        return union == witness.violation.union.mask and popcount(union) < len(members)
    if isinstance(witness, BoundExceeded):
        return witness.total > witness.limit
    if isinstance(witness, RankMismatch):
        union = witness.first.mask | witness.second.mask
        return deleted.rank_mask(union) == witness.rank != witness.constructed_rank
    if isinstance(witness, ClosureMismatch):
        union = witness.first.mask | witness.second.mask
        return deleted.closure_mask(union) == witness.closure.mask != witness.constructed_closure.mask
    return False

