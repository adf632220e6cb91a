"""
Seeded random presentations and the differential harness that compares the
polynomial decisions against the exhaustive oracles.
"""
import logging
import random
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple, Union

import networkx as nx

from .decide import decide_contraction, decide_deletion, witness_holds
from .exceptions import GroundSizeError
from .gammoid import DigraphRep, gammoid_matroid
from .ground import ElementSet, SetSystem
from .lattice import is_strict_gammoid_bruteforce, is_transversal_bruteforce
from .matroids import TransversalMatroid
from .reports import FuzzResult
from .settings import api_settings

logger = logging.getLogger(__name__)

DELETION = "deletion"
CONTRACTION = "contraction"

# every third corpus instance carries a planted hub when it fits
PLANTED_EVERY = 3
PLANTED_MIN_SIZE = 7


def random_digraph(
    rng: random.Random,
    ground_size: int,
    arc_probability: float = 0.3,
    sink_probability: float = 0.4,
) -> DigraphRep:
    graph = nx.gnp_random_graph(
        ground_size, arc_probability, seed=rng.randrange(2**32), directed=True
    )
    sinks = [v for v in range(ground_size) if rng.random() < sink_probability]
    return DigraphRep.of(ground_size, graph.edges(), sinks)


def random_set_system(
    rng: random.Random,
    ground_size: int,
    max_sets: Optional[int] = None,
    membership: float = 0.4,
) -> SetSystem:
    count = rng.randint(1, max_sets or ground_size)
    sets = [
        [e for e in range(ground_size) if rng.random() < membership] for _ in range(count)
    ]
    return SetSystem.of(ground_size, sets)


def planted_hub_digraph(rng: random.Random, ground_size: int) -> DigraphRep:
    """
    Three or four petal non-sinks, each pointing at a private sink and at one
    shared hub sink, beside a random digraph on the other vertices. Deleting
    the hub leaves a matroid that is not a strict gammoid.
    """
    if ground_size < PLANTED_MIN_SIZE:
        raise GroundSizeError(f"a planted hub needs {PLANTED_MIN_SIZE} vertices, got {ground_size}")
    petals = 4 if ground_size >= 9 and rng.random() < 0.5 else 3
    order = list(range(ground_size))
    rng.shuffle(order)
    hub, rest = order[0], order[2 * petals + 1 :]
    arcs = []
    sinks = [hub]
    for i in range(petals):
        petal, private = order[2 * i + 1], order[2 * i + 2]
        arcs += [(petal, private), (petal, hub)]
        sinks.append(private)
    if rest:
        other = random_digraph(rng, len(rest), arc_probability=rng.uniform(0.1, 0.5))
        arcs += [(rest[tail], rest[head]) for tail, head in other.sorted_arcs]
        sinks += [rest[v] for v in other.sinks]
    return DigraphRep.of(ground_size, arcs, sinks)


def planted_hub_system(rng: random.Random, ground_size: int) -> SetSystem:
    """Three sets ``{p, q, hub}`` beside random sets; contracting the hub is not transversal."""
    if ground_size < PLANTED_MIN_SIZE:
        raise GroundSizeError(f"a planted hub needs {PLANTED_MIN_SIZE} elements, got {ground_size}")
    order = list(range(ground_size))
    rng.shuffle(order)
    hub, rest = order[0], order[7:]
    sets = [[order[2 * i + 1], order[2 * i + 2], hub] for i in range(3)]
    if rest:
        other = random_set_system(rng, len(rest), membership=rng.uniform(0.2, 0.6))
        sets += [[rest[e] for e in member] for member in other.sets]
    return SetSystem.of(ground_size, sets)


def _planted(index: int, high: int) -> bool:
    return index % PLANTED_EVERY == PLANTED_EVERY - 1 and high >= PLANTED_MIN_SIZE


def random_strict_gammoid_corpus(
    seed: int,
    count: int,
    min_vertices: Optional[int] = None,
    max_vertices: Optional[int] = None,
) -> Iterator[DigraphRep]:
    rng = random.Random(seed)
    low = int(api_settings.FUZZ_MIN_VERTICES) if min_vertices is None else min_vertices
    high = int(api_settings.FUZZ_MAX_VERTICES) if max_vertices is None else max_vertices
    for index in range(count):
        if _planted(index, high):
            yield planted_hub_digraph(rng, rng.randint(max(low, PLANTED_MIN_SIZE), high))
        else:
            yield random_digraph(
                rng, rng.randint(low, high), arc_probability=rng.uniform(0.1, 0.5)
            )


def random_transversal_corpus(
    seed: int, count: int, max_elements: Optional[int] = None
) -> Iterator[SetSystem]:
    rng = random.Random(seed)
    high = int(api_settings.FUZZ_MAX_ELEMENTS) if max_elements is None else max_elements
    for index in range(count):
        if _planted(index, high):
            yield planted_hub_system(rng, rng.randint(PLANTED_MIN_SIZE, high))
        else:
            yield random_set_system(rng, rng.randint(2, high), membership=rng.uniform(0.2, 0.6))


@dataclass(frozen=True)
class NoInstance:
    presentation: Union[DigraphRep, SetSystem]
    element: int
    witness: ElementSet


_Check = Tuple[int, bool, bool, Optional[ElementSet], bool]


def _deletion_checks(digraph: DigraphRep) -> Iterator[_Check]:
    matroid = gammoid_matroid(digraph)
    for e in range(digraph.ground_size):
        decision = decide_deletion(digraph, e)
        oracle = is_strict_gammoid_bruteforce(matroid.delete_element(e))
        certified = decision.is_yes or witness_holds(decision, digraph)
        yield e, decision.is_yes, oracle.holds, oracle.witness, certified


def _contraction_checks(system: SetSystem) -> Iterator[_Check]:
    matroid = TransversalMatroid(system)
    for e in range(system.ground_size):
        decision = decide_contraction(system, e)
        oracle = is_transversal_bruteforce(
            matroid.contract(ElementSet.of(system.ground_size, [e]))
        )
        certified = decision.is_yes or witness_holds(decision)
        yield e, decision.is_yes, oracle.holds, oracle.witness, certified


def run_fuzz(
    kind: str, seed: int, count: int, **corpus_options: int
) -> Tuple[FuzzResult, Optional[NoInstance]]:
    """Compare verdicts with the oracle on every element of ``count`` random instances."""
    instances: Iterator[Union[DigraphRep, SetSystem]]
    if kind == DELETION:
        instances = random_strict_gammoid_corpus(seed, count, **corpus_options)
    elif kind == CONTRACTION:
        instances = random_transversal_corpus(seed, count, **corpus_options)
    else:
        raise ValueError(f"unknown fuzz kind {kind!r}")

    checks = yes = no = 0
    disagreements: List[Tuple[str, int]] = []
    first_no: Optional[NoInstance] = None
    for index, instance in enumerate(instances):
        rows = (
            _deletion_checks(instance)  # type: ignore[arg-type]
            if kind == DELETION
            else _contraction_checks(instance)  # type: ignore[arg-type]
        )
        for element, verdict, expected, witness, certified in rows:
            checks += 1
            if verdict:
                yes += 1
            else:
                no += 1
                if first_no is None and witness is not None:
                    first_no = NoInstance(instance, element, witness)
            if verdict != expected:
                logger.error("instance %d element %d: decision %s, oracle %s", index, element, verdict, expected)
                disagreements.append((f"instance-{index}", element))
            elif not certified:
                logger.error("instance %d element %d: witness does not hold", index, element)
                disagreements.append((f"instance-{index}", element))
    result = FuzzResult(
        kind, seed, count, count, checks, yes, no, disagreements
    )
    logger.info("%s fuzz seed %d: %d checks, %d disagreements", kind, seed, checks, len(disagreements))
    return result, first_no
