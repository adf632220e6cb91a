"""
Small matroids with known answers and brute-force references for the tests.
"""
from itertools import combinations, permutations
from pathlib import Path
from typing import Dict, List

import networkx as nx

from df_matroid.gammoid import DigraphRep
from df_matroid.ground import ElementSet, SetSystem
from df_matroid.lattice import CyclicFlatFamily
from df_matroid.matroids import Matroid
from df_matroid.utils import bits

FIXTURES = Path(__file__).parent / "fixtures"

# edges of K4 on vertices 1..4, in element order
K4_EDGES = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
K4_TRIANGLES = [[0, 1, 3], [0, 2, 4], [1, 2, 5], [3, 4, 5]]


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


def u24_digraph() -> DigraphRep:
    return DigraphRep.of(4, [(0, 1), (0, 2), (0, 3), (1, 0), (1, 2), (1, 3)], [2, 3])


def u24_system() -> SetSystem:
    return SetSystem.of(4, [[0, 1, 2, 3], [0, 1, 2, 3]])


def loop_digraph() -> DigraphRep:
    # vertex 2 reaches no sink, so it is a loop
    return DigraphRep.of(3, [(0, 1)], [1])


def free_digraph(n: int) -> DigraphRep:
    return DigraphRep.of(n, [], range(n))


def no_deletion_digraph() -> DigraphRep:
    """Three triangles through vertex 6; deleting 6 leaves a non-strict gammoid."""
    return DigraphRep.of(
        7, [(0, 1), (0, 6), (2, 3), (2, 6), (4, 5), (4, 6)], [1, 3, 5, 6]
    )


def no_contraction_system() -> SetSystem:
    return SetSystem.of(7, [[0, 1, 6], [2, 3, 6], [4, 5, 6]])


def k4_family() -> CyclicFlatFamily:
    return CyclicFlatFamily.build(
        6,
        [([], 0, None), *((triangle, 2, None) for triangle in K4_TRIANGLES), (range(6), 3, None)],
    )


def all_masks(n: int) -> range:
    return range(1 << n)


def rank_table(matroid: Matroid) -> Dict[int, int]:
    return {mask: matroid.rank_mask(mask) for mask in all_masks(matroid.ground_size)}


def graphic_rank(edges: List[tuple], mask: int) -> int:
    forest = nx.Graph()
    for index in bits(mask):
        forest.add_edge(*edges[index])
    return sum(len(component) - 1 for component in nx.connected_components(forest))


def has_transversal(system: SetSystem) -> bool:
    """Try every injection; only for tiny systems."""
    sets = system.sets
    if len(sets) > system.ground_size:
        return False
    for chosen in permutations(range(system.ground_size), len(sets)):
        if all(element in member for element, member in zip(chosen, sets)):
            return True
    return False


def transversal_rank(system: SetSystem, mask: int) -> int:
    """Largest subset of ``mask`` that is a partial transversal, by search."""
    elements = bits(mask)
    for size in range(len(elements), -1, -1):
        for chosen in combinations(elements, size):
            for targets in permutations(range(len(system)), size):
                if all(e in system[j] for e, j in zip(chosen, targets)):
                    return size
    return 0


def networkx_linking_rank(digraph: DigraphRep, subset: ElementSet) -> int:
    """Vertex-disjoint paths from ``subset`` to the sinks via networkx max flow."""
    graph = nx.DiGraph()
    for v in range(digraph.ground_size):
        graph.add_edge(("in", v), ("out", v), capacity=1)
    for tail, head in digraph.to_networkx().edges:
        graph.add_edge(("out", tail), ("in", head), capacity=1)
    for s in digraph.sinks:
        graph.add_edge(("out", s), "sink", capacity=1)
    for x in subset:
        graph.add_edge("source", ("in", x), capacity=1)
    if "source" not in graph or "sink" not in graph:
        return 0
    return nx.maximum_flow_value(graph, "source", "sink")

