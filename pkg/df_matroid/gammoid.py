"""
Digraph presentations of strict gammoids.

Linking rank is a unit vertex-capacity maximum flow on the vertex-split
network: vertex ``v`` becomes ``v_in -> v_out``, every arc ``u -> v`` becomes
``u_out -> v_in``, sources feed ``x_in`` for ``x`` in the queried set and every
sink ``s_out`` drains into a super-sink. Matroid queries skip the flow and
match against closed neighbourhoods instead, see ``_NeighbourhoodMatching``.
"""
import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

import networkx as nx

from .exceptions import BoundExceededError, ElementOutOfRangeError, InvalidPresentationError
from .ground import ElementSet, SetSystem, check_element, check_ground_size, transversal_of
from .lattice import CyclicFlat, CyclicFlatFamily
from .matroids import Matroid
from .utils import bits, popcount

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DigraphRep:
    """Digraph on vertices ``0..ground_size-1`` with sink set ``sinks``."""

    ground_size: int
    arcs: FrozenSet[Tuple[int, int]]
    sinks: ElementSet

    def __post_init__(self) -> None:
        check_ground_size(self.ground_size)
        object.__setattr__(self, "arcs", frozenset(self.arcs))
        if self.sinks.ground_size != self.ground_size:
            raise ElementOutOfRangeError("sinks must be a subset of the vertices")
        for tail, head in self.arcs:
            check_element(self.ground_size, tail)
            check_element(self.ground_size, head)
            if tail == head:
                raise ElementOutOfRangeError(f"self-arc at vertex {tail}")

    @classmethod
    def of(
        cls, ground_size: int, arcs: Iterable[Tuple[int, int]], sinks: Iterable[int]
    ) -> "DigraphRep":
        return cls(ground_size, frozenset(arcs), ElementSet.of(ground_size, sinks))

    @property
    def sorted_arcs(self) -> List[Tuple[int, int]]:
        return sorted(self.arcs)

    @property
    def non_sinks(self) -> ElementSet:
        return ~self.sinks

    def out_mask(self, vertex: int) -> int:
        mask = 0
        for tail, head in self.arcs:
            if tail == vertex:
                mask |= 1 << head
        return mask

    def closed_neighbourhood(self, vertex: int) -> ElementSet:
        return ElementSet(self.ground_size, self.out_mask(vertex) | 1 << vertex)

    def sink_arcs(self) -> List[Tuple[int, int]]:
        """Arcs leaving a sink; they never change the presented matroid."""
        return [arc for arc in self.sorted_arcs if arc[0] in self.sinks]

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.ground_size))
        graph.add_edges_from(self.sorted_arcs)
        nx.set_node_attributes(
            graph, {v: v in self.sinks for v in range(self.ground_size)}, "sink"
        )
        return graph


@dataclass(frozen=True)
class LinkingCertificate:
    """Vertex-disjoint paths, each ending in a sink."""

    paths: Tuple[Tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.paths)

    def is_linking(self, digraph: DigraphRep, subset: ElementSet) -> bool:
        """Paths start in ``subset``, follow arcs, end in sinks and share no vertex."""
        used: Set[int] = set()
        for path in self.paths:
            if not path or path[0] not in subset or path[-1] not in digraph.sinks:
                return False
            if used.intersection(path) or len(set(path)) != len(path):
                return False
            used.update(path)
            for tail, head in zip(path, path[1:]):
                if (tail, head) not in digraph.arcs:
                    return False
        return True


class _FlowNetwork:
    """Residual network for one linking query."""

    def __init__(self, digraph: DigraphRep, sources: int):
        n = digraph.ground_size
        self.n = n
        self.source = 2 * n
        self.sink = 2 * n + 1
        self.heads: List[int] = []
        self.capacity: List[int] = []
        self.edges: List[List[int]] = [[] for _ in range(2 * n + 2)]
        for v in range(n):
            self._add(2 * v, 2 * v + 1)
        for tail, head in digraph.sorted_arcs:
            self._add(2 * tail + 1, 2 * head)
        for s in digraph.sinks:
            self._add(2 * s + 1, self.sink)
        for x in bits(sources):
            self._add(self.source, 2 * x)
        self.value = self._max_flow()

    def _add(self, tail: int, head: int) -> None:
        self.edges[tail].append(len(self.heads))
        self.heads.append(head)
        self.capacity.append(1)
        self.edges[head].append(len(self.heads))
        self.heads.append(tail)
        self.capacity.append(0)

    def _augment(self) -> bool:
        parent_edge: Dict[int, int] = {self.source: -1}
        queue = deque([self.source])
        while queue:
            node = queue.popleft()
            for edge in self.edges[node]:
                head = self.heads[edge]
                if self.capacity[edge] and head not in parent_edge:
                    parent_edge[head] = edge
                    if head == self.sink:
                        queue.clear()
                        break
                    queue.append(head)
        if self.sink not in parent_edge:
            return False
        node = self.sink
        while node != self.source:
            edge = parent_edge[node]
            self.capacity[edge] -= 1
            self.capacity[edge ^ 1] += 1
            node = self.heads[edge ^ 1]
        return True

    def _max_flow(self) -> int:
        value = 0
        while self._augment():
            value += 1
        return value

    def paths(self) -> LinkingCertificate:
        found = []
        for edge in self.edges[self.source]:
            if edge % 2 or self.capacity[edge]:
                continue
            path = []
            node = self.heads[edge]
            while node != self.sink:
                if node % 2 == 0:
                    path.append(node // 2)
                for out in self.edges[node]:
                    if out % 2 == 0 and not self.capacity[out]:
                        node = self.heads[out]
                        break
            found.append(tuple(path))
        return LinkingCertificate(tuple(sorted(found)))


def linking_rank(digraph: DigraphRep, subset: ElementSet) -> Tuple[int, LinkingCertificate]:
    network = _FlowNetwork(digraph, subset.mask)
    return network.value, network.paths()


class _NeighbourhoodMatching:
    """
    Matroid queries on ``M(D, V, S)`` through its dual, the transversal
    matroid of the closed neighbourhoods of the non-sinks.

    With ``nu(Y)`` the largest matching of neighbourhoods into ``Y``,
    ``r(X) = |X| + nu(V - X) - |V - S|``. A maximum matching into ``V - X``
    also gives the closure of ``X`` (the dual's coloops on ``V - X``) and the
    coloops of ``M | X`` (members of ``X`` outside every neighbourhood an
    alternating search from an unmatched neighbourhood reaches).
    """

    def __init__(self, digraph: DigraphRep):
        self.full = (1 << digraph.ground_size) - 1
        out = [0] * digraph.ground_size
        for tail, head in digraph.arcs:
            out[tail] |= 1 << head
        self.owners = list(digraph.non_sinks)
        self.sets = [out[v] | 1 << v for v in self.owners]

    def _match(self, allowed: int) -> Tuple[List[int], Dict[int, int]]:
        sets = self.sets
        chosen = [-1] * len(sets)
        owner: Dict[int, int] = {}
        taken = 0
        pending = []
        for j, v in enumerate(self.owners):
            free = sets[j] & allowed & ~taken
            low = 1 << v if free >> v & 1 else free & -free
            if low:
                taken |= low
                chosen[j] = low.bit_length() - 1
                owner[chosen[j]] = j
            else:
                pending.append(j)
        visited = 0

        def augment(j: int) -> bool:
            nonlocal visited
            free = sets[j] & allowed & ~visited
            while free:
                low = free & -free
                visited |= low
                element = low.bit_length() - 1
                holder = owner.get(element)
                if holder is None or augment(holder):
                    owner[element] = j
                    chosen[j] = element
                    return True
                free &= ~visited
            return False

        for j in pending:
            visited = 0
            augment(j)
        return chosen, owner

    def rank(self, mask: int) -> int:
        _, owner = self._match(self.full & ~mask)
        return popcount(mask) + len(owner) - len(self.sets)

    def closure(self, mask: int) -> int:
        allowed = self.full & ~mask
        chosen, owner = self._match(allowed)
        # elements some maximum matching leaves free
        reach = allowed
        for element in owner:
            reach &= ~(1 << element)
        waiting = [j for j, element in enumerate(chosen) if element >= 0]
        grew = True
        while grew:
            grew = False
            rest = []
            for j in waiting:
                if self.sets[j] & reach:
                    reach |= 1 << chosen[j]
                    grew = True
                else:
                    rest.append(j)
            waiting = rest
        return mask | (allowed & ~reach)

    def coloops(self, mask: int) -> int:
        allowed = self.full & ~mask
        chosen, owner = self._match(allowed)
        frontier = [j for j, element in enumerate(chosen) if element < 0]
        seen = set(frontier)
        covered = 0
        while frontier:
            j = frontier.pop()
            fresh = self.sets[j] & ~covered
            covered |= fresh
            for element in bits(fresh & allowed):
                holder = owner[element]
                if holder not in seen:
                    seen.add(holder)
                    frontier.append(holder)
        return mask & ~covered


class GammoidMatroid(Matroid):
    """
    ``M(D, E, S)``: element ``i`` is vertex ``labels[i]`` of ``digraph``.

    Rank, closure and coloop queries each run one bipartite matching against
    the closed neighbourhoods of the non-sinks; deletions share the matcher.
    """

    def __init__(
        self,
        digraph: DigraphRep,
        vertices: Optional[int] = None,
        engine: Optional[_NeighbourhoodMatching] = None,
    ):
        full = (1 << digraph.ground_size) - 1
        vertices = full if vertices is None else vertices
        super().__init__(popcount(vertices), bits(vertices))
        self.digraph = digraph
        self.vertices = vertices
        self._engine = engine or _NeighbourhoodMatching(digraph)

    @property
    def is_strict(self) -> bool:
        return self.vertices == (1 << self.digraph.ground_size) - 1

    def _lift(self, mask: int) -> int:
        return mask if self.is_strict else self.lift_mask(mask)

    def _lower(self, parent_mask: int) -> int:
        return parent_mask if self.is_strict else self.lower_mask(parent_mask)

    def _compute_rank(self, mask: int) -> int:
        return self._engine.rank(self._lift(mask))

    def closure_mask(self, mask: int) -> int:
        closed = self._engine.closure(self._lift(mask)) & self.vertices
        return self._lower(closed) | mask

    def coloops_mask(self, mask: int) -> int:
        return self._lower(self._engine.coloops(self._lift(mask)))

    def delete(self, subset: ElementSet) -> "GammoidMatroid":  # type: ignore[override]
        return GammoidMatroid(
            self.digraph,
            self.vertices & ~self.lift_mask(self._mask(subset)),
            self._engine,
        )


def gammoid_matroid(digraph: DigraphRep, vertices: Optional[ElementSet] = None) -> GammoidMatroid:
    return GammoidMatroid(digraph, None if vertices is None else vertices.mask)


def _without_sink_arcs(digraph: DigraphRep) -> DigraphRep:
    return DigraphRep(
        digraph.ground_size,
        frozenset(arc for arc in digraph.arcs if arc[0] not in digraph.sinks),
        digraph.sinks,
    )


def is_maximal(digraph: DigraphRep) -> bool:
    if digraph.sink_arcs():
        return False
    matroid = gammoid_matroid(digraph)
    for e in digraph.non_sinks:
        neighbourhood = digraph.closed_neighbourhood(e).mask
        if matroid.closure_mask(neighbourhood) != neighbourhood:
            return False
    return True


def maximalize(digraph: DigraphRep) -> DigraphRep:
    """
    Add every arc ``e -> f`` with ``f`` in the closure of ``N+[e]`` and drop
    arcs out of sinks.

    Added arcs keep the matroid fixed, so closures are taken in the input's
    matroid and a second pass only confirms the fixpoint.
    """
    current = _without_sink_arcs(digraph)
    rounds = 0
    while True:
        rounds += 1
        matroid = gammoid_matroid(current)
        arcs = set(current.arcs)
        for e in current.non_sinks:
            closed = matroid.closure_mask(current.closed_neighbourhood(e).mask)
            arcs.update((e, f) for f in bits(closed) if f != e)
        if len(arcs) == len(current.arcs):
            break
        current = DigraphRep(current.ground_size, frozenset(arcs), current.sinks)
    logger.debug(
        "maximalized %d -> %d arcs in %d rounds",
        len(digraph.arcs),
        len(current.arcs),
        rounds,
    )
    return current


def read_flats(digraph: DigraphRep) -> CyclicFlatFamily:
    """Distinct closed neighbourhoods of non-sinks, with multiplicity as gamma."""
    counts: Dict[int, int] = {}
    for e in digraph.non_sinks:
        neighbourhood = digraph.closed_neighbourhood(e).mask
        counts[neighbourhood] = counts.get(neighbourhood, 0) + 1
    matroid = gammoid_matroid(digraph)
    return CyclicFlatFamily(
        digraph.ground_size,
        tuple(
            CyclicFlat(ElementSet(digraph.ground_size, mask), matroid.rank_mask(mask), count)
            for mask, count in counts.items()
        ),
    )


def flats_multiset(family: CyclicFlatFamily) -> SetSystem:
    """``gamma`` copies of each flat, flats in canonical order and copies contiguous."""
    sets: List[ElementSet] = []
    names: List[str] = []
    for index, record in enumerate(family):
        for copy in range(record.gamma or 0):
            sets.append(record.flat)
            names.append(f"Z{index}.{copy}")
    return SetSystem(family.ground_size, tuple(sets), tuple(names))


def construct_from_flats(family: CyclicFlatFamily, ground_size: Optional[int] = None) -> DigraphRep:
    """
    Build the maximal presentation whose closed neighbourhoods are the flats
    of ``family`` with multiplicity ``gamma``.

    Raises ``BoundExceededError`` when the multiplicities outnumber the
    elements and ``NoTransversalError`` when the multiset has no transversal.
    """
    n = family.ground_size if ground_size is None else ground_size
    if n != family.ground_size:
        raise ElementOutOfRangeError(
            f"family is over {family.ground_size} elements, not {n}"
        )
    for record in family:
        if record.gamma is None or record.gamma < 1:
            raise InvalidPresentationError(f"flat {record.flat} needs a positive multiplicity")
    total = family.gamma_total()
    if total > n:
        raise BoundExceededError(
            f"multiplicities sum to {total} on {n} elements",
            extra_data={"total": total, "limit": n},
        )
    system = flats_multiset(family)
    matching = transversal_of(system)
    arcs: Set[Tuple[int, int]] = set()
    for element, j in matching.pairs:
        arcs.update((element, head) for head in system[j] if head != element)
    sinks = ElementSet(n, ((1 << n) - 1) & ~matching.elements_mask)
    return DigraphRep(n, frozenset(arcs), sinks)


def neighbourhood_multiset(digraph: DigraphRep) -> SetSystem:
    non_sinks = list(digraph.non_sinks)
    return SetSystem(
        digraph.ground_size,
        tuple(digraph.closed_neighbourhood(e) for e in non_sinks),
        tuple(f"N{e}" for e in non_sinks),
    )


def remove_vertex(digraph: DigraphRep, vertex: int) -> DigraphRep:
    check_element(digraph.ground_size, vertex)

    def shift(v: int) -> int:
        return v - 1 if v > vertex else v

    return DigraphRep.of(
        digraph.ground_size - 1,
        (
            (shift(tail), shift(head))
            for tail, head in digraph.arcs
            if vertex not in (tail, head)
        ),
        (shift(s) for s in digraph.sinks if s != vertex),
    )


def flat_nullity_count(digraph: DigraphRep, subset: ElementSet) -> int:
    """Non-sinks of ``subset`` whose closed neighbourhood stays inside ``subset``."""
    return sum(
        1
        for x in subset
        if x not in digraph.sinks and digraph.closed_neighbourhood(x) <= subset
    )


def bipartite_gammoid(system: SetSystem) -> GammoidMatroid:
    """
    The transversal matroid of ``system`` as a gammoid: elements point at
    the set vertices ``n..n+m-1``, which are the sinks.
    """
    n = system.ground_size
    total = n + len(system)
    arcs = [(e, n + j) for j, member in enumerate(system) for e in member]
    digraph = DigraphRep.of(total, arcs, range(n, total))
    return GammoidMatroid(digraph, (1 << n) - 1)
