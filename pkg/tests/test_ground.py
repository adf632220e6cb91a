import networkx as nx
from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from df_matroid.exceptions import (
    ElementOutOfRangeError,
    GroundSizeError,
    InvalidPresentationError,
    NoTransversalError,
)
from df_matroid.ground import (
    ElementSet,
    SetSystem,
    hall_check,
    max_matching,
    transversal_of,
)
from tests.factories import has_transversal

set_systems = st.integers(min_value=1, max_value=5).flatmap(
    lambda n: st.lists(
        st.lists(st.integers(min_value=0, max_value=n - 1), unique=True),
        max_size=5,
    ).map(lambda sets: SetSystem.of(n, sets))
)


class ElementSetTest(SimpleTestCase):
    def test_algebra(self) -> None:
        first = ElementSet.of(5, [0, 2])
        second = ElementSet.of(5, [2, 3])
        self.assertEqual(list(first | second), [0, 2, 3])
        self.assertEqual(list(first & second), [2])
        self.assertEqual(list(first - second), [0])
        self.assertEqual(list(~first), [1, 3, 4])
        self.assertEqual(len(first), 2)
        self.assertIn(2, first)
        self.assertNotIn(4, first)
        self.assertTrue(ElementSet.of(5, [2]) <= first)
        self.assertTrue(ElementSet.of(5, [2]) < first)
        self.assertFalse(first < first)
        self.assertEqual(str(first), "{0,2}")
        self.assertEqual(str(ElementSet.empty(3)), "{}")

    def test_iteration_is_ascending(self) -> None:
        self.assertEqual(list(ElementSet.of(8, [7, 1, 4])), [1, 4, 7])

    def test_full_and_empty(self) -> None:
        self.assertEqual(list(ElementSet.full(3)), [0, 1, 2])
        self.assertFalse(ElementSet.empty(3))

    def test_add_and_discard(self) -> None:
        base = ElementSet.of(4, [1])
        self.assertEqual(list(base.add(3)), [1, 3])
        self.assertEqual(list(base.discard(1)), [])

    def test_out_of_range(self) -> None:
        with self.assertRaises(ElementOutOfRangeError):
            ElementSet.of(3, [3])
        with self.assertRaises(ElementOutOfRangeError):
            ElementSet(3, 0b1000)

    def test_ground_size_limit(self) -> None:
        ElementSet.full(64)
        with self.assertRaises(GroundSizeError):
            ElementSet.empty(65)

    def test_mixing_ground_sizes_is_rejected(self) -> None:
        with self.assertRaises(GroundSizeError):
            ElementSet.of(3, [0]) | ElementSet.of(4, [0])


class SetSystemTest(SimpleTestCase):
    def test_default_names(self) -> None:
        system = SetSystem.of(3, [[0], [1, 2]])
        self.assertEqual(system.names, ("A0", "A1"))
        self.assertEqual(list(system.union()), [0, 1, 2])

    def test_names_do_not_affect_equality(self) -> None:
        self.assertEqual(
            SetSystem.of(2, [[0, 1]], ["X"]), SetSystem.of(2, [[0, 1]], ["Y"])
        )

    def test_names_must_match_the_sets(self) -> None:
        with self.assertRaises(InvalidPresentationError) as raised:
            SetSystem.of(2, [[0], [1]], ["X"])
        self.assertEqual(raised.exception.get_codes(), ["invalid_presentation"])

    def test_delete_element_shifts_indices(self) -> None:
        system = SetSystem.of(4, [[0, 2, 3], [1, 2]], ["P", "Q"])
        deleted = system.delete_element(1)
        self.assertEqual(deleted.ground_size, 3)
        self.assertEqual([list(member) for member in deleted], [[0, 1, 2], [1]])
        self.assertEqual(deleted.names, ("P", "Q"))

    def test_select(self) -> None:
        system = SetSystem.of(3, [[0], [1], [2]])
        self.assertEqual([list(member) for member in system.select([2, 0])], [[2], [0]])


class MatchingTest(SimpleTestCase):
    def test_single_set(self) -> None:
        system = SetSystem.of(2, [[0, 1]])
        matching = max_matching(system, ElementSet.of(2, [0, 1]))
        self.assertEqual(matching.size, 1)
        self.assertEqual(matching.pairs, ((0, 0),))

    def test_repeated_singleton(self) -> None:
        system = SetSystem.of(1, [[0], [0]])
        self.assertEqual(max_matching(system).size, 1)

    def test_full_sets_match_lowest_elements(self) -> None:
        matching = max_matching(SetSystem.of(2, [[0, 1], [0, 1]]))
        self.assertEqual(matching.pairs, ((0, 0), (1, 1)))
        self.assertEqual(matching.set_of(1), 1)
        self.assertEqual(matching.element_of(0), 0)

    def test_restriction(self) -> None:
        system = SetSystem.of(3, [[0, 1], [1, 2]])
        self.assertEqual(max_matching(system, ElementSet.of(3, [1])).size, 1)
        self.assertEqual(max_matching(system, ElementSet.of(3, [0, 2])).size, 2)

    def test_augmenting_path(self) -> None:
        # set 0 grabs element 0 first and has to move to element 1
        matching = max_matching(SetSystem.of(2, [[0, 1], [0]]))
        self.assertEqual(matching.as_dict(), {0: 1, 1: 0})


class HallTest(SimpleTestCase):
    def test_transversal_exists(self) -> None:
        self.assertIsNone(hall_check(SetSystem.of(3, [[0, 1], [1, 2], [0, 2]])))

    def test_three_sets_on_two_elements(self) -> None:
        violation = hall_check(SetSystem.of(2, [[0, 1], [0, 1], [0, 1]]))
        self.assertIsNotNone(violation)
        self.assertEqual(violation.indices, (0, 1, 2))
        self.assertEqual(violation.deficiency, 1)

    def test_chain(self) -> None:
        violation = hall_check(SetSystem.of(2, [[0], [0, 1], [1]]))
        self.assertEqual(violation.indices, (0, 1, 2))
        self.assertEqual(list(violation.union), [0, 1])

    def test_witness_is_minimal(self) -> None:
        violation = hall_check(SetSystem.of(3, [[0, 1], [0], [0], [2]]))
        self.assertEqual(violation.indices, (1, 2))
        self.assertEqual(list(violation.union), [0])

    def test_empty_set(self) -> None:
        violation = hall_check(SetSystem.of(2, [[1], []]))
        self.assertEqual(violation.indices, (1,))
        self.assertFalse(violation.union)

    def test_transversal_of(self) -> None:
        matching = transversal_of(SetSystem.of(4, [[0, 1, 2, 3], [0, 1, 2, 3]]))
        self.assertEqual(matching.pairs, ((0, 0), (1, 1)))

    def test_transversal_of_failure_carries_violation(self) -> None:
        with self.assertRaises(NoTransversalError) as raised:
            transversal_of(SetSystem.of(2, [[0], [0]]))
        self.assertEqual(raised.exception.extra_data["violation"].indices, (0, 1))
        self.assertEqual(raised.exception.status_code, 422)


def _networkx_matching_size(system: SetSystem) -> int:
    graph = nx.Graph()
    elements = [("e", i) for i in range(system.ground_size)]
    graph.add_nodes_from(elements)
    graph.add_nodes_from(("s", j) for j in range(len(system)))
    graph.add_edges_from(
        (("e", i), ("s", j)) for j, member in enumerate(system) for i in member
    )
    matching = nx.bipartite.maximum_matching(graph, top_nodes=elements)
    return len(matching) // 2


@settings(max_examples=60, deadline=None)
@given(set_systems)
def test_matching_size_agrees_with_networkx(system: SetSystem) -> None:
    matching = max_matching(system)
    assert matching.size == _networkx_matching_size(system)
    for element, j in matching.pairs:
        assert element in system[j]


@settings(max_examples=60, deadline=None)
@given(set_systems)
def test_hall_violation_is_deficient_and_minimal(system: SetSystem) -> None:
    violation = hall_check(system)
    assert (violation is None) == has_transversal(system)
    if violation is None:
        return
    assert len(violation.union) < len(violation.indices)
    for k in violation.indices:
        rest = [j for j in violation.indices if j != k]
        assert has_transversal(system.select(rest))
