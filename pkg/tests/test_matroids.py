import random

from django.test import SimpleTestCase

from df_matroid.corpus import random_set_system
from df_matroid.exceptions import CyclicFlatAxiomError, GroundSizeError
from df_matroid.ground import ElementSet, SetSystem
from df_matroid.lattice import CyclicFlatFamily, enumerate_cyclic_flats
from df_matroid.matroids import TransversalMatroid, matroid_from_cyclic_flats
from df_matroid.utils import popcount
from tests.factories import (
    K4_EDGES,
    all_masks,
    graphic_rank,
    k4_family,
    rank_table,
    transversal_rank,
    u24_system,
)


def _sets(n: int, *members: int) -> ElementSet:
    return ElementSet.of(n, members)


class TransversalMatroidTest(SimpleTestCase):
    def setUp(self) -> None:
        self.u24 = TransversalMatroid(u24_system())
        self.path = TransversalMatroid(SetSystem.of(3, [[0, 1], [1, 2]]))

    def test_rank(self) -> None:
        self.assertEqual(self.u24.rank(ElementSet.empty(4)), 0)
        self.assertEqual(self.u24.rank(_sets(4, 0)), 1)
        self.assertEqual(self.u24.rank(_sets(4, 0, 3)), 2)
        self.assertEqual(self.u24.rank(), 2)
        self.assertEqual(self.path.rank(_sets(3, 0, 2)), 2)

    def test_nullity(self) -> None:
        self.assertEqual(self.u24.nullity(), 2)
        self.assertEqual(self.u24.nullity(_sets(4, 0, 1, 2)), 1)

    def test_closure(self) -> None:
        self.assertEqual(list(self.u24.closure(_sets(4, 0))), [0])
        self.assertEqual(list(self.u24.closure(_sets(4, 0, 1))), [0, 1, 2, 3])
        self.assertTrue(self.u24.is_flat(_sets(4, 2)))
        self.assertFalse(self.u24.is_flat(_sets(4, 2, 3)))

    def test_cyclic(self) -> None:
        self.assertTrue(self.u24.is_cyclic(_sets(4, 0, 1, 2)))
        self.assertFalse(self.u24.is_cyclic(_sets(4, 0, 1)))
        self.assertTrue(self.u24.is_cyclic(ElementSet.empty(4)))

    def test_coloops_of_restriction(self) -> None:
        with_coloop = TransversalMatroid(SetSystem.of(3, [[0, 1], [2]]))
        self.assertEqual(list(with_coloop.coloops_of_restriction(ElementSet.full(3))), [2])
        self.assertEqual(list(self.u24.coloops_of_restriction(_sets(4, 0, 1))), [0, 1])

    def test_loops(self) -> None:
        matroid = TransversalMatroid(SetSystem.of(3, [[0, 1]]))
        self.assertEqual(list(matroid.loops()), [2])

    def test_foreign_ground_size_is_rejected(self) -> None:
        with self.assertRaises(GroundSizeError):
            self.u24.rank(ElementSet.empty(3))

    def test_rank_agrees_with_search(self) -> None:
        rng = random.Random(5)
        for _ in range(10):
            system = random_set_system(rng, 5, 4, 0.4)
            matroid = TransversalMatroid(system)
            for mask in all_masks(5):
                self.assertEqual(matroid.rank_mask(mask), transversal_rank(system, mask))


class DerivedMatroidTest(SimpleTestCase):
    def setUp(self) -> None:
        self.u24 = TransversalMatroid(u24_system())

    def test_dual_of_uniform(self) -> None:
        dual = self.u24.dual()
        for mask in all_masks(4):
            self.assertEqual(dual.rank_mask(mask), min(popcount(mask), 2))

    def test_dual_of_free_matroid(self) -> None:
        free = TransversalMatroid(SetSystem.of(3, [[0], [1], [2]]))
        self.assertEqual(set(rank_table(free.dual()).values()), {0})

    def test_dual_is_involutive(self) -> None:
        self.assertIs(self.u24.dual().dual(), self.u24)

    def test_delete(self) -> None:
        deleted = self.u24.delete(_sets(4, 3))
        self.assertEqual(deleted.ground_size, 3)
        self.assertEqual(deleted.labels, (0, 1, 2))
        for mask in all_masks(3):
            self.assertEqual(deleted.rank_mask(mask), min(popcount(mask), 2))

    def test_contract(self) -> None:
        contracted = self.u24.contract(_sets(4, 3))
        for mask in all_masks(3):
            self.assertEqual(contracted.rank_mask(mask), min(popcount(mask), 1))

    def test_restrict_keeps_labels(self) -> None:
        restricted = self.u24.restrict(_sets(4, 1, 3))
        self.assertEqual(restricted.labels, (1, 3))
        self.assertEqual(restricted.rank(), 2)

    def test_minor_closure_is_lowered(self) -> None:
        contracted = self.u24.contract(_sets(4, 3))
        # after contracting 3 every element spans the rest
        self.assertEqual(contracted.closure_mask(0b001), 0b111)

    def test_delete_element_is_memoized(self) -> None:
        self.assertIs(self.u24.delete_element(2), self.u24.delete_element(2))

    def test_dual_swaps_deletion_and_contraction(self) -> None:
        rng = random.Random(11)
        for _ in range(5):
            matroid = TransversalMatroid(random_set_system(rng, 5, 3, 0.5))
            removed = _sets(5, 1)
            left = matroid.delete(removed).dual()
            right = matroid.dual().contract(removed)
            self.assertEqual(rank_table(left), rank_table(right))


class CyclicFlatDefinedMatroidTest(SimpleTestCase):
    def test_free_matroid(self) -> None:
        matroid = matroid_from_cyclic_flats(CyclicFlatFamily.build(3, [([], 0, None)]))
        for mask in all_masks(3):
            self.assertEqual(matroid.rank_mask(mask), popcount(mask))

    def test_uniform_matroid(self) -> None:
        family = CyclicFlatFamily.build(4, [([], 0, None), (range(4), 2, None)])
        matroid = matroid_from_cyclic_flats(family)
        self.assertEqual(rank_table(matroid), rank_table(TransversalMatroid(u24_system())))

    def test_k4_is_graphic(self) -> None:
        matroid = matroid_from_cyclic_flats(k4_family())
        for mask in all_masks(6):
            self.assertEqual(matroid.rank_mask(mask), graphic_rank(K4_EDGES, mask))

    def test_round_trip_through_cyclic_flats(self) -> None:
        rng = random.Random(3)
        for _ in range(5):
            matroid = TransversalMatroid(random_set_system(rng, 5, 3, 0.5))
            rebuilt = matroid_from_cyclic_flats(enumerate_cyclic_flats(matroid))
            self.assertEqual(rank_table(rebuilt), rank_table(matroid))

    def test_axiom_failure(self) -> None:
        family = CyclicFlatFamily.build(3, [([], 0, None), ([0, 1], 2, None)])
        with self.assertRaises(CyclicFlatAxiomError) as raised:
            matroid_from_cyclic_flats(family)
        self.assertEqual(raised.exception.report.axiom, "Z3")
