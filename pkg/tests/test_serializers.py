import json

from django.test import SimpleTestCase

from df_matroid.decide import BoundExceeded, NoTransversal, RankMismatch
from df_matroid.drf.serializers import (
    CyclicFlatFamilySerializer,
    WitnessField,
    render_report,
)
from df_matroid.ground import ElementSet, HallViolation
from tests.factories import k4_family


class WitnessFieldTest(SimpleTestCase):
    def setUp(self) -> None:
        self.field = WitnessField()

    def test_hall_violation(self) -> None:
        witness = NoTransversal(HallViolation((0, 2), ElementSet.of(3, [1])))
        self.assertEqual(
            self.field.to_representation(witness),
            {"kind": "no_transversal", "sets": [0, 2], "union": [1]},
        )

    def test_sets_become_lists(self) -> None:
        witness = RankMismatch(ElementSet.of(3, [0]), ElementSet.of(3, [2]), 2, 1)
        self.assertEqual(
            self.field.to_representation(witness),
            {
                "kind": "rank_mismatch",
                "first": [0],
                "second": [2],
                "rank": 2,
                "constructed_rank": 1,
            },
        )

    def test_scalars(self) -> None:
        self.assertEqual(
            self.field.to_representation(BoundExceeded(7, 5)),
            {"kind": "bound_exceeded", "total": 7, "limit": 5},
        )


class RenderReportTest(SimpleTestCase):
    def test_indent_and_trailing_newline(self) -> None:
        text = render_report(CyclicFlatFamilySerializer(k4_family()).data)
        self.assertTrue(text.endswith("}\n"))
        self.assertIn('\n  "flats": [', text)
        self.assertFalse([line for line in text.splitlines() if line.endswith(" ")])
        data = json.loads(text)
        self.assertEqual(data["ground_size"], 6)
        self.assertEqual(data["flats"][0], {"flat": [], "rank": 0, "gamma": None})
