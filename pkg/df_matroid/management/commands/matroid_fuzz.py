import dataclasses
from typing import Any

from django.core.management.base import CommandError, CommandParser

from ...corpus import CONTRACTION, DELETION, run_fuzz
from ...drf.serializers import FuzzReportSerializer
from ...formats import format_any
from ...settings import api_settings
from ...utils import atomic_write
from ..base import EXIT_NO, MatroidCommand


class Command(MatroidCommand):
    help = "Run the seeded differential harness against the exhaustive oracles"
    serializer_class = FuzzReportSerializer

    def add_arguments(self, parser: CommandParser) -> None:
        parser.add_argument("--seed", type=int, default=None)
        parser.add_argument("--count", type=int, default=100)
        parser.add_argument("--kind", choices=[DELETION, CONTRACTION], default=DELETION)
        parser.add_argument("--pin", help="write the first no-instance found to this path")
        parser.add_argument("--out", help="report path, stdout when omitted")

    def run(self, **options: Any) -> None:
        seed = api_settings.FUZZ_SEED if options["seed"] is None else options["seed"]
        result, first_no = run_fuzz(options["kind"], seed, options["count"])
        if options["pin"] and first_no is not None:
            text = (
                f"# element {first_no.element}, oracle witness {first_no.witness}\n"
                + format_any(first_no.presentation)
            )
            atomic_write(options["pin"], text)
            result = dataclasses.replace(result, pinned=options["pin"])
        self.emit(self.report(None, result), options["out"])
        if result.disagreements:
            raise CommandError(
                f"{len(result.disagreements)} disagreements with the oracle", returncode=EXIT_NO
            )
