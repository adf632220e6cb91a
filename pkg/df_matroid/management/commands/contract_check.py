from typing import Any

from django.core.management.base import CommandError, CommandParser

from ...decide import decide_contraction
from ...drf.serializers import ContractionReportSerializer
from ...ground import SetSystem
from ..base import EXIT_NO, EXIT_USAGE, MatroidCommand


class Command(MatroidCommand):
    help = "Decide whether contracting one element of a transversal matroid leaves a transversal matroid"
    serializer_class = ContractionReportSerializer

    def add_arguments(self, parser: CommandParser) -> None:
        super().add_arguments(parser)
        parser.add_argument("--element", type=int, required=True)
        parser.add_argument("--exit-status", action="store_true")

    def run(self, **options: Any) -> None:
        system = self.read_input(options["input"])
        if not isinstance(system, SetSystem):
            raise CommandError("contract_check needs a bipartite file", returncode=EXIT_USAGE)
        decision = decide_contraction(system, options["element"])
        self.emit(self.report(system, decision), options["out"])
        if options["exit_status"] and not decision.is_yes:
            raise CommandError("verdict: no", returncode=EXIT_NO)
