from typing import Any

from django.core.management.base import CommandError, CommandParser

from ...decide import decide_deletion
from ...drf.serializers import DeletionReportSerializer
from ...gammoid import DigraphRep
from ..base import EXIT_NO, EXIT_USAGE, MatroidCommand


class Command(MatroidCommand):
    help = "Decide whether deleting one element of a strict gammoid leaves a strict gammoid"
    serializer_class = DeletionReportSerializer

    def add_arguments(self, parser: CommandParser) -> None:
        super().add_arguments(parser)
        parser.add_argument("--element", type=int, required=True)
        parser.add_argument(
            "--exit-status",
            action="store_true",
            help="exit with status 1 when the answer is no",
        )

    def run(self, **options: Any) -> None:
        digraph = self.read_input(options["input"])
        if not isinstance(digraph, DigraphRep):
            raise CommandError("delete_check needs a digraph file", returncode=EXIT_USAGE)
        decision = decide_deletion(digraph, options["element"])
        self.emit(self.report(digraph, decision), options["out"])
        if options["exit_status"] and not decision.is_yes:
            raise CommandError("verdict: no", returncode=EXIT_NO)
