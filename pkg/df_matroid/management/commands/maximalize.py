from typing import Any

from django.core.management.base import CommandError

from ...drf.serializers import DigraphReportSerializer
from ...gammoid import DigraphRep, maximalize
from ..base import EXIT_USAGE, MatroidCommand


class Command(MatroidCommand):
    help = "Print the maximal presentation of a strict gammoid"
    serializer_class = DigraphReportSerializer

    def run(self, **options: Any) -> None:
        digraph = self.read_input(options["input"])
        if not isinstance(digraph, DigraphRep):
            raise CommandError("maximalize needs a digraph file", returncode=EXIT_USAGE)
        if digraph.sink_arcs():
            self.stderr.write(
                f"ignoring {len(digraph.sink_arcs())} arcs leaving sinks"
            )
        self.emit(self.report(digraph, maximalize(digraph)), options["out"])
