from typing import Any

from django.core.management.base import CommandError

from ...drf.serializers import FlatsReportSerializer
from ...gammoid import DigraphRep, maximalize, read_flats
from ..base import EXIT_USAGE, MatroidCommand


class Command(MatroidCommand):
    help = "List the cyclic flats with positive gamma of a strict gammoid"
    serializer_class = FlatsReportSerializer

    def run(self, **options: Any) -> None:
        digraph = self.read_input(options["input"])
        if not isinstance(digraph, DigraphRep):
            raise CommandError("read_flats needs a digraph file", returncode=EXIT_USAGE)
        family = read_flats(maximalize(digraph))
        self.emit(self.report(digraph, family), options["out"])
