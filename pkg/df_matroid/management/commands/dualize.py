from typing import Any

from django.core.management.base import CommandError

from ...decide import dual_digraph_of_transversal, normalize_presentation
from ...drf.serializers import DualizeReportSerializer
from ...formats import BIPARTITE, DIGRAPH, format_bipartite, format_digraph
from ...gammoid import DigraphRep, neighbourhood_multiset
from ...ground import SetSystem
from ...reports import DualizeResult
from ..base import EXIT_USAGE, MatroidCommand


class Command(MatroidCommand):
    help = "Convert between a strict gammoid digraph and a bipartite presentation of its dual"
    serializer_class = DualizeReportSerializer

    def run(self, **options: Any) -> None:
        parsed = self.read_input(options["input"])
        if isinstance(parsed, DigraphRep):
            result = DualizeResult(
                BIPARTITE, format_bipartite(neighbourhood_multiset(parsed))
            )
        elif isinstance(parsed, SetSystem):
            normalized = normalize_presentation(parsed)
            result = DualizeResult(
                DIGRAPH,
                format_digraph(dual_digraph_of_transversal(normalized)),
                normalized_from=len(parsed) if len(normalized) != len(parsed) else None,
            )
        else:
            raise CommandError("dualize needs a digraph or bipartite file", returncode=EXIT_USAGE)
        self.emit(self.report(parsed, result), options["out"])
