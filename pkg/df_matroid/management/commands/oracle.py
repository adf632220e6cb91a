from typing import Any

from django.core.management.base import CommandParser

from ...drf.serializers import OracleReportSerializer
from ...formats import matroid_of
from ...lattice import (
    beta_all,
    enumerate_cyclic_flats,
    gamma_all,
    is_strict_gammoid_bruteforce,
    is_transversal_bruteforce,
)
from ...reports import OracleResult, TableEntry
from ...utils import check_oracle_limit
from ..base import MatroidCommand

MODES = ["gamma-all", "beta-all", "cyclic-flats", "strict-gammoid", "transversal"]


class Command(MatroidCommand):
    help = "Exhaustive gamma/beta and cyclic flat oracles for small matroids"
    serializer_class = OracleReportSerializer

    def add_arguments(self, parser: CommandParser) -> None:
        super().add_arguments(parser)
        parser.add_argument("--mode", choices=MODES, required=True)
        parser.add_argument(
            "--max-n",
            type=int,
            default=None,
            help="largest ground set to enumerate (default MATROID_MAX_ORACLE_N or settings)",
        )

    def run(self, **options: Any) -> None:
        parsed = self.read_input(options["input"])
        matroid = matroid_of(parsed)
        limit = options["max_n"]
        mode = options["mode"]
        check_oracle_limit(matroid.ground_size, limit)
        n = matroid.ground_size

        if mode in ("gamma-all", "beta-all"):
            table = gamma_all(matroid, limit) if mode == "gamma-all" else beta_all(matroid, limit)
            negative = [mask for mask, value in table.items() if value < 0]
            witness = matroid.element_set(negative[0]) if negative else None
            result = OracleResult(
                mode,
                n,
                holds=not negative,
                witness=witness,
                value=table[negative[0]] if negative else None,
                table=[TableEntry(matroid.element_set(mask), value) for mask, value in table.items()],
            )
        elif mode == "cyclic-flats":
            result = OracleResult(mode, n, flats=enumerate_cyclic_flats(matroid, limit))
        else:
            check = (
                is_strict_gammoid_bruteforce
                if mode == "strict-gammoid"
                else is_transversal_bruteforce
            )
            verdict = check(matroid, limit)
            result = OracleResult(mode, n, holds=verdict.holds, witness=verdict.witness, value=verdict.value)
        self.emit(self.report(parsed, result), options["out"])
