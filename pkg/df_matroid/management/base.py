import logging
from typing import Any, Optional, Type

from django.core.management.base import BaseCommand, CommandError, CommandParser
from rest_framework import serializers
from rest_framework.exceptions import APIException

from ..drf.serializers import render_report
from ..formats import Parsed, input_digest, parse
from ..reports import Report
from ..utils import atomic_write, error_message

logger = logging.getLogger(__name__)

EXIT_NO = 1
EXIT_USAGE = 2


class MatroidCommand(BaseCommand):
    """
    Reads one input file, writes one JSON report to ``--out`` or stdout.

    Package errors become ``CommandError`` with exit status 2.
    """

    serializer_class: Type[serializers.Serializer]

    def add_arguments(self, parser: CommandParser) -> None:
        parser.add_argument("--input", required=True, help="input file")
        parser.add_argument("--out", help="report path, stdout when omitted")

    def read_input(self, path: str) -> Parsed:
        try:
            with open(path, encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            raise CommandError(f"{path}: {exc.strerror}", returncode=EXIT_USAGE)
        try:
            return parse(text)
        except APIException as exc:
            raise CommandError(f"{path}: {error_message(exc)}", returncode=EXIT_USAGE)

    def report(self, parsed: Optional[Parsed], subject: Any, **options: Any) -> Report:
        digest = "" if parsed is None else input_digest(parsed)
        return Report(self.command_name(), digest, subject, options)

    def command_name(self) -> str:
        return self.__module__.rsplit(".", 1)[-1]

    def emit(self, report: Report, out: Optional[str]) -> None:
        text = render_report(self.serializer_class(report).data)
        if out:
            atomic_write(out, text)
            logger.info("%s report written to %s", report.command, out)
        else:
            self.stdout.write(text, ending="")

    def handle(self, *args: Any, **options: Any) -> None:
        try:
            self.run(**options)
        except APIException as exc:
            raise CommandError(error_message(exc), returncode=EXIT_USAGE)

    def run(self, **options: Any) -> None:
        raise NotImplementedError
