"""
Base común de los comandos de la app.

Cada comando implementa ``compute`` y devuelve ``(nombre, cuerpo)``; la base
añade el sobre del registro, elige el formato de salida y traduce las
excepciones de la librería a códigos de salida:

    0  cálculo completado
    1  error de uso o de análisis del literal
    2  límite interno (enumeración) o paso de derivación fallido
"""

import logging
import sys

from django.core.management.base import BaseCommand, CommandError

from intersections.abelian import GroupError
from intersections.classifier import ClassifierError
from intersections.invariants import MultidegreeError, WuTableError
from intersections.ledger import LedgerError
from intersections.literal import LiteralParseError, parse_multidegree
from intersections.records import dumps, envelope, render_table
from intersections.search import EnumerationLimitExceeded, SearchSpecError
from intersections.series import SeriesError

logger = logging.getLogger(__name__)

USAGE_ERROR = 1
GUARD_ERROR = 2

LITERAL_HELP = (
    "Literal de multigrado 'TERM(,TERM)*' con TERM = INT o INT^INT. "
    "IMPORTANTE: 'a^m' significa m copias del grado a (multiplicidad), "
    "no a elevado a m. Ejemplo: '3^150,7^89,15'."
)


class RecordCommand(BaseCommand):
    requires_system_checks = []

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)

        def error(message):
            if parser.called_from_command_line:
                parser.print_usage(sys.stderr)
                parser.exit(USAGE_ERROR, f"{parser.prog}: error: {message}\n")
            raise CommandError(f"Error: {message}", returncode=USAGE_ERROR)

        parser.error = error
        return parser

    def add_arguments(self, parser):
        parser.add_argument(
            '--format',
            choices=['json', 'table'],
            default='json',
            help='Formato de salida; el JSON es el contrato estable',
        )

    def parse_literal(self, text):
        return parse_multidegree(text)

    def compute(self, **options):
        raise NotImplementedError

    def emit(self, command, body, output_format):
        record = envelope(command, body)
        text = render_table(record) if output_format == 'table' else dumps(record)
        self.stdout.write(text)

    def handle(self, *args, **options):
        try:
            command, body = self.compute(**options)
        except (LiteralParseError, MultidegreeError, ClassifierError,
                SearchSpecError, SeriesError) as exc:
            raise CommandError(str(exc), returncode=USAGE_ERROR) from exc
        except EnumerationLimitExceeded as exc:
            raise CommandError(str(exc), returncode=GUARD_ERROR) from exc
        except (WuTableError, LedgerError, GroupError) as exc:
            logger.error("Error interno: %s", exc)
            raise CommandError(str(exc), returncode=GUARD_ERROR) from exc
        self.emit(command, body, options['format'])
