from intersections.classifier import case_row
from intersections.invariants import sullivan_data, wu_profile
from intersections.records import case_row_record, multidegree_record, sullivan_record, wu_record

from ._base import LITERAL_HELP, RecordCommand


class Command(RecordCommand):
    help = (
        "Datos de Sullivan (d, p_1..p_{n/2}, chi) de X_n(d). Para n = 4 añade "
        "el perfil de Wu y la fila de la tabla de casos."
    )

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('n', type=int, help='Dimensión compleja, n >= 1')
        parser.add_argument('multidegree', help=LITERAL_HELP)
        parser.add_argument(
            '--classical-signs',
            action='store_true',
            help='Emite también (-1)^i p_i (convenio clásico)',
        )

    def compute(self, **options):
        n = options['n']
        md = self.parse_literal(options['multidegree'])
        body = {
            "multidegree": multidegree_record(md),
            "sullivan": sullivan_record(sullivan_data(n, md), options['classical_signs']),
        }
        if n == 4:
            body["wu"] = wu_record(wu_profile(md))
            body["case_row"] = case_row_record(case_row(md))
        return "sd", body
