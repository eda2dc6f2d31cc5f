from intersections.classifier import case_row
from intersections.invariants import sullivan_data, wu_profile
from intersections.records import case_row_record, multidegree_record, sullivan_record, wu_record

from ._base import LITERAL_HELP, RecordCommand


class Command(RecordCommand):
    help = (
        "Ubica X_4(d) en la tabla de rigidez frente a la esfera exótica de "
        "dimensión 8. Las filas conjeturales llevan conjecture = true."
    )

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('multidegree', help=LITERAL_HELP)

    def compute(self, **options):
        md = self.parse_literal(options['multidegree'])
        body = {
            "n": 4,
            "multidegree": multidegree_record(md),
            "sullivan": sullivan_record(sullivan_data(4, md)),
            "wu": wu_record(wu_profile(md)),
            "case_row": case_row_record(case_row(md)),
        }
        return "rigidity", body
