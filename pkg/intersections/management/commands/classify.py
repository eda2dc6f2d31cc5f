from intersections.classifier import classify
from intersections.invariants import sullivan_data
from intersections.records import multidegree_record, sullivan_record, verdict_record

from ._base import LITERAL_HELP, RecordCommand


class Command(RecordCommand):
    help = "Compara X_n(a) con X_n(b) y emite el veredicto con su cita."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('n', type=int, help='Dimensión compleja, n >= 2')
        parser.add_argument('a', help=LITERAL_HELP)
        parser.add_argument('b', help='Segundo literal de multigrado')

    def compute(self, **options):
        n = options['n']
        a = self.parse_literal(options['a'])
        b = self.parse_literal(options['b'])
        verdict = classify(n, a, b)
        body = {
            "n": n,
            "a": {"multidegree": multidegree_record(a), "sullivan": sullivan_record(sullivan_data(n, a))},
            "b": {"multidegree": multidegree_record(b), "sullivan": sullivan_record(sullivan_data(n, b))},
            "verdict": verdict_record(verdict),
        }
        return "classify", body
