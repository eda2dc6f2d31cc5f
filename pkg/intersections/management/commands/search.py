from intersections.records import aborted_search_record, collision_report_record
from intersections.search import EnumerationLimitExceeded, SearchSpec, find_collisions

from ._base import RecordCommand


class Command(RecordCommand):
    help = (
        "Busca multigrados distintos con los mismos datos de Sullivan dentro de "
        "una caja finita. Si la caja supera el límite (CI_SEARCH_LIMIT o --limit) "
        "aborta con código 2 y estadísticas parciales."
    )

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('n', type=int, help='Dimensión compleja, n >= 3')
        parser.add_argument('--max-degree', type=int, help='Grado máximo de cada hipersuperficie')
        parser.add_argument('--max-k', type=int, default=1, help='Máximo de grados distintos de 1')
        parser.add_argument('--total-degree', type=int, help='Enumera solo factorizaciones de este grado total')
        parser.add_argument('--shards', type=int, default=1, help='Número de shards paralelos')
        parser.add_argument('--limit', type=int, help='Máximo de multigrados enumerados')
        parser.add_argument('--list', action='store_true', help='Incluye los multigrados enumerados')

    def compute(self, **options):
        spec = SearchSpec(
            n=options['n'],
            max_degree=options['max_degree'],
            max_k=options['max_k'],
            total_degree_target=options['total_degree'],
            shard_count=options['shards'],
            limit=options['limit'],
        )
        try:
            report = find_collisions(spec)
        except EnumerationLimitExceeded as exc:
            self.emit("search", aborted_search_record(spec, exc), options['format'])
            raise
        return "search", collision_report_record(report, options['list'])
