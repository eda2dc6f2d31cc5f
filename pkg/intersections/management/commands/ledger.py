from django.core.management.base import CommandError

from intersections.ledger import COUNTERFACTUALS, replay_lemma_4_2
from intersections.records import derivation_report_record

from ._base import GUARD_ERROR, RecordCommand


class Command(RecordCommand):
    help = (
        "Reproduce el cálculo Tors Ω_8 de CP^1 ≅ Z/4 a partir del ledger de "
        "grupos de homotopía estable. Sale con código 2 si algún paso falla."
    )

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('action', choices=['verify'])
        parser.add_argument(
            '--counterfactual',
            choices=COUNTERFACTUALS,
            help='split-bracket: sustituye el corchete registrado por uno que contiene 0',
        )
        parser.add_argument('--ledger', dest='ledger_path', help='Archivo JSON alternativo del ledger')

    def compute(self, **options):
        self.report = replay_lemma_4_2(
            path=options['ledger_path'],
            counterfactual=options['counterfactual'],
        )
        return "ledger verify", derivation_report_record(self.report)

    def handle(self, *args, **options):
        super().handle(*args, **options)
        failed = self.report.failed_step
        if failed is not None:
            raise CommandError(f"Paso ({failed.key}) fallido: {failed.detail}", returncode=GUARD_ERROR)
        if not self.report.passed:
            raise CommandError("Derivación incompleta", returncode=GUARD_ERROR)
