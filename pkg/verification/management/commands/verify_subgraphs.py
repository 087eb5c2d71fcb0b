from verification.management.base import ExperimentCommand
from verification.services import verify_subgraphs


class Command(ExperimentCommand):
    help = "Borne lambda < n-k-1 sur les sous-graphes couvrants de N^k_n et L^k_n."
    experiment = 'family-subgraph'
    default_k = (1, 2)

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--all', action='store_true', help="Toutes les arêtes au lieu d'une par orbite")
        parser.add_argument('--force', action='store_true', help="Évalue aussi les n sous le régime")

    def config_options(self, options):
        return {'all_edges': options['all'], 'force': options['force']}

    def run(self, config):
        return verify_subgraphs(config)
