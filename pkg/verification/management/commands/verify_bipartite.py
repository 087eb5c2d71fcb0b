from verification.management.base import ExperimentCommand
from verification.services import verify_bipartite


class Command(ExperimentCommand):
    help = "Borne lambda < sqrt(n(n-k)) sur les sous-graphes couvrants de B^k_n."
    experiment = 'bipartite-subgraph'
    default_k = (1, 2)
    default_n_min = 3
    default_n_max = 24

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--all', action='store_true')
        parser.add_argument('--force', action='store_true')

    def config_options(self, options):
        return {'all_edges': options['all'], 'force': options['force']}

    def run(self, config):
        return verify_bipartite(config)
