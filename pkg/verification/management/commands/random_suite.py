from verification.management.base import ExperimentCommand
from verification.services import random_suite


class Command(ExperimentCommand):
    help = "Suite aléatoire reproductible : bornes spectrales, Kelmans et accord certificat / oracle."
    experiment = 'random-suite'
    default_k = (1, 2)
    default_n_max = 12

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--seed', type=int, default=42)
        parser.add_argument('--samples', type=int, default=1000)
        parser.add_argument('--bipartite-samples', type=int, default=500)
        parser.add_argument('--backbone-samples', type=int, default=0,
                            help="Échantillons par n de l'ossature bipartie (n de 7 à 10)")
        parser.add_argument('--budget', type=int, default=None)

    def config_options(self, options):
        return {
            'seed': options['seed'],
            'samples': options['samples'],
            'bipartite_samples': options['bipartite_samples'],
            'backbone_samples': options['backbone_samples'],
            'budget': options['budget'],
        }

    def run(self, config):
        return random_suite(config)
