from verification.management.base import ExperimentCommand
from verification.services import verify_sharpness


class Command(ExperimentCommand):
    help = "Optimalité du seuil : n = k^3/2 + k + 2 pour k pair."
    experiment = 'sharpness'
    default_k = (2,)
    grid_options = False

    def run(self, config):
        return verify_sharpness(config)
