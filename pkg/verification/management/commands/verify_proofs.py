from verification.management.base import ExperimentCommand
from verification.services import verify_proofs


class Command(ExperimentCommand):
    help = "Rejoue numériquement les inégalités intermédiaires des preuves."
    experiment = 'proof-replication'
    default_k = (1, 2, 3)
    default_n_max = 40

    def run(self, config):
        return verify_proofs(config)
