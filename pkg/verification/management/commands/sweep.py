from verification.management.base import ExperimentCommand
from verification.reports import format_value
from verification.services import SWEEP_FIELDS, sweep


class Command(ExperimentCommand):
    help = "Grille (n, k) des rayons spectraux des familles et des seuils, au format CSV."
    experiment = 'sweep'
    default_k = (1, 2, 3)
    default_n_min = 3
    default_n_max = 30
    default_format = 'csv'
    fields = SWEEP_FIELDS

    def run(self, config):
        return sweep(config)

    def records(self, rows):
        return [{name: format_value(value) for name, value in row.items()} for row in rows]

    def conclude(self, rows):
        self.stderr.write(f"{len(rows)} cells")
