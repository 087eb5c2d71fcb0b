"""
Socle des commandes d'expérience : options de grille communes, construction de
l'ExperimentConfig, écriture du rapport (texte aligné ou CSV) et code de sortie.

Codes de sortie : 0 si toutes les vérifications passent, 1 en cas d'échec, 2 pour une
erreur d'usage ou de saisie.
"""
import logging

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from verification.reports import FIELDS, format_value, render_text, summarize, write_csv
from verification.services import ExperimentConfig

logger = logging.getLogger(__name__)


class ExperimentCommand(BaseCommand):
    experiment = ''
    default_k = (1,)
    default_n_min = 5
    default_n_max = 16
    default_format = 'text'
    fields = FIELDS
    grid_options = True

    def add_arguments(self, parser):
        parser.add_argument('--k', type=int, nargs='+', default=list(self.default_k))
        if self.grid_options:
            parser.add_argument('--n-min', type=int, default=self.default_n_min)
            parser.add_argument('--n-max', type=int, default=self.default_n_max)
            parser.add_argument('--jobs', type=int, default=1, help="Cellules évaluées en parallèle")
        parser.add_argument('--tol', type=float, default=None)
        parser.add_argument('--out', default=None, help="Fichier de sortie (sortie standard par défaut)")
        parser.add_argument('--format', choices=('text', 'csv'), default=self.default_format)

    def config_options(self, options):
        """Options propres à la commande, ajoutées à l'ExperimentConfig."""
        return {}

    def run(self, config):
        raise NotImplementedError

    def build_config(self, options):
        grid = {}
        if self.grid_options:
            grid = {'n_min': options['n_min'], 'n_max': options['n_max'], 'jobs': options['jobs']}
        return ExperimentConfig(
            experiment=self.experiment,
            k_values=tuple(options['k']),
            tol=options['tol'],
            out=options['out'],
            **grid,
            **self.config_options(options),
        )

    def records(self, rows):
        return [row.record() for row in rows]

    def handle(self, *args, **options):
        try:
            config = self.build_config(options)
            rows = self.run(config)
        except ValidationError as exc:
            raise CommandError('; '.join(exc.messages), returncode=2)
        self.write_report(self.records(rows), options['format'], config.out)
        self.conclude(rows)

    def write_report(self, records, fmt, out):
        if out:
            try:
                with open(out, 'w', newline='', encoding='utf-8') as stream:
                    self._write(records, fmt, stream)
            except OSError as exc:
                raise CommandError(f"Cannot write {out}: {exc}", returncode=2)
            logger.info(f"{self.experiment} report written to {out}")
        else:
            self._write(records, fmt, self.stdout)

    def _write(self, records, fmt, stream):
        if fmt == 'csv':
            write_csv(records, stream, self.fields)
        else:
            stream.write(render_text(records, self.fields))

    def conclude(self, rows):
        self.stderr.write(summarize(rows))
        failed = [row for row in rows if not row.passed]
        for row in failed:
            logger.error(f"{row.experiment} n={row.n} k={row.k}: {row.quantity}={format_value(row.value)} "
                         f"violates {row.relation} {format_value(row.bound)} {row.note}")
        if failed:
            raise CommandError(f"{len(failed)} check(s) failed", returncode=1)
