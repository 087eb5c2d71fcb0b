import sys

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from graphs.graph6 import read_graph6_lines


class Command(BaseCommand):
    help = "Affiche n, e, delta et la liste d'arêtes de chaque enregistrement graph6."

    def add_arguments(self, parser):
        parser.add_argument('input', nargs='?', default='-')

    def handle(self, *args, **options):
        path = options['input']
        try:
            if path == '-':
                self.describe(sys.stdin)
            else:
                with open(path, 'rb') as stream:
                    self.describe(stream)
        except OSError as exc:
            raise CommandError(f"Cannot read {path}: {exc}", returncode=2)
        except ValidationError as exc:
            raise CommandError('; '.join(exc.messages), returncode=2)

    def describe(self, stream):
        for lineno, g in read_graph6_lines(stream):
            delta = g.min_degree if g.n else 0
            edges = ' '.join(f"{u}-{v}" for u, v in g.edges())
            self.stdout.write(f"{lineno}: n={g.n} e={g.edge_count} delta={delta} edges={edges}")
