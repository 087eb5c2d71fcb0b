import json
import logging
import sys

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from certifier.exceptions import TheoremViolation
from certifier.serializers import CertificateSerializer
from certifier.services import certify
from graphs.graph6 import read_graph6_lines
from graphs.structures import BipartiteGraph

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = "Certifie chaque graphe d'un flux graph6 (fichier ou entrée standard), un certificat JSON par ligne."

    def add_arguments(self, parser):
        parser.add_argument('input', nargs='?', default='-', help="Fichier graph6, '-' pour l'entrée standard")
        parser.add_argument('--bipartite', action='store_true',
                            help="Les n premiers sommets forment le côté A d'un biparti équilibré")
        parser.add_argument('--budget', type=int, default=None)

    def handle(self, *args, **options):
        path = options['input']
        if path == '-':
            unresolved = self.certify_stream(sys.stdin, options)
        else:
            try:
                with open(path, 'rb') as stream:
                    unresolved = self.certify_stream(stream, options)
            except OSError as exc:
                raise CommandError(f"Cannot read {path}: {exc}", returncode=2)
        if unresolved:
            raise CommandError(f"{unresolved} graph(s) left inconclusive", returncode=1)

    def certify_stream(self, stream, options):
        unresolved = 0
        try:
            for lineno, g in read_graph6_lines(stream):
                if options['bipartite']:
                    g = BipartiteGraph.from_halves(g)
                certificate = certify(g, options['budget'])
                logger.debug(f"Line {lineno}: {certificate}")
                self.stdout.write(json.dumps(CertificateSerializer(certificate).data, sort_keys=True))
                if not certificate.resolved:
                    unresolved += 1
        except ValidationError as exc:
            raise CommandError('; '.join(exc.messages), returncode=2)
        except TheoremViolation as exc:
            logger.error(f"Theorem violation: {exc}")
            raise CommandError(str(exc), returncode=1)
        return unresolved
