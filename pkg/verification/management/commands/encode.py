from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from graphs.families import ALLOWED_DELETIONS, make_family, make_perturbed_family
from graphs.graph6 import encode_graph6
from graphs.structures import Family, FamilyParams


class Command(BaseCommand):
    help = "Écrit l'enregistrement graph6 d'un graphe de famille, éventuellement privé d'une arête."

    def add_arguments(self, parser):
        parser.add_argument('family', choices=[f.value for f in Family])
        parser.add_argument('n', type=int)
        parser.add_argument('k', type=int)
        parser.add_argument('--delete', default=None,
                            choices=sorted({str(d) for pairs in ALLOWED_DELETIONS.values() for d in pairs}),
                            help="Paire de classes de l'arête supprimée")

    def handle(self, *args, **options):
        try:
            params = FamilyParams(options['family'], options['n'], options['k'])
            if options['delete']:
                g = make_perturbed_family(params, options['delete'])
            else:
                g = make_family(params)
        except ValidationError as exc:
            raise CommandError('; '.join(exc.messages), returncode=2)
        core = getattr(g, 'core', g)
        self.stdout.write(encode_graph6(core).decode('ascii'))
