from fractions import Fraction

from django.core.exceptions import ValidationError
from django.utils.translation import gettext as _


def validate_family_params(family, n, k):
    """
    Vérifie les bornes des paramètres d'une famille extrémale :
    - L et N : 1 <= k <= (n-1)/2
    - B : k >= 1 et n >= 2k+1
    """
    family = str(family)
    if family not in ('L', 'N', 'B'):
        raise ValidationError(
            _("Famille inconnue : %(family)s (attendu L, N ou B)."),
            code='unknown_family',
            params={'family': family},
        )
    if not isinstance(n, int) or not isinstance(k, int):
        raise ValidationError(
            _("Les paramètres n et k doivent être entiers."),
            code='non_integer_params',
        )
    if k < 1:
        raise ValidationError(
            _("Le paramètre k doit être au moins 1 (reçu %(k)s)."),
            code='k_too_small',
            params={'k': k},
        )
    # n >= 2k+1 est équivalent à k <= (n-1)/2 pour les trois familles
    if n < 2 * k + 1:
        raise ValidationError(
            _("%(family)s^%(k)s_%(n)s exige n >= 2k+1."),
            code='n_too_small',
            params={'family': family, 'n': n, 'k': k},
        )


def validate_vertex(g, v, name='v'):
    if not 0 <= v < g.n:
        raise ValidationError(
            _("Sommet %(name)s=%(v)s hors de [0, %(n)s)."),
            code='vertex_out_of_range',
            params={'name': name, 'v': v, 'n': g.n},
        )


def validate_kelmans_pair(g, u, v):
    validate_vertex(g, u, 'u')
    validate_vertex(g, v, 'v')
    if u == v:
        raise ValidationError(
            _("L'opération de Kelmans exige deux sommets distincts."),
            code='kelmans_same_vertex',
        )


def validate_even_k(k):
    """n = k^3/2 + k + 2 n'est entier que pour k pair."""
    if k < 2 or k % 2:
        raise ValidationError(
            _("k=%(k)s refusé : k doit être pair et >= 2, sinon n = k^3/2 + k + 2 = %(n)s n'est pas entier."),
            code='k_not_even',
            params={'k': k, 'n': Fraction(k ** 3, 2) + k + 2},
        )
