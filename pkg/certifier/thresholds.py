"""
Régimes d'application des règles (seuils sur n) et comparaison de lambda à un seuil
avec bande de garde.
"""
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from graphs.structures import FamilyParams
from graphs.utils import hamcheck_setting
from spectral.polynomials import sign_change_threshold
from spectral.quotients import quotient_lambda, quotient_of_family


class Rule:
    FIEDLER_NIKIFOROV = 'fiedler-nikiforov'
    MIN_DEGREE_SPECTRAL = 'min-degree-spectral'
    EXTREMAL_SPECTRAL = 'extremal-spectral'
    EDGE_COUNT = 'edge-count'
    BIPARTITE_MIN_DEGREE_SPECTRAL = 'bipartite-min-degree-spectral'
    BIPARTITE_EXTREMAL_SPECTRAL = 'bipartite-extremal-spectral'
    BIPARTITE_EDGE_COUNT = 'bipartite-edge-count'
    EXACT_SEARCH = 'exact-search'


class Comparison(str, Enum):
    ABOVE = 'above'
    AT = 'at'
    BELOW = 'below'


def compare(value, threshold, guard=None):
    """ABOVE / BELOW hors de la bande de garde, AT dedans."""
    guard = hamcheck_setting('GUARD_BAND') if guard is None else guard
    if value > threshold + guard:
        return Comparison.ABOVE
    if value < threshold - guard:
        return Comparison.BELOW
    return Comparison.AT


def min_degree_spectral_min_n(k):
    return max(sign_change_threshold(k), Fraction(6 * k + 5))


def extremal_spectral_min_n(k):
    return max(Fraction(6 * k + 5), Fraction(k * k + 6 * k + 4, 2))


def edge_count_min_n(k):
    return 6 * k + 5


def bipartite_min_degree_spectral_min_n(k):
    return k ** 3 + 2 * k + 4


def bipartite_extremal_spectral_min_n(k):
    return (k + 1) ** 2


def bipartite_edge_count_min_n(k):
    return 2 * k + 1


@lru_cache(maxsize=1024)
def family_lambda(family, n, k):
    """Rayon spectral exact d'un graphe de famille, via son quotient 3x3 ou 4x4."""
    return quotient_lambda(quotient_of_family(FamilyParams(family, n, k)))
