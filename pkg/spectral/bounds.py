"""
Bornes spectrales classiques vérifiées numériquement : lambda_2 <= (n-2)/2, borne
degré-valeur propre pour delta >= k, et lambda <= sqrt(e) pour un graphe biparti.
"""
import logging
from fractions import Fraction
from math import comb, sqrt

from django.core.exceptions import ValidationError
from django.utils.translation import gettext as _

from graphs.structures import BipartiteGraph

from .exceptions import BoundPreconditionError
from .services import compute_spectrum

logger = logging.getLogger(__name__)

BOUND_TOL = 1e-9


def hong_bound(n):
    return (n - 2) / 2


def check_hong(g, result=None):
    """lambda_2 <= (n-2)/2 ; un échec signale une erreur du solveur."""
    core = g.core if isinstance(g, BipartiteGraph) else g
    if core.n < 2:
        raise ValidationError(_("La borne sur lambda_2 exige n >= 2."), code='n_too_small', params={'n': core.n})
    result = result or compute_spectrum(core)
    holds = result.lambda2 <= hong_bound(core.n) + BOUND_TOL
    if not holds:
        logger.warning(f"lambda2={result.lambda2:.12g} exceeds (n-2)/2 on {core}")
    return holds


def nikiforov_bound(n, e, k):
    """(k-1)/2 + sqrt(2e - nk + (k+1)^2/4)."""
    return (k - 1) / 2 + sqrt(2 * e - n * k + (k + 1) ** 2 / 4)


def check_bound_nikiforov(g, k, result=None):
    if g.min_degree < k:
        raise BoundPreconditionError(f"min degree {g.min_degree} < k={k}")
    result = result or compute_spectrum(g)
    return result.lambda1 <= nikiforov_bound(g.n, g.edge_count, k) + BOUND_TOL


def check_bound_bfp(g, result=None):
    """lambda <= sqrt(e) pour un graphe biparti."""
    if not isinstance(g, BipartiteGraph):
        raise BoundPreconditionError("the sqrt(e) bound needs a bipartite graph")
    result = result or compute_spectrum(g)
    return result.lambda1 <= sqrt(g.edge_count) + BOUND_TOL


def edge_floor(n, k):
    """Minorant (n^2 - (2k+1)n + k(2k+1)) / 2 du nombre d'arêtes quand lambda >= n-k-1 et delta >= k."""
    return Fraction(n * n - (2 * k + 1) * n + k * (2 * k + 1), 2)


def edge_threshold(n, k):
    """Seuil C(n-k-1, 2) + (k+1)^2 de la règle par nombre d'arêtes."""
    return comb(n - k - 1, 2) + (k + 1) ** 2


def bipartite_edge_threshold(n, k):
    return n * (n - k - 1) + (k + 1) ** 2
