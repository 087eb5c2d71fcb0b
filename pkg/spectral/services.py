"""
Calcul du rayon spectral lambda_1 et de la seconde valeur propre lambda_2 de la matrice
d'adjacence : décomposition dense (scipy.linalg.eigh) ou itération de la puissance avec
déflation, par composante connexe.
"""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from django.core.exceptions import ValidationError
from django.utils.translation import gettext as _
from scipy import linalg, sparse

from graphs.structures import BipartiteGraph
from graphs.utils import hamcheck_setting, iter_bits

from .exceptions import PowerIterationError

logger = logging.getLogger(__name__)


class Method:
    DENSE = 'dense'
    POWER = 'power'
    QUOTIENT = 'quotient'


@dataclass(frozen=True)
class SpectralResult:
    lambda1: float
    lambda2: Optional[float]
    perron: np.ndarray
    residual: float
    method: str

    @property
    def n(self):
        return len(self.perron)


def _core(g):
    return g.core if isinstance(g, BipartiteGraph) else g


def _residual(matrix, vector, value):
    return float(np.max(np.abs(matrix @ vector - value * vector))) if len(vector) else 0.0


def spectral_dense(g):
    """Décomposition symétrique complète ; oracle de référence pour toutes les valeurs de lambda."""
    g = _core(g)
    a = g.adjacency_matrix()
    values, vectors = linalg.eigh(a, driver='ev')
    perron = np.abs(vectors[:, -1])
    perron /= np.linalg.norm(perron)
    lambda1 = float(values[-1])
    lambda2 = float(values[-2]) if g.n > 1 else None
    residual = _residual(a, perron, lambda1)
    if residual > hamcheck_setting('SOLVER_TOL'):
        logger.warning(f"Dense residual {residual:.3e} above tolerance for {g}")
    return SpectralResult(lambda1, lambda2, perron, residual, Method.DENSE)


def _sparse_adjacency(g, vertices):
    position = {v: i for i, v in enumerate(vertices)}
    rows, cols = [], []
    for v in vertices:
        for w in iter_bits(g.rows[v]):
            if w in position:
                rows.append(position[v])
                cols.append(position[w])
    size = len(vertices)
    return sparse.csr_array((np.ones(len(rows)), (rows, cols)), shape=(size, size))


def _dominant(a, tol, max_iter):
    """Couple propre dominant de A (symétrique, positive, connexe) par itération sur A + I."""
    size = a.shape[0]
    x = np.full(size, 1.0 / np.sqrt(size))
    value = 0.0
    residual = np.inf
    for step in range(max_iter):
        ax = a @ x
        value = float(x @ ax)
        residual = float(np.max(np.abs(ax - value * x)))
        if residual <= tol:
            return value, x
        # décalage +1 : le spectre de A + I est dominé par lambda_1 + 1 même pour un graphe biparti
        y = ax + x
        x = y / np.linalg.norm(y)
    raise PowerIterationError(max_iter, residual)


def _deflated_second(a, lambda1, p, tol, max_iter):
    """
    Seconde valeur propre par déflation : A + lambda_1 I - 2 lambda_1 p p^T a un spectre positif
    dont la valeur dominante vaut lambda_2 + lambda_1.
    """
    size = a.shape[0]
    rng = np.random.default_rng(0)
    x = rng.standard_normal(size)
    x -= (x @ p) * p
    x /= np.linalg.norm(x)
    mu = 0.0
    residual = np.inf
    for step in range(max_iter):
        y = a @ x + lambda1 * x
        y -= (y @ p) * p
        mu = float(x @ y)
        residual = float(np.max(np.abs(y - mu * x)))
        if residual <= tol:
            break
        x = y / np.linalg.norm(y)
        x -= (x @ p) * p
        x /= np.linalg.norm(x)
    else:
        raise PowerIterationError(max_iter, residual)
    return mu - lambda1


def spectral_power(g, tol=None, max_iter=None):
    """
    Itération de la puissance composante par composante : lambda_1 global est le maximum,
    lambda_2 le maximum entre le lambda_2 de la composante dominante et le lambda_1 des autres.
    """
    g = _core(g)
    tol = tol or hamcheck_setting('SOLVER_TOL')
    max_iter = max_iter or hamcheck_setting('POWER_MAX_ITER')

    components = []
    for mask in g.components():
        vertices = list(iter_bits(mask))
        if len(vertices) == 1:
            components.append((0.0, vertices, np.ones(1), None))
            continue
        a = _sparse_adjacency(g, vertices)
        value, vector = _dominant(a, tol, max_iter)
        components.append((value, vertices, vector, a))
    components.sort(key=lambda item: -item[0])

    lambda1, vertices, vector, a = components[0]
    if a is not None:
        second = _deflated_second(a, lambda1, vector, 10 * tol, max_iter)
    else:
        second = None
    others = [item[0] for item in components[1:]]
    candidates = [v for v in [second, *others] if v is not None]
    lambda2 = max(candidates) if candidates else None

    perron = np.zeros(g.n)
    perron[vertices] = np.abs(vector)
    residual = _residual(g.adjacency_matrix(), perron, lambda1) if g.n <= hamcheck_setting('DENSE_LIMIT') else \
        _residual(_sparse_adjacency(g, range(g.n)), perron, lambda1)
    logger.debug(f"Power iteration on {g}: lambda1={lambda1:.12g}, {len(components)} component(s)")
    return SpectralResult(lambda1, lambda2, perron, residual, Method.POWER)


def compute_spectrum(g, method=None):
    """Choisit la méthode : dense jusqu'à DENSE_LIMIT sommets, itération de la puissance au-delà."""
    core = _core(g)
    if method is None:
        method = Method.DENSE if core.n <= hamcheck_setting('DENSE_LIMIT') else Method.POWER
    if method == Method.DENSE:
        return spectral_dense(core)
    if method == Method.POWER:
        return spectral_power(core)
    raise ValidationError(
        _("Méthode spectrale inconnue : %(method)s."),
        code='unknown_method',
        params={'method': method},
    )


def spectral_radius(g):
    return compute_spectrum(g).lambda1


def rayleigh(g, v):
    """Quotient de Rayleigh <A v, v> / <v, v>."""
    g = _core(g)
    v = np.asarray(v, dtype=float)
    if v.shape != (g.n,):
        raise ValidationError(
            _("Le vecteur doit être de longueur %(n)s."),
            code='bad_vector_length',
            params={'n': g.n},
        )
    norm2 = float(v @ v)
    if norm2 == 0.0:
        raise ValidationError(_("Le quotient de Rayleigh n'est pas défini pour le vecteur nul."), code='zero_vector')
    return float(v @ (g.adjacency_matrix() @ v)) / norm2
