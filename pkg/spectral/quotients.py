"""
Matrices quotients des partitions équitables : familles L, N, B (éventuellement privées d'une
arête) et partition quelconque d'un graphe. La plus grande valeur propre réelle du quotient est
exactement le rayon spectral du graphe source.
"""
import logging
from dataclasses import dataclass

import numpy as np
from django.core.exceptions import ValidationError
from django.utils.translation import gettext as _
from scipy import optimize

from graphs.families import ALLOWED_DELETIONS, DeletedEdge
from graphs.structures import BipartiteGraph, Family, FamilyParams

from .exceptions import QuotientBracketError

logger = logging.getLogger(__name__)

BISECT_XTOL = 1e-12
ROOT_TOL = 1e-9


@dataclass(frozen=True)
class QuotientMatrix:
    m: np.ndarray
    class_sizes: tuple
    labels: tuple

    @property
    def order(self):
        return sum(self.class_sizes)

    def index(self, label):
        return self.labels.index(label)

    def entry(self, row, column):
        return self.m[self.index(row), self.index(column)]


def _build(rows, sizes, labels):
    """Retire les classes vides (lignes et colonnes) puis fige la matrice."""
    keep = [i for i, size in enumerate(sizes) if size > 0]
    m = np.array(rows, dtype=float)[np.ix_(keep, keep)]
    return QuotientMatrix(m, tuple(sizes[i] for i in keep), tuple(labels[i] for i in keep))


def _n_quotient(n, k, deleted):
    if deleted is None:
        rows = [
            [0, k, 0],
            [k, k - 1, n - 2 * k],
            [0, k, n - 2 * k - 1],
        ]
        return _build(rows, (k, k, n - 2 * k), ('X', 'Y', 'Z'))
    rows = [
        [0, k, 0, 0],
        [k, k - 1, n - 2 * k - 2, 2],
        [0, k, n - 2 * k - 3, 2],
        [0, k, n - 2 * k - 2, 0],
    ]
    return _build(rows, (k, k, n - 2 * k - 2, 2), ('X', 'Y', 'Z', 'T'))


def _l_quotient(n, k, deleted):
    if deleted is None:
        rows = [
            [k - 1, 1, 0],
            [k, 0, n - k - 1],
            [0, 1, n - k - 2],
        ]
        return _build(rows, (k, 1, n - k - 1), ('X', 'w', 'Z'))
    # u, v dans Z : t = x_u = x_v ne voit que w et Z \ {u, v}
    rows = [
        [k - 1, 1, 0, 0],
        [k, 0, n - k - 3, 2],
        [0, 1, n - k - 4, 2],
        [0, 1, n - k - 3, 0],
    ]
    return _build(rows, (k, 1, n - k - 3, 2), ('X', 'w', 'Z', 'T'))


def _b_quotient(n, k, deleted):
    if deleted is None:
        rows = [
            [0, k, 0, 0],
            [k, 0, n - k, 0],
            [0, k, 0, n - k],
            [0, 0, n - k, 0],
        ]
        return _build(rows, (k, k, n - k, n - k), ('W', 'X', 'Y', 'Z'))
    if deleted == DeletedEdge.YZ:
        # s = x_u (u dans Y), t = x_v (v dans Z)
        rows = [
            [0, k, 0, 0, 0, 0],
            [k, 0, n - k - 1, 0, 1, 0],
            [0, k, 0, n - k - 1, 0, 1],
            [0, 0, n - k - 1, 0, 1, 0],
            [0, k, 0, n - k - 1, 0, 0],
            [0, 0, n - k - 1, 0, 0, 0],
        ]
        return _build(rows, (k, k, n - k - 1, n - k - 1, 1, 1), ('W', 'X', 'Y', 'Z', 'S', 'T'))
    # s = x_u (u dans X), t = x_v (v dans Y)
    rows = [
        [0, k - 1, 1, 0, 0, 0],
        [k, 0, 0, n - k - 1, 1, 0],
        [k, 0, 0, n - k - 1, 0, 0],
        [0, k - 1, 1, 0, 0, n - k],
        [0, k - 1, 0, 0, 0, n - k],
        [0, 0, 0, n - k - 1, 1, 0],
    ]
    return _build(rows, (k, k - 1, 1, n - k - 1, 1, n - k), ('W', 'X', 'S', 'Y', 'T', 'Z'))


def quotient_of_family(p, deleted_edge=None):
    """
    Quotient exact de la partition équitable de L^k_n, N^k_n ou B^k_n, ou du graphe privé
    d'une arête entre les classes indiquées (Z-Z pour L et N ; X-Y ou Y-Z pour B).
    Les étiquettes suivent les classes enregistrées par graphs.families.make_perturbed_family.
    """
    if not isinstance(p, FamilyParams):
        p = FamilyParams(*p)
    if deleted_edge is not None:
        deleted_edge = DeletedEdge(deleted_edge)
        if deleted_edge not in ALLOWED_DELETIONS[p.family]:
            raise ValidationError(
                _("Paire de classes %(pair)s non admise pour la famille %(family)s."),
                code='invalid_class_pair',
                params={'pair': str(deleted_edge), 'family': str(p.family)},
            )
        if p.family != Family.B and p.n - (2 * p.k if p.family == Family.N else p.k + 1) < 2:
            raise ValidationError(
                _("La classe Z de %(p)s n'a pas d'arête à supprimer."),
                code='no_zz_edge',
                params={'p': str(p)},
            )
    builder = {Family.N: _n_quotient, Family.L: _l_quotient, Family.B: _b_quotient}[p.family]
    return builder(p.n, p.k, deleted_edge)


def quotient_from_partition(g, classes=None):
    """
    Quotient d'un graphe par une partition (par défaut ses classes enregistrées).
    Lève ValidationError si la partition ne couvre pas les sommets ou n'est pas équitable.
    """
    core = g.core if isinstance(g, BipartiteGraph) else g
    classes = tuple(classes if classes is not None else core.classes)
    members = [v for vertex_class in classes for v in vertex_class.vertices]
    if sorted(members) != list(range(core.n)):
        raise ValidationError(_("La partition doit couvrir chaque sommet une seule fois."), code='not_a_partition')

    masks = []
    for vertex_class in classes:
        mask = 0
        for v in vertex_class.vertices:
            mask |= 1 << v
        masks.append(mask)

    rows = []
    for vertex_class in classes:
        counts = {tuple((core.rows[v] & mask).bit_count() for mask in masks) for v in vertex_class.vertices}
        if len(counts) != 1:
            raise ValidationError(
                _("Partition non équitable : la classe %(label)s n'a pas de profil de voisinage constant."),
                code='not_equitable',
                params={'label': vertex_class.label},
            )
        rows.append(counts.pop())
    return QuotientMatrix(
        np.array(rows, dtype=float),
        tuple(len(c.vertices) for c in classes),
        tuple(c.label for c in classes),
    )


def _charpoly(m):
    identity = np.eye(m.shape[0])
    return lambda x: float(np.linalg.det(x * identity - m))


def quotient_lambda(q):
    """
    Plus grande racine réelle du polynôme caractéristique du quotient, par bisection
    (scipy.optimize.bisect) jusqu'à 1e-12. Le crochet part de l'estimation de numpy.
    """
    m = q.m
    p = _charpoly(m)
    hi = float(m.sum(axis=1).max()) + 1.0
    eigenvalues = np.linalg.eigvals(m)
    real = eigenvalues[np.abs(eigenvalues.imag) <= 1e-7].real
    if not len(real):
        raise QuotientBracketError("quotient has no real eigenvalue")
    estimate = float(real.max())

    width = 1e-6 * max(1.0, abs(estimate))
    for attempt in range(6):
        lo = estimate - width
        if p(lo) < 0 < p(hi):
            break
        width *= 10
    else:
        # racine de multiplicité paire (partition d'un graphe non connexe) : pas de changement de signe
        if abs(p(estimate)) <= ROOT_TOL * max(1.0, abs(estimate)) ** m.shape[0]:
            logger.debug(f"Repeated largest root {estimate:.12g} for quotient {q.labels}")
            return estimate
        raise QuotientBracketError(f"no sign change below {estimate:.12g} for quotient {q.labels}")
    return float(optimize.bisect(p, lo, hi, xtol=BISECT_XTOL))


def class_values(q, lam=None):
    """
    Vecteur de Perron du quotient, indexé par étiquette de classe et normalisé de sorte que le
    vecteur relevé au graphe soit unitaire (sum |C| v_C^2 = 1).
    """
    if lam is None:
        lam = quotient_lambda(q)
    eigenvalues, vectors = np.linalg.eig(q.m)
    index = int(np.argmin(np.abs(eigenvalues - lam)))
    v = np.abs(vectors[:, index].real)
    sizes = np.array(q.class_sizes, dtype=float)
    v /= np.sqrt(float(sizes @ (v * v)))
    return dict(zip(q.labels, v.tolist()))


def lift(g, values):
    """Relève des valeurs de classes en un vecteur indexé par sommet."""
    core = g.core if isinstance(g, BipartiteGraph) else g
    vector = np.zeros(core.n)
    for vertex_class in core.classes:
        vector[list(vertex_class.vertices)] = values[vertex_class.label]
    return vector
