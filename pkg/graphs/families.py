"""
Constructeurs de graphes : graphes complets, joint, union disjointe, familles extrémales
L^k_n, N^k_n, B^k_n (et leurs perturbations par suppression d'une arête), opération de Kelmans.
"""
import logging
from enum import Enum

from django.core.exceptions import ValidationError
from django.utils.translation import gettext as _

from .structures import BipartiteGraph, Family, FamilyParams, Graph, VertexClass
from .validators import validate_kelmans_pair

logger = logging.getLogger(__name__)


class DeletedEdge(str, Enum):
    """Paire de classes d'où provient l'arête supprimée d'un graphe de famille."""

    ZZ = 'Z-Z'
    XY = 'X-Y'
    YZ = 'Y-Z'

    def __str__(self):
        return self.value


ALLOWED_DELETIONS = {
    Family.L: (DeletedEdge.ZZ,),
    Family.N: (DeletedEdge.ZZ,),
    Family.B: (DeletedEdge.XY, DeletedEdge.YZ),
}


def make_complete(n):
    if n < 1:
        raise ValidationError(_("K_n exige n >= 1."), code='empty_graph')
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def make_empty(n):
    """Graphe sans arête nK_1."""
    return Graph(n, (0,) * n)


def make_cycle(n):
    if n < 3:
        raise ValidationError(_("C_n exige n >= 3."), code='cycle_too_small')
    return Graph.from_edges(n, [(v, (v + 1) % n) for v in range(n)])


def make_path(n):
    return Graph.from_edges(n, [(v, v + 1) for v in range(n - 1)])


def make_star(leaves):
    """Étoile K_{1,leaves} centrée en 0."""
    return Graph.from_edges(leaves + 1, [(0, v) for v in range(1, leaves + 1)])


def make_complete_bipartite(n):
    """K_{n,n} avec A = 0..n-1 et B = n..2n-1."""
    core = Graph.from_edges(2 * n, [(a, n + b) for a in range(n) for b in range(n)])
    return BipartiteGraph.from_halves(core)


def disjoint_union(g1, g2):
    """G1 + G2 : les sommets de g2 sont décalés de g1.n."""
    shift = g1.n
    return Graph(g1.n + g2.n, g1.rows + tuple(row << shift for row in g2.rows))


def join(g1, g2):
    """G1 v G2 : union disjointe plus toutes les arêtes entre les deux ensembles."""
    shift = g1.n
    left = ((1 << g2.n) - 1) << shift
    right = (1 << g1.n) - 1
    rows = tuple(row | left for row in g1.rows) + tuple((row << shift) | right for row in g2.rows)
    return Graph(g1.n + g2.n, rows)


def _span(start, stop):
    return tuple(range(start, stop))


def make_family(p):
    """
    Construit le graphe de la famille p avec ses classes de sommets contiguës :
    - N^k_n = K_k v (K_{n-2k} + kK_1) : X (degré k), Y (sommets du joint), Z
    - L^k_n = K_1 v (K_k + K_{n-k-1}) : X, w, Z
    - B^k_n = K_{n,n} privé d'un K_{k,n-k} : W, X = N(W), Y = A \\ W, Z = B \\ X
    """
    if not isinstance(p, FamilyParams):
        p = FamilyParams(*p)
    n, k = p.n, p.k

    if p.family == Family.N:
        base = join(make_complete(k), disjoint_union(make_complete(n - 2 * k), make_empty(k)))
        order = list(range(n - k, n)) + list(range(k)) + list(range(k, n - k))
        classes = (
            VertexClass('X', _span(0, k)),
            VertexClass('Y', _span(k, 2 * k)),
            VertexClass('Z', _span(2 * k, n)),
        )
        return base.relabel(order, classes)

    if p.family == Family.L:
        base = join(make_complete(1), disjoint_union(make_complete(k), make_complete(n - k - 1)))
        order = list(range(1, k + 1)) + [0] + list(range(k + 1, n))
        classes = (
            VertexClass('X', _span(0, k)),
            VertexClass('w', (k,)),
            VertexClass('Z', _span(k + 1, n)),
        )
        return base.relabel(order, classes)

    # B^k_n : on retire les arêtes entre W et Z
    W, X, Y, Z = _span(0, k), _span(n, n + k), _span(k, n), _span(n + k, 2 * n)
    edges = [(a, b) for a in range(n) for b in range(n, 2 * n) if not (a < k and b >= n + k)]
    classes = (VertexClass('W', W), VertexClass('X', X), VertexClass('Y', Y), VertexClass('Z', Z))
    core = Graph.from_edges(2 * n, edges, classes)
    return BipartiteGraph.from_halves(core)


def make_perturbed_family(p, deleted_edge):
    """
    Graphe de famille privé d'une arête uv, avec la partition équitable correspondante.
    Les extrémités u, v forment la classe T (Z-Z), ou S = {u} et T = {v} (B).
    """
    if not isinstance(p, FamilyParams):
        p = FamilyParams(*p)
    deleted_edge = DeletedEdge(deleted_edge)
    if deleted_edge not in ALLOWED_DELETIONS[p.family]:
        raise ValidationError(
            _("Paire de classes %(pair)s non admise pour la famille %(family)s."),
            code='invalid_class_pair',
            params={'pair': str(deleted_edge), 'family': str(p.family)},
        )
    n, k = p.n, p.k
    g = make_family(p)

    if p.family in (Family.N, Family.L):
        z_class = g.class_of('Z')
        if len(z_class) < 2:
            raise ValidationError(
                _("La classe Z de %(p)s n'a pas d'arête à supprimer."),
                code='no_zz_edge',
                params={'p': str(p)},
            )
        u, v = n - 2, n - 1
        classes = [c for c in g.classes if c.label != 'Z']
        classes.append(VertexClass('Z', z_class[:-2]))
        classes.append(VertexClass('T', (u, v)))
        return _without_edge(g, u, v, classes)

    core = g.core
    if deleted_edge == DeletedEdge.YZ:
        u, v = n - 1, 2 * n - 1
        classes = [
            VertexClass('W', _span(0, k)),
            VertexClass('X', _span(n, n + k)),
            VertexClass('Y', _span(k, n - 1)),
            VertexClass('Z', _span(n + k, 2 * n - 1)),
            VertexClass('S', (u,)),
            VertexClass('T', (v,)),
        ]
    else:
        u, v = n + k - 1, n - 1
        classes = [
            VertexClass('W', _span(0, k)),
            VertexClass('X', _span(n, n + k - 1)),
            VertexClass('S', (u,)),
            VertexClass('Y', _span(k, n - 1)),
            VertexClass('T', (v,)),
            VertexClass('Z', _span(n + k, 2 * n)),
        ]
    perturbed = _without_edge(core, u, v, classes)
    return BipartiteGraph(perturbed, g.side)


def _without_edge(g, u, v, classes):
    # les classes vides disparaissent (ex. Z quand n - 2k = 2)
    kept = tuple(c for c in classes if c.vertices)
    reduced = g.with_edges(removed=[(u, v)])
    return Graph(reduced.n, reduced.rows, kept)


def kelmans(g, u, v):
    """
    Opération de Kelmans : pour tout x de N(v) \\ (N(u) u {u}), l'arête vx est remplacée par ux.
    Le nombre de sommets et d'arêtes est conservé.
    """
    validate_kelmans_pair(g, u, v)
    transfer = g.rows[v] & ~g.rows[u] & ~(1 << u)
    if not transfer:
        return g
    rows = list(g.rows)
    rows[v] &= ~transfer
    rows[u] |= transfer
    x = transfer
    while x:
        low = x & -x
        w = low.bit_length() - 1
        rows[w] = (rows[w] & ~(1 << v)) | (1 << u)
        x ^= low
    logger.debug(f"Kelmans({u}, {v}) moved {transfer.bit_count()} edges")
    return Graph(g.n, tuple(rows))


def min_degree(g):
    if isinstance(g, BipartiteGraph):
        return g.core.min_degree
    return g.min_degree


def family_edge_count(p):
    """Nombre d'arêtes en forme close de L^k_n, N^k_n, B^k_n."""
    if not isinstance(p, FamilyParams):
        p = FamilyParams(*p)
    n, k = p.n, p.k
    if p.family == Family.L:
        return k * (k - 1) // 2 + (n - k - 1) * (n - k - 2) // 2 + (n - 1)
    if p.family == Family.N:
        return k * (k - 1) // 2 + (n - 2 * k) * (n - 2 * k - 1) // 2 + k * (n - k)
    return n * n - k * (n - k)
