"""
Reconnaissance structurelle des familles L^k_n, N^k_n, B^k_n (égalité à isomorphisme près)
et test de contenance comme sous-graphe couvrant.
"""
import logging
from collections import defaultdict

from django.core.exceptions import ValidationError
from django.utils.translation import gettext as _

from graphs.structures import BipartiteGraph, Family, FamilyParams
from graphs.utils import iter_bits

logger = logging.getLogger(__name__)


def _recognize_n(g):
    n = g.n
    universal = [v for v in range(n) if g.degree(v) == n - 1]
    k = len(universal)
    if k < 1 or n < 2 * k + 1:
        return None
    rest = g.full_mask
    for v in universal:
        rest &= ~(1 << v)
    components = g.components(within=rest)
    if len(components) != k + 1 or not all(g.is_clique(c) for c in components):
        return None
    if sum(1 for c in components if c.bit_count() > 1) > 1:
        return None
    return FamilyParams(Family.N, n, k)


def _recognize_l(g):
    n = g.n
    universal = [v for v in range(n) if g.degree(v) == n - 1]
    if len(universal) != 1:
        return None
    components = g.components(within=g.full_mask & ~(1 << universal[0]))
    if len(components) != 2 or not all(g.is_clique(c) for c in components):
        return None
    k = min(c.bit_count() for c in components)
    if n < 2 * k + 1:
        return None
    return FamilyParams(Family.L, n, k)


def _recognize_b(bg):
    """Les non-arêtes entre les deux côtés doivent former un biparti complet de tailles {k, n-k}."""
    core, n = bg.core, bg.n
    a_mask, b_mask = bg.side_mask('A'), bg.side_mask('B')
    missing = {}
    for a in iter_bits(a_mask):
        gap = b_mask & ~core.rows[a]
        if gap:
            missing[a] = gap
    if not missing:
        return None
    gaps = set(missing.values())
    if len(gaps) != 1:
        return None
    m_b = gaps.pop().bit_count()
    m_a = len(missing)
    k = min(m_a, m_b)
    if {m_a, m_b} != {k, n - k} or n < 2 * k + 1:
        return None
    return FamilyParams(Family.B, n, k)


def recognize_family(g):
    """
    Familles auxquelles g est isomorphe, sous forme de tuple de FamilyParams (vide sinon).
    L^1_n = N^1_n est signalé sous les deux noms.
    """
    if isinstance(g, BipartiteGraph):
        found = [_recognize_b(g)]
    else:
        found = [_recognize_l(g), _recognize_n(g)]
    return tuple(p for p in found if p is not None)


def is_family_graph(g, family, k):
    return any(p.family == Family(family) and p.k == k for p in recognize_family(g))


def _twin_groups(rows, candidates):
    groups = defaultdict(list)
    for v in candidates:
        groups[rows[v]].append(v)
    return groups


def containment_witness(g, family, k):
    """
    Si g est un sous-graphe couvrant de la famille (paramètre k), retourne la coupe (S, c) qui
    en découle : le voisinage commun des k sommets de degré k (N, B) ou le sommet w (L).
    Sinon None. Exige delta(g) >= k.
    """
    family = Family(family)
    core = g.core if isinstance(g, BipartiteGraph) else g
    if family == Family.B and not isinstance(g, BipartiteGraph):
        raise ValidationError(_("La famille B s'applique aux graphes bipartis équilibrés."), code='not_bipartite')
    if family != Family.B and isinstance(g, BipartiteGraph):
        g = core
    if core.min_degree < k:
        raise ValidationError(
            _("Le test de contenance exige delta >= k (delta=%(delta)s, k=%(k)s)."),
            code='min_degree_below_k',
            params={'delta': core.min_degree, 'k': k},
        )
    n = g.n
    if n < 2 * k + 1:
        return None
    low = [v for v in range(core.n) if core.degree(v) == k]

    if family == Family.N:
        for neighbourhood, members in _twin_groups(core.rows, low).items():
            if len(members) >= k:
                cut = tuple(iter_bits(neighbourhood))
                return cut, len(core.components(within=core.full_mask & ~neighbourhood))
        return None

    if family == Family.L:
        closed = [core.rows[v] | (1 << v) for v in range(core.n)]
        for s in low:
            members = [v for v in range(core.n) if closed[v] == closed[s]]
            if len(members) < k:
                continue
            w_candidates = [v for v in iter_bits(closed[s]) if v not in members[:k]]
            w = w_candidates[0]
            return (w,), len(core.components(within=core.full_mask & ~(1 << w)))
        return None

    for side in ('A', 'B'):
        side_low = [v for v in low if g.side[v] == side]
        for neighbourhood, members in _twin_groups(core.rows, side_low).items():
            if len(members) >= k:
                cut = tuple(iter_bits(neighbourhood))
                return cut, len(core.components(within=core.full_mask & ~neighbourhood))
    return None


def is_spanning_subgraph_of_family(g, family, k):
    return containment_witness(g, family, k) is not None
