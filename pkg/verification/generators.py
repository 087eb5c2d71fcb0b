"""
Générateurs aléatoires reproductibles. Chaque échantillon tire son propre générateur numpy de
(seed, flux, indice), de sorte que l'ordre d'évaluation n'influe pas sur les graphes produits.
"""
import logging

import numpy as np
from django.core.exceptions import ValidationError
from django.utils.translation import gettext as _

from graphs.structures import BipartiteGraph, Graph

logger = logging.getLogger(__name__)

GENERAL_STREAM = 0
BIPARTITE_STREAM = 1
BACKBONE_STREAM = 2


def sample_rng(seed, stream, index):
    return np.random.default_rng([seed, stream, index])


def _repair_min_degree(rows, k, rng, allowed):
    """Ajoute des arêtes tirées au hasard vers les sommets autorisés jusqu'à delta >= k."""
    n = len(rows)
    for v in rng.permutation(n):
        v = int(v)
        while rows[v].bit_count() < k:
            candidates = [w for w in range(n) if allowed(v, w) and not rows[v] >> w & 1]
            w = int(rng.choice(candidates))
            rows[v] |= 1 << w
            rows[w] |= 1 << v
    return rows


def random_min_degree_graph(n, k, p, rng):
    """G(n, p) puis réparation : chaque sommet de degré < k reçoit des voisins uniformes."""
    if not 0 <= k < n:
        raise ValidationError(
            _("Un graphe d'ordre %(n)s ne peut pas avoir delta >= %(k)s."),
            code='min_degree_unreachable',
            params={'n': n, 'k': k},
        )
    rows = [0] * n
    draws = rng.random((n, n))
    for u in range(n):
        for v in range(u + 1, n):
            if draws[u, v] < p:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
    rows = _repair_min_degree(rows, k, rng, lambda v, w: v != w)
    return Graph(n, tuple(rows))


def random_bipartite_min_degree(n, k, p, rng):
    """
    Biparti équilibré (A = 0..n-1) : squelette de k permutations aléatoires A -> B, arêtes de
    Bernoulli(p), puis réparation jusqu'à delta >= k.
    """
    if not 1 <= k <= n:
        raise ValidationError(
            _("Un biparti de côté %(n)s ne peut pas avoir delta >= %(k)s."),
            code='min_degree_unreachable',
            params={'n': n, 'k': k},
        )
    rows = [0] * (2 * n)

    def link(a, b):
        rows[a] |= 1 << b
        rows[b] |= 1 << a

    for round_index in range(k):
        for a, b in enumerate(rng.permutation(n)):
            link(a, n + int(b))
    draws = rng.random((n, n))
    for a in range(n):
        for b in range(n):
            if draws[a, b] < p:
                link(a, n + b)
    rows = _repair_min_degree(rows, k, rng, lambda v, w: (v < n) != (w < n))
    return BipartiteGraph.from_halves(Graph(2 * n, tuple(rows)))


def near_complete_bipartite(n, rng):
    """
    K_{n,n} privé de r <= n-1 arêtes ; une fois sur quatre les arêtes retirées partent toutes
    d'un même sommet de A (r = n-1 donne alors B^1_n).
    """
    removed = int(rng.integers(0, n))
    if rng.random() < 0.25:
        a = int(rng.integers(0, n))
        targets = rng.choice(n, size=removed, replace=False)
        pairs = [(a, n + int(b)) for b in targets]
    else:
        cells = rng.choice(n * n, size=removed, replace=False)
        pairs = [(int(c) // n, n + int(c) % n) for c in cells]
    edges = [(a, n + b) for a in range(n) for b in range(n)]
    core = Graph.from_edges(2 * n, edges).with_edges(removed=pairs)
    return BipartiteGraph.from_halves(core)
