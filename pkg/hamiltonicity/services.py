"""
Décision exacte du caractère hamiltonien.

Ordre de recherche :
1. témoin de coupe S avec c(G - S) > |S| (tailles 0 à 3, voisinages, puis tailles plus grandes) ;
2. programmation dynamique sur les sous-ensembles (numpy, par couches de cardinal) jusqu'à DP_LIMIT sommets ;
3. retour arrière avec élagage au-delà.

Un épuisement du budget donne un statut UNKNOWN, jamais un booléen deviné.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Optional

import networkx as nx
import numpy as np
from django.core.exceptions import ValidationError
from django.utils.translation import gettext as _

from graphs.structures import BipartiteGraph
from graphs.utils import hamcheck_setting, iter_bits, mask_of

from .exceptions import WitnessVerificationError

logger = logging.getLogger(__name__)


class Status(str, Enum):
    HAMILTONIAN = 'hamiltonian'
    NON_HAMILTONIAN = 'non_hamiltonian'
    UNKNOWN = 'unknown'


class WitnessKind:
    CYCLE = 'cycle'
    CUT = 'cut'
    EXHAUSTED = 'exhausted'
    UNKNOWN = 'unknown'


@dataclass(frozen=True)
class HamWitness:
    kind: str
    cycle: tuple = ()
    cut: tuple = ()
    components: int = 0

    def __str__(self):
        if self.kind == WitnessKind.CYCLE:
            return f"cycle {list(self.cycle)}"
        if self.kind == WitnessKind.CUT:
            return f"cut {list(self.cut)} -> {self.components} components"
        return self.kind


@dataclass(frozen=True)
class HamiltonicityResult:
    status: Status
    witness: HamWitness
    method: str = ''

    @property
    def hamiltonian(self) -> Optional[bool]:
        if self.status == Status.UNKNOWN:
            return None
        return self.status == Status.HAMILTONIAN

    def __iter__(self):
        # permet `ok, witness = is_hamiltonian(g)`
        yield self.hamiltonian
        yield self.witness


def _core(g):
    return g.core if isinstance(g, BipartiteGraph) else g


def verify_cycle(g, cycle):
    g = _core(g)
    if sorted(cycle) != list(range(g.n)):
        raise WitnessVerificationError(WitnessKind.CYCLE, f"{list(cycle)} is not a permutation of the vertices")
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        if not g.has_edge(a, b):
            raise WitnessVerificationError(WitnessKind.CYCLE, f"missing edge {a}-{b}")


def count_components_without(g, cut):
    """Nombre de composantes de G - S, calculé par networkx (routine indépendante des masques)."""
    nx_graph = _core(g).to_networkx()
    nx_graph.remove_nodes_from(cut)
    return nx.number_connected_components(nx_graph)


def verify_cut(g, cut, components):
    recount = count_components_without(g, cut)
    if recount != components or recount <= max(len(cut), 1):
        raise WitnessVerificationError(
            WitnessKind.CUT, f"S={list(cut)} leaves {recount} components (claimed {components})"
        )


# --- Recherche de témoins de coupe -----------------------------------------------------------

def _components_after(g, mask):
    return len(g.components(within=g.full_mask & ~mask))


def _size_is_feasible(g, size):
    """Avec c >= s+1 composantes, la plus petite a au plus (n-s)/(s+1) sommets."""
    return g.min_degree <= (g.n - size) / (size + 1) - 1 + size


def find_cut_witness(g, max_size=None, budget=None):
    """
    Cherche S avec c(G - S) > |S| : toutes les parties de taille 0 à 3, puis les voisinages
    N(v), puis les tailles 4..max_size. Retourne (S, c) ou None.
    """
    g = _core(g)
    limit = (g.n - 1) // 2
    if max_size is None:
        max_size = max(3, g.min_degree + 1)
    max_size = min(max_size, limit)
    budget = budget or hamcheck_setting('CUT_SEARCH_BUDGET')
    examined = 0

    def probe(cut):
        nonlocal examined
        examined += 1
        c = _components_after(g, mask_of(cut))
        return c if c > max(len(cut), 1) else 0

    for size in range(0, min(3, max_size) + 1):
        if size and not _size_is_feasible(g, size):
            continue
        for cut in combinations(range(g.n), size):
            if examined >= budget:
                return None
            c = probe(cut)
            if c:
                return cut, c

    seen = set()
    for v in range(g.n):
        cut = tuple(g.neighbors(v))
        if len(cut) > limit or cut in seen:
            continue
        seen.add(cut)
        if examined >= budget:
            return None
        c = probe(cut)
        if c:
            return cut, c

    for size in range(4, max_size + 1):
        if not _size_is_feasible(g, size):
            continue
        for cut in combinations(range(g.n), size):
            if examined >= budget:
                logger.warning(f"Cut search budget exhausted on {g} at size {size}")
                return None
            c = probe(cut)
            if c:
                return cut, c
    return None


# --- Programmation dynamique sur les sous-ensembles -------------------------------------------

def _popcounts(m):
    counts = np.zeros(1 << m, dtype=np.uint8)
    for b in range(m):
        counts[1 << b: 2 << b] = counts[: 1 << b] + 1
    return counts


def _path_table(g, keep=None):
    """
    dp[mask] : ensemble (bits) des extrémités j telles qu'un chemin part de 0, visite exactement
    les sommets de mask (sommet i+1 <-> bit i) et finit en j. Les couches de même cardinal
    sont traitées ensemble ; `keep` restreint les masques admissibles.
    """
    m = g.n - 1
    nbr = [np.uint32(g.rows[v + 1] >> 1) for v in range(m)]
    start = g.rows[0] >> 1
    dp = np.zeros(1 << m, dtype=np.uint32)
    for j in iter_bits(start):
        dp[1 << j] = 1 << j

    masks = np.arange(1 << m, dtype=np.int64)
    counts = _popcounts(m)
    if keep is not None:
        masks, counts = masks[keep], counts[keep]
    order = np.argsort(counts, kind='stable')
    boundaries = np.cumsum(np.bincount(counts, minlength=m + 1))[:-1]
    layers = np.split(masks[order], boundaries)

    for layer in layers[1:m]:
        values = dp[layer]
        live = values != 0
        layer, values = layer[live], values[live]
        if not len(layer):
            continue
        for t in range(m):
            bit = 1 << t
            selected = ((layer & bit) == 0) & ((values & nbr[t]) != 0)
            if selected.any():
                dp[layer[selected] | bit] |= np.uint32(bit)
    return dp


def _reconstruct(g, dp):
    m = g.n - 1
    full = (1 << m) - 1
    closing = int(dp[full]) & (g.rows[0] >> 1)
    if not closing:
        return None
    end = next(iter_bits(closing))
    path = [end]
    mask = full
    while mask != 1 << end:
        mask ^= 1 << end
        candidates = int(dp[mask]) & (g.rows[end + 1] >> 1)
        end = next(iter_bits(candidates))
        path.append(end)
    return (0,) + tuple(v + 1 for v in reversed(path))


def dp_search(g, budget, keep=None):
    m = g.n - 1
    states = (1 << m) if keep is None else int(np.count_nonzero(keep))
    if m * states > budget:
        return None, False
    dp = _path_table(g, keep)
    return _reconstruct(g, dp), True


def _bipartite_keep(bg):
    """Masques équilibrés : un chemin partant de 0 alterne, donc #autre côté - #même côté vaut 0 ou 1."""
    core = bg.core
    m = core.n - 1
    same = mask_of(v - 1 for v in range(1, core.n) if bg.side[v] == bg.side[0])
    other = ((1 << m) - 1) & ~same
    masks = np.arange(1 << m, dtype=np.int64)
    counts = _popcounts(m)
    diff = counts[masks & other].astype(np.int16) - counts[masks & same].astype(np.int16)
    return (diff == 0) | (diff == 1)


# --- Retour arrière avec élagage ---------------------------------------------------------------

class _BudgetExhausted(Exception):
    pass


def backtracking_search(g, budget=None):
    """
    Recherche en profondeur depuis le sommet 0, voisins par indice croissant. Élagages :
    tout sommet non visité garde au moins deux voisins disponibles, et les sommets non
    visités restent connexes. Retourne (cycle | None, terminé).
    """
    g = _core(g)
    budget = budget or hamcheck_setting('SEARCH_BUDGET')
    n = g.n
    full = g.full_mask
    expanded = 0

    def viable(visited, end):
        remaining = full & ~visited
        if not remaining:
            return True
        available = remaining | (1 << end) | 1
        for v in iter_bits(remaining):
            if (g.rows[v] & available).bit_count() < 2:
                return False
        return len(g.components(within=remaining)) == 1

    def extend(path, visited):
        nonlocal expanded
        expanded += 1
        if expanded > budget:
            raise _BudgetExhausted
        end = path[-1]
        if len(path) == n:
            return path if g.has_edge(end, 0) else None
        for nxt in iter_bits(g.rows[end] & ~visited):
            new_visited = visited | (1 << nxt)
            if not viable(new_visited, nxt):
                continue
            path.append(nxt)
            found = extend(path, new_visited)
            if found:
                return found
            path.pop()
        return None

    try:
        cycle = extend([0], 1)
    except _BudgetExhausted:
        logger.warning(f"Backtracking budget of {budget} nodes exhausted on {g}")
        return None, False
    return (tuple(cycle) if cycle else None), True


# --- Points d'entrée ----------------------------------------------------------------------------

def _decide(g, budget, dp_limit, keep_factory, label):
    core = _core(g)
    if core.n < 3:
        raise ValidationError(
            _("La recherche de cycle hamiltonien exige n >= 3 (reçu %(n)s)."),
            code='n_too_small',
            params={'n': core.n},
        )
    budget = budget or hamcheck_setting('SEARCH_BUDGET')

    cut = find_cut_witness(core)
    if cut is not None:
        verify_cut(core, *cut)
        logger.debug(f"{label}: cut witness {cut[0]} on {core}")
        return HamiltonicityResult(
            Status.NON_HAMILTONIAN, HamWitness(WitnessKind.CUT, cut=tuple(cut[0]), components=cut[1]), 'cut'
        )

    if core.n <= dp_limit:
        cycle, finished = dp_search(core, budget, keep_factory() if keep_factory else None)
        method = 'dp'
    else:
        cycle, finished = None, False
    if not finished:
        cycle, finished = backtracking_search(core, budget)
        method = 'backtracking'

    if cycle is not None:
        verify_cycle(core, cycle)
        return HamiltonicityResult(Status.HAMILTONIAN, HamWitness(WitnessKind.CYCLE, cycle=cycle), method)
    if finished:
        return HamiltonicityResult(Status.NON_HAMILTONIAN, HamWitness(WitnessKind.EXHAUSTED), method)
    return HamiltonicityResult(Status.UNKNOWN, HamWitness(WitnessKind.UNKNOWN), method)


def is_hamiltonian(g, budget=None):
    """Décision exacte ; `ok, witness = is_hamiltonian(g)` avec ok à None si le budget est épuisé."""
    if isinstance(g, BipartiteGraph):
        return is_hamiltonian_bipartite(g, budget)
    return _decide(g, budget, hamcheck_setting('DP_LIMIT'), None, 'general')


def is_hamiltonian_bipartite(g, budget=None):
    """Version bipartie : seuls les masques équilibrés sont explorés par la programmation dynamique."""
    if not isinstance(g, BipartiteGraph):
        raise ValidationError(_("Un graphe biparti équilibré est attendu."), code='not_bipartite')
    if g.n < 2:
        raise ValidationError(_("Chaque côté doit avoir au moins 2 sommets."), code='n_too_small', params={'n': g.n})
    return _decide(g, budget, hamcheck_setting('BIPARTITE_DP_LIMIT'), lambda: _bipartite_keep(g), 'bipartite')
