"""
Structures de graphes : graphe simple, graphe biparti équilibré, paramètres de famille.
"""
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import NamedTuple

import networkx as nx
import numpy as np
from django.core.exceptions import ValidationError
from django.utils.translation import gettext as _

from .utils import iter_bits, mask_of
from .validators import validate_family_params


class Family(str, Enum):
    """Familles extrémales non hamiltoniennes."""

    L = 'L'
    N = 'N'
    B = 'B'

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class FamilyParams:
    family: Family
    n: int
    k: int

    def __post_init__(self):
        validate_family_params(self.family, self.n, self.k)
        object.__setattr__(self, 'family', Family(str(self.family)))

    def __str__(self):
        return f"{self.family}^{self.k}_{self.n}"


class VertexClass(NamedTuple):
    """Classe nommée d'une partition des sommets (positions contiguës pour les familles)."""

    label: str
    vertices: tuple


@dataclass(frozen=True)
class Graph:
    """
    Graphe simple non orienté sur les sommets 0..n-1.
    rows[i] est un entier dont le bit j vaut 1 si ij est une arête.
    """

    n: int
    rows: tuple
    classes: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError(_("Un graphe a au moins un sommet."), code='empty_graph')
        if len(self.rows) != self.n:
            raise ValidationError(_("Nombre de lignes d'adjacence incohérent."), code='bad_rows')
        full = (1 << self.n) - 1
        for i, row in enumerate(self.rows):
            if row & ~full:
                raise ValidationError(_("Ligne %(i)s hors de [0, n)."), code='bad_rows', params={'i': i})
            if row >> i & 1:
                raise ValidationError(_("Boucle sur le sommet %(v)s."), code='loop', params={'v': i})
            for j in iter_bits(row):
                if not self.rows[j] >> i & 1:
                    raise ValidationError(
                        _("Adjacence non symétrique (%(i)s, %(j)s)."),
                        code='asymmetric',
                        params={'i': i, 'j': j},
                    )

    @classmethod
    def from_edges(cls, n, edges, classes=()):
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValidationError(_("Boucle sur le sommet %(v)s."), code='loop', params={'v': u})
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows), tuple(classes))

    @classmethod
    def from_networkx(cls, nx_graph):
        nodes = sorted(nx_graph.nodes())
        index = {v: i for i, v in enumerate(nodes)}
        return cls.from_edges(len(nodes), [(index[u], index[v]) for u, v in nx_graph.edges()])

    def has_edge(self, u, v):
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v):
        return list(iter_bits(self.rows[v]))

    def degree(self, v):
        return self.rows[v].bit_count()

    @cached_property
    def degrees(self):
        return tuple(row.bit_count() for row in self.rows)

    @cached_property
    def edge_count(self):
        return sum(self.degrees) // 2

    @property
    def min_degree(self):
        return min(self.degrees)

    @property
    def full_mask(self):
        return (1 << self.n) - 1

    def edges(self):
        """Arêtes (u, v) avec u < v, dans l'ordre lexicographique."""
        for u, row in enumerate(self.rows):
            for v in iter_bits(row >> (u + 1)):
                yield u, u + 1 + v

    def class_of(self, label):
        for vertex_class in self.classes:
            if vertex_class.label == label:
                return vertex_class.vertices
        raise KeyError(label)

    def adjacency_matrix(self, dtype=float):
        matrix = np.zeros((self.n, self.n), dtype=dtype)
        for u, v in self.edges():
            matrix[u, v] = matrix[v, u] = 1
        return matrix

    def with_edges(self, added=(), removed=()):
        rows = list(self.rows)
        for u, v in removed:
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        for u, v in added:
            if u == v:
                raise ValidationError(_("Boucle sur le sommet %(v)s."), code='loop', params={'v': u})
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(self.n, tuple(rows))

    def relabel(self, order, classes=()):
        """Nouveau graphe dont le sommet i est l'ancien sommet order[i]."""
        position = {old: new for new, old in enumerate(order)}
        if len(position) != self.n:
            raise ValidationError(_("La permutation doit couvrir tous les sommets."), code='bad_permutation')
        edges = [(position[u], position[v]) for u, v in self.edges()]
        return Graph.from_edges(self.n, edges, classes)

    def components(self, within=None):
        """Composantes connexes (masques) du sous-graphe induit par `within`."""
        remaining = self.full_mask if within is None else within
        found = []
        while remaining:
            seed = remaining & -remaining
            component = frontier = seed
            while frontier:
                reach = 0
                for v in iter_bits(frontier):
                    reach |= self.rows[v]
                frontier = reach & remaining & ~component
                component |= frontier
            found.append(component)
            remaining &= ~component
        return found

    def is_connected(self):
        return len(self.components()) == 1

    def is_clique(self, mask):
        return all((self.rows[v] | 1 << v) & mask == mask for v in iter_bits(mask))

    def induced(self, vertices):
        vertices = list(vertices)
        position = {v: i for i, v in enumerate(vertices)}
        chosen = mask_of(vertices)
        edges = [(position[u], position[v]) for u, v in self.edges() if chosen >> u & 1 and chosen >> v & 1]
        return Graph.from_edges(len(vertices), edges)

    def to_networkx(self):
        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(range(self.n))
        nx_graph.add_edges_from(self.edges())
        return nx_graph

    def __str__(self):
        return f"Graph(n={self.n}, e={self.edge_count})"


@dataclass(frozen=True)
class BipartiteGraph:
    """
    Graphe biparti équilibré d'ordre 2n : side[v] vaut 'A' ou 'B', |A| = |B| = n,
    et toute arête relie A à B.
    """

    core: Graph
    side: tuple

    def __post_init__(self):
        if self.core.n % 2 or self.side.count('A') != self.side.count('B') or len(self.side) != self.core.n:
            raise ValidationError(_("Le graphe biparti doit être équilibré (|A| = |B|)."), code='unbalanced')
        for u, v in self.core.edges():
            if self.side[u] == self.side[v]:
                raise ValidationError(
                    _("Arête %(u)s-%(v)s interne à la part %(side)s."),
                    code='intra_part_edge',
                    params={'u': u, 'v': v, 'side': self.side[u]},
                )

    @classmethod
    def from_halves(cls, core):
        """Convention de la ligne de commande : les n premiers sommets forment la part A."""
        if core.n % 2:
            raise ValidationError(_("Un graphe biparti équilibré a un ordre pair."), code='unbalanced')
        half = core.n // 2
        return cls(core, ('A',) * half + ('B',) * half)

    @property
    def n(self):
        return self.core.n // 2

    @property
    def classes(self):
        return self.core.classes

    @property
    def edge_count(self):
        return self.core.edge_count

    @property
    def min_degree(self):
        return self.core.min_degree

    def side_mask(self, label):
        return mask_of(v for v, s in enumerate(self.side) if s == label)

    def with_edges(self, added=(), removed=()):
        return BipartiteGraph(self.core.with_edges(added, removed), self.side)

    def __str__(self):
        return f"BipartiteGraph(n={self.n}, e={self.edge_count})"
