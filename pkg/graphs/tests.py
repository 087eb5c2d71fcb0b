import io
import random
from math import comb

import networkx as nx
from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from .families import (
    DeletedEdge,
    disjoint_union,
    family_edge_count,
    join,
    kelmans,
    make_complete,
    make_complete_bipartite,
    make_cycle,
    make_empty,
    make_family,
    make_path,
    make_perturbed_family,
    make_star,
    min_degree,
)
from .graph6 import decode_graph6, encode_graph6, read_graph6_lines
from .structures import BipartiteGraph, FamilyParams, Graph


def random_graph(n, p, rng):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


class GraphStructureTests(SimpleTestCase):
    def test_edge_count_is_half_degree_sum(self):
        g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)])
        self.assertEqual(g.edge_count, sum(g.degrees) // 2)
        self.assertEqual(g.edge_count, 6)

    def test_asymmetric_rows_rejected(self):
        with self.assertRaises(ValidationError) as ctx:
            Graph(2, (0b10, 0))
        self.assertEqual(ctx.exception.code, 'asymmetric')
        self.assertEqual(ctx.exception.params, {'i': 0, 'j': 1})
        self.assertEqual(ctx.exception.messages, ['Adjacence non symétrique (0, 1).'])

    def test_loop_rejected(self):
        with self.assertRaises(ValidationError) as ctx:
            Graph.from_edges(3, [(1, 1)])
        self.assertEqual(ctx.exception.code, 'loop')
        self.assertEqual(ctx.exception.messages, ['Boucle sur le sommet 1.'])

    def test_components_and_cliques(self):
        g = disjoint_union(make_complete(3), make_complete(2))
        self.assertEqual(sorted(g.components()), [0b00111, 0b11000])
        self.assertTrue(g.is_clique(0b00111))
        self.assertFalse(g.is_clique(0b01111))
        self.assertFalse(g.is_connected())

    def test_networkx_round_trip(self):
        g = make_family(FamilyParams('N', 9, 2))
        self.assertTrue(nx.is_isomorphic(g.to_networkx(), nx.Graph(list(g.edges()))))
        self.assertEqual(Graph.from_networkx(g.to_networkx()), g)

    def test_bipartite_rejects_intra_part_edge(self):
        core = Graph.from_edges(4, [(0, 1)])
        with self.assertRaises(ValidationError) as ctx:
            BipartiteGraph.from_halves(core)
        self.assertEqual(ctx.exception.code, 'intra_part_edge')
        self.assertEqual(ctx.exception.params, {'u': 0, 'v': 1, 'side': 'A'})

    def test_bipartite_rejects_odd_order(self):
        with self.assertRaises(ValidationError):
            BipartiteGraph.from_halves(make_empty(3))


class ConstructorTests(SimpleTestCase):
    def test_make_complete(self):
        self.assertEqual(make_complete(1).edge_count, 0)
        self.assertEqual(make_complete(4).edge_count, 6)
        with self.assertRaises(ValidationError):
            make_complete(0)

    def test_join(self):
        self.assertEqual(join(make_complete(1), make_complete(1)), make_complete(2))
        g = join(make_complete(2), make_empty(2))
        self.assertEqual(g.edge_count, 5)
        g = join(make_complete(1), disjoint_union(make_complete(1), make_complete(3)))
        self.assertEqual(g.edge_count, 7)
        self.assertTrue(nx.is_isomorphic(g.to_networkx(), make_family(FamilyParams('L', 5, 1)).to_networkx()))

    def test_disjoint_union(self):
        g = disjoint_union(make_complete(3), make_complete(1))
        self.assertEqual((g.n, g.edge_count), (4, 3))
        self.assertEqual(disjoint_union(make_complete(1), make_complete(1)).edge_count, 0)
        g = disjoint_union(make_complete(6), make_empty(2))
        self.assertEqual((g.n, g.edge_count), (8, 15))

    def test_small_graphs(self):
        self.assertEqual(make_cycle(5).edge_count, 5)
        self.assertEqual(make_path(4).edge_count, 3)
        self.assertEqual(make_star(3).degree(0), 3)
        self.assertEqual(make_complete_bipartite(3).edge_count, 9)


class FamilyTests(SimpleTestCase):
    def test_n_family_example(self):
        g = make_family(FamilyParams('N', 10, 2))
        self.assertEqual(g.edge_count, 32)
        self.assertEqual(sum(1 for d in g.degrees if d == 2), 2)
        self.assertEqual(g.class_of('X'), (0, 1))
        self.assertEqual(g.class_of('Y'), (2, 3))

    def test_l_family_layout(self):
        g = make_family(FamilyParams('L', 9, 3))
        self.assertEqual(g.class_of('w'), (3,))
        self.assertEqual(g.degree(3), 8)
        self.assertTrue(g.is_clique(0b111))
        self.assertEqual(min_degree(g), 3)

    def test_l1_is_n1(self):
        for n in range(3, 12):
            lg = make_family(FamilyParams('L', n, 1)).to_networkx()
            ng = make_family(FamilyParams('N', n, 1)).to_networkx()
            self.assertTrue(nx.is_isomorphic(lg, ng), n)

    def test_b_family_example(self):
        b = make_family(FamilyParams('B', 3, 1))
        self.assertEqual(b.core.n, 6)
        self.assertEqual(b.edge_count, 7)
        self.assertEqual(min_degree(b), 1)
        self.assertEqual(b.core.neighbors(0), [3])

    def test_closed_form_edge_counts(self):
        for family in 'LNB':
            for n in range(3, 31):
                for k in range(1, (n - 1) // 2 + 1):
                    p = FamilyParams(family, n, k)
                    g = make_family(p)
                    self.assertEqual(g.edge_count, family_edge_count(p), str(p))

    def test_closed_form_matches_binomials(self):
        n, k = 17, 3
        self.assertEqual(family_edge_count(('L', n, k)), comb(k, 2) + comb(n - k - 1, 2) + n - 1)
        self.assertEqual(family_edge_count(('N', n, k)), comb(k, 2) + comb(n - 2 * k, 2) + k * (n - k))

    def test_min_degree_is_k(self):
        for family in 'LNB':
            self.assertEqual(min_degree(make_family(FamilyParams(family, 13, 4))), 4)

    def test_parameter_range_rejected(self):
        with self.assertRaises(ValidationError) as ctx:
            FamilyParams('N', 6, 3)
        self.assertEqual(ctx.exception.code, 'n_too_small')
        with self.assertRaises(ValidationError):
            FamilyParams('B', 5, 0)
        with self.assertRaises(ValidationError):
            FamilyParams('Q', 5, 1)

    def test_perturbed_families(self):
        g = make_perturbed_family(FamilyParams('N', 10, 2), DeletedEdge.ZZ)
        self.assertEqual(g.edge_count, 31)
        self.assertFalse(g.has_edge(8, 9))
        self.assertEqual(g.class_of('T'), (8, 9))

        b = make_perturbed_family(FamilyParams('B', 7, 2), 'Y-Z')
        self.assertEqual(b.edge_count, family_edge_count(('B', 7, 2)) - 1)
        self.assertFalse(b.core.has_edge(6, 13))

        b = make_perturbed_family(FamilyParams('B', 7, 1), 'X-Y')
        self.assertFalse(b.core.has_edge(7, 6))
        self.assertNotIn('X', [c.label for c in b.classes])

    def test_perturbed_family_rejects_wrong_pair(self):
        with self.assertRaises(ValidationError) as ctx:
            make_perturbed_family(FamilyParams('L', 9, 2), 'X-Y')
        self.assertEqual(ctx.exception.code, 'invalid_class_pair')


class KelmansTests(SimpleTestCase):
    def test_path_becomes_star(self):
        g = kelmans(make_path(4), 1, 2)
        self.assertEqual(sorted(g.edges()), [(0, 1), (1, 2), (1, 3)])

    def test_fixed_points(self):
        k5 = make_complete(5)
        self.assertEqual(kelmans(k5, 0, 3), k5)
        star = make_star(4)
        self.assertEqual(kelmans(star, 0, 2), star)

    def test_preserves_counts_and_is_idempotent(self):
        rng = random.Random(7)
        for _ in range(60):
            g = random_graph(9, 0.4, rng)
            u, v = rng.sample(range(9), 2)
            h = kelmans(g, u, v)
            self.assertEqual((h.n, h.edge_count), (g.n, g.edge_count))
            self.assertEqual(kelmans(h, u, v), h)

    def test_same_vertex_rejected(self):
        with self.assertRaises(ValidationError) as ctx:
            kelmans(make_path(3), 1, 1)
        self.assertEqual(ctx.exception.code, 'kelmans_same_vertex')


class Graph6Tests(SimpleTestCase):
    def test_known_encodings(self):
        self.assertEqual(encode_graph6(make_complete(2)), b'A_')
        self.assertEqual(encode_graph6(make_complete(3)), b'Bw')
        self.assertEqual(encode_graph6(make_complete(1)), b'@')

    def test_agrees_with_networkx(self):
        rng = random.Random(11)
        for n in (1, 5, 13, 40, 63, 64, 70):
            g = random_graph(n, 0.3, rng)
            expected = nx.to_graph6_bytes(g.to_networkx(), header=False).strip()
            self.assertEqual(encode_graph6(g), expected)

    def test_round_trip(self):
        rng = random.Random(3)
        for _ in range(200):
            g = random_graph(rng.randint(1, 64), rng.random(), rng)
            self.assertEqual(decode_graph6(encode_graph6(g)), g)
        for family in 'LNB':
            for n in range(3, 31, 3):
                g = make_family(FamilyParams(family, n, 1))
                core = g.core if family == 'B' else g
                self.assertEqual(decode_graph6(encode_graph6(core)), core)

    def test_header_and_newline_accepted(self):
        self.assertEqual(decode_graph6(b'>>graph6<<Bw\n'), make_complete(3))
        self.assertEqual(decode_graph6('Bw'), make_complete(3))

    def test_errors(self):
        with self.assertRaises(ValidationError) as ctx:
            decode_graph6(b'D')
        self.assertEqual(ctx.exception.code, 'truncated_bits')
        with self.assertRaises(ValidationError) as ctx:
            decode_graph6(b'B w')
        self.assertEqual(ctx.exception.code, 'invalid_character')
        self.assertEqual(ctx.exception.params['position'], 1)
        with self.assertRaises(ValidationError) as ctx:
            decode_graph6(b'~')
        self.assertEqual(ctx.exception.code, 'malformed_header')

    def test_non_ascii_and_control_characters_rejected(self):
        for record in ('Aé', 'A\x00', 'Aé'.encode('utf-8'), b'A\x00'):
            with self.subTest(record=record):
                with self.assertRaises(ValidationError) as ctx:
                    decode_graph6(record)
                self.assertEqual(ctx.exception.code, 'invalid_character')
                self.assertEqual(ctx.exception.params['position'], 1)

    def test_line_reader_rejects_non_ascii_text(self):
        for text in ("Bw\nAé\n", "Bw\nA\x00\n"):
            with self.subTest(text=text):
                parsed = []
                with self.assertRaises(ValidationError) as ctx:
                    for lineno, g in read_graph6_lines(io.StringIO(text)):
                        parsed.append(lineno)
                self.assertEqual(parsed, [1])
                self.assertEqual(ctx.exception.code, 'invalid_character')
                self.assertEqual(ctx.exception.params['line'], 2)

    def test_line_reader_reports_line_number(self):
        stream = io.StringIO("A_\n\nBw\nD\n")
        parsed = []
        with self.assertRaises(ValidationError) as ctx:
            for lineno, g in read_graph6_lines(stream):
                parsed.append(lineno)
        self.assertEqual(parsed, [1, 3])
        self.assertEqual(ctx.exception.params['line'], 4)
