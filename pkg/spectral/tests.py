from fractions import Fraction
from math import sqrt

import networkx as nx
import numpy as np
from django.core.exceptions import ValidationError
from django.test import SimpleTestCase
from rest_framework.test import APISimpleTestCase

from graphs.families import (
    disjoint_union,
    kelmans,
    make_complete,
    make_complete_bipartite,
    make_cycle,
    make_family,
    make_perturbed_family,
    make_star,
)
from graphs.structures import BipartiteGraph, FamilyParams, Graph, VertexClass

from .bounds import (
    check_bound_bfp,
    check_bound_nikiforov,
    check_hong,
    edge_floor,
    edge_threshold,
)
from .exceptions import BoundPreconditionError, RootIsolationError
from .polynomials import (
    eval_f,
    eval_f_product,
    eval_g,
    f_coefficients,
    f_lower_endpoint,
    isolate_f_root,
)
from .quotients import class_values, quotient_from_partition, quotient_lambda, quotient_of_family
from .services import compute_spectrum, rayleigh, spectral_dense, spectral_power
from .solved_forms import b_solved_forms, l_solved_forms, n_solved_forms, phi, phi_ratio, z_bounds

AGREEMENT = 1e-8


def gnp(n, p, seed):
    return Graph.from_networkx(nx.gnp_random_graph(n, p, seed=seed))


def random_bipartite(n, p, seed):
    return BipartiteGraph.from_halves(Graph.from_networkx(nx.bipartite.random_graph(n, n, p, seed=seed)))


def family_cases():
    """(params, deleted_edge) pour k dans {1,2,3} et n dans [max(2k+1, 4), 30]."""
    for k in (1, 2, 3):
        for n in range(max(2 * k + 1, 4), 31):
            for family, deletions in (('N', ('Z-Z',)), ('L', ('Z-Z',)), ('B', ('X-Y', 'Y-Z'))):
                p = FamilyParams(family, n, k)
                yield p, None
                for deleted in deletions:
                    if family == 'N' and n - 2 * k < 2:
                        continue
                    if family == 'L' and n - k - 1 < 2:
                        continue
                    yield p, deleted


class DenseSpectrumTests(SimpleTestCase):
    def test_complete_graph(self):
        result = spectral_dense(make_complete(7))
        self.assertAlmostEqual(result.lambda1, 6, places=9)
        self.assertAlmostEqual(result.lambda2, -1, places=9)
        self.assertLessEqual(result.residual, 1e-9)
        self.assertAlmostEqual(float(np.linalg.norm(result.perron)), 1, places=9)

    def test_complete_bipartite(self):
        self.assertAlmostEqual(spectral_dense(make_complete_bipartite(6)).lambda1, 6, places=9)
        self.assertAlmostEqual(spectral_dense(make_complete_bipartite(4)).lambda1, 4, places=9)

    def test_single_vertex_has_no_second_eigenvalue(self):
        result = spectral_dense(make_complete(1))
        self.assertEqual(result.lambda1, 0)
        self.assertIsNone(result.lambda2)

    def test_perron_vector_positive_on_connected_graph(self):
        result = spectral_dense(make_family(FamilyParams('L', 11, 3)))
        self.assertTrue(np.all(result.perron > 0))


class PowerIterationTests(SimpleTestCase):
    def test_cycle(self):
        result = spectral_power(make_cycle(6))
        self.assertAlmostEqual(result.lambda1, 2, places=8)
        self.assertAlmostEqual(result.lambda2, 1, places=7)
        self.assertEqual(result.method, 'power')

    def test_star(self):
        self.assertAlmostEqual(spectral_power(make_star(8)).lambda1, sqrt(8), places=8)

    def test_agrees_with_dense(self):
        g = make_family(FamilyParams('N', 20, 2))
        dense, power = spectral_dense(g), spectral_power(g)
        self.assertLess(abs(dense.lambda1 - power.lambda1), AGREEMENT)
        self.assertLess(abs(dense.lambda2 - power.lambda2), 10 * AGREEMENT)
        self.assertTrue(np.all(power.perron > 0))

    def test_disconnected_graph(self):
        g = disjoint_union(make_complete(5), make_cycle(4))
        result = spectral_power(g)
        self.assertAlmostEqual(result.lambda1, 4, places=8)
        self.assertAlmostEqual(result.lambda2, 2, places=7)
        self.assertTrue(np.all(result.perron[5:] == 0))

    def test_random_graphs_agree(self):
        for seed in range(10):
            g = gnp(25, 0.3, seed)
            self.assertLess(abs(spectral_dense(g).lambda1 - spectral_power(g).lambda1), AGREEMENT)

    def test_dispatcher(self):
        self.assertEqual(compute_spectrum(make_cycle(5)).method, 'dense')
        with self.settings(HAMCHECK={'DENSE_LIMIT': 3}):
            self.assertEqual(compute_spectrum(make_cycle(5)).method, 'power')
        with self.assertRaises(ValidationError):
            compute_spectrum(make_cycle(5), method='lanczos')


class QuotientTests(SimpleTestCase):
    def test_n_family_matrix(self):
        q = quotient_of_family(FamilyParams('N', 10, 2))
        np.testing.assert_array_equal(q.m, [[0, 2, 0], [2, 1, 6], [0, 2, 5]])
        self.assertEqual(q.class_sizes, (2, 2, 6))
        dense = spectral_dense(make_family(FamilyParams('N', 10, 2)))
        self.assertLess(abs(quotient_lambda(q) - dense.lambda1), 1e-9)

    def test_complete_graph_single_class(self):
        g = make_complete(9)
        q = quotient_from_partition(g, [VertexClass('K', tuple(range(9)))])
        self.assertAlmostEqual(quotient_lambda(q), 8, places=10)

    def test_b_family_small(self):
        p = FamilyParams('B', 3, 1)
        q = quotient_of_family(p)
        self.assertLess(abs(quotient_lambda(q) - spectral_dense(make_family(p)).lambda1), 1e-9)

    def test_b_family_exceeds_square_root_bound(self):
        for n in range(3, 20):
            for k in range(1, (n - 1) // 2 + 1):
                self.assertGreater(quotient_lambda(quotient_of_family(('B', n, k))), sqrt(n * (n - k)))

    def test_sharpness_example(self):
        lam = quotient_lambda(quotient_of_family(('N', 8, 2), 'Z-Z'))
        self.assertGreater(lam, 5)

    def test_quotient_matches_dense_everywhere(self):
        for p, deleted in family_cases():
            with self.subTest(p=str(p), deleted=deleted):
                q = quotient_of_family(p, deleted)
                g = make_perturbed_family(p, deleted) if deleted else make_family(p)
                self.assertLess(abs(quotient_lambda(q) - spectral_dense(g).lambda1), AGREEMENT)

    def test_hand_written_quotients_are_equitable(self):
        for p, deleted in family_cases():
            g = make_perturbed_family(p, deleted) if deleted else make_family(p)
            from_graph = quotient_from_partition(g)
            hand_written = quotient_of_family(p, deleted)
            self.assertEqual(from_graph.labels, hand_written.labels)
            np.testing.assert_array_equal(from_graph.m, hand_written.m)

    def test_disconnected_partition_repeated_root(self):
        g = disjoint_union(make_complete(5), make_complete(5))
        cliques = quotient_from_partition(g, [VertexClass('P', tuple(range(5))), VertexClass('Q', tuple(range(5, 10)))])
        np.testing.assert_array_equal(cliques.m, [[4, 0], [0, 4]])
        self.assertAlmostEqual(quotient_lambda(cliques), 4, places=9)
        split = quotient_from_partition(g, [
            VertexClass('P', tuple(range(5))),
            VertexClass('Q', (5, 6)),
            VertexClass('R', (7, 8, 9)),
        ])
        np.testing.assert_array_equal(split.m, [[4, 0, 0], [0, 1, 3], [0, 2, 2]])
        self.assertAlmostEqual(quotient_lambda(split), 4, places=9)

    def test_non_equitable_partition_rejected(self):
        with self.assertRaises(ValidationError) as ctx:
            quotient_from_partition(make_star(3), [VertexClass('A', (0, 1)), VertexClass('B', (2, 3))])
        self.assertEqual(ctx.exception.code, 'not_equitable')

    def test_invalid_class_pair(self):
        with self.assertRaises(ValidationError):
            quotient_of_family(('N', 10, 2), 'Y-Z')


class SolvedFormTests(SimpleTestCase):
    def test_n_case(self):
        for k in (1, 2, 3):
            for n in range(2 * k + 2, 31):
                q = quotient_of_family(('N', n, k), 'Z-Z')
                lam = quotient_lambda(q)
                values = class_values(q, lam)
                y = values['Y']
                predicted = n_solved_forms(k, lam, y)
                for label in predicted:
                    if label in values:
                        self.assertLess(abs(values[label] - predicted[label]), AGREEMENT, (n, k, label))

    def test_l_case(self):
        for k in (1, 2, 3):
            for n in range(k + 3, 31):
                if n < 2 * k + 1:
                    continue
                q = quotient_of_family(('L', n, k), 'Z-Z')
                lam = quotient_lambda(q)
                values = class_values(q, lam)
                predicted = l_solved_forms(k, lam, values['w'])
                for label in predicted:
                    if label in values:
                        self.assertLess(abs(values[label] - predicted[label]), AGREEMENT, (n, k, label))
                ratio = phi(k, values['X'], values['w'], values['T']) / values['w'] ** 2
                self.assertLess(abs(ratio - phi_ratio(k, lam)), AGREEMENT)

    def test_b_case(self):
        for k in (1, 2):
            for n in range(k ** 3 + 2 * k + 4, 31):
                q = quotient_of_family(('B', n, k), 'Y-Z')
                lam = quotient_lambda(q)
                values = class_values(q, lam)
                y, z = values['Y'], values['Z']
                predicted = b_solved_forms(n, k, lam, y, z)
                self.assertLess(abs(values['S'] - predicted['S']), AGREEMENT)
                self.assertLess(abs(values['T'] - predicted['T']), AGREEMENT)
                self.assertLess(abs(z - predicted['Z']), AGREEMENT)
                lower, upper = z_bounds(n, k)
                self.assertTrue(lower * y < z < upper * y, (n, k))


class PolynomialTests(SimpleTestCase):
    def test_monic_quartic(self):
        self.assertEqual(f_coefficients(10, 2)[0], 1)
        self.assertEqual(len(f_coefficients(10, 2)), 5)

    def test_g_at_sharpness_point(self):
        self.assertEqual(eval_g(8, 2, 8), -4)

    def test_upper_endpoint_identity(self):
        for k in range(1, 7):
            for n in range(k + 2, 101):
                self.assertEqual(eval_f(n, k, n - k - 1), eval_g(n, k, n), (n, k))

    def test_lower_endpoint_closed_form(self):
        for k in range(1, 7):
            for n in range(2 * k + 1, 60):
                self.assertEqual(eval_f(n, k, n - k - 2), f_lower_endpoint(n, k), (n, k))

    def test_product_form_agrees(self):
        for x in (Fraction(1, 3), Fraction(7, 2), 5, 11):
            self.assertEqual(eval_f(13, 2, x), eval_f_product(13, 2, x))

    def test_evaluation_is_exact_for_integers(self):
        self.assertIsInstance(eval_f(10, 1, 3), Fraction)
        self.assertIsInstance(eval_f(10, 1, 3.5), float)

    def test_isolate_root(self):
        interval = isolate_f_root(10, 1)
        self.assertTrue(7 < interval.lo <= interval.hi < 8)
        self.assertLessEqual(interval.width, Fraction(1, 10 ** 10))
        interval = isolate_f_root(12, 2)
        self.assertTrue(8 < interval.lo <= interval.hi < 9)

    def test_no_sign_change_below_regime(self):
        with self.assertRaises(RootIsolationError):
            isolate_f_root(8, 2)


class RayleighTests(SimpleTestCase):
    def test_perron_vector_gives_lambda(self):
        g = make_family(FamilyParams('N', 12, 3))
        result = spectral_dense(g)
        self.assertAlmostEqual(rayleigh(g, result.perron), result.lambda1, places=9)

    def test_all_ones(self):
        self.assertAlmostEqual(rayleigh(make_complete(6), np.ones(6)), 5, places=12)
        g = gnp(12, 0.4, 5)
        average = rayleigh(g, np.ones(12))
        self.assertAlmostEqual(average, 2 * g.edge_count / 12, places=12)
        self.assertLessEqual(average, spectral_dense(g).lambda1 + 1e-9)

    def test_zero_vector_rejected(self):
        with self.assertRaises(ValidationError):
            rayleigh(make_complete(3), np.zeros(3))


class BoundTests(SimpleTestCase):
    def test_hong_bound(self):
        self.assertTrue(check_hong(make_complete(8)))
        two_cliques = disjoint_union(make_complete(5), make_complete(5))
        self.assertAlmostEqual(spectral_dense(two_cliques).lambda2, 4, places=9)
        self.assertTrue(check_hong(two_cliques))
        for seed in range(30):
            self.assertTrue(check_hong(gnp(3 + seed % 12, 0.5, seed)))

    def test_degree_bound(self):
        for n in range(3, 12):
            self.assertTrue(check_bound_nikiforov(make_complete(n), n - 1))
        for seed in range(20):
            g = gnp(12, 0.6, seed)
            if g.min_degree >= 1:
                self.assertTrue(check_bound_nikiforov(g, g.min_degree))
        with self.assertRaises(BoundPreconditionError):
            check_bound_nikiforov(make_star(4), 2)

    def test_bipartite_bound(self):
        self.assertTrue(check_bound_bfp(make_complete_bipartite(5)))
        for seed in range(20):
            self.assertTrue(check_bound_bfp(random_bipartite(7, 0.5, seed)))
        with self.assertRaises(BoundPreconditionError):
            check_bound_bfp(make_complete(4))

    def test_edge_floor_exceeds_threshold(self):
        for k in range(1, 6):
            n = (k * k + 6 * k + 4) // 2 + 1
            for m in range(n, n + 20):
                self.assertGreater(edge_floor(m, k), edge_threshold(m, k))


class MonotonicityTests(SimpleTestCase):
    def test_kelmans_does_not_decrease_lambda(self):
        rng = np.random.default_rng(2)
        for seed in range(40):
            g = gnp(10, 0.4, seed)
            u, v = (int(x) for x in rng.choice(10, size=2, replace=False))
            before = spectral_dense(g).lambda1
            after = spectral_dense(kelmans(g, u, v)).lambda1
            self.assertGreaterEqual(after, before - 1e-9)

    def test_edge_deletion_does_not_increase_lambda(self):
        g = make_family(FamilyParams('L', 10, 2))
        lam = spectral_dense(g).lambda1
        for edge in g.edges():
            self.assertLessEqual(spectral_dense(g.with_edges(removed=[edge])).lambda1, lam + 1e-9)


class SpectrumApiTests(APISimpleTestCase):
    def test_triangle(self):
        response = self.client.post('/api/spectrum/', {'graph6': 'Bw'}, format='json')
        self.assertEqual(response.status_code, 200)
        self.assertAlmostEqual(response.data['lambda1'], 2, places=9)
        self.assertEqual(response.data['method'], 'dense')
        self.assertEqual(len(response.data['perron']), 3)

    def test_malformed_record(self):
        response = self.client.post('/api/spectrum/', {'graph6': 'D'}, format='json')
        self.assertEqual(response.status_code, 400)
        self.assertIn('graph6', response.data['error'])
