from unittest import mock

import networkx as nx
from django.core.exceptions import ValidationError
from django.test import SimpleTestCase
from rest_framework.test import APISimpleTestCase

from graphs.families import (
    make_complete,
    make_complete_bipartite,
    make_cycle,
    make_family,
    make_perturbed_family,
)
from graphs.structures import BipartiteGraph, FamilyParams, Graph
from hamiltonicity.services import HamiltonicityResult, HamWitness, Status, WitnessKind, is_hamiltonian

from .exceptions import TheoremViolation
from .recognition import containment_witness, is_spanning_subgraph_of_family, recognize_family
from .services import Verdict, certify, certify_bipartite
from .thresholds import (
    Comparison,
    Rule,
    compare,
    extremal_spectral_min_n,
    min_degree_spectral_min_n,
)


def valid_params(families, n_max, n_min=3):
    for family in families:
        for n in range(n_min, n_max + 1):
            for k in range(1, (n - 1) // 2 + 1):
                yield FamilyParams(family, n, k)


class RecognitionTests(SimpleTestCase):
    def test_n_family(self):
        self.assertEqual(recognize_family(make_family(FamilyParams('N', 10, 2))), (FamilyParams('N', 10, 2),))

    def test_l1_is_also_n1(self):
        self.assertEqual(
            recognize_family(make_family(FamilyParams('L', 5, 1))),
            (FamilyParams('L', 5, 1), FamilyParams('N', 5, 1)),
        )

    def test_unrelated_graphs(self):
        self.assertEqual(recognize_family(make_cycle(6)), ())
        self.assertEqual(recognize_family(make_complete(7)), ())
        self.assertEqual(recognize_family(make_complete_bipartite(5)), ())

    def test_round_trip(self):
        for p in valid_params('LNB', 14):
            self.assertIn(p, recognize_family(make_family(p)), str(p))

    def test_relabelled_family_is_recognized(self):
        g = make_family(FamilyParams('N', 11, 3))
        shuffled = g.relabel([5, 0, 9, 2, 10, 7, 1, 8, 3, 6, 4])
        self.assertEqual(recognize_family(shuffled), (FamilyParams('N', 11, 3),))

    def test_extra_edge_breaks_b_family(self):
        b = make_family(FamilyParams('B', 7, 1))
        self.assertEqual(recognize_family(b.with_edges(added=[(0, 8)])), ())


class ContainmentTests(SimpleTestCase):
    def test_perturbed_n_family_is_contained(self):
        for n, k in ((9, 2), (12, 3), (14, 2)):
            g = make_perturbed_family(FamilyParams('N', n, k), 'Z-Z')
            self.assertTrue(is_spanning_subgraph_of_family(g, 'N', k))
            cut, components = containment_witness(g, 'N', k)
            self.assertEqual(cut, g.class_of('Y'))
            self.assertEqual(components, k + 1)

    def test_perturbed_l_family_cut_is_w(self):
        g = make_perturbed_family(FamilyParams('L', 9, 2), 'Z-Z')
        self.assertEqual(containment_witness(g, 'L', 2), ((2,), 2))

    def test_complete_graph_is_never_contained(self):
        for k in (1, 2, 3):
            for family in 'LN':
                self.assertFalse(is_spanning_subgraph_of_family(make_complete(9), family, k))

    def test_perturbed_b_family_is_contained(self):
        for n, k in ((5, 2), (7, 1), (8, 3)):
            b = make_perturbed_family(FamilyParams('B', n, k), 'Y-Z')
            self.assertGreaterEqual(b.min_degree, k)
            self.assertTrue(is_spanning_subgraph_of_family(b, 'B', k))

    def test_monotone_under_edge_deletion(self):
        g = make_family(FamilyParams('N', 12, 2))
        z = g.class_of('Z')
        for u, v in [(z[0], z[1]), (z[2], z[3]), (z[4], z[5]), (z[0], z[7])]:
            g = g.with_edges(removed=[(u, v)])
            self.assertGreaterEqual(g.min_degree, 2)
            self.assertTrue(is_spanning_subgraph_of_family(g, 'N', 2))

    def test_requires_min_degree(self):
        with self.assertRaises(ValidationError):
            containment_witness(make_cycle(6), 'N', 3)

    def test_b_family_requires_bipartite_input(self):
        with self.assertRaises(ValidationError):
            containment_witness(make_complete(7), 'B', 1)


class CompareTests(SimpleTestCase):
    def test_guard_band(self):
        self.assertEqual(compare(1.0, 1.0), Comparison.AT)
        self.assertEqual(compare(1.0 + 5e-10, 1.0), Comparison.AT)
        self.assertEqual(compare(1.0 + 1e-6, 1.0), Comparison.ABOVE)
        self.assertEqual(compare(1.0 - 1e-6, 1.0), Comparison.BELOW)

    def test_regime_thresholds(self):
        self.assertEqual(min_degree_spectral_min_n(2), 17)
        self.assertEqual(min_degree_spectral_min_n(3), 23)
        self.assertEqual(extremal_spectral_min_n(1), 11)


class CertifyTests(SimpleTestCase):
    def test_complete_graph_by_fiedler_nikiforov(self):
        for n in range(3, 11):
            certificate = certify(make_complete(n))
            self.assertEqual(certificate.verdict, Verdict.HAMILTONIAN_BY_THEOREM)
            self.assertEqual(certificate.rule, Rule.FIEDLER_NIKIFOROV)
            self.assertEqual(certificate.details['spot_check'], 'confirmed')
            self.assertEqual(certificate.witness.kind, WitnessKind.CYCLE)

    def test_n1_is_exceptional(self):
        for n in range(3, 15):
            certificate = certify(make_family(FamilyParams('N', n, 1)))
            self.assertEqual(certificate.verdict, Verdict.EXCEPTIONAL_EXTREMAL)
            self.assertEqual(certificate.rule, Rule.FIEDLER_NIKIFOROV)
            self.assertEqual(certificate.family, FamilyParams('N', n, 1))
            self.assertEqual(certificate.witness.kind, WitnessKind.CUT)

    def test_n2_14_falls_back_to_search(self):
        certificate = certify(make_family(FamilyParams('N', 14, 2)))
        self.assertEqual(certificate.verdict, Verdict.NON_HAMILTONIAN_WITNESS)
        self.assertEqual(certificate.rule, Rule.EXACT_SEARCH)
        self.assertEqual(certificate.witness.cut, (2, 3))

    def test_n2_20_is_exceptional_by_min_degree_rule(self):
        certificate = certify(make_family(FamilyParams('N', 20, 2)))
        self.assertEqual(certificate.verdict, Verdict.EXCEPTIONAL_EXTREMAL)
        self.assertEqual(certificate.rule, Rule.MIN_DEGREE_SPECTRAL)
        self.assertEqual(certificate.family, FamilyParams('N', 20, 2))
        self.assertEqual(certificate.witness.cut, (2, 3))

    def test_exceptions_in_theorem_regime(self):
        for p in (FamilyParams('L', 17, 2), FamilyParams('N', 17, 2), FamilyParams('L', 23, 3), FamilyParams('N', 23, 3)):
            certificate = certify(make_family(p))
            self.assertEqual(certificate.verdict, Verdict.EXCEPTIONAL_EXTREMAL, str(p))
            self.assertEqual(certificate.rule, Rule.MIN_DEGREE_SPECTRAL)
            self.assertEqual(certificate.family, p)

    def test_family_graphs_never_certified_hamiltonian(self):
        for p in valid_params('LN', 14, n_min=5):
            certificate = certify(make_family(p))
            self.assertNotEqual(certificate.verdict, Verdict.HAMILTONIAN_BY_THEOREM, str(p))
            self.assertIs(certificate.hamiltonian, False)

    def test_min_degree_rule_with_spot_validation(self):
        g = make_family(FamilyParams('L', 17, 2)).with_edges(added=[(0, 3)])
        with self.settings(HAMCHECK={'DESK_LIMIT': 17}):
            certificate = certify(g)
        self.assertEqual(certificate.verdict, Verdict.HAMILTONIAN_BY_THEOREM)
        self.assertEqual(certificate.rule, Rule.MIN_DEGREE_SPECTRAL)
        self.assertEqual(certificate.details['k'], 2)
        self.assertEqual(certificate.details['edge_floor'], '107')
        self.assertEqual(certificate.details['spot_check'], 'confirmed')

    def test_contained_subgraph_gets_cut_witness(self):
        g = make_perturbed_family(FamilyParams('L', 17, 2), 'Z-Z')
        certificate = certify(g)
        self.assertEqual(certificate.verdict, Verdict.NON_HAMILTONIAN_WITNESS)
        self.assertEqual(certificate.rule, Rule.EDGE_COUNT)
        self.assertEqual(certificate.details['contained_in'], 'L^2_17')
        self.assertEqual(certificate.witness.cut, (2,))
        self.assertIsNone(certificate.family)

    def test_every_rule_is_traced(self):
        certificate = certify(make_complete(20))
        self.assertEqual(certificate.rule, Rule.FIEDLER_NIKIFOROV)
        fired = {(entry['rule'], entry['k']) for entry in certificate.details['trace'] if entry['outcome'] == 'fired'}
        self.assertIn((Rule.MIN_DEGREE_SPECTRAL, 2), fired)
        self.assertIn((Rule.EXTREMAL_SPECTRAL, 2), fired)
        self.assertIn((Rule.EDGE_COUNT, 1), fired)

    def test_agrees_with_exact_search(self):
        for seed in range(60):
            n = 5 + seed % 6
            g = Graph.from_networkx(nx.gnp_random_graph(n, 0.6, seed=seed))
            certificate = certify(g)
            self.assertTrue(certificate.resolved)
            self.assertEqual(certificate.hamiltonian, is_hamiltonian(g).hamiltonian, str(g))

    def test_budget_exhaustion_is_inconclusive(self):
        certificate = certify(Graph.from_networkx(nx.petersen_graph()), budget=5)
        self.assertEqual(certificate.verdict, Verdict.INCONCLUSIVE)
        self.assertIsNone(certificate.hamiltonian)

    def test_contradicted_verdict_raises(self):
        wrong = HamiltonicityResult(Status.NON_HAMILTONIAN, HamWitness(WitnessKind.EXHAUSTED))
        with mock.patch('certifier.services.is_hamiltonian', return_value=wrong):
            with self.assertRaises(TheoremViolation):
                certify(make_complete(6))

    def test_spot_validation_can_be_disabled(self):
        with self.settings(HAMCHECK={'SPOT_VALIDATE': False}):
            certificate = certify(make_complete(6))
        self.assertNotIn('spot_check', certificate.details)
        self.assertIsNone(certificate.witness)

    def test_too_small(self):
        with self.assertRaises(ValidationError):
            certify(make_complete(2))


class CertifyBipartiteTests(SimpleTestCase):
    def test_b1_7_is_exceptional(self):
        b = make_family(FamilyParams('B', 7, 1))
        certificate = certify_bipartite(b)
        self.assertEqual(certificate.verdict, Verdict.EXCEPTIONAL_EXTREMAL)
        self.assertEqual(certificate.rule, Rule.BIPARTITE_MIN_DEGREE_SPECTRAL)
        self.assertEqual(certificate.family, FamilyParams('B', 7, 1))
        self.assertEqual(certificate.witness.cut, (7,))
        self.assertEqual(certificate.details['spot_check'], 'confirmed')

    def test_b1_7_plus_edge_is_hamiltonian(self):
        b = make_family(FamilyParams('B', 7, 1)).with_edges(added=[(0, 8)])
        certificate = certify_bipartite(b)
        self.assertEqual(certificate.verdict, Verdict.HAMILTONIAN_BY_THEOREM)
        self.assertEqual(certificate.rule, Rule.BIPARTITE_MIN_DEGREE_SPECTRAL)
        self.assertEqual(certificate.details['edge_floor'], 42)
        self.assertTrue(is_hamiltonian(b).hamiltonian)

    def test_complete_bipartite(self):
        for n in range(2, 8):
            certificate = certify(make_complete_bipartite(n))
            self.assertTrue(certificate.hamiltonian)

    def test_b_family_never_certified_hamiltonian(self):
        for p in valid_params('B', 10):
            certificate = certify_bipartite(make_family(p))
            self.assertNotEqual(certificate.verdict, Verdict.HAMILTONIAN_BY_THEOREM, str(p))
            self.assertIs(certificate.hamiltonian, False)

    def test_requires_bipartite_input(self):
        with self.assertRaises(ValidationError):
            certify_bipartite(make_cycle(6))

    def test_agrees_with_exact_search(self):
        for seed in range(40):
            core = Graph.from_networkx(nx.bipartite.random_graph(5, 5, 0.7, seed=seed))
            b = BipartiteGraph.from_halves(core)
            self.assertEqual(certify_bipartite(b).hamiltonian, is_hamiltonian(b).hamiltonian)


class CertifyApiTests(APISimpleTestCase):
    def test_triangle(self):
        response = self.client.post('/api/certify/', {'graph6': 'Bw'}, format='json')
        self.assertEqual(response.status_code, 200)
        self.assertEqual(response.data['verdict'], 'HamiltonianByTheorem')
        self.assertEqual(response.data['rule'], 'fiedler-nikiforov')
        self.assertEqual(response.data['witness']['kind'], 'cycle')

    def test_unbalanced_bipartite_input(self):
        response = self.client.post('/api/certify/', {'graph6': 'Bw', 'bipartite': True}, format='json')
        self.assertEqual(response.status_code, 400)
        self.assertIn('bipartite', response.data['error'])

    def test_graph_too_small(self):
        response = self.client.post('/api/certify/', {'graph6': 'A_'}, format='json')
        self.assertEqual(response.status_code, 400)

    def test_non_ascii_graph6_rejected(self):
        response = self.client.post('/api/certify/', {'graph6': 'Aé'}, format='json')
        self.assertEqual(response.status_code, 400)
        self.assertIn('graph6', response.data['error'])
