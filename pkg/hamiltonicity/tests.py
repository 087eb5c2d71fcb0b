import networkx as nx
from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from graphs.families import (
    make_complete,
    make_complete_bipartite,
    make_cycle,
    make_family,
    make_path,
)
from graphs.structures import BipartiteGraph, FamilyParams, Graph

from .exceptions import WitnessVerificationError
from .services import (
    Status,
    WitnessKind,
    backtracking_search,
    count_components_without,
    dp_search,
    find_cut_witness,
    is_hamiltonian,
    is_hamiltonian_bipartite,
    verify_cycle,
)

LARGE_BUDGET = 10 ** 8


def gnp(n, p, seed):
    return Graph.from_networkx(nx.gnp_random_graph(n, p, seed=seed))


def cycle_edges(cycle):
    return {frozenset(pair) for pair in zip(cycle, cycle[1:] + cycle[:1])}


class ExactSearchTests(SimpleTestCase):
    def test_cycle_graph(self):
        for n in range(3, 12):
            ok, witness = is_hamiltonian(make_cycle(n))
            self.assertTrue(ok)
            self.assertEqual(witness.kind, WitnessKind.CYCLE)
            self.assertEqual(cycle_edges(witness.cycle), cycle_edges(tuple(range(n))))

    def test_cycle_reconstruction_is_deterministic(self):
        ok, witness = is_hamiltonian(make_complete(5))
        self.assertTrue(ok)
        self.assertEqual(witness.cycle, (0, 4, 3, 2, 1))

    def test_n_family_has_join_cut(self):
        result = is_hamiltonian(make_family(FamilyParams('N', 10, 2)))
        self.assertEqual(result.status, Status.NON_HAMILTONIAN)
        self.assertEqual(result.witness.kind, WitnessKind.CUT)
        self.assertEqual(result.witness.cut, (2, 3))
        self.assertEqual(result.witness.components, 3)

    def test_l_family_has_cut_vertex(self):
        for n, k in ((7, 2), (9, 3), (12, 4)):
            ok, witness = is_hamiltonian(make_family(FamilyParams('L', n, k)))
            self.assertFalse(ok)
            self.assertEqual(witness.cut, (k,))
            self.assertEqual(witness.components, 2)

    def test_cut_witnesses_reverify(self):
        for family in 'LN':
            for n in range(5, 13):
                for k in range(1, (n - 1) // 2 + 1):
                    g = make_family(FamilyParams(family, n, k))
                    ok, witness = is_hamiltonian(g)
                    self.assertFalse(ok)
                    self.assertGreater(count_components_without(g, witness.cut), len(witness.cut))

    def test_petersen_graph_is_exhausted(self):
        petersen = Graph.from_networkx(nx.petersen_graph())
        self.assertIsNone(find_cut_witness(petersen))
        ok, witness = is_hamiltonian(petersen)
        self.assertFalse(ok)
        self.assertEqual(witness.kind, WitnessKind.EXHAUSTED)

    def test_budget_exhaustion_is_unknown(self):
        petersen = Graph.from_networkx(nx.petersen_graph())
        result = is_hamiltonian(petersen, budget=5)
        self.assertEqual(result.status, Status.UNKNOWN)
        self.assertIsNone(result.hamiltonian)

    def test_disconnected_graph_has_empty_cut(self):
        g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
        ok, witness = is_hamiltonian(g)
        self.assertFalse(ok)
        self.assertEqual(witness.cut, ())
        self.assertEqual(witness.components, 2)

    def test_path_is_not_hamiltonian(self):
        ok, witness = is_hamiltonian(make_path(5))
        self.assertFalse(ok)
        self.assertEqual(witness.kind, WitnessKind.CUT)

    def test_too_small_rejected(self):
        with self.assertRaises(ValidationError):
            is_hamiltonian(make_complete(2))

    def test_backtracking_beyond_dp_limit(self):
        with self.settings(HAMCHECK={'DP_LIMIT': 5}):
            result = is_hamiltonian(make_cycle(9))
        self.assertEqual(result.method, 'backtracking')
        self.assertTrue(result.hamiltonian)

    def test_dp_and_backtracking_agree(self):
        graphs = [gnp(n, 0.45, seed) for seed in range(40) for n in (6, 9, 12)]
        for family in 'LN':
            graphs += [make_family(FamilyParams(family, n, 1)) for n in range(4, 13)]
        for g in graphs:
            dp_cycle, dp_done = dp_search(g, LARGE_BUDGET)
            bt_cycle, bt_done = backtracking_search(g, LARGE_BUDGET)
            self.assertTrue(dp_done and bt_done)
            self.assertEqual(dp_cycle is None, bt_cycle is None, str(g))
            for cycle in (dp_cycle, bt_cycle):
                if cycle is not None:
                    verify_cycle(g, cycle)

    def test_adding_an_edge_keeps_hamiltonicity(self):
        for seed in range(25):
            g = gnp(9, 0.5, seed)
            if not is_hamiltonian(g).hamiltonian:
                continue
            for u, v in [(u, v) for u in range(9) for v in range(u + 1, 9) if not g.has_edge(u, v)][:5]:
                self.assertTrue(is_hamiltonian(g.with_edges(added=[(u, v)])).hamiltonian)

    def test_verify_cycle_rejects_bad_witness(self):
        with self.assertRaises(WitnessVerificationError):
            verify_cycle(make_cycle(5), (0, 2, 1, 3, 4))
        with self.assertRaises(WitnessVerificationError):
            verify_cycle(make_cycle(5), (0, 1, 2, 3))


class BipartiteSearchTests(SimpleTestCase):
    def test_complete_bipartite(self):
        for n in range(2, 7):
            ok, witness = is_hamiltonian_bipartite(make_complete_bipartite(n))
            self.assertTrue(ok)
            verify_cycle(make_complete_bipartite(n), witness.cycle)

    def test_b_family_cut_is_x(self):
        for n in range(3, 9):
            for k in range(1, (n - 1) // 2 + 1):
                b = make_family(FamilyParams('B', n, k))
                ok, witness = is_hamiltonian_bipartite(b)
                self.assertFalse(ok)
                self.assertEqual(witness.cut, b.classes[1].vertices)
                self.assertEqual(witness.components, k + 1)

    def test_isolated_vertex(self):
        core = Graph.from_edges(6, [(0, 3), (0, 4), (1, 3), (1, 4), (1, 5)])
        ok, witness = is_hamiltonian_bipartite(BipartiteGraph.from_halves(core))
        self.assertFalse(ok)

    def test_agrees_with_general_search(self):
        for seed in range(30):
            core = Graph.from_networkx(nx.bipartite.random_graph(5, 5, 0.6, seed=seed))
            b = BipartiteGraph.from_halves(core)
            self.assertEqual(is_hamiltonian_bipartite(b).hamiltonian, is_hamiltonian(core).hamiltonian)

    def test_balanced_state_dp_matches_plain_dp(self):
        for seed in range(20):
            core = Graph.from_networkx(nx.bipartite.random_graph(6, 6, 0.55, seed=seed))
            b = BipartiteGraph.from_halves(core)
            filtered = is_hamiltonian_bipartite(b, budget=LARGE_BUDGET)
            plain, _ = dp_search(core, LARGE_BUDGET)
            if filtered.witness.kind != WitnessKind.CUT:
                self.assertEqual(filtered.hamiltonian, plain is not None)

    def test_requires_bipartite_input(self):
        with self.assertRaises(ValidationError):
            is_hamiltonian_bipartite(make_cycle(6))
