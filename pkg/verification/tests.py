import csv
import io
import json
import os
import tempfile
from fractions import Fraction
from math import sqrt
from unittest import mock

import networkx as nx
from django.core.exceptions import ValidationError
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from graphs.families import make_family
from graphs.graph6 import decode_graph6
from graphs.structures import BipartiteGraph, FamilyParams

from .generators import (
    near_complete_bipartite,
    random_bipartite_min_degree,
    random_min_degree_graph,
    sample_rng,
)
from .reports import FIELDS, ReportRow, Relation, evaluate, format_value, write_csv
from .services import (
    ExperimentConfig,
    random_suite,
    sweep,
    verify_bipartite,
    verify_proofs,
    verify_subgraphs,
    verify_sharpness,
)


def run_command(name, *args, **options):
    out, err = io.StringIO(), io.StringIO()
    call_command(name, *args, stdout=out, stderr=err, **options)
    return out.getvalue(), err.getvalue()


def failures(rows):
    return [row for row in rows if not row.passed]


class ReportTests(SimpleTestCase):
    def test_strict_relations_need_a_margin(self):
        self.assertTrue(evaluate(0.5, Relation.LT, 1.0, 1e-9))
        self.assertFalse(evaluate(1.0 - 1e-12, Relation.LT, 1.0, 1e-9))
        self.assertFalse(evaluate(1.0 + 1e-12, Relation.GT, 1.0, 1e-9))

    def test_loose_relations_grant_the_tolerance(self):
        self.assertTrue(evaluate(1.0 + 1e-12, Relation.LE, 1.0, 1e-9))
        self.assertTrue(evaluate(1.0 - 1e-12, Relation.GE, 1.0, 1e-9))
        self.assertTrue(evaluate(1.0 + 1e-12, Relation.EQ, 1.0, 1e-9))
        self.assertFalse(evaluate(Fraction(1, 3), Relation.EQ, Fraction(1, 2)))

    def test_excluded_rows_never_fail(self):
        row = ReportRow('x', 5, 1, 'q', relation=Relation.EXCLUDED, note='n < 9')
        self.assertTrue(row.passed)
        self.assertTrue(row.excluded)

    def test_passed_is_recomputed_from_columns(self):
        record = ReportRow('x', 8, 2, 'g(n)', Fraction(-4), Relation.GT, 0).record()
        self.assertEqual(record['passed'], 'FAIL')
        self.assertEqual(record['value'], '-4')

    def test_format_value(self):
        self.assertEqual(format_value(Fraction(7, 2)), '7/2')
        self.assertEqual(format_value(True), 'true')
        self.assertEqual(format_value(None), '')
        self.assertEqual(format_value(1 / 3), '0.333333333333')

    def test_empty_csv_is_header_only(self):
        stream = io.StringIO()
        write_csv([], stream)
        self.assertEqual(stream.getvalue(), ','.join(FIELDS) + '\n')


class GeneratorTests(SimpleTestCase):
    def test_min_degree_is_reached(self):
        for index in range(30):
            rng = sample_rng(7, 0, index)
            g = random_min_degree_graph(9, 2, 0.1, rng)
            self.assertGreaterEqual(g.min_degree, 2)

    def test_seed_determines_the_sample(self):
        first = random_min_degree_graph(10, 2, 0.4, sample_rng(42, 0, 3))
        second = random_min_degree_graph(10, 2, 0.4, sample_rng(42, 0, 3))
        self.assertEqual(first.rows, second.rows)

    def test_bipartite_sample(self):
        b = random_bipartite_min_degree(6, 2, 0.2, sample_rng(1, 1, 0))
        self.assertIsInstance(b, BipartiteGraph)
        self.assertEqual(b.n, 6)
        self.assertGreaterEqual(b.min_degree, 2)

    def test_near_complete_bipartite(self):
        for index in range(20):
            b = near_complete_bipartite(7, sample_rng(3, 2, index))
            self.assertGreaterEqual(b.edge_count, 49 - 6)
            self.assertGreaterEqual(b.min_degree, 1)

    def test_unreachable_min_degree(self):
        with self.assertRaises(ValidationError):
            random_min_degree_graph(4, 4, 0.5, sample_rng(0, 0, 0))


class SubgraphExperimentTests(SimpleTestCase):
    def test_k1_regime_passes(self):
        rows = verify_subgraphs(ExperimentConfig('family-subgraph', k_values=(1,), n_min=5, n_max=9))
        self.assertEqual(failures(rows), [])
        self.assertTrue(any(row.quantity == 'lambda(N - Z-Z)' for row in rows))
        self.assertTrue(any(row.quantity.startswith('lambda(L - ') for row in rows))

    def test_k2_regime_starts_at_nine(self):
        rows = verify_subgraphs(ExperimentConfig('family-subgraph', k_values=(2,), n_min=8, n_max=10))
        self.assertEqual(failures(rows), [])
        self.assertEqual([row.n for row in rows if row.excluded], [8])

    def test_forced_below_regime_reports_violation(self):
        config = ExperimentConfig('family-subgraph', k_values=(2,), n_min=8, n_max=8, force=True)
        failed = {row.quantity for row in failures(verify_subgraphs(config))}
        self.assertIn('lambda(N - Z-Z)', failed)
        self.assertIn('f(n-k-1)', failed)

    def test_every_edge(self):
        config = ExperimentConfig('family-subgraph', k_values=(1,), n_min=6, n_max=6, all_edges=True)
        rows = [row for row in verify_subgraphs(config) if row.quantity == 'lambda(N - Z-Z)']
        # Z de N^1_6 compte 4 sommets
        self.assertEqual(len(rows), 6)

    def test_bipartite_bound(self):
        rows = verify_bipartite(ExperimentConfig('bipartite-subgraph', k_values=(1,), n_min=6, n_max=9))
        self.assertEqual(failures(rows), [])
        self.assertTrue(rows[0].excluded)
        self.assertIn('lambda(B - Y-Z)', {row.quantity for row in rows})

    def test_bipartite_every_edge(self):
        config = ExperimentConfig('bipartite-subgraph', k_values=(1,), n_min=7, n_max=7, all_edges=True)
        self.assertEqual(failures(verify_bipartite(config)), [])


class SharpnessTests(SimpleTestCase):
    def test_k2(self):
        rows = verify_sharpness(ExperimentConfig('sharpness', k_values=(2,)))
        self.assertEqual(failures(rows), [])
        by_quantity = {row.quantity: row for row in rows}
        self.assertEqual(by_quantity['g(n)'].n, 8)
        self.assertEqual(by_quantity['g(n)'].value, -4)
        self.assertGreater(by_quantity['lambda(N - Z-Z)'].value, 5 + 1e-6)

    def test_k4(self):
        rows = verify_sharpness(ExperimentConfig('sharpness', k_values=(4,)))
        self.assertEqual(failures(rows), [])
        g_row = next(row for row in rows if row.quantity == 'g(n)')
        self.assertEqual((g_row.n, g_row.value), (38, -28))

    def test_odd_k_is_rejected(self):
        with self.assertRaises(ValidationError):
            verify_sharpness(ExperimentConfig('sharpness', k_values=(3,)))


class ProofReplicationTests(SimpleTestCase):
    def test_small_regime_cells(self):
        rows = verify_proofs(ExperimentConfig('proof-replication', k_values=(1, 2), n_min=5, n_max=10))
        self.assertEqual(failures(rows), [])
        quantities = {(row.n, row.k, row.quantity) for row in rows if not row.excluded}
        self.assertIn((9, 2, 'phi/y^2 at n-k-1'), quantities)
        self.assertIn((7, 1, 'lambda*s*t - k^3*x^2'), quantities)
        self.assertIn((5, 1, 'restricted form on K_{n-k}'), quantities)

    def test_below_regime_is_excluded(self):
        rows = verify_proofs(ExperimentConfig('proof-replication', k_values=(2,), n_min=6, n_max=6))
        cell = [row for row in rows if row.n == 6 and row.quantity != 'edge floor']
        self.assertTrue(cell)
        self.assertTrue(all(row.excluded for row in cell))

    def test_g_at_regime_start(self):
        rows = verify_proofs(ExperimentConfig('proof-replication', k_values=(3,), n_min=1, n_max=0))
        g_row = next(row for row in rows if row.quantity == 'g at regime start')
        self.assertEqual(g_row.value, Fraction(27 - 36 + 15, 2))
        self.assertTrue(g_row.passed)


class SweepTests(SimpleTestCase):
    def test_family_radii_exceed_thresholds(self):
        rows = sweep(ExperimentConfig('sweep', k_values=(1, 2), n_min=10, n_max=10))
        by_k = {row['k']: row for row in rows}
        self.assertGreater(by_k[1]['lambda_N'], 8)
        self.assertGreater(by_k[2]['lambda_B'], sqrt(80))
        self.assertEqual(by_k[2]['edge_threshold'], 30)

    def test_cells_below_2k_plus_1_are_skipped(self):
        rows = sweep(ExperimentConfig('sweep', k_values=(3,), n_min=5, n_max=7))
        self.assertEqual([row['n'] for row in rows], [7])

    def test_parallel_order_is_deterministic(self):
        serial = sweep(ExperimentConfig('sweep', k_values=(1, 2), n_min=5, n_max=12))
        parallel = sweep(ExperimentConfig('sweep', k_values=(1, 2), n_min=5, n_max=12, jobs=4))
        self.assertEqual(serial, parallel)


class RandomSuiteTests(SimpleTestCase):
    def config(self, **overrides):
        options = {'samples': 24, 'bipartite_samples': 4, 'n_min': 5, 'n_max': 9, 'k_values': (1, 2)}
        options.update(overrides)
        return ExperimentConfig('random-suite', **options)

    def test_no_violations(self):
        rows = random_suite(self.config())
        self.assertEqual(failures(rows), [])
        self.assertEqual({row.sample for row in rows if row.quantity == 'lambda2'}, set(range(24)))

    def test_reproducible_across_jobs(self):
        serial = [row.record() for row in random_suite(self.config(samples=8, bipartite_samples=2))]
        parallel = [row.record() for row in random_suite(self.config(samples=8, bipartite_samples=2, jobs=3))]
        self.assertEqual(serial, parallel)

    def test_backbone(self):
        rows = random_suite(self.config(samples=0, bipartite_samples=0, backbone_samples=1))
        backbone = [row for row in rows if row.experiment == 'bipartite-backbone']
        self.assertEqual(len(backbone), 4)
        self.assertEqual(failures(backbone), [])


class CommandTests(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def write(self, name, text):
        path = os.path.join(self.tmp.name, name)
        with open(path, 'w', encoding='ascii') as stream:
            stream.write(text)
        return path

    def test_verify_subgraphs_passes(self):
        out, err = run_command('verify_subgraphs', k=[1], n_min=5, n_max=7)
        self.assertIn('lambda(N - Z-Z)', out)
        self.assertIn('0 failed', err)

    def test_verify_subgraphs_forced_violation_exits_1(self):
        with self.assertRaises(CommandError) as ctx:
            run_command('verify_subgraphs', k=[2], n_min=8, n_max=8, force=True)
        self.assertEqual(ctx.exception.returncode, 1)

    def test_verify_sharpness_csv(self):
        out, _ = run_command('verify_sharpness', k=[2], format='csv')
        rows = {row['quantity']: row for row in csv.DictReader(io.StringIO(out))}
        self.assertEqual(rows['g(n)']['value'], '-4')
        self.assertEqual(rows['g(n)']['n'], '8')
        self.assertEqual(rows['lambda(N - Z-Z)']['passed'], 'pass')

    def test_verify_sharpness_odd_k_exits_2(self):
        with self.assertRaises(CommandError) as ctx:
            run_command('verify_sharpness', k=[3])
        self.assertEqual(ctx.exception.returncode, 2)

    def test_sweep_empty_range_is_header_only(self):
        out, _ = run_command('sweep', k=[1], n_min=10, n_max=9)
        self.assertEqual(out.splitlines(), ['n,k,lambda_N,lambda_L,lambda_B,n_minus_k_minus_1,sqrt_n_n_minus_k,'
                                            'edge_threshold,bipartite_edge_threshold'])

    def test_sweep_to_file(self):
        path = os.path.join(self.tmp.name, 'sweep.csv')
        run_command('sweep', k=[1, 2], n_min=10, n_max=10, out=path)
        with open(path, encoding='utf-8') as stream:
            rows = list(csv.DictReader(stream))
        self.assertEqual([(row['n'], row['k']) for row in rows], [('10', '1'), ('10', '2')])
        self.assertGreater(float(rows[0]['lambda_N']), 8)
        self.assertGreater(float(rows[1]['lambda_B']), sqrt(80))

    def test_certify_triangle(self):
        out, _ = run_command('certify', self.write('in.g6', 'Bw\n'))
        certificate = json.loads(out)
        self.assertEqual(certificate['verdict'], 'HamiltonianByTheorem')
        self.assertEqual(certificate['rule'], 'fiedler-nikiforov')
        self.assertEqual(certificate['witness']['kind'], 'cycle')
        self.assertEqual(certificate['details']['spot_check'], 'confirmed')

    def test_certify_family_graph(self):
        encoded, _ = run_command('encode', 'N', '20', '2')
        out, _ = run_command('certify', self.write('n.g6', encoded))
        certificate = json.loads(out)
        self.assertEqual(certificate['verdict'], 'ExceptionalExtremal')
        self.assertEqual(certificate['rule'], 'min-degree-spectral')
        self.assertEqual(certificate['family'], {'family': 'N', 'n': 20, 'k': 2})

    def test_certify_malformed_record_exits_2(self):
        with self.assertRaises(CommandError) as ctx:
            run_command('certify', self.write('bad.g6', 'Bw\n!!\n'))
        self.assertEqual(ctx.exception.returncode, 2)
        self.assertIn('2', str(ctx.exception))

    def test_certify_non_ascii_stdin_exits_2(self):
        with mock.patch('sys.stdin', io.StringIO('Bw\nAé\n')):
            with self.assertRaises(CommandError) as ctx:
                run_command('certify')
        self.assertEqual(ctx.exception.returncode, 2)

    def test_certify_inconclusive_exits_1(self):
        petersen = nx.to_graph6_bytes(nx.petersen_graph(), header=False).decode('ascii')
        with self.assertRaises(CommandError) as ctx:
            run_command('certify', self.write('p.g6', petersen), budget=5)
        self.assertEqual(ctx.exception.returncode, 1)

    def test_encode_round_trip(self):
        out, _ = run_command('encode', 'L', '9', '2', delete='Z-Z')
        g = decode_graph6(out.strip().encode('ascii'))
        self.assertEqual(g.edge_count, make_family(FamilyParams('L', 9, 2)).edge_count - 1)
        out, _ = run_command('encode', 'B', '7', '1')
        self.assertEqual(decode_graph6(out.strip().encode('ascii')).rows, make_family(FamilyParams('B', 7, 1)).core.rows)

    def test_encode_rejects_bad_deletion(self):
        with self.assertRaises(CommandError) as ctx:
            run_command('encode', 'N', '10', '2', delete='X-Y')
        self.assertEqual(ctx.exception.returncode, 2)

    def test_decode(self):
        out, _ = run_command('decode', self.write('k3.g6', 'Bw\n'))
        self.assertEqual(out.strip(), '1: n=3 e=3 delta=2 edges=0-1 0-2 1-2')
