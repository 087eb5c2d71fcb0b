"""
Expériences de vérification : chaque fonction parcourt une grille (n, k) ou une suite
d'échantillons et renvoie des ReportRow dans un ordre déterministe.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, sqrt
from typing import Optional

from certifier.exceptions import TheoremViolation
from certifier.recognition import recognize_family
from certifier.services import certify
from certifier.thresholds import Rule, bipartite_min_degree_spectral_min_n
from graphs.families import DeletedEdge, kelmans, make_family, make_perturbed_family
from graphs.structures import Family, FamilyParams
from graphs.utils import hamcheck_setting
from graphs.validators import validate_even_k
from hamiltonicity.services import is_hamiltonian
from spectral.bounds import (
    bipartite_edge_threshold,
    edge_floor,
    edge_threshold,
    hong_bound,
    nikiforov_bound,
)
from spectral.exceptions import RootIsolationError
from spectral.polynomials import eval_f, eval_g, isolate_f_root, sign_change_threshold
from spectral.quotients import quotient_lambda, quotient_of_family
from spectral.services import spectral_dense
from spectral.solved_forms import (
    b_restriction_quadratic,
    b_st_gap,
    b_x_identity,
    l_restriction_quadratic,
    phi,
    phi_lower_bound,
    phi_ratio,
    z_bounds,
)

from .generators import (
    BACKBONE_STREAM,
    BIPARTITE_STREAM,
    GENERAL_STREAM,
    near_complete_bipartite,
    random_bipartite_min_degree,
    random_min_degree_graph,
    sample_rng,
)
from .reports import ReportRow, Relation, excluded_row

logger = logging.getLogger(__name__)

STRICT_TOL = 1e-9
SHARPNESS_MARGIN = 1e-6
BACKBONE_SIDES = range(7, 11)
BACKBONE_ATTEMPTS = 50
BIPARTITE_SIDE_MAX = 10

SWEEP_FIELDS = (
    'n',
    'k',
    'lambda_N',
    'lambda_L',
    'lambda_B',
    'n_minus_k_minus_1',
    'sqrt_n_n_minus_k',
    'edge_threshold',
    'bipartite_edge_threshold',
)


@dataclass(frozen=True)
class ExperimentConfig:
    """Paramètres d'une expérience ; la graine détermine entièrement les suites aléatoires."""

    experiment: str
    k_values: tuple = (1,)
    n_min: int = 5
    n_max: int = 16
    seed: int = 42
    samples: int = 1000
    tol: Optional[float] = None
    out: Optional[str] = None
    jobs: int = 1
    budget: Optional[int] = None
    all_edges: bool = False
    force: bool = False
    bipartite_samples: int = 500
    backbone_samples: int = 0

    @property
    def strict_tol(self):
        return STRICT_TOL if self.tol is None else self.tol

    @property
    def agreement_tol(self):
        return hamcheck_setting('AGREEMENT_TOL') if self.tol is None else max(self.tol, STRICT_TOL)

    def grid(self, min_n=None):
        """Cellules (n, k) dans l'ordre (n, k), limitées à n >= min_n(k) si fourni."""
        return [
            (n, k)
            for n in range(self.n_min, self.n_max + 1)
            for k in self.k_values
            if min_n is None or n >= min_n(k)
        ]


def _map_cells(fn, cells, jobs):
    # pool.map conserve l'ordre des cellules
    if jobs and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(fn, cells))
    else:
        results = [fn(cell) for cell in cells]
    return [row for rows in results for row in rows]


def _members(g, label):
    try:
        return g.class_of(label)
    except KeyError:
        return ()


def _first(vector, g, label):
    return float(vector[g.class_of(label)[0]])


def _label_map(g):
    return {v: c.label for c in g.classes for v in c.vertices}


def _representative_edges(g, all_edges):
    """Une arête par paire de classes (orbite), ou toutes les arêtes."""
    labels = _label_map(g)
    seen = set()
    for u, v in g.edges():
        pair = tuple(sorted((labels[u], labels[v])))
        if all_edges or pair not in seen:
            seen.add(pair)
            yield (u, v), f"{pair[0]}-{pair[1]}"


# --- Sous-graphes de N^k_n et L^k_n --------------------------------------------------------

SUBGRAPH = 'family-subgraph'


def _sign_rows(n, k):
    threshold = n - k - 1
    rows = [
        ReportRow(SUBGRAPH, n, k, 'f(n-k-2)', eval_f(n, k, n - k - 2), Relation.LT, 0),
        ReportRow(SUBGRAPH, n, k, 'f(n-k-1)', eval_f(n, k, threshold), Relation.GT, 0),
    ]
    try:
        interval = isolate_f_root(n, k)
    except RootIsolationError as exc:
        rows.append(ReportRow(SUBGRAPH, n, k, 'f root in (n-k-2, n-k-1)', False, Relation.EQ, True, note=str(exc)))
        return rows
    rows.append(
        ReportRow(
            SUBGRAPH, n, k, 'f root', float(interval.midpoint), Relation.LT, threshold,
            note=f"[{float(interval.lo):.12g}, {float(interval.hi):.12g}]",
        )
    )
    return rows


def _deletion_rows(family, n, k, config):
    g = make_family(FamilyParams(family, n, k))
    threshold = n - k - 1
    tol = config.strict_tol
    rows = []
    kept = []
    for (u, v), pair in _representative_edges(g, config.all_edges):
        h = g.with_edges(removed=[(u, v)])
        if h.min_degree < k:
            continue
        lam = spectral_dense(h).lambda1
        kept.append((h, (u, v), pair, lam))
        rows.append(
            ReportRow(
                SUBGRAPH, n, k, f"lambda({family} - {pair})", lam, Relation.LT, threshold, tol,
                note=f"edge {u}-{v}",
            )
        )
    if kept:
        h, first, pair, lam = kept[0]
        for _, (u, v), other, _ in kept[1:]:
            second = spectral_dense(h.with_edges(removed=[(u, v)])).lambda1
            rows.append(
                ReportRow(
                    SUBGRAPH, n, k, f"lambda({family} - {pair} - {other})", second, Relation.LE, lam, tol,
                    note=f"edges {first[0]}-{first[1]}, {u}-{v}",
                )
            )
    return rows


def verify_subgraphs(config):
    """
    Pour chaque (n, k) du régime n >= k^3/2 + k + 5/2 : signe de f aux bornes de
    (n-k-2, n-k-1), isolement exact de la racine, puis lambda < n-k-1 pour chaque suppression
    d'arête de N^k_n et L^k_n qui garde delta >= k. La monotonie de lambda par suppression
    est vérifiée sur les paires de suppressions.
    """

    def cell(nk):
        n, k = nk
        start = sign_change_threshold(k)
        if n < 2 * k + 1:
            return [excluded_row(SUBGRAPH, n, k, 'family graph', f"n < 2k+1 = {2 * k + 1}")]
        if n < start and not config.force:
            return [excluded_row(SUBGRAPH, n, k, 'lambda(G - e)', f"n < {ceil(start)}")]
        rows = _sign_rows(n, k)
        for family in (Family.N, Family.L):
            rows.extend(_deletion_rows(family, n, k, config))
        logger.debug(f"Subgraph bound checked for n={n}, k={k}")
        return rows

    rows = _map_cells(cell, config.grid(), config.jobs)
    logger.info(f"Subgraph bound experiment: {len(rows)} rows")
    return rows


# --- Optimalité du seuil ---------------------------------------------------------------------

SHARPNESS = 'sharpness'


def verify_sharpness(config):
    """n = k^3/2 + k + 2 pour k pair : g(n) = 4 - 2k^2 < 0 et lambda(N^k_n - uv) > n-k-1."""
    rows = []
    for k in config.k_values:
        validate_even_k(k)
        n = k ** 3 // 2 + k + 2
        threshold = n - k - 1
        g_value = eval_g(n, k, n)
        lam = quotient_lambda(quotient_of_family(FamilyParams(Family.N, n, k), DeletedEdge.ZZ))
        rows += [
            ReportRow(SHARPNESS, n, k, 'g(n)', g_value, Relation.EQ, 4 - 2 * k * k),
            ReportRow(SHARPNESS, n, k, 'f(n-k-1) - g(n)', eval_f(n, k, threshold) - g_value, Relation.EQ, 0),
            ReportRow(SHARPNESS, n, k, 'lambda(N - Z-Z)', lam, Relation.GT, threshold, SHARPNESS_MARGIN,
                      note='quotient'),
        ]
        if n <= hamcheck_setting('DENSE_LIMIT'):
            dense = spectral_dense(make_perturbed_family(FamilyParams(Family.N, n, k), DeletedEdge.ZZ)).lambda1
            rows.append(
                ReportRow(SHARPNESS, n, k, 'lambda(N - Z-Z) dense', dense, Relation.EQ, lam, config.agreement_tol)
            )
    logger.info(f"Sharpness experiment: {len(rows)} rows for k={list(config.k_values)}")
    return rows


# --- Réplication numérique des preuves -------------------------------------------------------

PROOFS = 'proof-replication'


def _identity_rows(k):
    start = sign_change_threshold(k)
    rows = [
        ReportRow(PROOFS, None, k, 'g at regime start', eval_g(start, k, start), Relation.EQ,
                  Fraction(k ** 3 - 4 * k * k + 15, 2)),
        ReportRow(PROOFS, None, k, 'vertex of g', Fraction(k ** 3 + 4 * k + 2, 4), Relation.LT, start),
    ]
    return rows


def _l_proof_rows(n, k, config):
    tol = config.strict_tol
    threshold = n - k - 1
    g = make_perturbed_family(FamilyParams(Family.L, n, k), DeletedEdge.ZZ)
    result = spectral_dense(g)
    lam, p = result.lambda1, result.perron
    x, y, t = _first(p, g, 'X'), _first(p, g, 'w'), _first(p, g, 'T')
    closed = phi_ratio(k, threshold)
    restricted = p[list(g.class_of('w')) + list(_members(g, 'Z')) + list(g.class_of('T'))]
    quadratic = float(restricted.sum() ** 2 - restricted @ restricted)
    return [
        ReportRow(PROOFS, n, k, 'phi/y^2 at n-k-1', closed, Relation.GT, 0),
        ReportRow(PROOFS, n, k, 'phi/y^2 at n-k-1', closed, Relation.GE, phi_lower_bound(k), tol,
                  note='lower bound'),
        ReportRow(PROOFS, n, k, 'phi/y^2 from Perron values', phi(k, x, y, t) / (y * y), Relation.EQ,
                  phi_ratio(k, lam), config.agreement_tol),
        ReportRow(PROOFS, n, k, 'lambda(L - Z-Z)', lam, Relation.LT, threshold, tol),
        ReportRow(PROOFS, n, k, 'restricted form on K_{n-k}', quadratic, Relation.EQ,
                  l_restriction_quadratic(k, lam, x, y, t), config.agreement_tol),
        ReportRow(PROOFS, n, k, 'restricted form on K_{n-k}', quadratic, Relation.LT, threshold, tol),
    ]


def _b_proof_rows(n, k, config):
    tol = config.strict_tol
    root = sqrt(n * (n - k))
    params = FamilyParams(Family.B, n, k)
    lam_b = spectral_dense(make_family(params)).lambda1
    rows = [
        ReportRow(PROOFS, n, k, 'sqrt(n(n-k))', root, Relation.GT, n - k),
        ReportRow(PROOFS, n, k, 'lambda(B)', lam_b, Relation.GE, root, tol),
        ReportRow(PROOFS, n, k, 'lambda(B)', lam_b, Relation.LT, n, tol),
    ]

    g = make_perturbed_family(params, DeletedEdge.YZ)
    result = spectral_dense(g)
    lam, p, core = result.lambda1, result.perron, g.core
    w, x, y, z, s, t = (_first(p, core, label) for label in ('W', 'X', 'Y', 'Z', 'S', 'T'))
    lower, upper = z_bounds(n, k)
    a_side = list(core.class_of('Y')) + list(core.class_of('S'))
    b_side = list(core.class_of('X')) + list(core.class_of('Z')) + list(core.class_of('T'))
    quadratic = float(2 * p[a_side].sum() * p[b_side].sum())
    rows += [
        ReportRow(PROOFS, n, k, 'lambda(B - Y-Z)', lam, Relation.GT, n - k, tol),
        ReportRow(PROOFS, n, k, 'lambda(B - Y-Z)', lam, Relation.LT, root, tol),
        ReportRow(PROOFS, n, k, 'z/y', z / y, Relation.GT, lower, tol),
        ReportRow(PROOFS, n, k, 'z/y', z / y, Relation.LT, upper, tol),
        ReportRow(PROOFS, n, k, 'lambda*s*t - k^3*x^2', b_st_gap(k, lam, s, t, x), Relation.GT, 0, tol),
        ReportRow(PROOFS, n, k, '(x/y)^2', (x / y) ** 2, Relation.LT, 1, tol),
        ReportRow(PROOFS, n, k, '(lambda - k^2/lambda) x', (lam - k * k / lam) * x, Relation.EQ,
                  b_x_identity(n, k, lam, y), config.agreement_tol),
        ReportRow(PROOFS, n, k, 'restricted form on K_{n,n-k}', quadratic, Relation.EQ,
                  b_restriction_quadratic(k, lam, w, x, s, t), config.agreement_tol),
        ReportRow(PROOFS, n, k, 'restricted form on K_{n,n-k}', quadratic, Relation.LT, root, tol),
    ]
    return rows


def verify_proofs(config):
    """
    Rejoue les étapes numériques des preuves sur L^k_n - uv (régime n >= k^3/2 + k + 5/2) et
    B^k_n - uv (régime n >= k^3 + 2k + 4), plus les identités exactes sur g et le plancher
    d'arêtes. Les cellules hors régime sont signalées, jamais comptées en échec.
    """

    def cell(nk):
        n, k = nk
        rows = []
        if n >= sign_change_threshold(k):
            rows += _l_proof_rows(n, k, config)
        else:
            rows.append(excluded_row(PROOFS, n, k, 'L - Z-Z', f"n < {ceil(sign_change_threshold(k))}"))
        b_start = bipartite_min_degree_spectral_min_n(k)
        if n >= b_start:
            rows += _b_proof_rows(n, k, config)
        else:
            rows.append(excluded_row(PROOFS, n, k, 'B - Y-Z', f"n < {b_start}"))
        if 2 * n > k * k + 6 * k + 4:
            rows.append(ReportRow(PROOFS, n, k, 'edge floor', edge_floor(n, k), Relation.GT, edge_threshold(n, k)))
        return rows

    rows = []
    for k in config.k_values:
        rows += _identity_rows(k)
    rows += _map_cells(cell, config.grid(), config.jobs)
    logger.info(f"Proof replication: {len(rows)} rows")
    return rows


# --- Sous-graphes de B^k_n ---------------------------------------------------------------

BIPARTITE = 'bipartite-subgraph'


def verify_bipartite(config):
    """
    lambda(B^k_n - e) < sqrt(n(n-k)) pour chaque suppression qui garde delta >= k, et
    domination lambda(B - Y-Z) >= lambda(B - X-Y) issue de l'opération de Kelmans.
    """

    def cell(nk):
        n, k = nk
        if n < 2 * k + 1:
            return [excluded_row(BIPARTITE, n, k, 'family graph', f"n < 2k+1 = {2 * k + 1}")]
        start = bipartite_min_degree_spectral_min_n(k)
        if n < start and not config.force:
            return [excluded_row(BIPARTITE, n, k, 'lambda(B - e)', f"n < {start}")]
        params = FamilyParams(Family.B, n, k)
        root = sqrt(n * (n - k))
        tol = config.strict_tol
        rows = []
        if config.all_edges:
            b = make_family(params)
            for (u, v), pair in _representative_edges(b.core, True):
                h = b.with_edges(removed=[(u, v)])
                if h.min_degree < k:
                    continue
                rows.append(
                    ReportRow(BIPARTITE, n, k, f"lambda(B - {pair})", spectral_dense(h).lambda1, Relation.LT, root,
                              tol, note=f"edge {u}-{v}")
                )
        values = {}
        for deleted in (DeletedEdge.XY, DeletedEdge.YZ):
            values[deleted] = quotient_lambda(quotient_of_family(params, deleted))
            if not config.all_edges:
                rows.append(
                    ReportRow(BIPARTITE, n, k, f"lambda(B - {deleted})", values[deleted], Relation.LT, root, tol,
                              note='quotient')
                )
        rows.append(
            ReportRow(BIPARTITE, n, k, 'lambda(B - Y-Z) - lambda(B - X-Y)',
                      values[DeletedEdge.YZ] - values[DeletedEdge.XY], Relation.GE, 0, tol)
        )
        return rows

    rows = _map_cells(cell, config.grid(), config.jobs)
    logger.info(f"Bipartite subgraph experiment: {len(rows)} rows")
    return rows


# --- Balayage ---------------------------------------------------------------------------------

def _sweep_cell(nk):
    n, k = nk
    lam = {
        family: quotient_lambda(quotient_of_family(FamilyParams(family, n, k)))
        for family in (Family.N, Family.L, Family.B)
    }
    return [{
        'n': n,
        'k': k,
        'lambda_N': lam[Family.N],
        'lambda_L': lam[Family.L],
        'lambda_B': lam[Family.B],
        'n_minus_k_minus_1': n - k - 1,
        'sqrt_n_n_minus_k': sqrt(n * (n - k)),
        'edge_threshold': edge_threshold(n, k),
        'bipartite_edge_threshold': bipartite_edge_threshold(n, k),
    }]


def sweep(config):
    """Grille des seuils exacts ; une ligne (dict) par cellule (n, k) avec n >= 2k+1."""
    cells = config.grid(min_n=lambda k: 2 * k + 1)
    return _map_cells(_sweep_cell, cells, config.jobs)


# --- Suite aléatoire -------------------------------------------------------------------------

RANDOM = 'random-suite'
BACKBONE = 'bipartite-backbone'


def _theorem_rows(experiment, g, n, k, index, config):
    """Certifie sans recoupement interne puis compare à l'oracle exact."""
    try:
        certificate = certify(g, config.budget, spot_validate=False)
    except TheoremViolation as exc:
        return [ReportRow(experiment, n, k, 'theorem consistency', False, Relation.EQ, True, sample=index,
                          note=str(exc))]
    label = f"{certificate.verdict} [{certificate.rule}]"
    if certificate.rule == Rule.EXACT_SEARCH:
        return [ReportRow(experiment, n, k, 'certificate', str(certificate.verdict), sample=index, note=label)]
    oracle = is_hamiltonian(g, config.budget)
    logger.debug(f"Sample {index}: {label}, oracle {oracle.status}")
    if oracle.hamiltonian is None:
        return [ReportRow(experiment, n, k, 'oracle', str(oracle.status), sample=index, note=label)]
    return [ReportRow(experiment, n, k, 'hamiltonian', oracle.hamiltonian, Relation.EQ, certificate.hamiltonian,
                      sample=index, note=label)]


def _bound_rows(experiment, g, n, k, index, rng, config, bipartite=False):
    tol = config.strict_tol
    core = g.core if bipartite else g
    result = spectral_dense(core)
    rows = [
        ReportRow(experiment, n, k, 'lambda2', result.lambda2, Relation.LE, hong_bound(core.n), tol, sample=index),
        ReportRow(experiment, n, k, 'lambda1', result.lambda1, Relation.LE,
                  nikiforov_bound(core.n, core.edge_count, k), tol, sample=index, note='degree bound'),
    ]
    if bipartite:
        rows.append(ReportRow(experiment, n, k, 'lambda1', result.lambda1, Relation.LE, sqrt(core.edge_count), tol,
                              sample=index, note='sqrt(e)'))
    u, v = (int(x) for x in rng.choice(core.n, size=2, replace=False))
    shifted = spectral_dense(kelmans(core, u, v)).lambda1
    rows.append(ReportRow(experiment, n, k, 'lambda1 after Kelmans', shifted, Relation.GE, result.lambda1, tol,
                          sample=index, note=f"u={u} v={v}"))
    return rows


def _general_sample(index, config):
    rng = sample_rng(config.seed, GENERAL_STREAM, index)
    k = config.k_values[index % len(config.k_values)]
    n = int(rng.integers(max(config.n_min, k + 2, 3), max(config.n_max, k + 2, 3) + 1))
    g = random_min_degree_graph(n, k, float(rng.uniform(0.25, 0.95)), rng)
    return _bound_rows(RANDOM, g, n, k, index, rng, config) + _theorem_rows(RANDOM, g, n, k, index, config)


def _bipartite_sample(index, config):
    rng = sample_rng(config.seed, BIPARTITE_STREAM, index)
    n = int(rng.integers(2, BIPARTITE_SIDE_MAX + 1))
    b = random_bipartite_min_degree(n, 1, float(rng.uniform(0.3, 0.95)), rng)
    rows = _bound_rows(RANDOM, b, n, 1, index, rng, config, bipartite=True)
    return rows + _theorem_rows(RANDOM, b, n, 1, index, config)


def _backbone_sample(cell, config):
    n, index = cell
    rng = sample_rng(config.seed, BACKBONE_STREAM, n * config.backbone_samples + index)
    root = sqrt(n * (n - 1))
    for _ in range(BACKBONE_ATTEMPTS):
        b = near_complete_bipartite(n, rng)
        if spectral_dense(b).lambda1 >= root:
            break
    else:
        return [excluded_row(BACKBONE, n, 1, 'hamiltonian or B^1_n', f"no sample reached sqrt({n * (n - 1)})")]
    is_extremal = FamilyParams(Family.B, n, 1) in recognize_family(b)
    hamiltonian = is_hamiltonian(b, config.budget).hamiltonian
    return [ReportRow(BACKBONE, n, 1, 'hamiltonian or B^1_n', bool(hamiltonian) or is_extremal, Relation.EQ, True,
                      sample=index, note='B^1_n' if is_extremal else f"e={b.edge_count}")]


def random_suite(config):
    """
    Échantillons aléatoires reproductibles : bornes sur lambda_1 et lambda_2, monotonie de
    Kelmans, et accord entre certificat par théorème et oracle exact. Les graphes généraux,
    les bipartis puis l'ossature bipartie sont émis dans cet ordre.
    """
    rows = _map_cells(lambda i: _general_sample(i, config), range(config.samples), config.jobs)
    rows += _map_cells(lambda i: _bipartite_sample(i, config), range(config.bipartite_samples), config.jobs)
    if config.backbone_samples:
        cells = [(n, i) for n in BACKBONE_SIDES for i in range(config.backbone_samples)]
        rows += _map_cells(lambda cell: _backbone_sample(cell, config), cells, config.jobs)
    failed = sum(1 for row in rows if not row.passed)
    logger.info(f"Random suite (seed={config.seed}): {len(rows)} rows, {failed} failed")
    return rows
