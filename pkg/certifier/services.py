"""
Certification du caractère hamiltonien par les théorèmes spectraux et extrémaux.

Règles évaluées dans l'ordre, la première qui conclut fournit le verdict :
- graphe quelconque : fiedler-nikiforov, min-degree-spectral (k = delta..1),
  extremal-spectral (k = delta..1), edge-count (k = delta..1) ;
- graphe biparti équilibré : bipartite-min-degree-spectral, bipartite-extremal-spectral,
  bipartite-edge-count (k = delta..1 pour chacune) ;
- sinon recherche exacte dans le budget.

Toutes les règles sont évaluées et consignées dans details['trace'], même après la première
qui conclut. Un verdict par théorème est recoupé par l'oracle exact sur les petits graphes.
"""
import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from math import sqrt
from typing import Optional

from django.core.exceptions import ValidationError
from django.utils.translation import gettext as _

from graphs.structures import BipartiteGraph, Family, FamilyParams
from graphs.utils import hamcheck_setting
from hamiltonicity.services import HamWitness, Status, WitnessKind, is_hamiltonian, verify_cut
from spectral.bounds import bipartite_edge_threshold, edge_floor, edge_threshold
from spectral.services import compute_spectrum

from .exceptions import TheoremViolation
from .recognition import containment_witness, recognize_family
from .thresholds import (
    Comparison,
    Rule,
    bipartite_edge_count_min_n,
    bipartite_extremal_spectral_min_n,
    bipartite_min_degree_spectral_min_n,
    compare,
    edge_count_min_n,
    extremal_spectral_min_n,
    family_lambda,
    min_degree_spectral_min_n,
)

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    HAMILTONIAN_BY_THEOREM = 'HamiltonianByTheorem'
    HAMILTONIAN_WITH_CYCLE = 'HamiltonianWithCycle'
    EXCEPTIONAL_EXTREMAL = 'ExceptionalExtremal'
    NON_HAMILTONIAN_WITNESS = 'NonHamiltonianWitness'
    INCONCLUSIVE = 'Inconclusive'

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Certificate:
    verdict: Verdict
    rule: str
    details: dict = field(default_factory=dict)
    witness: Optional[HamWitness] = None
    family: Optional[FamilyParams] = None

    @property
    def hamiltonian(self):
        if self.verdict == Verdict.INCONCLUSIVE:
            return None
        return self.verdict in (Verdict.HAMILTONIAN_BY_THEOREM, Verdict.HAMILTONIAN_WITH_CYCLE)

    @property
    def resolved(self):
        return self.verdict != Verdict.INCONCLUSIVE

    def __str__(self):
        parts = [str(self.verdict), f"[{self.rule}]"]
        if self.family is not None:
            parts.append(str(self.family))
        if self.witness is not None:
            parts.append(str(self.witness))
        return ' '.join(parts)


@dataclass
class _Subject:
    """Grandeurs calculées une fois par appel et partagées par toutes les règles."""

    g: object
    n: int
    e: int
    delta: int
    lam: float
    families: tuple
    bipartite: bool = False
    trace: list = field(default_factory=list)

    @classmethod
    def of(cls, g):
        bipartite = isinstance(g, BipartiteGraph)
        core = g.core if bipartite else g
        return cls(
            g=g,
            n=g.n,
            e=core.edge_count,
            delta=core.min_degree,
            lam=compute_spectrum(core).lambda1,
            families=recognize_family(g),
            bipartite=bipartite,
        )

    @property
    def order(self):
        return 2 * self.n if self.bipartite else self.n

    def k_range(self):
        return range(self.delta, 0, -1)

    def match(self, family, k):
        return next((p for p in self.families if p.family == family and p.k == k), None)

    def details(self, k=None, **extra):
        details = {'n': self.n, 'e': self.e, 'delta': self.delta, 'lambda': self.lam}
        if self.bipartite:
            details['bipartite'] = True
        if k is not None:
            details['k'] = k
        details.update(extra)
        return details

    def note(self, rule, k, outcome):
        self.trace.append({'rule': rule, 'k': k, 'outcome': outcome})


def _cut_certificate(s, verdict, rule, family, k, **extra):
    found = containment_witness(s.g, family, k)
    if found is None:
        raise TheoremViolation(rule, f"{s.g} matches {family} with k={k} but yields no cut")
    cut, components = found
    verify_cut(s.g, cut, components)
    witness = HamWitness(WitnessKind.CUT, cut=cut, components=components)
    params = s.match(family, k) if verdict == Verdict.EXCEPTIONAL_EXTREMAL else None
    return Certificate(verdict, rule, s.details(k, **extra), witness, params)


def _exceptional(s, rule, family, k, **extra):
    s.note(rule, k, 'exception')
    return _cut_certificate(s, Verdict.EXCEPTIONAL_EXTREMAL, rule, family, k, **extra)


def _by_theorem(s, rule, k=None, **extra):
    s.note(rule, k, 'fired')
    return Certificate(Verdict.HAMILTONIAN_BY_THEOREM, rule, s.details(k, **extra))


def _spectral_rule(s, rule, k, threshold, exceptions, **extra):
    """
    Règle de la forme « lambda >= seuil => hamiltonien sauf si G est l'une des familles ».
    Dans la bande de garde, seule la branche d'exception peut conclure.
    """
    outcome = compare(s.lam, threshold)
    if outcome == Comparison.BELOW:
        s.note(rule, k, 'below')
        return None
    for family in exceptions:
        if s.match(family, k):
            return _exceptional(s, rule, family, k, threshold=threshold, **extra)
    if outcome == Comparison.AT:
        s.note(rule, k, 'at-threshold')
        return None
    return _by_theorem(s, rule, k, threshold=threshold, **extra)


def _edge_rule(s, rule, k, threshold, families):
    """Règle « e > seuil => hamiltonien sauf si G est sous-graphe couvrant d'une famille »."""
    if s.e <= threshold:
        s.note(rule, k, 'below')
        return None
    for family in families:
        if s.match(family, k):
            return _exceptional(s, rule, family, k, edge_threshold=threshold)
    for family in families:
        if containment_witness(s.g, family, k) is not None:
            s.note(rule, k, 'contained')
            return _cut_certificate(
                s, Verdict.NON_HAMILTONIAN_WITNESS, rule, family, k,
                edge_threshold=threshold, contained_in=str(FamilyParams(family, s.n, k)),
            )
    return _by_theorem(s, rule, k, edge_threshold=threshold)


def _excluded(s, rule, k):
    s.note(rule, k, 'regime-excluded')
    return None


# --- Règles pour un graphe quelconque -----------------------------------------------------------

def _fiedler_nikiforov(s):
    threshold = s.n - 2
    outcome = compare(s.lam, threshold)
    rule = Rule.FIEDLER_NIKIFOROV
    if outcome == Comparison.BELOW:
        s.note(rule, None, 'below')
        return None
    if s.match(Family.N, 1):
        return _exceptional(s, rule, Family.N, 1, threshold=threshold)
    if outcome == Comparison.AT:
        s.note(rule, None, 'at-threshold')
        return None
    return _by_theorem(s, rule, threshold=threshold)


def _min_degree_spectral(s, k):
    rule = Rule.MIN_DEGREE_SPECTRAL
    if s.n < min_degree_spectral_min_n(k):
        return _excluded(s, rule, k)
    certificate = _spectral_rule(s, rule, k, s.n - k - 1, (Family.L, Family.N))
    if certificate is not None and certificate.verdict == Verdict.HAMILTONIAN_BY_THEOREM:
        floor = edge_floor(s.n, k)
        if s.e < floor:
            raise TheoremViolation(rule, f"e={s.e} is below the edge floor {floor} at n={s.n}, k={k}")
        certificate.details['edge_floor'] = str(floor)
    return certificate


def _extremal_spectral(s, k):
    rule = Rule.EXTREMAL_SPECTRAL
    if s.n < extremal_spectral_min_n(k):
        return _excluded(s, rule, k)
    return _spectral_rule(s, rule, k, family_lambda(Family.N, s.n, k), (Family.N,))


def _edge_count(s, k):
    rule = Rule.EDGE_COUNT
    if s.n < edge_count_min_n(k):
        return _excluded(s, rule, k)
    return _edge_rule(s, rule, k, edge_threshold(s.n, k), (Family.L, Family.N))


# --- Règles pour un graphe biparti équilibré ------------------------------------------------------

def _bipartite_min_degree_spectral(s, k):
    rule = Rule.BIPARTITE_MIN_DEGREE_SPECTRAL
    if s.n < bipartite_min_degree_spectral_min_n(k):
        return _excluded(s, rule, k)
    certificate = _spectral_rule(s, rule, k, sqrt(s.n * (s.n - k)), (Family.B,))
    if certificate is not None and certificate.verdict == Verdict.HAMILTONIAN_BY_THEOREM:
        floor = s.n * (s.n - k)
        if s.e < floor or floor <= bipartite_edge_threshold(s.n, k):
            raise TheoremViolation(
                rule,
                f"edge chain e >= n(n-k) > n(n-k-1)+(k+1)^2 fails: e={s.e}, n(n-k)={floor}, "
                f"threshold={bipartite_edge_threshold(s.n, k)}",
            )
        certificate.details['edge_floor'] = floor
    return certificate


def _bipartite_extremal_spectral(s, k):
    rule = Rule.BIPARTITE_EXTREMAL_SPECTRAL
    if s.n < bipartite_extremal_spectral_min_n(k):
        return _excluded(s, rule, k)
    return _spectral_rule(s, rule, k, family_lambda(Family.B, s.n, k), (Family.B,))


def _bipartite_edge_count(s, k):
    rule = Rule.BIPARTITE_EDGE_COUNT
    if s.n < bipartite_edge_count_min_n(k):
        return _excluded(s, rule, k)
    return _edge_rule(s, rule, k, bipartite_edge_threshold(s.n, k), (Family.B,))


# --- Recherche exacte et recoupement --------------------------------------------------------------

def _exact_search(s, budget):
    result = is_hamiltonian(s.g, budget)
    rule = Rule.EXACT_SEARCH
    details = s.details(method=result.method)
    if result.status == Status.HAMILTONIAN:
        return Certificate(Verdict.HAMILTONIAN_WITH_CYCLE, rule, details, result.witness)
    if result.status == Status.NON_HAMILTONIAN:
        return Certificate(Verdict.NON_HAMILTONIAN_WITNESS, rule, details, result.witness)
    logger.warning(f"Search budget exhausted on {s.g}: certificate is inconclusive")
    return Certificate(Verdict.INCONCLUSIVE, rule, details, result.witness)


def _spot_validate(s, certificate, budget, enabled):
    """L'oracle exact doit confirmer tout verdict par théorème quand le graphe est petit."""
    if certificate.verdict not in (Verdict.HAMILTONIAN_BY_THEOREM, Verdict.EXCEPTIONAL_EXTREMAL):
        return certificate
    limit = hamcheck_setting('BIPARTITE_DESK_LIMIT' if s.bipartite else 'DESK_LIMIT')
    if enabled is None:
        enabled = hamcheck_setting('SPOT_VALIDATE')
    if not enabled or s.order > limit:
        return certificate

    oracle = is_hamiltonian(s.g, budget)
    details = dict(certificate.details)
    if oracle.status == Status.UNKNOWN:
        logger.warning(f"Spot validation of [{certificate.rule}] on {s.g} ran out of budget")
        details['spot_check'] = 'unknown'
        return replace(certificate, details=details)
    expected = certificate.verdict == Verdict.HAMILTONIAN_BY_THEOREM
    if oracle.hamiltonian != expected:
        raise TheoremViolation(
            certificate.rule,
            f"{certificate.verdict} on {s.g} contradicted by the exact search ({oracle.witness})",
        )
    details['spot_check'] = 'confirmed'
    witness = oracle.witness if expected else certificate.witness
    return replace(certificate, details=details, witness=witness)


def _conclude(s, candidates, budget, spot_validate):
    certificate = next((c for c in candidates if c is not None), None)
    if certificate is None:
        certificate = _exact_search(s, budget)
    else:
        certificate = _spot_validate(s, certificate, budget, spot_validate)
    certificate = replace(certificate, details={**certificate.details, 'trace': s.trace})
    logger.info(f"{s.g}: {certificate.verdict} via {certificate.rule}")
    return certificate


def certify(g, budget=None, spot_validate=None):
    """Certificat d'un graphe simple d'ordre n >= 3 (un BipartiteGraph est délégué à certify_bipartite)."""
    if isinstance(g, BipartiteGraph):
        return certify_bipartite(g, budget, spot_validate)
    if g.n < 3:
        raise ValidationError(
            _("La certification exige n >= 3 (reçu %(n)s)."), code='n_too_small', params={'n': g.n}
        )
    s = _Subject.of(g)
    candidates = [_fiedler_nikiforov(s)]
    candidates += [_min_degree_spectral(s, k) for k in s.k_range()]
    candidates += [_extremal_spectral(s, k) for k in s.k_range()]
    candidates += [_edge_count(s, k) for k in s.k_range()]
    return _conclude(s, candidates, budget, spot_validate)


def certify_bipartite(g, budget=None, spot_validate=None):
    if not isinstance(g, BipartiteGraph):
        raise ValidationError(_("Un graphe biparti équilibré est attendu."), code='not_bipartite')
    if g.n < 2:
        raise ValidationError(
            _("Chaque côté doit avoir au moins 2 sommets (reçu %(n)s)."), code='n_too_small', params={'n': g.n}
        )
    s = _Subject.of(g)
    candidates = [_bipartite_min_degree_spectral(s, k) for k in s.k_range()]
    candidates += [_bipartite_extremal_spectral(s, k) for k in s.k_range()]
    candidates += [_bipartite_edge_count(s, k) for k in s.k_range()]
    return _conclude(s, candidates, budget, spot_validate)
