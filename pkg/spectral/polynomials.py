"""
Polynômes f (quartique unitaire, forme développée) et g, évalués en arithmétique rationnelle
exacte, et isolement d'une racine de f dans (n-k-2, n-k-1).
"""
import logging
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .exceptions import RootIsolationError
from .quotients import quotient_of_family

logger = logging.getLogger(__name__)

ISOLATION_WIDTH = Fraction(1, 10 ** 10)
ROOT_MATCH_TOL = 1e-8


class RootInterval(NamedTuple):
    lo: Fraction
    hi: Fraction

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def midpoint(self):
        return (self.lo + self.hi) / 2


def _exact(x):
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    return x


def f_coefficients(n, k):
    """Coefficients (x^4, x^3, x^2, x, 1) de f pour a = n - 2k - 1."""
    a = n - 2 * k - 1
    return (
        Fraction(1),
        Fraction(3 - a - k),
        Fraction(4 - 3 * a - k * k - 3 * k),
        Fraction(2 - 2 * a - (2 - a) * k * k - 2 * k),
        Fraction(-(2 - 2 * a) * k * k),
    )


def _horner(coefficients, x):
    value = 0
    for c in coefficients:
        value = value * x + c
    return value


def eval_f(n, k, x):
    """f en x ; exact (Fraction) pour un argument entier ou rationnel."""
    x = _exact(x)
    coefficients = f_coefficients(n, k)
    if not isinstance(x, Fraction):
        coefficients = [float(c) for c in coefficients]
    return _horner(coefficients, x)


def eval_f_product(n, k, x):
    """Forme produit de f, définie hors de {0, -1, -2}."""
    x = _exact(x)
    return x * (x + 1) * (x + 2) * ((x - n + 2 * k + 1 + 2 / (x + 2)) * (1 - k * k / (x * (x + 1))) - k)


def eval_g(n, k, x):
    x = _exact(x)
    return 2 * x * x - (k ** 3 + 4 * k + 2) * x + k ** 4 - k ** 3 + 2 * k


def f_lower_endpoint(n, k):
    """Forme close de f(n-k-2)."""
    return -(n - k - 2) ** 2 * (n - k - 1) - k * k * (k - 1) * (n - k) - 2 * k * k


def sign_change_threshold(k):
    """Plus petit n (rationnel) du régime où f change de signe sur (n-k-2, n-k-1)."""
    return Fraction(k ** 3, 2) + k + Fraction(5, 2)


def isolate_f_root(n, k, verify=True):
    """
    Isole par bisection exacte une racine de f dans (n-k-2, n-k-1), jusqu'à une largeur
    de 1e-10. La racine encadrée doit être une valeur propre du quotient de N^k_n - uv.
    """
    lo, hi = Fraction(n - k - 2), Fraction(n - k - 1)
    f_lo, f_hi = eval_f(n, k, lo), eval_f(n, k, hi)
    if f_lo == 0:
        return RootInterval(lo, lo)
    if f_hi == 0:
        return RootInterval(hi, hi)
    if (f_lo < 0) == (f_hi < 0):
        raise RootIsolationError(
            n, k,
            f"no sign change on ({lo}, {hi}); n={n} is below the regime n >= {sign_change_threshold(k)}",
        )
    while hi - lo > ISOLATION_WIDTH:
        mid = (lo + hi) / 2
        f_mid = eval_f(n, k, mid)
        if f_mid == 0:
            lo = hi = mid
            break
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    interval = RootInterval(lo, hi)

    if verify:
        q = quotient_of_family(('N', n, k), 'Z-Z')
        eigenvalues = np.linalg.eigvals(q.m)
        distance = float(np.min(np.abs(eigenvalues - float(interval.midpoint))))
        if distance > ROOT_MATCH_TOL:
            raise RootIsolationError(n, k, f"isolated root is {distance:.3e} away from every quotient eigenvalue")
    logger.debug(f"f(n={n}, k={k}) root isolated in [{float(lo):.12g}, {float(hi):.12g}]")
    return interval
