"""Shared numerical kernels: Gaussian tail, Gaussian-weighted integrals, root finding."""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import special

_SQRT2 = math.sqrt(2.0)
_SQRT_PI = math.sqrt(math.pi)

#: Largest abscissa count tried before giving up on refinement.
_MAX_POINTS = 4096


class IntegrationError(RuntimeError):
    """Raised when successive quadrature refinements fail to agree."""


class BracketError(ValueError):
    """Raised when a root bracket does not straddle a sign change."""


@dataclass(frozen=True)
class Quadrature:
    """Configuration for Gaussian-weighted quadrature.

    Parameters
    ----------
    points : int
        Initial abscissa count; doubled until two successive estimates agree.
    radius : float
        Truncation radius in standard deviations, used by plain-grid helpers.
    tol : float
        Absolute tolerance on the integral value.
    """

    points: int = 128
    radius: float = 10.0
    tol: float = 1e-10

    def __post_init__(self):
        if self.points < 32:
            raise ValueError(f"points must be >= 32, got {self.points}")
        if self.radius < 8:
            raise ValueError(f"radius must be >= 8, got {self.radius}")
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")


DEFAULT_QUADRATURE = Quadrature()


def gaussian_q(x):
    """Upper-tail probability Q(x) of a standard Gaussian.

    Uses the complementary error function; accurate far into the tail
    (Q(38) ~ 1e-316 before underflow to 0).
    """
    return 0.5 * special.erfc(np.asarray(x, dtype=float) / _SQRT2)


def log_gaussian_q(x):
    """log Q(x), stable deep into the tail where Q underflows."""
    return special.log_ndtr(-np.asarray(x, dtype=float))


@lru_cache(maxsize=None)
def _hermgauss(n):
    # scipy's Golub-Welsch route stays stable at high orders where
    # numpy.polynomial.hermite.hermgauss overflows.
    x, w = special.roots_hermite(n)
    return x, w


def _gh_estimate(f, mean, n):
    x, w = _hermgauss(n)
    t = mean + _SQRT2 * x
    return float(np.dot(w, f(t))) / _SQRT_PI


def gauss_integral(f, mean, quad=DEFAULT_QUADRATURE):
    """(2*pi)^{-1/2} * integral of f(t) * exp(-(t-mean)^2/2) dt.

    Gauss-Hermite quadrature with the Gaussian weight absorbed by a change
    of variables. The abscissa count is doubled until two successive
    estimates agree within ``quad.tol``.

    ``f`` must accept an ndarray of abscissae and be bounded on the support.
    """
    n = quad.points
    prev = _gh_estimate(f, mean, n)
    while n < _MAX_POINTS:
        n *= 2
        cur = _gh_estimate(f, mean, n)
        if abs(cur - prev) <= quad.tol:
            return cur
        prev = cur
    raise IntegrationError(
        f"quadrature did not converge to {quad.tol} by {n} abscissae (mean={mean})"
    )


def find_root(g, lo, hi, tol):
    """Bisection root of ``g`` on [lo, hi].

    Returns x with |g(x)| <= tol or bracket width <= tol. Accepts a
    tangential root if an endpoint or the running midpoint already satisfies
    the tolerance; otherwise the endpoint signs must differ.
    """
    if lo > hi:
        lo, hi = hi, lo
    glo = g(lo)
    if abs(glo) <= tol:
        return lo
    ghi = g(hi)
    if abs(ghi) <= tol:
        return hi
    mid = 0.5 * (lo + hi)
    gmid = g(mid)
    if abs(gmid) <= tol:
        return mid
    if hi - lo <= tol:
        return mid
    if glo * ghi > 0:
        raise BracketError(f"g({lo})={glo} and g({hi})={ghi} have the same sign")
    while hi - lo > tol:
        if glo * gmid <= 0:
            hi, ghi = mid, gmid
        else:
            lo, glo = mid, gmid
        mid = 0.5 * (lo + hi)
        gmid = g(mid)
        if abs(gmid) <= tol:
            return mid
    return mid
