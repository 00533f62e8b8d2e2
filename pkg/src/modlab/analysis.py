"""Analytical-bound engine: density-evolution fixed points, the random-walk
recursion, ML lower bound, frozen-bit system, BI-AWGN capacity and the
minimum-SNR optimization."""

import math
from dataclasses import dataclass, field

import numpy as np

from .numerics import DEFAULT_QUADRATURE, Quadrature, find_root, gauss_integral, gaussian_q

_LN2 = math.log(2.0)

#: Stop the random-walk recursion once successive P differ by less than this.
_WALK_TOL = 1e-12
_WALK_MAX_ITER = 200

#: Validity threshold for the finite-length parameter: switch to the
#: asymptotic c_l once 1 - c^(l+1)/m drops below this.
_FINITE_DENOM_MIN = 0.5


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class FixedPointResult:
    """Roots of x = R_c(x) on [-1, 1] (odd extension for x < 0)."""

    roots: tuple
    c: float
    residuals: tuple


@dataclass(frozen=True)
class WalkRecursion:
    """Crossover probabilities P_l with their S_l / T_l drivers."""

    c: float
    P: np.ndarray
    S: np.ndarray
    T: np.ndarray
    finite_length: bool = False

    @property
    def p_inf(self):
        return float(self.P[-1])


@dataclass(frozen=True)
class BoundCurve:
    """(SNR grid -> value) table, CSV-serializable by the harness."""

    snr_db: np.ndarray
    values: np.ndarray
    kind: str

    def __post_init__(self):
        snr = np.asarray(self.snr_db, dtype=float)
        vals = np.asarray(self.values, dtype=float)
        if snr.ndim != 1 or snr.shape != vals.shape:
            raise ValueError("snr grid and values must be 1-d and equally long")
        if not np.all(np.diff(snr) > 0):
            raise ValueError("snr grid must be strictly increasing")
        if np.any((vals < 0) | (vals > 1)):
            raise ValueError("curve values must lie in [0, 1]")


def r_c(x, c, quad=DEFAULT_QUADRATURE):
    """Mean-offset map R_c(x): Gaussian average of tanh around sqrt(x*c).

    Extended to x < 0 as an odd function.
    """
    x = float(x)
    if x == 0.0:
        return 0.0
    s = math.sqrt(abs(x) * c)
    val = gauss_integral(lambda t: np.tanh(t * s), mean=s, quad=quad)
    return math.copysign(val, x)


def f_and_g(x, sigma, c, quad=DEFAULT_QUADRATURE):
    """One-step maps (F_c, G_c) for the mean and second moment of the offsets."""
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    sc = sigma * math.sqrt(c)
    mean = x * math.sqrt(c) / sigma
    F = gauss_integral(lambda t: np.tanh(sc * t), mean=mean, quad=quad)
    G = gauss_integral(lambda t: np.tanh(sc * t) ** 2, mean=mean, quad=quad)
    return F, G


def fixed_point(c, tol=1e-10, quad=DEFAULT_QUADRATURE):
    """All roots of x = R_c(x): {0} for c <= 1, {-x*, 0, x*} for c > 1."""
    if c <= 0:
        raise ValueError(f"c must be positive, got {c}")
    roots = [0.0]
    if c > 1:
        xs = find_root(lambda x: r_c(x, c, quad) - x, 1e-8, 1.0 - 1e-12, tol)
        roots = [-xs, 0.0, xs]
    residuals = tuple(abs(math.copysign(r_c(abs(r), c, quad), r) - r) for r in roots)
    return FixedPointResult(roots=tuple(roots), c=c, residuals=residuals)


def _walk_step_terms(cl, quad):
    # S_l and Q_l are Gaussian averages of Q(cl*t) around means +-cl.
    cl = min(cl, 1e150)
    S = gauss_integral(lambda t: gaussian_q(cl * t), mean=cl, quad=quad)
    Qm = gauss_integral(lambda t: gaussian_q(cl * t), mean=-cl, quad=quad)
    return S, Qm - S


def walk_recursion(c, L=None, finite_length=False, m=None, quad=DEFAULT_QUADRATURE):
    """Random-walk recursion P_{l+1} = S_l + P_l * T_l starting at P_0 = Q(sqrt(c)).

    Asymptotic mode uses c_l = c^((l+1)/2); finite-length mode (requires m)
    uses C_l = sqrt(c^(l+1) / (1 - c^(l+1)/m)) while the denominator stays
    above 0.5, then falls back to c_l. Stops when successive P agree to 1e-12
    or after 200 steps; without an explicit L the converged tail is P_inf.
    """
    if c <= 1:
        raise ValueError(f"recursion requires c > 1, got c={c}")
    if finite_length and m is None:
        raise ValueError("finite_length mode requires m")
    P = [float(gaussian_q(math.sqrt(c)))]
    S_hist, T_hist = [], []
    max_iter = L if L is not None else _WALK_MAX_ITER
    for ell in range(max_iter):
        log_cpow = (ell + 1) * math.log(c)
        cpow = math.exp(min(log_cpow, 690.0))
        cl = math.sqrt(cpow)
        if finite_length:
            denom = 1.0 - cpow / m
            if denom >= _FINITE_DENOM_MIN:
                cl = math.sqrt(cpow / denom)
        S, T = _walk_step_terms(cl, quad)
        nxt = S + P[-1] * T
        if not 0.0 <= nxt <= 1.0:
            raise ConvergenceError(f"P left [0, 1] at step {ell}: {nxt}")
        S_hist.append(S)
        T_hist.append(T)
        P.append(nxt)
        if L is None and abs(P[-1] - P[-2]) < _WALK_TOL:
            break
    return WalkRecursion(c=c, P=np.array(P), S=np.array(S_hist), T=np.array(T_hist),
                         finite_length=finite_length)


def p_ml_lower(c):
    """ML-decoding lower bound 2Q(sqrt(c)) - 2Q^2(sqrt(c))."""
    if c <= 0:
        raise ValueError(f"c must be positive, got {c}")
    q = float(gaussian_q(math.sqrt(c)))
    return 2.0 * q * (1.0 - q)


def _p_soft_from(c, p_inf, quad):
    xs = fixed_point(c, quad=quad).roots[-1]
    q = float(gaussian_q(math.sqrt(xs * c)))
    return (1.0 - p_inf) * q + p_inf * (1.0 - q)


def p_soft(c, quad=DEFAULT_QUADRATURE):
    """Asymptotic BER of the BP decoder; 1/2 at or below the c = 1 threshold."""
    if c <= 0:
        raise ValueError(f"c must be positive, got {c}")
    if c <= 1:
        return 0.5
    walk = walk_recursion(c, quad=quad)
    return _p_soft_from(c, walk.p_inf, quad)


def p_soft_finite(c, m, quad=DEFAULT_QUADRATURE):
    """Finite-length variant of p_soft using the C_l walk parameters."""
    if c <= 0:
        raise ValueError(f"c must be positive, got {c}")
    if c <= 1:
        return 0.5
    walk = walk_recursion(c, finite_length=True, m=m, quad=quad)
    return _p_soft_from(c, walk.p_inf, quad)


def frozen_fixed_point(lam, c, tol=1e-10, max_iter=10_000, quad=DEFAULT_QUADRATURE):
    """Solve the frozen-bit system X = lam + (1-lam) * R_c(X); returns (X, x).

    Damped Picard iteration from X_0 = lam with a bisection fallback. lam = 0
    degenerates to the plain fixed point (positive root for c > 1, else 0).
    """
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda must be in [0, 1], got {lam}")
    if c <= 0:
        raise ValueError(f"c must be positive, got {c}")
    if lam == 0.0:
        X = fixed_point(c, tol=tol, quad=quad).roots[-1]
        return X, X
    if lam == 1.0:
        return 1.0, r_c(1.0, c, quad)

    def step(X):
        return lam + (1.0 - lam) * r_c(X, c, quad)

    X = lam
    for _ in range(max_iter):
        nxt = 0.5 * X + 0.5 * step(X)
        if abs(nxt - X) < 0.1 * tol:
            X = nxt
            break
        X = nxt
    if abs(step(X) - X) > tol:
        X = find_root(lambda v: step(v) - v, lam, 1.0, tol)
        if abs(step(X) - X) > tol:
            raise ConvergenceError(f"frozen fixed point did not converge at lam={lam}, c={c}")
    x = (X - lam) / (1.0 - lam)
    return X, x


def p_soft_frozen(lam, c, quad=DEFAULT_QUADRATURE):
    """BER Q(sqrt(c*X(lam))) with a fraction lam of frozen bits."""
    X, _ = frozen_fixed_point(lam, c, quad=quad)
    if X <= 0:
        return 0.5
    return float(gaussian_q(math.sqrt(c * X)))


def biawgn_capacity(a, quad=DEFAULT_QUADRATURE):
    """Capacity in bits of the BI-AWGN channel with inverse noise power a.

    The output density is an equal mixture of N(+-1, 1/a); its entropy
    integral is evaluated as a Gaussian expectation around +1 (symmetry),
    with the mixture log computed via logaddexp.
    """
    if a <= 0:
        raise ValueError(f"a must be positive, got {a}")
    sqrt_a = math.sqrt(a)
    log_norm = 0.5 * math.log(a / (8.0 * math.pi))

    def log2_f(t):
        y = 1.0 + t / sqrt_a
        return (log_norm + np.logaddexp(-0.5 * a * (y + 1.0) ** 2,
                                        -0.5 * a * (y - 1.0) ** 2)) / _LN2

    cross_entropy = -gauss_integral(log2_f, mean=0.0, quad=quad)
    return 0.5 * math.log2(a / (2.0 * math.pi * math.e)) + cross_entropy


def rho_bar(c, b, quad=DEFAULT_QUADRATURE):
    """Average polar-round capacity: mean of rho_c(s/b) over s = 0..b-1."""
    total = 0.0
    for s in range(b):
        X, _ = frozen_fixed_point(s / b, c, quad=quad)
        if X > 0:
            total += biawgn_capacity(c * X, quad=quad)
    return total / b


def min_snr(b, c_grid=None, quad=DEFAULT_QUADRATURE):
    """Minimize kappa(c) = c / (4 * rho_bar(c)) over c; returns (c_opt, rho, kappa_db).

    The default grid brackets the optimum near c ~ 1; if the grid minimum
    lands on an edge the grid is widened. A golden-section refinement
    sharpens the grid minimum.
    """
    if b < 1:
        raise ValueError(f"b must be >= 1, got {b}")
    if c_grid is None:
        c_grid = np.arange(0.4, 2.4, 0.05)
    c_grid = np.sort(np.asarray(c_grid, dtype=float))
    if c_grid.size == 0:
        raise ValueError("c_grid must be non-empty")

    cache = {}

    def kappa(c):
        if c not in cache:
            rho = rho_bar(c, b, quad=quad)
            cache[c] = math.inf if rho <= 0 else c / (4.0 * rho)
        return cache[c]

    vals = [kappa(c) for c in c_grid]
    k = int(np.argmin(vals))
    while k == 0 or k == len(c_grid) - 1:
        if len(c_grid) > 200:
            break
        if k == 0:
            c_grid = np.concatenate([[max(1e-3, c_grid[0] / 2)], c_grid])
        else:
            c_grid = np.concatenate([c_grid, [c_grid[-1] * 2]])
        vals = [kappa(c) for c in c_grid]
        k = int(np.argmin(vals))

    lo = c_grid[max(k - 1, 0)]
    hi = c_grid[min(k + 1, len(c_grid) - 1)]
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - invphi * (hi - lo)
    x2 = lo + invphi * (hi - lo)
    while hi - lo > 1e-4:
        if kappa(x1) <= kappa(x2):
            hi, x2 = x2, x1
            x1 = hi - invphi * (hi - lo)
        else:
            lo, x1 = x1, x2
            x2 = lo + invphi * (hi - lo)
    c_opt = 0.5 * (lo + hi)
    rho = rho_bar(c_opt, b, quad=quad)
    kap = c_opt / (4.0 * rho)
    return c_opt, rho, 10.0 * math.log10(kap)
