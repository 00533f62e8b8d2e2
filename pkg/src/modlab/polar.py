"""Component polar codes: Gaussian-approximation construction for a BI-AWGN
design channel, the natural-order polar transform, and successive-cancellation
decoding.

Bit order is natural (no bit-reversal permutation): the transform of
u = (u_a, u_b) is x = (enc(u_a) xor enc(u_b), enc(u_b)), so u_a sees the
degraded (minus) channel and u_b the upgraded (plus) one.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

_CLAMP = 1.0 - 1e-12


@dataclass(frozen=True)
class PolarCode:
    """A polar code of length mu with the given information set.

    Parameters
    ----------
    mu : int
        Block length, a power of two.
    info_set : tuple of int
        Sorted indices (in [0, mu)) of the information positions.
    design_noise_power : float
        Noise power of the BI-AWGN channel the code was constructed for.
    """

    mu: int
    info_set: tuple
    design_noise_power: float

    def __post_init__(self):
        if self.mu < 1 or self.mu & (self.mu - 1):
            raise ValueError(f"mu must be a power of two, got {self.mu}")
        if any(not 0 <= i < self.mu for i in self.info_set):
            raise ValueError("info_set indices must lie in [0, mu)")
        if tuple(sorted(set(self.info_set))) != tuple(self.info_set):
            raise ValueError("info_set must be sorted and duplicate-free")

    @property
    def k(self):
        return len(self.info_set)

    @property
    def rate(self):
        return self.k / self.mu

    @property
    def frozen_mask(self):
        mask = np.ones(self.mu, dtype=bool)
        mask[list(self.info_set)] = False
        return mask


# Gaussian-approximation tracking of LLR means. phi(x) is the standard
# piecewise fit to E[tanh(L/2)] for L ~ N(x, 2x).
_PHI_SPLIT = 10.0


def _phi(x):
    if x < 1e-300:
        return 1.0
    if x < _PHI_SPLIT:
        return math.exp(-0.4527 * x ** 0.86 + 0.0218)
    return math.sqrt(math.pi / x) * math.exp(-x / 4.0) * (1.0 - 10.0 / (7.0 * x))


def _phi_inv(y):
    # bisection; phi is strictly decreasing on (0, inf)
    if y >= 1.0:
        return 0.0
    lo, hi = 1e-12, 1.0
    while _phi(hi) > y:
        lo, hi = hi, hi * 2.0
        if hi > 1e9:
            return hi
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if _phi(mid) > y:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-12 * max(1.0, hi):
            break
    return 0.5 * (lo + hi)


def _ga_minus(mean):
    return _phi_inv(1.0 - (1.0 - _phi(mean)) ** 2)


def _ga_plus(mean):
    return 2.0 * mean


@lru_cache(maxsize=None)
def _ga_means(mu, m0):
    """LLR means of the mu synthetic channels, natural order."""
    means = [m0]
    width = 1
    while width < mu:
        nxt = []
        for r in means:
            nxt.append(_ga_minus(r))
            nxt.append(_ga_plus(r))
        means = nxt
        width *= 2
    return tuple(means)


def construct(mu, rate, noise_power):
    """Build a :class:`PolarCode` for a BI-AWGN channel of the given noise power.

    Selects the round(mu*rate) synthetic channels with the largest
    Gaussian-approximation LLR means; ties break toward the higher index
    (the later channel is never worse). Deterministic.
    """
    if mu < 1 or mu & (mu - 1):
        raise ValueError(f"mu must be a power of two, got {mu}")
    if not 0.0 <= rate <= 1.0:
        raise ValueError(f"rate must be in [0, 1], got {rate}")
    if noise_power <= 0:
        raise ValueError(f"noise power must be positive, got {noise_power}")
    k = int(round(mu * rate))
    means = np.array(_ga_means(mu, 2.0 / noise_power))
    # stable sort on (-mean, -index): higher mean first, higher index first on ties
    order = np.lexsort((-np.arange(mu), -means))
    info = tuple(sorted(int(i) for i in order[:k]))
    return PolarCode(mu=mu, info_set=info, design_noise_power=float(noise_power))


def _transform(u):
    """In-place-free polar transform x = u * G over GF(2), natural order."""
    x = np.asarray(u, dtype=np.int64).copy()
    mu = x.shape[-1]
    half = 1
    while half < mu:
        for start in range(0, mu, 2 * half):
            x[..., start:start + half] ^= x[..., start + half:start + 2 * half]
        half *= 2
    return x


def polar_encode(info, code):
    """Encode k information bits into a +/-1 codeword of length mu.

    Frozen positions carry binary 0 (modulated +1).
    """
    info = np.asarray(info, dtype=np.int64)
    if info.shape != (code.k,):
        raise ValueError(f"expected {code.k} information bits, got {info.shape}")
    u = np.zeros(code.mu, dtype=np.int64)
    u[list(code.info_set)] = info
    return 1 - 2 * _transform(u)


def _f_op(a, b):
    # check-node combine in the LLR domain
    t = np.tanh(a / 2.0) * np.tanh(b / 2.0)
    np.clip(t, -_CLAMP, _CLAMP, out=t)
    return 2.0 * np.arctanh(t)


def _g_op(a, b, xa):
    # xa holds the re-encoded hard bits (0/1) of the already-decoded half
    return np.where(xa == 1, -a, a) + b


def _sc_recurse(llrs, frozen):
    if llrs.shape[0] == 1:
        if frozen[0]:
            bit = 0
        else:
            bit = 0 if llrs[0] >= 0 else 1
        u = np.array([bit], dtype=np.int64)
        return u, u.copy()
    half = llrs.shape[0] // 2
    a, b = llrs[:half], llrs[half:]
    ua, xa = _sc_recurse(_f_op(a, b), frozen[:half])
    ub, xb = _sc_recurse(_g_op(a, b, xa), frozen[half:])
    return np.concatenate([ua, ub]), np.concatenate([xa ^ xb, xb])


def sc_decode(llrs, code):
    """Successive-cancellation decode; returns the k information bits (0/1).

    ``llrs`` uses the convention llr > 0 => bit 0; ties decode to 0. Frozen
    positions are forced to 0. O(mu log mu).
    """
    llrs = np.asarray(llrs, dtype=float)
    if llrs.shape != (code.mu,):
        raise ValueError(f"expected {code.mu} llrs, got {llrs.shape}")
    if not np.all(np.isfinite(llrs)):
        raise ValueError("llrs must be finite")
    u, _ = _sc_recurse(llrs, code.frozen_mask)
    return u[list(code.info_set)]
