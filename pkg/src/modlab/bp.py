"""Belief-propagation decoding of the information bits.

Three variants share one message-passing core:

* full          -- per-edge extrinsic offsets u_{i|l}(j), initialized from the
                   systematic observations tanh(z_{0,i});
* simplified    -- one shared offset per bit, initialized u_{j|0} = z_{0,j};
* frozen        -- simplified schedule with a subset of bits pinned to known
                   +/-1 values, which act as repetitions/inversions of the
                   parity observations.

All offsets live in (-1, 1); values are clamped at 1 - 1e-12 before arctanh.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import channel

_CLAMP = 1.0 - 1e-12


@dataclass(frozen=True)
class DecodeResult:
    """Hard +/-1 decisions and final log-likelihoods for the m information bits."""

    hard: np.ndarray
    llh: np.ndarray
    iterations: int
    edge_ops: int = 0


def default_iterations(m, c):
    """Default round count ceil(2*ln m / ln c), floored at 1.

    Refuses c <= 1: there is no convergent regime below the threshold.
    """
    if c <= 1:
        raise ValueError(f"no convergent regime for c <= 1 (got c={c})")
    return max(1, math.ceil(2.0 * math.log(m) / math.log(c)))


def _clamped_atanh(x):
    np.clip(x, -_CLAMP, _CLAMP, out=x)
    return np.arctanh(x)


def _hard(llh):
    # sign with ties decoded to +1
    return np.where(llh >= 0, 1, -1).astype(np.int64)


def decode_full_batch(Z, L):
    """Full-variant decode of a (B, m+1, m+1) batch of scaled blocks.

    Returns (hard, llh) with shape (B, m).
    """
    B, mp1, _ = Z.shape
    m = mp1 - 1
    U = np.tanh(Z[:, 1:, 1:])                    # u_{i,j} = tanh(z_{i,j})
    diag = np.arange(m)
    U[:, diag, diag] = 0.0
    # E[b, i, j]: extrinsic offset of bit i toward bit j; starts at tanh(z_{0,i})
    E = np.broadcast_to(np.tanh(Z[:, 0, 1:])[:, :, None], (B, m, m)).copy()
    h = None
    for _ in range(L):
        V = U * np.swapaxes(E, 1, 2)             # estimate of bit i via check j
        Hp = 2.0 * _clamped_atanh(V)
        Hp[:, diag, diag] = 0.0
        h = Hp.sum(axis=2)
        E = np.tanh(0.5 * (h[:, :, None] - Hp))  # extrinsic exclusion
        E[:, diag, diag] = 0.0
    return _hard(h), h


def decode_simplified_batch(Z, L, frozen_mask=None, frozen_values=None):
    """Simplified/frozen decode of a (B, m+1, m+1) batch.

    ``frozen_mask`` is a length-m boolean array; ``frozen_values`` holds the
    pinned +/-1 offsets, either length m or (B, m). Returns (hard, llh).
    """
    B, mp1, _ = Z.shape
    m = mp1 - 1
    U = np.tanh(Z[:, 1:, 1:])
    diag = np.arange(m)
    U[:, diag, diag] = 0.0
    u = Z[:, 0, 1:].copy()                       # u_{j|0} = z_{0,j}
    if frozen_mask is not None:
        fv = np.broadcast_to(np.asarray(frozen_values, dtype=float), (B, m))
        u[:, frozen_mask] = fv[:, frozen_mask]
    h = None
    for _ in range(L):
        V = U * u[:, None, :]
        h = 2.0 * _clamped_atanh(V).sum(axis=2)
        u = np.tanh(0.5 * h)
        if frozen_mask is not None:
            u[:, frozen_mask] = fv[:, frozen_mask]
    return _hard(h), h


def _single(block, L, kernel, **kw):
    if not block.scaled:
        raise ValueError("decoder expects a rescaled block")
    if L < 1:
        raise ValueError(f"L must be >= 1, got {L}")
    Z = channel.values_to_matrix(block.values, block.m)[None]
    hard, llh = kernel(Z, L, **kw)
    m = block.m
    return DecodeResult(hard=hard[0], llh=llh[0], iterations=L,
                        edge_ops=L * m * (m - 1))


def decode_full(block, L):
    """Full belief propagation with per-edge extrinsic messages."""
    return _single(block, L, decode_full_batch)


def decode_simplified(block, L):
    """Simplified belief propagation with one shared offset per bit."""
    return _single(block, L, decode_simplified_batch)


def decode_frozen(block, known, L):
    """Simplified decoding with a subset of bits pinned to known +/-1 values.

    ``known`` maps 1-based bit indices to +/-1, or is a pair
    (mask, values) of length-m arrays. The returned llh covers all m bits;
    entries at frozen positions reflect the pinned evidence and should be
    ignored by callers.
    """
    m = block.m
    if isinstance(known, dict):
        mask = np.zeros(m, dtype=bool)
        values = np.zeros(m)
        for idx, val in known.items():
            if not 1 <= idx <= m:
                raise ValueError(f"bit index {idx} out of range 1..{m}")
            mask[idx - 1] = True
            values[idx - 1] = val
    else:
        mask, values = known
        mask = np.asarray(mask, dtype=bool)
        values = np.asarray(values, dtype=float)
    if not mask.any():
        return decode_simplified(block, L)
    return _single(block, L, decode_simplified_batch,
                   frozen_mask=mask, frozen_values=values)
