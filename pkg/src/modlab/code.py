"""The weight-3-parity modulation code: pair indexing, encoder, weight structure.

Code positions are unordered pairs [i, j] with 0 <= i < j <= m. Position
(0, j) carries information bit j; position (i, j) with i >= 1 carries the
parity bit a_i XOR a_j. The linear layout is colexicographic (j-major):
linear(i, j) = j*(j-1)/2 + i.
"""

from functools import lru_cache

import numpy as np


def block_length(m):
    """Code length n = binomial(m+1, 2)."""
    return m * (m + 1) // 2


def pair_to_linear(i, j, m=None):
    """Linear position of the unordered pair (i, j), 0 <= i < j."""
    i, j = (i, j) if i < j else (j, i)
    return j * (j - 1) // 2 + i


def linear_to_pair(p):
    """Inverse of :func:`pair_to_linear`."""
    j = int((1 + np.sqrt(1 + 8 * p)) // 2)
    while j * (j - 1) // 2 > p:
        j -= 1
    i = p - j * (j - 1) // 2
    return i, j


@lru_cache(maxsize=None)
def pair_arrays(m):
    """(i, j) index arrays of length n in linear-position order."""
    n = block_length(m)
    i_idx = np.empty(n, dtype=np.int64)
    j_idx = np.empty(n, dtype=np.int64)
    p = 0
    for j in range(1, m + 1):
        i_idx[p:p + j] = np.arange(j)
        j_idx[p:p + j] = j
        p += j
    return i_idx, j_idx


@lru_cache(maxsize=None)
def info_positions(m):
    """Linear positions of the systematic bits, i.e. pairs (0, j)."""
    j = np.arange(1, m + 1)
    return j * (j - 1) // 2


def encode(info, m=None):
    """Encode m information bits into the length-n codeword (0/1).

    Systematic positions carry the info bits; parity position (i, j) carries
    a_i XOR a_j. O(n).
    """
    info = np.asarray(info, dtype=np.int64)
    if m is None:
        m = info.shape[-1]
    if info.shape[-1] != m:
        raise ValueError(f"expected {m} information bits, got {info.shape[-1]}")
    i_idx, j_idx = pair_arrays(m)
    cw = np.empty(info.shape[:-1] + (block_length(m),), dtype=np.int64)
    parity = i_idx >= 1
    cw[..., ~parity] = info
    cw[..., parity] = info[..., i_idx[parity] - 1] ^ info[..., j_idx[parity] - 1]
    return cw


def modulate(bits):
    """Antipodal map {0, 1} -> {+1, -1}."""
    return 1 - 2 * np.asarray(bits, dtype=np.int64)


def codeword_weight(s, m):
    """Weight s*(m-s+1) of any codeword generated by s rows."""
    if not 0 <= s <= m:
        raise ValueError(f"s must be in [0, {m}], got {s}")
    return s * (m - s + 1)


def min_distance(m):
    """Minimum distance of the code; equals m (attained at s = 1 and s = m)."""
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    return m


def generator_row_support(p, m):
    """Linear positions where generator row p (1-based) is nonzero.

    Row p supports all pairs (p, j), j != p, including the systematic pair
    (0, p).
    """
    if not 1 <= p <= m:
        raise ValueError(f"row index must be in [1, {m}], got {p}")
    others = [q for q in range(m + 1) if q != p]
    return np.array(sorted(pair_to_linear(p, q) for q in others))
