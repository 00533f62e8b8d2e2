"""SNR bookkeeping and AWGN transmission with the rescaling convention z = delta*y."""

import math
from dataclasses import dataclass

import numpy as np

from . import code


@dataclass(frozen=True)
class CodeParams:
    """All SNR bookkeeping for one (m, SNR) operating point.

    c = 4*SNR (linear, per information bit), delta = c/(m+c+1) = 1/(sigma2+1),
    sigma2 = (m+1)/c.
    """

    m: int
    snr_db: float

    @property
    def n(self):
        return code.block_length(self.m)

    @property
    def rate(self):
        return 2.0 / (self.m + 1)

    @property
    def c(self):
        return 4.0 * 10.0 ** (self.snr_db / 10.0)

    @property
    def delta(self):
        return self.c / (self.m + self.c + 1)

    @property
    def sigma2(self):
        return (self.m + 1) / self.c


def params_from_snr_db(m, snr_db):
    """Build :class:`CodeParams`; rejects m < 2."""
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    return CodeParams(m=m, snr_db=float(snr_db))


def params_from_c(m, c):
    """Build :class:`CodeParams` from the linear constant c = 4*SNR."""
    if c <= 0:
        raise ValueError(f"c must be positive, got {c}")
    return params_from_snr_db(m, 10.0 * math.log10(c / 4.0))


@dataclass(frozen=True)
class ReceivedBlock:
    """Channel outputs indexed by unordered pairs in linear-position order."""

    m: int
    values: np.ndarray
    scaled: bool = False

    def __post_init__(self):
        if self.values.shape != (code.block_length(self.m),):
            raise ValueError(
                f"expected {code.block_length(self.m)} values, got {self.values.shape}"
            )


def _rng(seed):
    # Counter-based generator so per-trial streams are reproducible and
    # order-independent; seed may be an int or a (master, trial) tuple.
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


def noise_matrix(params, seed, trials=1):
    """Standard-normal draws, one row per trial, reproducing transmit()'s stream."""
    out = np.empty((trials, params.n))
    master, base = _split_seed(seed)
    for t in range(trials):
        out[t] = _rng((master, base + t)).standard_normal(params.n)
    return out


def _split_seed(seed):
    if isinstance(seed, tuple):
        return seed
    return seed, 0


def transmit(codeword, params, seed):
    """Send a +/-1 codeword through the AWGN channel N(0, sigma2).

    Deterministic given seed. ``seed`` may be an int or a (master, trial)
    tuple; the latter gives order-independent per-trial streams.
    """
    codeword = np.asarray(codeword, dtype=float)
    if codeword.shape != (params.n,):
        raise ValueError(f"codeword length {codeword.shape} != n = {params.n}")
    master, trial = _split_seed(seed)
    noise = _rng((master, trial)).standard_normal(params.n)
    values = codeword + math.sqrt(params.sigma2) * noise
    return ReceivedBlock(m=params.m, values=values, scaled=False)


def rescale(block, params):
    """Multiply raw outputs by delta; rejects a second rescale."""
    if block.scaled:
        raise ValueError("block is already rescaled")
    return ReceivedBlock(m=block.m, values=block.values * params.delta, scaled=True)


def to_matrix(block):
    """Symmetric (m+1, m+1) matrix Z with Z[i, j] = z_{i,j}; diagonal zero.

    Accepts a single block's values or a (trials, n) batch; returns
    (m+1, m+1) or (trials, m+1, m+1) accordingly.
    """
    if isinstance(block, ReceivedBlock):
        m, values = block.m, block.values
    else:
        raise TypeError("to_matrix expects a ReceivedBlock; use values_to_matrix for arrays")
    return values_to_matrix(values, m)


def values_to_matrix(values, m):
    values = np.asarray(values, dtype=float)
    i_idx, j_idx = code.pair_arrays(m)
    shape = values.shape[:-1] + (m + 1, m + 1)
    Z = np.zeros(shape)
    Z[..., i_idx, j_idx] = values
    Z[..., j_idx, i_idx] = values
    return Z
