"""The compound code: b polar-protected sub-blocks inside one modulation code,
decoded round by round with previously decoded sub-blocks frozen.

Sub-block s occupies information-bit positions mu*s .. mu*(s+1)-1 and is
protected by a polar code whose rate tracks the capacity of the effective
channel seen at frozen fraction lambda = s/b.
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import analysis, bp, channel, code, polar


@dataclass(frozen=True)
class MultilevelConfig:
    """Static description of one compound code instance.

    Invariants: rates strictly increasing; m = b*mu; one polar code per round.
    """

    b: int
    mu: int
    margin: float
    snr_db: float
    rates: tuple
    codes: tuple

    def __post_init__(self):
        if self.b < 1:
            raise ValueError(f"b must be >= 1, got {self.b}")
        if len(self.rates) != self.b or len(self.codes) != self.b:
            raise ValueError("need one rate and one polar code per round")
        # strictly increasing, except the degenerate all-zero allocation
        if any(r != 0.0 for r in self.rates) and any(
                r2 <= r1 for r1, r2 in zip(self.rates, self.rates[1:])):
            raise ValueError(f"rates must be strictly increasing, got {self.rates}")

    @property
    def m(self):
        return self.b * self.mu

    @property
    def c(self):
        return 4.0 * 10.0 ** (self.snr_db / 10.0)

    @property
    def n(self):
        return code.block_length(self.m)

    @property
    def info_bits(self):
        return sum(c.k for c in self.codes)

    @property
    def compound_rate(self):
        return self.info_bits / self.n


@dataclass(frozen=True)
class RoundDiagnostics:
    """Per-round decode statistics."""

    round_index: int
    pre_polar_errors: int
    pre_polar_bits: int
    polar_block_ok: bool

    @property
    def pre_polar_ber(self):
        return self.pre_polar_errors / self.pre_polar_bits


@dataclass(frozen=True)
class DecodeOutput:
    blocks: tuple
    diagnostics: tuple
    bp_edge_ops: int
    polar_ops: int


def allocate_rates(c, b, mu, margin):
    """Build a :class:`MultilevelConfig` with per-round rates
    r_s = (1 - margin) * capacity(c * X(s/b)), clipped to [0, 1].

    Each polar code is constructed for a BI-AWGN design channel of noise
    power 1 / (c * X(s/b)). Requires c > 1 so X(0) > 0.
    """
    if c <= 1:
        raise ValueError(f"allocation requires c > 1, got c={c}")
    if not 0.0 < margin <= 1.0:
        raise ValueError(f"margin must be in (0, 1], got {margin}")
    rates, codes = [], []
    for s in range(b):
        X, _ = analysis.frozen_fixed_point(s / b, c)
        a = c * X
        r = min(1.0, max(0.0, (1.0 - margin) * analysis.biawgn_capacity(a)))
        rates.append(r)
        codes.append(polar.construct(mu, r, 1.0 / a))
    snr_db = 10.0 * math.log10(c / 4.0)
    return MultilevelConfig(b=b, mu=mu, margin=float(margin), snr_db=snr_db,
                            rates=tuple(rates), codes=tuple(codes))


def ml_encode(blocks, config):
    """Encode b information blocks into one +/-1 codeword of length n.

    Block s must have length codes[s].k. Polar-encodes each block,
    concatenates the mu-bit sub-blocks to m bits, then applies the outer
    pair-parity encoder.
    """
    if len(blocks) != config.b:
        raise ValueError(f"expected {config.b} blocks, got {len(blocks)}")
    bits = np.empty(config.m, dtype=np.int64)
    for s, (blk, pc) in enumerate(zip(blocks, config.codes)):
        blk = np.asarray(blk, dtype=np.int64)
        if blk.shape != (pc.k,):
            raise ValueError(f"block {s}: expected {pc.k} bits, got {blk.shape}")
        x = polar.polar_encode(blk, pc)            # +/-1
        bits[s * config.mu:(s + 1) * config.mu] = (1 - x) // 2
    return code.modulate(code.encode(bits, config.m))


def ml_decode(block, config, L, genie_bits=None):
    """Round-based decode of a received (scaled) block.

    Rounds s = 0..b-1: run the frozen-bit decoder with all earlier sub-blocks
    pinned, hand the round-s log-likelihoods to the polar SC decoder, then
    re-encode its decision to obtain the +/-1 values frozen from round s+1 on.

    ``genie_bits``: optional length-m 0/1 array of the true inner bits; when
    given, rounds < s freeze to the truth instead of the decoded values and
    diagnostics report errors against it. Decoding failures surface as bit
    errors, never exceptions.
    """
    if block.m != config.m:
        raise ValueError(f"block m={block.m} does not match config m={config.m}")
    mu = config.mu
    mask = np.zeros(config.m, dtype=bool)
    frozen = np.zeros(config.m)
    out, diags = [], []
    edge_ops = 0
    polar_ops = 0
    true_mod = None if genie_bits is None else code.modulate(np.asarray(genie_bits))
    for s in range(config.b):
        res = bp.decode_frozen(block, (mask, frozen), L)
        edge_ops += res.edge_ops
        sl = slice(s * mu, (s + 1) * mu)
        pc = config.codes[s]
        info_hat = polar.sc_decode(res.llh[sl], pc)
        polar_ops += pc.mu * max(1, int(math.log2(pc.mu)))
        x_hat = polar.polar_encode(info_hat, pc)
        out.append(info_hat)
        if true_mod is not None:
            pre_err = int((res.hard[sl] != true_mod[sl]).sum())
            ok = bool(np.array_equal(x_hat, true_mod[sl]))
        else:
            pre_err = 0
            ok = True
        diags.append(RoundDiagnostics(round_index=s, pre_polar_errors=pre_err,
                                      pre_polar_bits=mu, polar_block_ok=ok))
        mask[sl] = True
        frozen[sl] = true_mod[sl] if genie_bits is not None else x_hat
    return DecodeOutput(blocks=tuple(out), diagnostics=tuple(diags),
                        bp_edge_ops=edge_ops, polar_ops=polar_ops)


def config_to_json(config):
    """Serialize to the reproducibility JSON schema."""
    return json.dumps({
        "b": config.b,
        "mu": config.mu,
        "margin": config.margin,
        "snr_db": config.snr_db,
        "rates": list(config.rates),
        "info_sets": [list(pc.info_set) for pc in config.codes],
    }, indent=2)


def config_from_json(text):
    """Inverse of :func:`config_to_json`; design noise powers are recomputed."""
    d = json.loads(text)
    c = 4.0 * 10.0 ** (d["snr_db"] / 10.0)
    codes = []
    for s, info_set in enumerate(d["info_sets"]):
        X, _ = analysis.frozen_fixed_point(s / d["b"], c)
        codes.append(polar.PolarCode(mu=d["mu"], info_set=tuple(info_set),
                                     design_noise_power=1.0 / (c * X)))
    return MultilevelConfig(b=d["b"], mu=d["mu"], margin=d["margin"],
                            snr_db=d["snr_db"], rates=tuple(d["rates"]),
                            codes=tuple(codes))
