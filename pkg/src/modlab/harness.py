"""Experiment orchestration: Monte-Carlo BER sweeps, bound tabulation,
capacity tables and CSV persistence with deterministic seeding.

CSV schema (one header row, `#`-prefixed metadata comments above it):
    snr_db,lambda,m,trials,errors,ber,ci_low,ci_high,bound_kind,bound_value
Simulation rows carry bound_kind="sim" (or "sim_round"); analytical rows carry
a bound_kind naming the curve and leave the Monte-Carlo columns empty. The
capacity table reuses the m column for the block count b (noted in the file
header).
"""

import csv
import io
import math
import os
import time
from dataclasses import dataclass, field, replace

import numpy as np

from . import analysis, bp, channel, code, multilevel

KINDS = ("ber-sweep", "frozen-sweep", "bounds-table", "capacity-table",
         "fixed-point-plot", "multilevel-run")

CSV_COLUMNS = ("snr_db", "lambda", "m", "trials", "errors", "ber",
               "ci_low", "ci_high", "bound_kind", "bound_value")

#: Wilson z for 95% two-sided intervals.
_Z95 = 1.959963984540054


class SpecError(ValueError):
    """Invalid experiment field; message carries the field path."""


@dataclass(frozen=True)
class ExperimentSpec:
    """One experiment: what to run, how many trials, where to write."""

    kind: str
    m: int = 128
    snr_db: tuple = ()
    lams: tuple = ()
    trials: int = 100_000
    seed: int = 0
    iters: int = None
    out: str = "out.csv"
    config_path: str = None
    b_values: tuple = (100, 1000)
    margin: float = 0.25
    genie: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SpecError(f"kind: unknown kind {self.kind!r}; expected one of {KINDS}")
        if self.trials < 1:
            raise SpecError(f"trials: must be >= 1, got {self.trials}")
        if self.kind in ("ber-sweep", "frozen-sweep", "bounds-table",
                         "fixed-point-plot") and not self.snr_db:
            raise SpecError("snr_db: grid must be non-empty")
        if self.kind == "frozen-sweep" and not self.lams:
            raise SpecError("lams: frozen sweep needs at least one lambda")
        if any(not 0.0 <= l <= 1.0 for l in self.lams):
            raise SpecError(f"lams: values must lie in [0, 1], got {self.lams}")
        if self.iters is not None and self.iters < 1:
            raise SpecError(f"iters: must be >= 1, got {self.iters}")


def wilson_interval(errors, n, z=_Z95):
    """95% Wilson score interval for a binomial proportion.

    Never returns a degenerate (0, 0) interval: with zero observed errors the
    upper limit stays positive (an upper bound on the rate).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0 <= errors <= n:
        raise ValueError(f"errors must be in [0, {n}], got {errors}")
    p = errors / n
    denom = 1.0 + z * z / n
    center = (p + z * z / (2 * n)) / denom
    half = (z / denom) * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n))
    lo = 0.0 if errors == 0 else max(0.0, center - half)
    hi = 1.0 if errors == n else min(1.0, center + half)
    return lo, hi


@dataclass(frozen=True)
class SimResult:
    trials: int
    bits: int
    errors: int

    @property
    def ber(self):
        return self.errors / self.bits

    @property
    def ci(self):
        return wilson_interval(self.errors, self.bits)


def _info_bits(seed, trial, m):
    g = np.random.Generator(np.random.Philox(np.random.SeedSequence((seed, trial, 1))))
    return g.integers(0, 2, m, dtype=np.int64)


def _iterations(spec, c):
    if spec.iters is not None:
        return spec.iters
    return bp.default_iterations(spec.m, c)


def _batch_size(m, full):
    per_block = m * m * 8 * (8 if full else 5)
    return max(1, int(2.5e8 / per_block))


def simulate_ber(m, snr_db, trials, seed, L, decoder="full", lam=0.0):
    """Monte-Carlo BER of the plain or frozen-prefix decoder.

    Random information words; noise stream keyed (seed, trial) and bit stream
    keyed (seed, trial, 1), so results are independent of batch size. With
    lam > 0 the first floor(lam*m) bits are frozen to their transmitted
    values and excluded from the error count.
    """
    params = channel.params_from_snr_db(m, snr_db)
    k = int(lam * m)
    mask = None
    if k:
        mask = np.zeros(m, dtype=bool)
        mask[:k] = True
    free = np.ones(m, dtype=bool) if mask is None else ~mask
    full = decoder == "full"
    batch = _batch_size(m, full)
    errors = 0
    for base in range(0, trials, batch):
        B = min(batch, trials - base)
        bits = np.stack([_info_bits(seed, base + t, m) for t in range(B)])
        cw = code.modulate(code.encode(bits, m)).astype(float)
        noise = channel.noise_matrix(params, (seed, base), B)
        Z = channel.values_to_matrix(
            (cw + math.sqrt(params.sigma2) * noise) * params.delta, m)
        truth = code.modulate(bits)
        if full:
            hard, _ = bp.decode_full_batch(Z, L)
        else:
            fv = truth.astype(float) if mask is not None else None
            hard, _ = bp.decode_simplified_batch(Z, L, frozen_mask=mask,
                                                 frozen_values=fv)
        errors += int((hard[:, free] != truth[:, free]).sum())
    return SimResult(trials=trials, bits=trials * int(free.sum()), errors=errors)


def simulate_multilevel(config, trials, seed, L, genie=False):
    """Monte-Carlo run of the compound code.

    Returns (final SimResult over information bits, per-round SimResults of
    the pre-polar BER). Per-round statistics require genie mode, where earlier
    rounds are frozen to the truth.
    """
    params = channel.params_from_snr_db(config.m, config.snr_db)
    info_total = config.info_bits
    final_err = 0
    round_err = np.zeros(config.b, dtype=np.int64)
    from . import polar as polar_mod
    for t in range(trials):
        bits = _info_bits(seed, t, info_total)
        blocks = []
        pos = 0
        for pc in config.codes:
            blocks.append(bits[pos:pos + pc.k])
            pos += pc.k
        cw = multilevel.ml_encode(blocks, config).astype(float)
        inner = np.empty(config.m, dtype=np.int64)
        for s, (blk, pc) in enumerate(zip(blocks, config.codes)):
            x = polar_mod.polar_encode(blk, pc)
            inner[s * config.mu:(s + 1) * config.mu] = (1 - x) // 2
        noise = channel.noise_matrix(params, (seed, t), 1)[0]
        rec = channel.ReceivedBlock(
            m=config.m,
            values=(cw + math.sqrt(params.sigma2) * noise) * params.delta,
            scaled=True)
        out = multilevel.ml_decode(rec, config, L,
                                   genie_bits=inner if genie else None)
        for dec, tru in zip(out.blocks, blocks):
            final_err += int((dec != tru).sum())
        if genie:
            for d in out.diagnostics:
                round_err[d.round_index] += d.pre_polar_errors
    final = SimResult(trials=trials, bits=trials * info_total, errors=final_err)
    rounds = tuple(SimResult(trials=trials, bits=trials * config.mu,
                             errors=int(e)) for e in round_err)
    return final, rounds


def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".10g")


def _row(**kw):
    row = {k: "" for k in CSV_COLUMNS}
    row.update({k: _fmt(v) for k, v in kw.items()})
    return row


def _sim_row(snr, lam, m, res, kind="sim"):
    lo, hi = res.ci
    return _row(snr_db=snr, **{"lambda": lam}, m=m, trials=res.trials,
                errors=res.errors, ber=res.ber, ci_low=lo, ci_high=hi,
                bound_kind=kind)


def _bound_row(snr, lam, m, kind, value):
    return _row(snr_db=snr, **{"lambda": lam}, m=m, bound_kind=kind,
                bound_value=value)


def write_csv(path, rows, meta):
    """Write rows in the fixed column order; metadata goes into `#` comments.

    The body is byte-deterministic given (rows, meta); the timestamp lives in
    its own comment line.
    """
    buf = io.StringIO()
    buf.write(f"# generated: {time.strftime('%Y-%m-%dT%H:%M:%S%z')}\n")
    for key in sorted(meta):
        buf.write(f"# {key}: {meta[key]}\n")
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)
    with open(path, "w") as fh:
        fh.write(buf.getvalue())


def _run_ber_sweep(spec):
    rows = []
    for snr in spec.snr_db:
        params = channel.params_from_snr_db(spec.m, snr)
        L = _iterations(spec, params.c)
        res = simulate_ber(spec.m, snr, spec.trials, spec.seed, L)
        rows.append(_sim_row(snr, "", spec.m, res))
        rows.append(_bound_row(snr, "", spec.m, "p_ml", analysis.p_ml_lower(params.c)))
        rows.append(_bound_row(snr, "", spec.m, "p_soft", analysis.p_soft(params.c)))
        rows.append(_bound_row(snr, "", spec.m, "p_soft_finite",
                               analysis.p_soft_finite(params.c, spec.m)))
    return rows


def _run_frozen_sweep(spec):
    rows = []
    for lam in spec.lams:
        for snr in spec.snr_db:
            params = channel.params_from_snr_db(spec.m, snr)
            L = _iterations(spec, params.c)
            res = simulate_ber(spec.m, snr, spec.trials, spec.seed, L,
                               decoder="simplified", lam=lam)
            rows.append(_sim_row(snr, lam, spec.m, res))
            rows.append(_bound_row(snr, lam, spec.m, "p_frozen",
                                   analysis.p_soft_frozen(lam, params.c)))
    return rows


def _run_bounds_table(spec):
    rows = []
    for snr in spec.snr_db:
        c = channel.params_from_snr_db(spec.m, snr).c
        rows.append(_bound_row(snr, "", spec.m, "p_ml", analysis.p_ml_lower(c)))
        if c > 1:
            rows.append(_bound_row(snr, "", spec.m, "p_soft", analysis.p_soft(c)))
            rows.append(_bound_row(snr, "", spec.m, "p_soft_finite",
                                   analysis.p_soft_finite(c, spec.m)))
    return rows


def _run_capacity_table(spec):
    # b is reported in the m column; see module docstring
    rows = []
    for b in spec.b_values:
        c_opt, rho, kappa_db = analysis.min_snr(b)
        rows.append(_bound_row("", "", b, "c_opt", c_opt))
        rows.append(_bound_row("", "", b, "rho_bar", rho))
        rows.append(_bound_row("", "", b, "kappa_db", kappa_db))
    return rows


def _run_fixed_point_plot(spec):
    rows = []
    xs = np.linspace(0.0, 1.0, 201)
    for snr in spec.snr_db:
        c = channel.params_from_snr_db(spec.m, snr).c
        for x in xs:
            rows.append(_bound_row(snr, x, spec.m, "r_c", analysis.r_c(float(x), c)))
    return rows


def _load_or_build_config(spec):
    if spec.config_path:
        with open(spec.config_path) as fh:
            return multilevel.config_from_json(fh.read())
    if len(spec.snr_db) != 1:
        raise SpecError("snr_db: multilevel run needs exactly one SNR or a config file")
    c = channel.params_from_snr_db(spec.m, spec.snr_db[0]).c
    b = spec.b_values[0]
    if spec.m % b:
        raise SpecError(f"m: {spec.m} not divisible by b={b}")
    return multilevel.allocate_rates(c, b, spec.m // b, spec.margin)


def _run_multilevel(spec):
    config = _load_or_build_config(spec)
    L = _iterations(replace(spec, m=config.m), config.c)
    final, rounds = simulate_multilevel(config, spec.trials, spec.seed, L,
                                        genie=spec.genie)
    rows = [_sim_row(config.snr_db, "", config.m, final)]
    if spec.genie:
        for s, res in enumerate(rounds):
            lam = s / config.b
            rows.append(_sim_row(config.snr_db, lam, config.m, res, kind="sim_round"))
            rows.append(_bound_row(config.snr_db, lam, config.m, "p_frozen",
                                   analysis.p_soft_frozen(lam, config.c)))
    return rows


_RUNNERS = {
    "ber-sweep": _run_ber_sweep,
    "frozen-sweep": _run_frozen_sweep,
    "bounds-table": _run_bounds_table,
    "capacity-table": _run_capacity_table,
    "fixed-point-plot": _run_fixed_point_plot,
    "multilevel-run": _run_multilevel,
}


def run(spec):
    """Execute the experiment and write its CSV; returns the row dicts.

    Output is deterministic given (spec, seed) apart from the timestamp
    comment.
    """
    rows = _RUNNERS[spec.kind](spec)
    meta = {
        "kind": spec.kind,
        "m": spec.m,
        "seed": spec.seed,
        "trials": spec.trials,
        "snr_db": ",".join(_fmt(s) for s in spec.snr_db),
        "lambda": ",".join(_fmt(l) for l in spec.lams),
    }
    if spec.kind == "capacity-table":
        meta["note"] = "rows store the block count b in the m column"
    write_csv(spec.out, rows, meta)
    return rows
