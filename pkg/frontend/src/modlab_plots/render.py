"""Turn experiment CSVs into static figures.

The input schema is the harness CSV: a `#`-comment preamble, then
    snr_db,lambda,m,trials,errors,ber,ci_low,ci_high,bound_kind,bound_value
Simulation rows (bound_kind sim/sim_round) become markers with error bars;
analytical rows become one line per bound_kind. BER axes are logarithmic.
"""

import csv
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

FIGURE_IDS = ("fig1", "fig2", "fig3")

REQUIRED_COLUMNS = ("snr_db", "lambda", "m", "trials", "errors", "ber",
                    "ci_low", "ci_high", "bound_kind", "bound_value")

_DPI = 150


class RenderError(ValueError):
    pass


@dataclass(frozen=True)
class FigureSpec:
    """What to render: input CSVs, figure id, output image path."""

    csv_paths: tuple
    figure_id: str
    out_path: str

    def __post_init__(self):
        if self.figure_id not in FIGURE_IDS:
            raise RenderError(f"unknown figure id {self.figure_id!r}; "
                              f"expected one of {FIGURE_IDS}")
        if not self.csv_paths:
            raise RenderError("at least one input CSV is required")


def load_rows(paths):
    """Read and concatenate harness CSVs; validates the column set."""
    rows = []
    for path in paths:
        with open(path) as fh:
            lines = [ln for ln in fh if not ln.startswith("#")]
        reader = csv.DictReader(lines)
        cols = tuple(reader.fieldnames or ())
        missing = [c for c in REQUIRED_COLUMNS if c not in cols]
        if missing:
            raise RenderError(f"{path}: missing columns {missing}")
        rows.extend(reader)
    if not rows:
        raise RenderError("no data rows in input CSVs")
    return rows


def _split(rows):
    sims, bounds = {}, {}
    for r in rows:
        kind = r["bound_kind"]
        if kind.startswith("sim"):
            sims.setdefault(kind, []).append(r)
        elif kind:
            bounds.setdefault(kind, []).append(r)
    return sims, bounds


def _floats(rows, col):
    return [float(r[col]) for r in rows]


def _fig1(rows):
    curves = {}
    for r in rows:
        if r["bound_kind"] != "r_c":
            continue
        curves.setdefault(r["snr_db"], []).append((float(r["lambda"]),
                                                   float(r["bound_value"])))
    if not curves:
        raise RenderError("fig1 needs r_c rows")
    fig, ax = plt.subplots(figsize=(6, 5))
    for snr in sorted(curves, key=float):
        pts = sorted(curves[snr])
        ax.plot([p[0] for p in pts], [p[1] for p in pts],
                label=f"{snr} dB")
    ax.plot([0, 1], [0, 1], "k--", linewidth=0.8, label="y = x")
    ax.set_xlabel("x")
    ax.set_ylabel("R_c(x)")
    ax.set_xlim(0, 1)
    ax.set_ylim(0, 1)
    ax.legend()
    return fig, ax


def _ber_axes(ax):
    ax.set_yscale("log")
    ax.set_ylabel("bit error rate")
    ax.grid(True, which="both", alpha=0.3)


def _fig2(rows):
    sims, bounds = _split(rows)
    if not sims and not bounds:
        raise RenderError("fig2 needs sim or bound rows")
    fig, ax = plt.subplots(figsize=(6, 5))
    for kind in sorted(bounds):
        rs = sorted(bounds[kind], key=lambda r: float(r["snr_db"]))
        ax.plot(_floats(rs, "snr_db"), _floats(rs, "bound_value"), label=kind)
    for kind in sorted(sims):
        rs = sorted(sims[kind], key=lambda r: float(r["snr_db"]))
        ber = _floats(rs, "ber")
        lo = _floats(rs, "ci_low")
        hi = _floats(rs, "ci_high")
        yerr = ([b - l for b, l in zip(ber, lo)],
                [h - b for b, h in zip(ber, hi)])
        ax.errorbar(_floats(rs, "snr_db"), ber, yerr=yerr, fmt="o",
                    capsize=3, linestyle="none", label=kind)
    ax.set_xlabel("SNR (dB)")
    _ber_axes(ax)
    ax.legend()
    return fig, ax


def _fig3(rows):
    sims, bounds = _split(rows)
    if not sims and not bounds:
        raise RenderError("fig3 needs sim or bound rows")
    fig, ax = plt.subplots(figsize=(6, 5))
    lams = sorted({r["lambda"] for r in rows if r["lambda"] != ""}, key=float)
    for lam in lams:
        for kind in sorted(bounds):
            rs = sorted((r for r in bounds[kind] if r["lambda"] == lam),
                        key=lambda r: float(r["snr_db"]))
            if rs:
                ax.plot(_floats(rs, "snr_db"), _floats(rs, "bound_value"),
                        label=f"{kind} λ={lam}")
        for kind in sorted(sims):
            rs = sorted((r for r in sims[kind] if r["lambda"] == lam),
                        key=lambda r: float(r["snr_db"]))
            if rs:
                ax.plot(_floats(rs, "snr_db"), _floats(rs, "ber"), "o",
                        linestyle="none", label=f"{kind} λ={lam}")
    ax.set_xlabel("SNR (dB)")
    _ber_axes(ax)
    ax.legend(fontsize=8)
    return fig, ax


_BUILDERS = {"fig1": _fig1, "fig2": _fig2, "fig3": _fig3}


def build_figure(figure_id, rows):
    """Pure figure construction; separated from file I/O for testability."""
    return _BUILDERS[figure_id](rows)


def render(spec):
    """Render the figure described by ``spec`` to a PNG; returns the path."""
    rows = load_rows(spec.csv_paths)
    fig, _ = build_figure(spec.figure_id, rows)
    try:
        fig.savefig(spec.out_path, dpi=_DPI, bbox_inches="tight")
    finally:
        plt.close(fig)
    return spec.out_path
