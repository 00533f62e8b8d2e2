import csv
import math

import numpy as np
import pytest

from modlab import analysis, channel, cli, harness


def _read_csv(path):
    with open(path) as fh:
        comments = []
        rows = []
        reader = None
        header = None
        for line in fh:
            if line.startswith("#"):
                comments.append(line.rstrip("\n"))
            elif header is None:
                header = line.rstrip("\n").split(",")
            else:
                rows.append(dict(zip(header, line.rstrip("\n").split(","))))
    return comments, header, rows


def test_spec_validation():
    with pytest.raises(harness.SpecError):
        harness.ExperimentSpec(kind="nope")
    with pytest.raises(harness.SpecError, match="trials"):
        harness.ExperimentSpec(kind="ber-sweep", snr_db=(0.0,), trials=0)
    with pytest.raises(harness.SpecError, match="snr_db"):
        harness.ExperimentSpec(kind="ber-sweep")
    with pytest.raises(harness.SpecError, match="lams"):
        harness.ExperimentSpec(kind="frozen-sweep", snr_db=(0.0,))
    with pytest.raises(harness.SpecError, match="lams"):
        harness.ExperimentSpec(kind="frozen-sweep", snr_db=(0.0,), lams=(1.5,))
    with pytest.raises(harness.SpecError, match="iters"):
        harness.ExperimentSpec(kind="ber-sweep", snr_db=(0.0,), iters=0)


def test_wilson_interval():
    lo, hi = harness.wilson_interval(0, 1000)
    assert lo == 0.0
    assert hi > 0.0  # zero observed errors still yields an upper bound
    lo, hi = harness.wilson_interval(50, 1000)
    assert lo < 0.05 < hi
    # against the closed form at z=1.96, p=0.5, n=100
    lo, hi = harness.wilson_interval(50, 100, z=1.96)
    assert lo == pytest.approx(0.40383, abs=1e-4)
    assert hi == pytest.approx(0.59617, abs=1e-4)
    with pytest.raises(ValueError):
        harness.wilson_interval(5, 0)
    with pytest.raises(ValueError):
        harness.wilson_interval(7, 5)


def test_simulate_ber_reproducible_across_batching(monkeypatch):
    kw = dict(m=16, snr_db=1.0, trials=25, seed=3, L=4)
    a = harness.simulate_ber(**kw)
    monkeypatch.setattr(harness, "_batch_size", lambda m, full: 7)
    b = harness.simulate_ber(**kw)
    assert (a.trials, a.bits, a.errors) == (b.trials, b.bits, b.errors)


def test_simulate_frozen_masks_bits():
    res = harness.simulate_ber(m=16, snr_db=1.0, trials=10, seed=3, L=4,
                               decoder="simplified", lam=0.5)
    assert res.bits == 10 * 8


def test_ber_sweep_rows(tmp_path):
    out = tmp_path / "sweep.csv"
    spec = harness.ExperimentSpec(kind="ber-sweep", m=16, snr_db=(1.0, 2.0),
                                  trials=40, seed=1, out=str(out))
    rows = harness.run(spec)
    kinds = [r["bound_kind"] for r in rows]
    assert kinds == ["sim", "p_ml", "p_soft", "p_soft_finite"] * 2
    c = channel.params_from_snr_db(16, 1.0).c
    p_ml_row = rows[1]
    assert float(p_ml_row["bound_value"]) == pytest.approx(analysis.p_ml_lower(c))
    sim = rows[0]
    assert int(sim["trials"]) == 40
    assert float(sim["ci_low"]) <= float(sim["ber"]) <= float(sim["ci_high"])
    comments, header, parsed = _read_csv(out)
    assert header == list(harness.CSV_COLUMNS)
    assert len(parsed) == 8
    assert any("seed: 1" in c for c in comments)


def test_csv_body_deterministic(tmp_path):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (out1, out2):
        harness.run(harness.ExperimentSpec(kind="frozen-sweep", m=16,
                                           snr_db=(1.0,), lams=(0.5,),
                                           trials=30, seed=9, out=str(out)))
    body1 = out1.read_text().splitlines()[1:]
    body2 = out2.read_text().splitlines()[1:]
    assert body1 == body2


def test_bounds_table(tmp_path):
    out = tmp_path / "bounds.csv"
    spec = harness.ExperimentSpec(kind="bounds-table", m=128,
                                  snr_db=(-1.0, 0.0, 2.0), out=str(out))
    rows = harness.run(spec)
    # c > 1 at every grid point here: three bound rows each
    assert len(rows) == 9
    for r in rows:
        assert r["errors"] == ""
        assert 0.0 <= float(r["bound_value"]) <= 0.5


def test_fixed_point_plot_rows(tmp_path):
    out = tmp_path / "fp.csv"
    spec = harness.ExperimentSpec(kind="fixed-point-plot", m=128,
                                  snr_db=(-6.0, 0.0), out=str(out))
    rows = harness.run(spec)
    assert len(rows) == 2 * 201
    xs = [float(r["lambda"]) for r in rows[:201]]
    assert xs[0] == 0.0 and xs[-1] == 1.0
    vals = [float(r["bound_value"]) for r in rows[201:]]
    assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))  # R_c increasing


def test_capacity_table(tmp_path):
    out = tmp_path / "cap.csv"
    spec = harness.ExperimentSpec(kind="capacity-table", b_values=(5,),
                                  snr_db=(), out=str(out))
    rows = harness.run(spec)
    assert [r["bound_kind"] for r in rows] == ["c_opt", "rho_bar", "kappa_db"]
    assert rows[0]["m"] == "5"
    assert float(rows[2]["bound_value"]) > -1.5917


def test_multilevel_run_genie(tmp_path):
    out = tmp_path / "ml.csv"
    spec = harness.ExperimentSpec(kind="multilevel-run", m=32, snr_db=(0.0,),
                                  trials=10, seed=2, b_values=(2,),
                                  genie=True, out=str(out))
    rows = harness.run(spec)
    kinds = [r["bound_kind"] for r in rows]
    assert kinds == ["sim", "sim_round", "p_frozen", "sim_round", "p_frozen"]
    assert rows[1]["lambda"] == "0"
    assert rows[3]["lambda"] == "0.5"


def test_multilevel_run_validation():
    with pytest.raises(harness.SpecError, match="snr_db"):
        harness.run(harness.ExperimentSpec(kind="multilevel-run", m=32,
                                           snr_db=(0.0, 1.0), trials=1))
    with pytest.raises(harness.SpecError, match="m"):
        harness.run(harness.ExperimentSpec(kind="multilevel-run", m=33,
                                           snr_db=(0.0,), trials=1,
                                           b_values=(2,)))


def test_cli_simulate_and_errors(tmp_path, capsys):
    out = tmp_path / "cli.csv"
    rc = cli.main(["simulate", "--m", "16", "--snr", "1", "--trials", "20",
                   "--seed", "4", "--out", str(out)])
    assert rc == 0
    assert out.exists()
    captured = capsys.readouterr()
    assert "ber-sweep" in captured.out
    rc = cli.main(["simulate", "--m", "16", "--trials", "20",
                   "--out", str(out)])
    assert rc == 1
    assert "snr_db" in capsys.readouterr().err


def test_cli_frozen_switch(tmp_path):
    out = tmp_path / "fz.csv"
    rc = cli.main(["simulate", "--m", "16", "--snr", "1", "--lambda", "0.5",
                   "--trials", "20", "--out", str(out)])
    assert rc == 0
    _, _, rows = _read_csv(out)
    assert rows[0]["lambda"] == "0.5"
