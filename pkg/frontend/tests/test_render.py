import pytest

from modlab_plots import FigureSpec, load_rows, render
from modlab_plots.render import RenderError, build_figure

HEADER = "snr_db,lambda,m,trials,errors,ber,ci_low,ci_high,bound_kind,bound_value\n"


def _write(path, body):
    path.write_text("# seed: 0\n" + HEADER + body)
    return str(path)


@pytest.fixture
def fig2_csv(tmp_path):
    body = (
        "0,,128,1000,70,0.07,0.065,0.075,sim,\n"
        "1,,128,1000,40,0.04,0.036,0.044,sim,\n"
        "0,,128,,,,,,p_ml,0.0445\n"
        "1,,128,,,,,,p_ml,0.0248\n"
        "0,,128,,,,,,p_soft,0.0825\n"
        "1,,128,,,,,,p_soft,0.0457\n"
        "0,,128,,,,,,p_soft_finite,0.0800\n"
        "1,,128,,,,,,p_soft_finite,0.0444\n"
    )
    return _write(tmp_path / "fig2.csv", body)


@pytest.fixture
def fig3_csv(tmp_path):
    body = (
        "0,0.25,128,1000,27,0.027,0.025,0.030,sim,\n"
        "2,0.25,128,1000,6,0.006,0.005,0.008,sim,\n"
        "0,0.25,128,,,,,,p_frozen,0.0262\n"
        "2,0.25,128,,,,,,p_frozen,0.0062\n"
    )
    return _write(tmp_path / "fig3.csv", body)


@pytest.fixture
def fig1_csv(tmp_path):
    rows = []
    for snr in ("-3", "0"):
        for i in range(11):
            x = i / 10
            rows.append(f"{snr},{x},128,,,,,,r_c,{min(0.99, 0.8 * x + 0.05)}\n")
    return _write(tmp_path / "fig1.csv", "".join(rows))


def test_spec_validation(tmp_path):
    with pytest.raises(RenderError):
        FigureSpec(csv_paths=("a.csv",), figure_id="fig9", out_path="x.png")
    with pytest.raises(RenderError):
        FigureSpec(csv_paths=(), figure_id="fig1", out_path="x.png")


def test_load_rows_missing_column(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("snr_db,ber\n0,0.1\n")
    with pytest.raises(RenderError, match="missing columns"):
        load_rows([str(bad)])


def test_load_rows_empty(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("# nothing\n" + HEADER)
    with pytest.raises(RenderError, match="no data rows"):
        load_rows([str(empty)])


def test_render_fig1(fig1_csv, tmp_path):
    out = tmp_path / "fig1.png"
    spec = FigureSpec(csv_paths=(fig1_csv,), figure_id="fig1",
                      out_path=str(out))
    assert render(spec) == str(out)
    assert out.stat().st_size > 0


def test_render_fig2_logscale_and_legend(fig2_csv, tmp_path):
    rows = load_rows([fig2_csv])
    fig, ax = build_figure("fig2", rows)
    assert ax.get_yscale() == "log"
    labels = {t.get_text() for t in ax.get_legend().get_texts()}
    assert labels == {"sim", "p_ml", "p_soft", "p_soft_finite"}
    out = tmp_path / "fig2.png"
    render(FigureSpec(csv_paths=(fig2_csv,), figure_id="fig2",
                      out_path=str(out)))
    assert out.stat().st_size > 0


def test_render_fig3(fig3_csv, tmp_path):
    rows = load_rows([fig3_csv])
    fig, ax = build_figure("fig3", rows)
    assert ax.get_yscale() == "log"
    labels = {t.get_text() for t in ax.get_legend().get_texts()}
    assert labels == {"sim λ=0.25", "p_frozen λ=0.25"}
    out = tmp_path / "fig3.png"
    render(FigureSpec(csv_paths=(fig3_csv,), figure_id="fig3",
                      out_path=str(out)))
    assert out.stat().st_size > 0


def test_render_missing_required_rows(fig3_csv, tmp_path):
    # fig1 wants r_c rows; a BER CSV has none
    spec = FigureSpec(csv_paths=(fig3_csv,), figure_id="fig1",
                      out_path=str(tmp_path / "x.png"))
    with pytest.raises(RenderError, match="r_c"):
        render(spec)


def test_cli_roundtrip(fig2_csv, tmp_path, capsys):
    from modlab_plots.cli import main
    out = tmp_path / "cli.png"
    assert main(["render", "--fig", "2", "--csv", fig2_csv,
                 "--out", str(out)]) == 0
    assert out.exists()
    assert main(["render", "--fig", "1", "--csv", str(tmp_path / "nope.csv"),
                 "--out", str(out)]) == 1
    assert "error:" in capsys.readouterr().err
