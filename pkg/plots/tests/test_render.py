import pytest

from talbot_plots import FigureSpec, SchemaError, compare, render
from talbot_plots.scripts import main_compare, main_sobolev_curve


CASES = [
    ("sobolev-curve", "thm14_k3.csv"),
    ("param-region", "domain_k5.csv"),
    ("slope-fit", "cover.csv"),
    ("amplitude-heatmap", "expsum.csv"),
]


@pytest.mark.parametrize("kind,csv_name", CASES)
def test_render_each_kind_deterministic(kind, csv_name, csv_dir, tmp_path):
    spec = FigureSpec([str(csv_dir / csv_name)], kind, title=kind)
    out1 = tmp_path / "a.png"
    out2 = tmp_path / "b.png"
    render(spec, str(out1))
    render(spec, str(out2))
    data = out1.read_bytes()
    assert data[:8] == b"\x89PNG\r\n\x1a\n"
    assert len(data) > 1000
    assert data == out2.read_bytes()


def test_schema_mismatch_reports_columns(csv_dir, tmp_path):
    spec = FigureSpec([str(csv_dir / "cover.csv")], "sobolev-curve")
    with pytest.raises(SchemaError, match="missing.*alpha"):
        render(spec, str(tmp_path / "x.png"))


def test_unknown_kind_rejected():
    with pytest.raises(SchemaError):
        FigureSpec(["whatever.csv"], "pie-chart")


def test_compare_overlay(csv_dir, tmp_path):
    specs = [FigureSpec([str(csv_dir / "thm14_k2.csv")], "sobolev-curve",
                        style={"labels": ["k=2"]}),
             FigureSpec([str(csv_dir / "thm14_k3.csv")], "sobolev-curve",
                        style={"labels": ["k=3"]})]
    out = tmp_path / "overlay.png"
    compare(specs, str(out))
    assert out.stat().st_size > 1000


def test_compare_rejects_mixed_kinds(csv_dir, tmp_path):
    specs = [FigureSpec([str(csv_dir / "thm14_k3.csv")], "sobolev-curve"),
             FigureSpec([str(csv_dir / "cover.csv")], "slope-fit")]
    with pytest.raises(SchemaError, match="one figure kind"):
        compare(specs, str(tmp_path / "x.png"))


def test_compare_single_spec_matches_render(csv_dir, tmp_path):
    spec = FigureSpec([str(csv_dir / "thm14_k3.csv")], "sobolev-curve")
    a = tmp_path / "render.png"
    b = tmp_path / "compare.png"
    render(spec, str(a))
    compare([spec], str(b))
    assert a.read_bytes() == b.read_bytes()


def test_cli_scripts(csv_dir, tmp_path):
    out = tmp_path / "cli.png"
    code = main_sobolev_curve(["--in", str(csv_dir / "thm14_k3.csv"),
                               "--out", str(out), "--title", "curve"])
    assert code == 0 and out.exists()
    code = main_sobolev_curve(["--in", str(csv_dir / "cover.csv"),
                               "--out", str(tmp_path / "bad.png")])
    assert code == 2
    out2 = tmp_path / "cmp.png"
    code = main_compare(["--kind", "sobolev-curve",
                         "--in", str(csv_dir / "thm14_k2.csv"),
                         "--in", str(csv_dir / "thm14_k3.csv"),
                         "--label", "k=2", "--label", "k=3",
                         "--out", str(out2)])
    assert code == 0 and out2.exists()


def test_figure_reproduction_suite(csv_dir, tmp_path):
    # curve, region, overlay and slope-fit analogues all render twice to
    # identical bytes from freshly generated CSVs
    jobs = [
        ("fig1", lambda p: render(FigureSpec(
            [str(csv_dir / "thm14_k3.csv")], "sobolev-curve",
            title="s(alpha), k=3, n=2"), p)),
        ("fig2", lambda p: render(FigureSpec(
            [str(csv_dir / "domain_k5.csv")], "param-region",
            title="domain, k=5"), p)),
        ("fig3", lambda p: compare([
            FigureSpec([str(csv_dir / "thm14_k2.csv")], "sobolev-curve",
                       style={"labels": ["k=2"]}),
            FigureSpec([str(csv_dir / "thm14_k3.csv")], "sobolev-curve",
                       style={"labels": ["k=3"]})], p)),
        ("fig8", lambda p: render(FigureSpec(
            [str(csv_dir / "cover.csv")], "slope-fit"), p)),
    ]
    for name, job in jobs:
        p1 = str(tmp_path / f"{name}_a.png")
        p2 = str(tmp_path / f"{name}_b.png")
        job(p1)
        job(p2)
        with open(p1, "rb") as f1, open(p2, "rb") as f2:
            assert f1.read() == f2.read(), name
