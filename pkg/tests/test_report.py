import re
import xml.etree.ElementTree as ET

import pytest

from eomsim.errors import PlotSpecError
from eomsim.plotting import render_svg
from eomsim.report import UNSTABLE, read_csv, write_csv
from eomsim.sweeps import Axis, SweepResult, SweepSpec, figure_preset, run_sweep

SVG = "{http://www.w3.org/2000/svg}"


@pytest.fixture(scope="module")
def fig2b_small():
    return run_sweep(figure_preset("fig2b").with_overrides({"axis0.count": 9}))


def test_empty_result(tmp_path):
    spec = figure_preset("fig2b")
    path = write_csv(SweepResult(spec, [], []), tmp_path / "empty.csv")
    lines = path.read_text().splitlines()
    assert lines[0].startswith("#") and not lines[-1].startswith("#")
    assert sum(not l.startswith("#") for l in lines) == 1


def test_schema(fig2b_small, tmp_path):
    write_csv(fig2b_small, tmp_path / "f.csv")
    header = next(l for l in (tmp_path / "f.csv").read_text().splitlines() if not l.startswith("#"))
    names = [h.rsplit(" [", 1)[0] for h in header.split(",")]
    for col in ("delta_x_over_omega_b", "E_xc", "E_cb", "E_xb", "R_tau_min", "n_b", "stable"):
        assert col in names
    assert "delta_x_over_omega_b [omega_b]" in header and "G_cb_hz [Hz]" in header


def test_roundtrip_is_bit_exact(fig2b_small, tmp_path):
    path = write_csv(fig2b_small, tmp_path / "f.csv")
    spec, rows = read_csv(path)
    assert spec == fig2b_small.spec
    for got, want in zip(rows, fig2b_small.rows()):
        for key in ("delta_x_over_omega_b", "E_xc", "E_cb", "E_xb", "R_tau_min", "n_b", "lyapunov_residual"):
            assert got[key] == want[key]
        assert got["stable"] is True


def test_metadata_reproduces_run(fig2b_small, tmp_path):
    spec, rows = read_csv(write_csv(fig2b_small, tmp_path / "f.csv"))
    again = run_sweep(spec).rows()
    assert [r["E_xc"] for r in again] == [r["E_xc"] for r in rows]


def test_unstable_cells(tmp_path):
    res = run_sweep(SweepSpec("weak", (Axis("delta_c_eff_over_omega_b", -1.0, 1.0, 3),)))
    _, rows = read_csv(write_csv(res, tmp_path / "u.csv"))
    bad = [r for r in rows if r["stable"] is False]
    assert bad and all(r["E_xc"] == UNSTABLE and r["R_tau_min"] == UNSTABLE for r in bad)


def test_write_failure_names_path(fig2b_small, tmp_path):
    target = tmp_path / "missing" / "f.csv"
    with pytest.raises(OSError, match="missing"):
        write_csv(fig2b_small, target)


def _series_vertices(svg, name):
    root = ET.fromstring(svg)
    group = next(g for g in root.iter(f"{SVG}g") if g.get("id") == f"series-{name}")
    d = next(group.iter(f"{SVG}path")).get("d")
    return len(re.findall(r"[ML]", d))


def test_two_point_line():
    res = run_sweep(SweepSpec("weak", (Axis("delta_x_over_omega_b", -1.2, -1.0, 2),), plot=("E_xc", "E_cb")))
    svg = render_svg(res)
    assert _series_vertices(svg, "E_xc") == 2 and _series_vertices(svg, "E_cb") == 2
    assert svg.startswith("<?xml")


def test_heatmap_has_colorbar_and_is_deterministic():
    res = run_sweep(figure_preset("fig3a").with_overrides({"axis0.count": 4, "axis1.count": 3}))
    svg = render_svg(res)
    root = ET.fromstring(svg)
    ids = {g.get("id") for g in root.iter(f"{SVG}g")}
    assert "heatmap-E_xc" in ids
    assert sum(1 for i in ids if i and i.startswith("axes_")) == 2  # plot + colorbar
    assert render_svg(res) == svg


def test_plot_spec_errors(fig2b_small):
    with pytest.raises(PlotSpecError):
        render_svg(fig2b_small, ["E_ul"])
    res = run_sweep(figure_preset("fig3a").with_overrides({"axis0.count": 2, "axis1.count": 2}))
    with pytest.raises(PlotSpecError):
        render_svg(res, ["E_xc", "E_cb"])
