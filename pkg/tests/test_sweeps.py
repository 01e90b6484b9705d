import numpy as np
import pytest

from eomsim.errors import ConfigError
from eomsim.sweeps import Axis, PRESETS, SweepSpec, evaluate_point, figure_preset, run_sweep


def small(name, count=5):
    spec = figure_preset(name)
    return spec.with_overrides({f"axis{k}.count": count for k in range(len(spec.axes))})


def test_grid_point_equals_direct_evaluation():
    spec = SweepSpec("weak", (Axis("delta_x_over_omega_b", -1.1, -0.5, 2),), {"T_k": 2.0})
    res = run_sweep(spec)
    direct = evaluate_point("weak", {"T_k": 2.0, "delta_x_over_omega_b": -1.1})
    assert res.rows()[0]["E_xc"] == direct.observables["E_xc"]
    np.testing.assert_array_equal(res.points[0].V, direct.V)


def test_row_major_order():
    spec = SweepSpec("weak", (Axis("T_k", 1.0, 2.0, 2), Axis("kappa_b_hz", 1e6, 2e6, 3)))
    coords = [(float(a), float(b)) for a, b in spec.grid()]
    assert coords == [(1.0, 1e6), (1.0, 1.5e6), (1.0, 2e6), (2.0, 1e6), (2.0, 1.5e6), (2.0, 2e6)]


def test_log_axis():
    a = Axis("kappa_b_hz", 1e5, 1e7, 3, "log")
    np.testing.assert_allclose(a.values(), [1e5, 1e6, 1e7])


@pytest.mark.parametrize("axis", [
    Axis("delta_x_over_omega_b", 0.0, 1.0, 1),
    Axis("delta_x_over_omega_b", 1.0, 0.0, 5),
    Axis("kappa_b_hz", 0.0, 1.0, 5, "log"),
    Axis("delta_x_over_omega_b", 0.0, 1.0, 5, "cubic"),
])
def test_axis_validation(axis):
    with pytest.raises(ConfigError):
        SweepSpec("weak", (axis,)).validate()


def test_unknown_path_lists_valid_paths():
    with pytest.raises(ConfigError, match="valid paths: .*delta_x_over_omega_b"):
        SweepSpec("weak", (Axis("kappa_q_hz", 1, 2, 3),)).validate()


def test_unknown_observable():
    with pytest.raises(ConfigError):
        SweepSpec("weak", (Axis("T_k", 1, 2, 3),), observables=("E_ul",)).validate()


def test_unstable_points_have_no_observables():
    spec = SweepSpec("weak", (Axis("delta_c_eff_over_omega_b", -1.0, 1.0, 5),))
    res = run_sweep(spec)
    flags = [r["stable"] for r in res.rows()]
    assert not all(flags) and any(flags)
    for row in res.rows():
        if not row["stable"]:
            assert all(row[o] is None for o in spec.columns)
            assert row["abscissa_over_omega_b"] >= -1e-12


def test_determinism_and_parallel_invariance():
    spec = small("fig5b", 4)
    a, b = run_sweep(spec), run_sweep(spec)
    c = run_sweep(spec, workers=2)
    assert a.rows() == b.rows() == c.rows()


def test_env_var_caps_workers(monkeypatch):
    monkeypatch.setenv("EOMSIM_THREADS", "nope")
    with pytest.raises(ConfigError):
        run_sweep(small("fig2b", 3))


def test_presets_carry_paper_parameters():
    assert set(PRESETS) == {"fig2b", "fig3a", "fig3b", "fig4b", "fig5a", "fig5b"}
    fig2b = figure_preset("fig2b")
    assert fig2b.model == "weak"
    assert (fig2b.axes[0].path, fig2b.axes[0].min, fig2b.axes[0].max, fig2b.axes[0].count) == \
        ("delta_x_over_omega_b", -2.0, 0.0, 401)
    assert fig2b.to_dict()["resolved_params"]["delta_c_eff_over_omega_b"] == 0.9
    fig3b = figure_preset("fig3b")
    assert [a.path for a in fig3b.axes] == ["T_k", "kappa_b_hz"]
    assert fig3b.to_dict()["resolved_params"]["delta_x_over_omega_b"] == -1.1
    fig5b = figure_preset("fig5b")
    assert fig5b.model == "strong"
    assert 300.0 in fig5b.axes[0].values() and 0.5e6 in fig5b.axes[1].values()
    r = fig5b.to_dict()["resolved_params"]
    assert r["delta_u_over_omega_b"] == 1.0 and r["target_Gl_hz"] == 0.6e9
    assert r["g_hz"] == 13e9 and r["omega_x_hz"] == 345e12
    w = figure_preset("fig3a").to_dict()["resolved_params"]
    assert (w["omega_b_hz"], w["kappa_b_hz"], w["G0_hz"], w["T_k"], w["g_hz"], w["Omega_hz"]) == \
        (20e9, 1e6, 10e6, 1.0, 0.9e9, 6e12)


def test_unknown_preset():
    with pytest.raises(ConfigError, match="fig4b"):
        figure_preset("fig9")


def test_overrides():
    spec = figure_preset("fig4b").with_overrides({"axis0.count": 11, "T_k": 4.0})
    assert spec.axes[0].count == 11 and spec.fixed["T_k"] == 4.0
    with pytest.raises(ConfigError):
        figure_preset("fig4b").with_overrides({"axis3.count": 2})
    with pytest.raises(ConfigError):
        figure_preset("fig4b").with_overrides({"kappa_c_hz": -5})


def test_fig2b_exciton_photon_peak_location():
    res = run_sweep(figure_preset("fig2b"))
    x = np.array([c[0] for c in res.coords])
    assert -1.2 <= x[np.nanargmax(res.column("E_xc"))] <= -0.9


def test_fig4b_up_phonon_threshold():
    spec = SweepSpec("strong", (Axis("delta_u_over_omega_b", 1.0, 1.3, 4),), {"target_Gl_hz": 0.6e9})
    e_ub = run_sweep(spec).column("E_ub")
    assert e_ub[0] == 0.0
    assert e_ub[2] > 0 and e_ub[3] > 0
