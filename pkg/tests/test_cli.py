import json

import pytest

from eomsim.cli import main
from eomsim.report import read_csv


def write(tmp_path, doc, name="cfg.json"):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(path)


def test_steady_weak(tmp_path, capsys):
    cfg = write(tmp_path, {"command": "steady", "model": "weak"})
    assert main(["steady", "--config", cfg, "--out", str(tmp_path / "o")]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["stable"] and doc["params"]["delta_c_eff_over_omega_b"] == 0.9
    assert doc["observables"]["E_xc"] > 0
    assert (tmp_path / "o" / "steady.json").exists()


def test_steady_unstable_exits_3(tmp_path):
    cfg = write(tmp_path, {"command": "steady", "model": "weak", "delta_c_eff_over_omega_b": -0.9})
    assert main(["steady", "--config", cfg]) == 3


def test_bad_config_exits_2(tmp_path, capsys):
    cfg = write(tmp_path, {"command": "steady", "model": "weak", "kappa_c_hz": -1})
    assert main(["steady", "--config", cfg]) == 2
    assert "kappa_c_hz" in capsys.readouterr().err


def test_missing_config_exits_2(tmp_path):
    assert main(["steady", "--config", str(tmp_path / "nope.json")]) == 2


def test_command_mismatch(tmp_path):
    cfg = write(tmp_path, {"command": "steady", "model": "weak"})
    assert main(["sweep", "--config", cfg]) == 2


def test_sweep_writes_csv_and_svg(tmp_path):
    cfg = write(tmp_path, {"command": "sweep", "model": "weak", "name": "cut",
                           "axes": [{"path": "T_k", "min": 0, "max": 10, "count": 3}],
                           "observables": ["E_xc"], "plot": True})
    out = tmp_path / "res"
    assert main(["sweep", "--config", cfg, "--out", str(out)]) == 0
    spec, rows = read_csv(out / "cut.csv")
    assert len(rows) == 3 and spec.columns == ("E_xc",)
    assert (out / "cut.svg").read_text().startswith("<?xml")


def test_figure_with_overrides(tmp_path):
    out = tmp_path / "fig"
    rc = main(["figure", "--name", "fig4b", "--override", "axis0.count=5", "--override", "T_k=2",
               "--svg", "--out", str(out)])
    assert rc == 0
    spec, rows = read_csv(out / "fig4b.csv")
    assert len(rows) == 5 and spec.fixed["T_k"] == 2
    assert (out / "fig4b.svg").exists()


@pytest.mark.parametrize("args", [
    ["figure", "--name", "fig7"],
    ["figure", "--name", "fig2b", "--override", "nonsense"],
    ["figure", "--name", "fig2b", "--override", "axis0.count=1"],
])
def test_figure_errors_exit_2(args, tmp_path):
    assert main(args + ["--out", str(tmp_path)]) == 2


def test_unwritable_output_exits_4(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert main(["figure", "--name", "fig2b", "--override", "axis0.count=2", "--out", str(blocker / "sub")]) == 4


def test_validate_quick_reports_each_check(capsys):
    rc = main(["validate", "--quick"])
    lines = capsys.readouterr().out.splitlines()
    status = {l.split(":")[0][6:]: l[:4] for l in lines}
    for name in ("analytic oracles", "lyapunov vs scipy", "closed-form vs partial-transpose E_N",
                 "diffusion cross term", "omega_b normalization", "cross-model E_N(UP,LP)",
                 "preset invariants"):
        assert status[name] == "PASS"
    # Squared log-negativity is not monogamous for mixed states; the suite reports that honestly.
    assert status["preset contangle monogamy"] == "FAIL"
    assert rc == 5
