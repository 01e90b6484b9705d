"""Single-point evaluation, grid sweeps and the figure presets."""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from itertools import product
import json
import os
import warnings

import numpy as np

from . import model_strong, model_weak
from .config import DEFAULTS, merge_params, parameter_paths, resolve_params
from .entanglement import RESIDUAL_TOL, entanglement_report
from .errors import ConfigError, NumericError
from .gaussian import (LYAPUNOV_RTOL, PHYSICALITY_TOL, check_physical, check_stability,
                       lyapunov_residual, solve_lyapunov, symplectic_eigenvalues)
from .units import bose_einstein_occupation, power_from_drive_amplitude, to_hz

OBSERVABLES = {
    "weak": ("E_xc", "E_cb", "E_xb", "E_x_cb", "E_c_xb", "E_b_xc", "R_tau_min",
             "genuine_tripartite", "n_x", "n_c", "n_b", "G_cb_hz", "Omega_hz"),
    "strong": ("E_ul", "E_lb", "E_ub", "E_u_lb", "E_l_ub", "E_b_ul", "R_tau_min",
               "genuine_tripartite", "n_u", "n_l", "n_b", "G_l_hz", "Omega_hz", "power_w",
               "theta_over_pi"),
}

DIAGNOSTICS = ("abscissa_over_omega_b", "lyapunov_residual", "min_symplectic_eigenvalue",
               "min_raw_residual", "fp_iterations", "G_b_over_omega_b",
               "monogamy_ok", "delta_c_bare_over_omega_b", "warnings")

UNITS = {
    "_hz": "Hz", "_k": "K", "_w": "W", "_over_omega_b": "omega_b", "_over_pi": "pi",
}


def unit_of(name):
    for suffix, unit in UNITS.items():
        if name.endswith(suffix):
            return unit
    if name in ("stable", "genuine_tripartite", "paper_approx"):
        return "bool"
    return "1"


@dataclass
class PointResult:
    stable: bool
    observables: dict
    diagnostics: dict
    V: np.ndarray = None
    A: np.ndarray = None
    D: np.ndarray = None


def _finish(A, D, labels, extra_obs, diagnostics):
    """Solve for the covariance in omega_b units and compute every measure.

    Raises :class:`NumericError` if any steady-state invariant fails.
    """
    abscissa, stable = check_stability(A)
    diagnostics["abscissa_over_omega_b"] = abscissa
    if not stable:
        return PointResult(False, None, diagnostics, None, A, D)
    V = solve_lyapunov(A, D, check=False)
    residual = lyapunov_residual(A, V, D)
    diagnostics["lyapunov_residual"] = residual
    if not residual < LYAPUNOV_RTOL:
        raise NumericError(f"Lyapunov residual {residual:.2e} exceeds {LYAPUNOV_RTOL:.0e}")
    check_physical(V)
    nu_min = float(symplectic_eigenvalues(V).min())
    diagnostics["min_symplectic_eigenvalue"] = nu_min
    rep = entanglement_report(V, labels)
    # squared log-negativity of a mixed state need not be monogamous: record, don't raise
    diagnostics["min_raw_residual"] = min(rep.raw_residuals)
    diagnostics["monogamy_ok"] = min(rep.raw_residuals) >= -RESIDUAL_TOL
    obs = rep.as_dict()
    obs.update(extra_obs)
    return PointResult(True, obs, diagnostics, V, A, D)


def evaluate_weak(p):
    ss = model_weak.solve_steady_state_weak(p)
    w_b = p.omega_b
    A = model_weak.build_drift_weak(p, ss) / w_b
    D = model_weak.build_diffusion_weak(p) / w_b
    extra = {"G_cb_hz": to_hz(abs(ss.G_cb)), "Omega_hz": to_hz(p.Omega)}
    diag = {"delta_c_bare_over_omega_b": ss.delta_c_bare / w_b}
    return _finish(A, D, model_weak.MODE_LABELS, extra, diag)


def evaluate_strong(p):
    basis = model_strong.basis_for(p)
    ss = model_strong.solve_steady_state_strong(p, basis=basis)
    w_b = p.omega_b
    A = model_strong.build_drift_strong(basis, ss, p.omega_b, p.kappa_b) / w_b
    N_b = bose_einstein_occupation(p.omega_b, p.T)
    D = model_strong.build_diffusion_strong(
        basis, p.kappa_x, p.kappa_c, basis.N_x, basis.N_c, N_b, p.kappa_b) / w_b
    extra = {
        "G_l_hz": to_hz(abs(ss.G_l)),
        "Omega_hz": to_hz(ss.Omega),
        "power_w": power_from_drive_amplitude(ss.Omega, p.kappa_c, p.drive_frequency),
        "theta_over_pi": basis.theta / np.pi,
    }
    diag = {"fp_iterations": ss.iterations, "G_b_over_omega_b": ss.G_b / w_b}
    return _finish(A, D, model_strong.MODE_LABELS, extra, diag)


def evaluate_point(model, doc):
    """Evaluate one parameter document (external units) of ``model``."""
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        p = resolve_params(model, doc)
        res = evaluate_weak(p) if model == "weak" else evaluate_strong(p)
    if caught:
        res.diagnostics["warnings"] = "; ".join(sorted({str(w.message) for w in caught}))
    return res


@dataclass(frozen=True)
class Axis:
    path: str
    min: float
    max: float
    count: int
    scale: str = "linear"

    def validate(self, model):
        if self.path not in parameter_paths(model):
            raise ConfigError(f"unknown parameter path {self.path!r}; valid paths: "
                              f"{', '.join(parameter_paths(model))}")
        if self.path == "paper_approx":
            raise ConfigError("paper_approx cannot be swept")
        if isinstance(self.count, bool) or not isinstance(self.count, int) or self.count < 2:
            raise ConfigError(f"axis {self.path}: count must be an integer >= 2")
        for v in (self.min, self.max):
            if isinstance(v, bool) or not isinstance(v, (int, float)) or not np.isfinite(v):
                raise ConfigError(f"axis {self.path}: min and max must be finite numbers")
        if not self.min < self.max:
            raise ConfigError(f"axis {self.path}: min must be < max")
        if self.scale not in ("linear", "log"):
            raise ConfigError(f"axis {self.path}: scale must be linear or log")
        if self.scale == "log" and self.min <= 0:
            raise ConfigError(f"axis {self.path}: log scale requires min > 0")

    def values(self):
        if self.scale == "log":
            v = np.geomspace(self.min, self.max, self.count)
        else:
            v = np.linspace(self.min, self.max, self.count)
        v[0], v[-1] = self.min, self.max
        return v


@dataclass(frozen=True)
class SweepSpec:
    model: str
    axes: tuple
    fixed: dict = field(default_factory=dict)
    observables: tuple = None
    name: str = None
    plot: tuple = ()

    def validate(self):
        if self.model not in DEFAULTS:
            raise ConfigError(f"model must be weak or strong, got {self.model!r}")
        if not 1 <= len(self.axes) <= 2:
            raise ConfigError("a sweep has one or two axes")
        for a in self.axes:
            a.validate(self.model)
        if len({a.path for a in self.axes}) != len(self.axes):
            raise ConfigError("axes must sweep distinct parameters")
        merge_params(self.model, self.fixed)
        if self.observables is not None:
            bad = set(self.observables) - set(OBSERVABLES[self.model])
            if bad:
                raise ConfigError(f"unknown observable(s) {sorted(bad)}; valid: "
                                  f"{', '.join(OBSERVABLES[self.model])}")
        return self

    @property
    def columns(self):
        return tuple(self.observables) if self.observables is not None else OBSERVABLES[self.model]

    def grid(self):
        return list(product(*(a.values() for a in self.axes)))

    def with_overrides(self, overrides):
        """Apply ``{"axis0.count": 101, "T_k": 4.0, ...}``-style overrides."""
        axes = list(self.axes)
        fixed = dict(self.fixed)
        for key, value in (overrides or {}).items():
            if key.startswith("axis"):
                head, _, attr = key.partition(".")
                try:
                    k = int(head[4:])
                    axes[k] = replace(axes[k], **{attr: value})
                except (ValueError, IndexError, TypeError):
                    raise ConfigError(f"bad axis override {key!r}; use axisN.min|max|count|scale|path") from None
            else:
                fixed[key] = value
        return replace(self, axes=tuple(axes), fixed=fixed).validate()

    def to_dict(self):
        return {
            "name": self.name,
            "model": self.model,
            "axes": [a.__dict__ for a in self.axes],
            "fixed": dict(self.fixed),
            "resolved_params": merge_params(self.model, self.fixed),
            "observables": None if self.observables is None else list(self.observables),
            "columns": list(self.columns),
            "plot": list(self.plot),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(model=d["model"], axes=tuple(Axis(**a) for a in d["axes"]),
                   fixed=dict(d.get("fixed") or {}),
                   observables=None if d.get("observables") is None else tuple(d["observables"]),
                   name=d.get("name"), plot=tuple(d.get("plot") or ())).validate()

    @classmethod
    def from_run_config(cls, cfg):
        obs = tuple(cfg.observables) if cfg.observables is not None else None
        return cls(model=cfg.model,
                   axes=tuple(Axis(a.path, a.min, a.max, a.count, a.scale) for a in cfg.axes),
                   fixed=dict(cfg.params), observables=obs, name=cfg.name).validate()


@dataclass
class SweepResult:
    spec: SweepSpec
    coords: list
    points: list

    @property
    def axis_names(self):
        return [a.path for a in self.spec.axes]

    @property
    def columns(self):
        return self.axis_names + ["stable"] + list(self.spec.columns) + list(DIAGNOSTICS)

    def rows(self):
        """One dict per grid point; observables of unstable points are ``None``."""
        out = []
        for c, pt in zip(self.coords, self.points):
            row = dict(zip(self.axis_names, (float(v) for v in c)))
            row["stable"] = pt.stable
            for name in self.spec.columns:
                row[name] = pt.observables[name] if pt.stable else None
            for name in DIAGNOSTICS:
                row[name] = pt.diagnostics.get(name)
            out.append(row)
        return out

    def column(self, name):
        return np.array([np.nan if r[name] is None else float(r[name]) for r in self.rows()])

    def shape(self):
        return tuple(a.count for a in self.spec.axes)


def _worker(args):
    return evaluate_point(*args)


def _workers(workers):
    if workers is not None:
        return max(1, int(workers))
    env = os.environ.get("EOMSIM_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ConfigError(f"EOMSIM_THREADS must be an integer, got {env!r}") from None
    return 1


def run_sweep(spec, workers=None):
    """Evaluate every grid point of ``spec`` in row-major order."""
    spec.validate()
    coords = spec.grid()
    names = [a.path for a in spec.axes]
    jobs = [(spec.model, {**spec.fixed, **dict(zip(names, map(float, c)))}) for c in coords]
    n = _workers(workers)
    if n == 1 or len(jobs) < 2:
        points = [_worker(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=n) as pool:
            points = list(pool.map(_worker, jobs, chunksize=max(1, len(jobs) // (4 * n))))
    return SweepResult(spec, coords, points)


_FIG2 = {"delta_c_eff_over_omega_b": 0.9}
_FIG3 = {"delta_c_eff_over_omega_b": 0.9, "delta_x_over_omega_b": -1.1}
_FIG5 = {"delta_u_over_omega_b": 1.0, "target_Gl_hz": 0.6e9}

PRESETS = {
    "fig2b": SweepSpec("weak", (Axis("delta_x_over_omega_b", -2.0, 0.0, 401),), _FIG2,
                       name="fig2b", plot=("E_xc", "E_cb", "E_xb", "R_tau_min")),
    "fig3a": SweepSpec("weak", (Axis("kappa_x_hz", 1e7, 1e9, 41), Axis("kappa_c_hz", 1e8, 1e10, 41)),
                       _FIG3, name="fig3a", plot=("E_xc",)),
    "fig3b": SweepSpec("weak", (Axis("T_k", 0.0, 100.0, 41), Axis("kappa_b_hz", 1e5, 1e7, 41)),
                       _FIG3, name="fig3b", plot=("E_xc",)),
    "fig4b": SweepSpec("strong", (Axis("delta_u_over_omega_b", 0.7, 2.0, 261),),
                       {"target_Gl_hz": 0.6e9}, name="fig4b",
                       plot=("E_ul", "E_lb", "E_ub", "R_tau_min")),
    "fig5a": SweepSpec("strong", (Axis("kappa_x_hz", 1e7, 1e9, 41), Axis("kappa_c_hz", 1e8, 1e10, 41)),
                       _FIG5, name="fig5a", plot=("E_ul",)),
    "fig5b": SweepSpec("strong", (Axis("T_k", 0.0, 300.0, 61), Axis("kappa_b_hz", 0.5e6, 10.5e6, 41)),
                       _FIG5, name="fig5b", plot=("E_ul",)),
}


def figure_preset(name):
    try:
        return PRESETS[name].validate()
    except KeyError:
        raise ConfigError(f"unknown figure {name!r}; choose from {', '.join(PRESETS)}") from None


def spec_json(spec):
    return json.dumps(spec.to_dict(), sort_keys=True)
