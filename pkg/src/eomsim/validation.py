"""Invariant and oracle checks behind ``eomsim validate``.

Each check returns ``(name, passed, detail)``; :func:`run_validation` collects them.
"""

import math

import numpy as np
from scipy.linalg import solve_continuous_lyapunov

from . import model_strong, model_weak
from .config import resolve_params
from .entanglement import log_negativity, log_negativity_pt
from .errors import EomsimError
from .gaussian import hopfield_rotation, reduce, rotate_basis, solve_lyapunov
from .sweeps import PRESETS, evaluate_point, run_sweep

CROSS_MODEL_TOL = 0.02


def tmsv(r):
    """Covariance matrix of a two-mode squeezed vacuum with squeezing ``r``."""
    a, c = 0.5 * math.cosh(2 * r), 0.5 * math.sinh(2 * r)
    V = np.zeros((4, 4))
    V[:2, :2] = V[2:, 2:] = a * np.eye(2)
    V[:2, 2:] = V[2:, :2] = c * np.diag([1.0, -1.0])
    return V


def random_physical_cm(rng, n_modes=2, max_squeeze=1.0, max_thermal=2.0):
    """Random Gaussian covariance matrix ``S diag(nu) S^T`` with a random symplectic ``S``."""
    from scipy.linalg import expm

    n = 2 * n_modes
    J = np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))
    H = rng.normal(size=(n, n))
    H = 0.5 * (H + H.T) * max_squeeze / np.sqrt(n)
    S = expm(J @ H)
    nus = 0.5 + rng.uniform(0, max_thermal, size=n_modes)
    V = S @ np.diag(np.repeat(nus, 2)) @ S.T
    return 0.5 * (V + V.T)


def bare_counterpart(p, Omega):
    """Bare-basis parameters describing the same device as strong-model parameters ``p``.

    The cavity's effective detuning is set to its bare value, matching the polariton
    drift matrix, which also ignores the static optomechanical shift.
    """
    w0 = p.drive_frequency
    return model_weak.WeakParams(
        delta_x=p.omega_x - w0, delta_c_eff=p.omega_c - w0, omega_b=p.omega_b,
        kappa_x=p.kappa_x, kappa_c=p.kappa_c, kappa_b=p.kappa_b, g=p.g, G0=p.G0,
        Omega=Omega, omega_0=w0, T=p.T, omega_x=p.omega_x)


def cross_model_point(doc):
    """``(E_N strong, E_N rotated bare, max |R D R^T - D'|)`` in omega_b units."""
    p = resolve_params("strong", doc)
    res = evaluate_point("strong", doc)
    basis = model_strong.basis_for(p)
    q = bare_counterpart(p, res.observables["Omega_hz"] * 2 * math.pi)
    ss = model_weak.solve_steady_state_weak(q)
    A = model_weak.build_drift_weak(q, ss) / p.omega_b
    D = model_weak.build_diffusion_weak(q) / p.omega_b
    V = solve_lyapunov(A, D)
    R = hopfield_rotation(basis.theta)
    V_rot, D_rot = rotate_basis(R, V, D)
    e_rot = log_negativity(reduce(V_rot, (0, 1)))
    return res.observables["E_ul"], e_rot, float(np.abs(D_rot - res.D).max())


def check_analytic():
    worst = 0.0
    for r in (0.1, 0.5, 1.0):
        worst = max(worst, abs(log_negativity(tmsv(r)) - 2 * r))
    vac = log_negativity(0.5 * np.eye(4))
    N = 0.7
    V = solve_lyapunov(-0.3 * np.eye(2), 0.3 * (2 * N + 1) * np.eye(2))
    th = np.abs(V - (N + 0.5) * np.eye(2)).max()
    ok = worst < 1e-9 and vac == 0 and th < 1e-12
    return "analytic oracles", ok, f"TMSV err {worst:.1e}, vacuum {vac}, thermal err {th:.1e}"


def check_lyapunov_vs_scipy(n=20, seed=7):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        M = rng.normal(size=(6, 6))
        A = M - (np.max(np.linalg.eigvals(M).real) + 0.5) * np.eye(6)
        B = rng.normal(size=(6, 6))
        D = B @ B.T
        V = solve_lyapunov(A, D)
        ref = solve_continuous_lyapunov(A, -D)
        worst = max(worst, np.abs(V - ref).max() / np.abs(ref).max())
    return "lyapunov vs scipy", worst < 1e-9, f"max rel diff {worst:.1e}"


def check_negativity_routes(n=50, seed=11):
    rng = np.random.default_rng(seed)
    worst = max(abs(log_negativity(V) - log_negativity_pt(V))
                for V in (random_physical_cm(rng) for _ in range(n)))
    return "closed-form vs partial-transpose E_N", worst < 1e-10, f"max diff {worst:.1e}"


def check_diffusion_forms():
    errs = []
    for T in (0.0, 1.0, 300.0):
        # theta = pi/3 sample: omega_x - omega_c = 2 g / tan(2 pi/3)
        g = 2 * math.pi * 13e9
        w_x = 2 * math.pi * 345e12
        w_c = w_x - 2 * g / math.tan(2 * math.pi / 3)
        basis = model_strong.hopfield_transform(w_x, w_c, g, 2 * math.pi * 0.1e9, 2 * math.pi * 1e9, T)
        closed = model_strong.diffusion_cross_term(basis.theta, 2 * math.pi * 0.1e9, 2 * math.pi * 1e9,
                                                   basis.N_x, basis.N_c)
        printed = model_strong.diffusion_cross_term_printed(basis)
        errs.append(abs(closed - printed) / abs(closed))
    _, _, d_err = cross_model_point({"delta_u_over_omega_b": 1.0})
    ok = max(errs) < 1e-12 and d_err < 1e-12
    return "diffusion cross term", ok, f"printed-form rel err {max(errs):.1e}, |RDR^T - D'| {d_err:.1e}"


def check_cross_model(count=None):
    spec = PRESETS["fig4b"]
    values = spec.axes[0].values() if count is None else np.linspace(spec.axes[0].min, spec.axes[0].max, count)
    worst = 0.0
    for v in values:
        e_s, e_w, _ = cross_model_point({**spec.fixed, "delta_u_over_omega_b": float(v)})
        worst = max(worst, abs(e_s - e_w))
    return "cross-model E_N(UP,LP)", worst <= CROSS_MODEL_TOL, f"max |diff| {worst:.2e} over {len(values)} points"


def check_normalization():
    p = resolve_params("weak", {})
    ss = model_weak.solve_steady_state_weak(p)
    A, D = model_weak.build_drift_weak(p, ss), model_weak.build_diffusion_weak(p)
    V1 = solve_lyapunov(A / p.omega_b, D / p.omega_b)
    V2 = solve_lyapunov(A, D)
    e1, e2 = log_negativity(reduce(V1, (0, 1))), log_negativity(reduce(V2, (0, 1)))
    err = np.abs(V1 - V2).max()
    return "omega_b normalization", err < 1e-8 and abs(e1 - e2) < 1e-8, f"max |dV| {err:.1e}"


def check_presets(names=None, shrink=None):
    """Run presets; every point asserts Lyapunov residual and physicality inside ``run_sweep``.

    Returns two check tuples: numerical invariants, and contangle monogamy.
    """
    names = names or list(PRESETS)
    n_points = n_unstable = 0
    violations = {}
    for name in names:
        spec = PRESETS[name]
        if shrink:
            spec = spec.with_overrides({f"axis{k}.count": min(a.count, shrink) for k, a in enumerate(spec.axes)})
        res = run_sweep(spec)
        for pt in res.points:
            n_points += 1
            if not pt.stable:
                n_unstable += 1
                if pt.observables is not None:
                    return [("preset invariants", False, f"{name}: unstable point carries observables")]
            elif not pt.diagnostics["monogamy_ok"]:
                worst = violations.get(name, (0, 0.0))
                violations[name] = (worst[0] + 1, min(worst[1], pt.diagnostics["min_raw_residual"]))
    detail = ", ".join(f"{k}: {n} points, min {r:.2e}" for k, (n, r) in violations.items())
    return [
        ("preset invariants", True, f"{n_points} points, {n_unstable} flagged unstable"),
        ("preset contangle monogamy", not violations, detail or "all residuals >= -1e-9"),
    ]


def run_validation(quick=False):
    """Run every check; ``quick`` thins the grids for a fast smoke run."""
    checks = [
        ("analytic oracles", check_analytic),
        ("lyapunov vs scipy", check_lyapunov_vs_scipy),
        ("closed-form vs partial-transpose E_N", check_negativity_routes),
        ("diffusion cross term", check_diffusion_forms),
        ("omega_b normalization", check_normalization),
        ("cross-model E_N(UP,LP)", lambda: check_cross_model(27 if quick else None)),
        ("preset invariants", lambda: check_presets(shrink=9 if quick else None)),
    ]
    results = []
    for name, check in checks:
        try:
            out = check()
        except EomsimError as exc:
            out = (name, False, f"{type(exc).__name__}: {exc}")
        for n, ok, detail in out if isinstance(out, list) else [out]:
            results.append((n, bool(ok), detail))
    return results
