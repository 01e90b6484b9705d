"""Exciton / cavity-photon / phonon model in the bare basis.

Mode order of every matrix here: ``(X_x, Y_x, X_c, Y_c, X_b, Y_b)``.
The cavity is parameterized by its *effective* detuning (including the static
optomechanical shift), so the classical steady state is closed form.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import DegenerateParametersError, InvalidParameterError
from .gaussian import check_stability
from .units import bose_einstein_occupation

MODE_LABELS = ("x", "c", "b")


@dataclass(frozen=True)
class WeakParams:
    delta_x: float
    delta_c_eff: float
    omega_b: float
    kappa_x: float
    kappa_c: float
    kappa_b: float
    g: float
    G0: float
    Omega: float
    omega_0: float
    T: float
    omega_x: float = None

    def __post_init__(self):
        if self.omega_x is None:
            object.__setattr__(self, "omega_x", self.omega_0 + self.delta_x)
        for name in ("delta_x", "delta_c_eff", "omega_b", "kappa_x", "kappa_c", "kappa_b",
                     "g", "G0", "Omega", "omega_0", "T", "omega_x"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidParameterError(f"{name} must be finite")
        for name in ("omega_b", "kappa_x", "kappa_c", "kappa_b", "omega_0", "omega_x"):
            if getattr(self, name) <= 0:
                raise InvalidParameterError(f"{name} must be > 0")
        for name in ("g", "G0", "Omega", "T"):
            if getattr(self, name) < 0:
                raise InvalidParameterError(f"{name} must be >= 0")

    @property
    def omega_c(self):
        # static optomechanical shift neglected; only used for the thermal occupation
        return self.omega_0 + self.delta_c_eff


@dataclass(frozen=True)
class WeakSteadyState:
    avg_x: complex
    avg_c: complex
    avg_b: complex
    G_cb: complex
    delta_c_bare: float


def solve_steady_state_weak(p):
    denom = p.g**2 + (1j * p.delta_c_eff + p.kappa_c) * (1j * p.delta_x + p.kappa_x)
    if abs(denom) < 1e-12 * p.omega_b**2:
        raise DegenerateParametersError("vanishing steady-state denominator")
    avg_x = -1j * p.Omega * p.g / denom
    avg_c = p.Omega * (1j * p.delta_x + p.kappa_x) / denom
    avg_b = -(p.G0 / p.omega_b) * abs(avg_c) ** 2
    return WeakSteadyState(
        avg_x=complex(avg_x),
        avg_c=complex(avg_c),
        avg_b=complex(avg_b, 0.0),
        G_cb=complex(1j * p.G0 * avg_c),
        delta_c_bare=p.delta_c_eff - 2.0 * p.G0 * avg_b,
    )


def build_drift_weak(p, ss):
    """Drift matrix of the linearized fluctuation dynamics."""
    dx, dc, g = p.delta_x, p.delta_c_eff, p.g
    kx, kc, kb, wb = p.kappa_x, p.kappa_c, p.kappa_b, p.omega_b
    re, im = 2.0 * ss.G_cb.real, 2.0 * ss.G_cb.imag
    return np.array([
        [-kx, dx, 0.0, g, 0.0, 0.0],
        [-dx, -kx, -g, 0.0, 0.0, 0.0],
        [0.0, g, -kc, dc, -re, 0.0],
        [-g, 0.0, -dc, -kc, -im, 0.0],
        [0.0, 0.0, 0.0, 0.0, -kb, wb],
        [0.0, 0.0, -im, re, -wb, -kb],
    ])


def build_diffusion_weak(p):
    nx = bose_einstein_occupation(p.omega_x, p.T)
    nc = bose_einstein_occupation(p.omega_c, p.T)
    nb = bose_einstein_occupation(p.omega_b, p.T)
    d = [p.kappa_x * (2 * nx + 1), p.kappa_c * (2 * nc + 1), p.kappa_b * (2 * nb + 1)]
    return np.diag(np.repeat(d, 2))


def solve_bare_detuning(p, delta_c_bare):
    """Effective detunings consistent with a given *bare* cavity detuning.

    ``p.delta_c_eff`` is ignored. The static displacement ``beta = <b>`` solves
    ``beta = -(G0/omega_b) |<c>(delta_c_bare + 2 G0 beta)|^2``, a cubic in ``beta``
    after clearing the Lorentzian denominator.

    Returns
    -------
    (list of float, list of bool)
        Candidate effective detunings sorted by ``|<b>|`` and their stability flags.
        The first stable entry is the branch selected by :func:`select_branch`.
    """
    kx, kc, g, G0, wb = p.kappa_x, p.kappa_c, p.g, p.G0, p.omega_b
    # denominator g^2 + (i d + kc)(i dx + kx) = (r0 - dx d) + i (i0 + kx d), d = d0 + 2 G0 beta
    num = p.Omega**2 * (p.delta_x**2 + kx**2)
    r0, i0 = g**2 + kc * kx, kc * p.delta_x
    d0, s = delta_c_bare, 2.0 * G0
    re = np.polynomial.Polynomial([r0 - p.delta_x * d0, -p.delta_x * s])
    im = np.polynomial.Polynomial([i0 + kx * d0, kx * s])
    beta = np.polynomial.Polynomial([0.0, 1.0])
    cubic = beta * (re**2 + im**2) + (G0 / wb) * num
    roots = [r.real for r in cubic.roots() if abs(r.imag) <= 1e-9 * max(1.0, abs(r))]
    roots.sort(key=abs)
    detunings, stable = [], []
    for b in roots:
        d_eff = delta_c_bare + s * b
        q = WeakParams(**{**p.__dict__, "delta_c_eff": d_eff})
        detunings.append(d_eff)
        stable.append(check_stability(build_drift_weak(q, solve_steady_state_weak(q)))[1])
    return detunings, stable


def select_branch(p, delta_c_bare):
    """Pick the stable steady-state branch with smallest ``|<b>|``; also return the multiplicity."""
    detunings, stable = solve_bare_detuning(p, delta_c_bare)
    for d, ok in zip(detunings, stable):
        if ok:
            return WeakParams(**{**p.__dict__, "delta_c_eff": d}), len(detunings)
    raise DegenerateParametersError("no dynamically stable steady-state branch")
