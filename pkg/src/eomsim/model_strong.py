"""Upper-polariton / lower-polariton / phonon model.

Mode order of every matrix here: ``(X_u, Y_u, X_l, Y_l, X_b, Y_b)``.
"""

from dataclasses import dataclass, replace
import math
import warnings

import numpy as np

from .errors import (CalibrationRangeError, DegenerateParametersError,
                     FixedPointDivergenceError, InvalidParameterError)
from .units import bose_einstein_occupation

MODE_LABELS = ("u", "l", "b")

FIXED_POINT_TOL = 1e-12
FIXED_POINT_MAX_ITER = 200
FIXED_POINT_DAMPING = 0.5
CALIBRATION_TOL = 1e-10
CALIBRATION_MAX_ITER = 20
MAX_DRIVE_OVER_OMEGA_B = 1e6
GB_WARN_LEVEL = 1e-2


@dataclass(frozen=True)
class StrongParams:
    omega_x: float
    omega_c: float
    g: float
    omega_b: float
    kappa_x: float
    kappa_c: float
    kappa_b: float
    G0: float
    T: float
    Omega: float = None
    target_Gl: float = None
    omega_0: float = None  # None: midpoint rule (omega_x + omega_c)/2
    paper_approx: bool = False

    def __post_init__(self):
        if (self.Omega is None) == (self.target_Gl is None):
            raise InvalidParameterError("give exactly one of Omega and target_Gl")
        for name in ("omega_x", "omega_c", "g", "omega_b", "kappa_x", "kappa_c", "kappa_b"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise InvalidParameterError(f"{name} must be finite and > 0")
        for name in ("G0", "T", "Omega", "target_Gl"):
            v = getattr(self, name)
            if v is not None and not (math.isfinite(v) and v >= 0):
                raise InvalidParameterError(f"{name} must be finite and >= 0")
        if self.omega_0 is not None and not (math.isfinite(self.omega_0) and self.omega_0 > 0):
            raise InvalidParameterError("omega_0 must be finite and > 0")
        if self.g <= max(self.kappa_x, self.kappa_c):
            warnings.warn("g <= max(kappa_x, kappa_c): outside the strong-coupling regime",
                          RuntimeWarning, stacklevel=3)

    @property
    def drive_frequency(self):
        if self.omega_0 is None:
            return 0.5 * (self.omega_x + self.omega_c)
        return self.omega_0


@dataclass(frozen=True)
class HopfieldBasis:
    theta: float
    omega_u: float
    omega_l: float
    kappa_u: float
    kappa_l: float
    delta_kappa: float
    N_u: float
    N_l: float
    N_x: float
    N_c: float


@dataclass(frozen=True)
class StrongSteadyState:
    avg_U: complex
    avg_L: complex
    avg_b: complex
    G_u: complex
    G_l: complex
    G_ub: complex
    G_lb: complex
    G_b: float
    delta_u: float
    delta_l: float
    delta_u_eff: float
    delta_l_eff: float
    Omega: float
    iterations: int = 0


def hopfield_transform(omega_x, omega_c, g, kappa_x, kappa_c, T):
    """Polariton frequencies, mixing angle, rates and thermal occupations."""
    if not g > 0:
        raise InvalidParameterError("g must be > 0")
    split = math.hypot(omega_x - omega_c, 2.0 * g)
    theta = 0.5 * math.atan2(2.0 * g, omega_x - omega_c)
    c2, s2 = math.cos(theta) ** 2, math.sin(theta) ** 2
    kappa_u = kappa_x * c2 + kappa_c * s2
    kappa_l = kappa_x * s2 + kappa_c * c2
    N_x = bose_einstein_occupation(omega_x, T)
    N_c = bose_einstein_occupation(omega_c, T)
    noise_x, noise_c = kappa_x * (2 * N_x + 1), kappa_c * (2 * N_c + 1)
    return HopfieldBasis(
        theta=theta,
        omega_u=0.5 * (omega_x + omega_c + split),
        omega_l=0.5 * (omega_x + omega_c - split),
        kappa_u=kappa_u,
        kappa_l=kappa_l,
        delta_kappa=(kappa_c - kappa_x) * math.sin(theta) * math.cos(theta),
        N_u=0.5 * ((noise_x * c2 + noise_c * s2) / kappa_u - 1.0),
        N_l=0.5 * ((noise_x * s2 + noise_c * c2) / kappa_l - 1.0),
        N_x=N_x,
        N_c=N_c,
    )


def basis_for(p):
    return hopfield_transform(p.omega_x, p.omega_c, p.g, p.kappa_x, p.kappa_c, p.T)


def _amplitudes(basis, delta_u, delta_l, Omega, G0, beta, approx):
    # classical polariton amplitudes for a given static phonon displacement beta
    s, c = math.sin(basis.theta), math.cos(basis.theta)
    ku, kl, dk = basis.kappa_u, basis.kappa_l, basis.delta_kappa
    if approx:
        du_eff, dl_eff, Gb = delta_u, delta_l, 0.0
    else:
        du_eff = delta_u + 2.0 * G0 * beta * s * s
        dl_eff = delta_l + 2.0 * G0 * beta * c * c
        Gb = G0 * beta * math.sin(2.0 * basis.theta)
    denom = (dl_eff - 1j * kl) * (du_eff - 1j * ku) + dk**2 - Gb * (Gb - 2j * dk)
    if abs(denom) < 1e-24 * max(abs(delta_u), abs(delta_l), ku, kl) ** 2:
        raise DegenerateParametersError("vanishing steady-state denominator")
    # numerators carry the bare detunings: dl_eff - 2 G0 beta cos^2 = delta_l
    U = Omega * (dk * c - 1j * s * (delta_l - 1j * kl)) / denom
    L = Omega * (dk * s - 1j * c * (delta_u - 1j * ku)) / denom
    return U, L, du_eff, dl_eff, Gb


def _assemble(basis, p, delta_u, delta_l, Omega, U, L, beta, du_eff, dl_eff, iterations):
    s, c = math.sin(basis.theta), math.cos(basis.theta)
    G_u, G_l = 1j * p.G0 * U, 1j * p.G0 * L
    G_mix = G_u * s + G_l * c
    return StrongSteadyState(
        avg_U=complex(U), avg_L=complex(L), avg_b=complex(beta, 0.0),
        G_u=complex(G_u), G_l=complex(G_l),
        G_ub=complex(G_mix * s), G_lb=complex(G_mix * c),
        G_b=float(p.G0 * beta * math.sin(2.0 * basis.theta)),
        delta_u=delta_u, delta_l=delta_l,
        delta_u_eff=du_eff, delta_l_eff=dl_eff,
        Omega=Omega, iterations=iterations,
    )


def solve_steady_state_strong(p, Omega=None, basis=None):
    """Classical polariton and phonon amplitudes.

    Full mode iterates on the static phonon displacement with damping 0.5 from zero;
    ``p.paper_approx`` drops the mechanically mediated polariton coupling and the static
    detuning shifts, which makes the amplitudes closed form.
    """
    if Omega is None:
        Omega = p.Omega if p.Omega is not None else calibrate_drive(p, p.target_Gl)
    basis = basis or basis_for(p)
    w0 = p.drive_frequency
    delta_u, delta_l = basis.omega_u - w0, basis.omega_l - w0
    s, c = math.sin(basis.theta), math.cos(basis.theta)

    def displacement(U, L):
        return -(p.G0 / p.omega_b) * abs(U * s + L * c) ** 2

    if p.paper_approx:
        U, L, du, dl, _ = _amplitudes(basis, delta_u, delta_l, Omega, p.G0, 0.0, True)
        beta = displacement(U, L)
        return _assemble(basis, p, delta_u, delta_l, Omega, U, L, beta, du, dl, 0)

    beta = 0.0
    for it in range(1, FIXED_POINT_MAX_ITER + 1):
        U, L, du, dl, _ = _amplitudes(basis, delta_u, delta_l, Omega, p.G0, beta, False)
        target = displacement(U, L)
        step = FIXED_POINT_DAMPING * (target - beta)
        beta += step
        if abs(step) <= FIXED_POINT_TOL * max(abs(beta), 1e-300):
            break
    else:
        raise FixedPointDivergenceError(
            f"steady state did not converge in {FIXED_POINT_MAX_ITER} iterations")
    U, L, du, dl, _ = _amplitudes(basis, delta_u, delta_l, Omega, p.G0, beta, False)
    ss = _assemble(basis, p, delta_u, delta_l, Omega, U, L, beta, du, dl, it)
    if abs(ss.G_b) / p.omega_b > GB_WARN_LEVEL:
        warnings.warn(f"|G_b|/omega_b = {abs(ss.G_b) / p.omega_b:.2e}: dropping G_b from the "
                      "drift matrix is questionable", RuntimeWarning, stacklevel=2)
    return ss


def calibrate_drive(p, target_Gl):
    """Drive amplitude that yields ``|G_l| = |i G0 <L>| = target_Gl``."""
    if target_Gl is None or not target_Gl >= 0:
        raise InvalidParameterError("target_Gl must be >= 0")
    if target_Gl == 0:
        return 0.0
    if p.G0 == 0:
        raise CalibrationRangeError("G0 = 0: |G_l| is identically zero")
    basis = basis_for(p)
    approx = replace(p, Omega=1.0, target_Gl=None, paper_approx=True)
    per_unit = abs(solve_steady_state_strong(approx, 1.0, basis).G_l)
    limit = MAX_DRIVE_OVER_OMEGA_B * p.omega_b
    if per_unit == 0 or target_Gl / per_unit > limit:
        raise CalibrationRangeError(f"|G_l| = {target_Gl:.3e} rad/s is not reachable")
    Omega = target_Gl / per_unit
    if p.paper_approx:
        return Omega

    full = replace(p, Omega=1.0, target_Gl=None)

    def mismatch(W):
        return abs(solve_steady_state_strong(full, W, basis).G_l) - target_Gl

    x0, f0 = Omega, mismatch(Omega)
    x1 = Omega * (1.0 - f0 / target_Gl)
    for _ in range(CALIBRATION_MAX_ITER):
        if abs(x1 - x0) <= CALIBRATION_TOL * abs(x1):
            break
        f1 = mismatch(x1)
        if f1 == f0:
            break
        x0, x1, f0 = x1, x1 - f1 * (x1 - x0) / (f1 - f0), f1
        if not 0 < x1 <= limit:
            raise CalibrationRangeError(f"|G_l| = {target_Gl:.3e} rad/s is not reachable")
    return x1


def build_drift_strong(basis, ss, omega_b, kappa_b):
    """Drift matrix in the polariton basis, with the mechanically mediated G_b terms dropped.

    Detunings are the bare ``delta_u``, ``delta_l``; the static shifts are likewise dropped.
    """
    ku, kl, dk = basis.kappa_u, basis.kappa_l, basis.delta_kappa
    wb, kb = omega_b, kappa_b
    du, dl = ss.delta_u, ss.delta_l
    ru, iu = 2.0 * ss.G_ub.real, 2.0 * ss.G_ub.imag
    rl, il = 2.0 * ss.G_lb.real, 2.0 * ss.G_lb.imag
    return np.array([
        [-ku, du, -dk, 0.0, -ru, 0.0],
        [-du, -ku, 0.0, -dk, -iu, 0.0],
        [-dk, 0.0, -kl, dl, -rl, 0.0],
        [0.0, -dk, -dl, -kl, -il, 0.0],
        [0.0, 0.0, 0.0, 0.0, -kb, wb],
        [-iu, ru, -il, rl, -wb, -kb],
    ])


def diffusion_cross_term(theta, kappa_x, kappa_c, N_x, N_c):
    """Correlation between UP and LP input noises, finite at theta = pi/4."""
    return math.sin(theta) * math.cos(theta) * (kappa_c * (2 * N_c + 1) - kappa_x * (2 * N_x + 1))


def diffusion_cross_term_printed(basis):
    """``tan(2 theta)/2 * [kappa_l(2N_l+1) - kappa_u(2N_u+1)]``; singular at theta = pi/4."""
    return 0.5 * math.tan(2.0 * basis.theta) * (
        basis.kappa_l * (2 * basis.N_l + 1) - basis.kappa_u * (2 * basis.N_u + 1))


def build_diffusion_strong(basis, kappa_x, kappa_c, N_x, N_c, N_b, kappa_b):
    du = basis.kappa_u * (2 * basis.N_u + 1)
    dl = basis.kappa_l * (2 * basis.N_l + 1)
    D = np.diag([du, du, dl, dl, kappa_b * (2 * N_b + 1), kappa_b * (2 * N_b + 1)])
    cross = diffusion_cross_term(basis.theta, kappa_x, kappa_c, N_x, N_c)
    D[0, 2] = D[2, 0] = D[1, 3] = D[3, 1] = cross
    return D
