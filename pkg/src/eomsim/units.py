"""Physical constants, Hz <-> rad/s conversion, thermal occupation and drive strength.

Everything inside the package is angular frequency (rad/s). Configuration files
and CSV output quote linear frequencies (Hz); :func:`hz` and :func:`to_hz` are the
only conversion points.
"""

import math

from .errors import InvalidParameterError

HBAR = 1.054571817e-34  # J s
K_B = 1.380649e-23  # J / K
TWO_PI = 2.0 * math.pi

# exp(700) is close to the largest finite double
_MAX_EXPONENT = 700.0


def hz(nu):
    """Linear frequency in Hz -> angular frequency in rad/s."""
    return TWO_PI * nu


def to_hz(omega):
    return omega / TWO_PI


def bose_einstein_occupation(omega, T):
    """Mean thermal occupation ``1/(exp(hbar*omega/kB*T) - 1)`` of a bosonic mode.

    Parameters
    ----------
    omega : float
        Angular frequency in rad/s, must be positive and finite.
    T : float
        Bath temperature in kelvin.

    Returns
    -------
    float
        Zero for ``T == 0`` or when the Boltzmann exponent exceeds 700.
    """
    if not math.isfinite(omega) or omega <= 0:
        raise InvalidParameterError(f"omega must be finite and > 0, got {omega!r}")
    if not math.isfinite(T) or T < 0:
        raise InvalidParameterError(f"T must be finite and >= 0, got {T!r}")
    if T == 0:
        return 0.0
    x = HBAR * omega / (K_B * T)
    if x > _MAX_EXPONENT:
        return 0.0
    return 1.0 / math.expm1(x)


def drive_amplitude_from_power(P, kappa_c, omega_0):
    """Cavity drive amplitude ``sqrt(2 P kappa_c / (hbar omega_0))`` in rad/s."""
    if not P >= 0:
        raise InvalidParameterError(f"drive power must be >= 0, got {P!r}")
    if not kappa_c > 0 or not omega_0 > 0:
        raise InvalidParameterError("kappa_c and omega_0 must be > 0")
    return math.sqrt(2.0 * P * kappa_c / (HBAR * omega_0))


def power_from_drive_amplitude(Omega, kappa_c, omega_0):
    """Inverse of :func:`drive_amplitude_from_power`; returns watts."""
    if not Omega >= 0:
        raise InvalidParameterError(f"drive amplitude must be >= 0, got {Omega!r}")
    if not kappa_c > 0 or not omega_0 > 0:
        raise InvalidParameterError("kappa_c and omega_0 must be > 0")
    return HBAR * omega_0 * Omega**2 / (2.0 * kappa_c)
