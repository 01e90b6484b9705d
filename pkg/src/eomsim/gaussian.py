"""Steady-state Gaussian machinery.

Covariance convention: ``V_ij = <u_i u_j + u_j u_i>/2`` with ``X = (a + a^dag)/sqrt(2)``,
so the vacuum is ``I/2``. Quadratures are ordered ``(X_1, Y_1, X_2, Y_2, ...)``.
"""

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import InvalidStateError, InvalidTransformError, NumericError, StabilityError

STABILITY_THRESHOLD = -1e-12
LYAPUNOV_RTOL = 1e-10
SYMMETRY_TOL = 1e-12
PHYSICALITY_TOL = 1e-9


def _entries(V):
    return np.asarray(getattr(V, "entries", V), dtype=float)


@dataclass(frozen=True)
class CovarianceMatrix:
    entries: np.ndarray
    mode_labels: tuple = field(default=("1", "2", "3"))

    def __post_init__(self):
        arr = np.array(self.entries, dtype=float)
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] % 2:
            raise InvalidStateError(f"covariance matrix must be 2n x 2n, got {arr.shape}")
        if len(self.mode_labels) != arr.shape[0] // 2:
            raise InvalidStateError("one label per mode required")

    @property
    def n_modes(self):
        return self.entries.shape[0] // 2

    def check(self, tol=PHYSICALITY_TOL):
        """Raise :class:`InvalidStateError` unless symmetric, positive definite and physical."""
        check_physical(self.entries, tol)
        return self

    def occupation(self, mode):
        return mode_occupation(self, mode)

    def reduce(self, modes):
        idx = list(modes)
        return CovarianceMatrix(reduce(self, idx), tuple(self.mode_labels[k] for k in idx))


def check_stability(A):
    """Spectral abscissa of ``A`` and whether it lies below the stability threshold.

    Returns
    -------
    (float, bool)
        ``max Re(eig(A))`` and ``abscissa < -1e-12``.
    """
    A = np.asarray(A, dtype=float)
    if not np.all(np.isfinite(A)):
        raise NumericError("drift matrix has non-finite entries")
    try:
        eigs = np.linalg.eigvals(A)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigenvalue computation failed: {exc}") from exc
    abscissa = float(np.max(eigs.real))
    return abscissa, abscissa < STABILITY_THRESHOLD


@lru_cache(maxsize=8)
def _symmetric_index(n):
    # One equation per (i <= j) of A V + V A^T = -D, unknowns V_kl with k <= l;
    # entry (row, col) of the system receives A[src_i, src_k].
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    index = {p: k for k, p in enumerate(pairs)}
    rows, cols, src_i, src_k = [], [], [], []
    for row, (i, j) in enumerate(pairs):
        for k in range(n):
            rows += [row, row]
            cols += [index[(min(k, j), max(k, j))], index[(min(i, k), max(i, k))]]
            src_i += [i, j]
            src_k += [k, k]
    return pairs, tuple(np.array(v) for v in (rows, cols, src_i, src_k))


def _symmetric_lyapunov_system(A):
    n = A.shape[0]
    pairs, (rows, cols, src_i, src_k) = _symmetric_index(n)
    M = np.zeros((len(pairs), len(pairs)))
    np.add.at(M, (rows, cols), A[src_i, src_k])
    return pairs, M


def solve_lyapunov(A, D, check=True):
    """Solve ``A V + V A^T = -D`` for the symmetric steady-state covariance ``V``.

    The symmetric unknowns are vectorized into a dense ``n(n+1)/2`` square system,
    which for six quadratures is 21 x 21.
    """
    A = np.asarray(A, dtype=float)
    D = np.asarray(D, dtype=float)
    if A.shape != D.shape or A.shape[0] != A.shape[1]:
        raise NumericError(f"shape mismatch: A {A.shape}, D {D.shape}")
    if not np.allclose(D, D.T, rtol=0, atol=SYMMETRY_TOL * max(1.0, np.abs(D).max())):
        raise NumericError("diffusion matrix is not symmetric")
    if check:
        abscissa, stable = check_stability(A)
        if not stable:
            raise StabilityError(f"drift matrix is not Hurwitz (spectral abscissa {abscissa:.3e})")

    pairs, M = _symmetric_lyapunov_system(A)
    iu = tuple(np.array(v) for v in zip(*pairs))
    rhs = -D[iu]
    try:
        sol = np.linalg.solve(M, rhs)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"singular Lyapunov system: {exc}") from exc
    V = np.zeros_like(A)
    V[iu] = sol
    V = V + np.triu(V, 1).T
    return 0.5 * (V + V.T)


def lyapunov_residual(A, V, D):
    """Relative residual ``||A V + V A^T + D||_F / ||D||_F``."""
    A, V, D = (np.asarray(m, dtype=float) for m in (A, V, D))
    r = np.linalg.norm(A @ V + V @ A.T + D)
    scale = np.linalg.norm(D)
    return float(r / scale) if scale > 0 else float(r)


def symplectic_form(n_modes):
    return np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def symplectic_eigenvalues(V, rtol=1e-8):
    """Symplectic spectrum of ``V`` (ascending), from the moduli of ``eig(i Omega V)``.

    The moduli come in equal pairs; one member of each pair is kept.
    """
    V = _entries(V)
    n = V.shape[0] // 2
    mods = np.sort(np.abs(np.linalg.eigvals(1j * symplectic_form(n) @ V)))
    nus = mods[0::2]
    partners = mods[1::2]
    if not np.allclose(nus, partners, rtol=rtol, atol=rtol * max(1.0, mods[-1])):
        raise NumericError("symplectic eigenvalue moduli did not pair up")
    return 0.5 * (nus + partners)


def check_physical(V, tol=PHYSICALITY_TOL):
    V = _entries(V)
    scale = max(1.0, np.abs(V).max())
    if not np.allclose(V, V.T, rtol=0, atol=SYMMETRY_TOL * scale):
        raise InvalidStateError("covariance matrix is not symmetric")
    if np.linalg.eigvalsh(0.5 * (V + V.T)).min() <= 0:
        raise InvalidStateError("covariance matrix is not positive definite")
    nu_min = symplectic_eigenvalues(V).min()
    if nu_min < 0.5 - tol:
        raise InvalidStateError(f"uncertainty relation violated: smallest symplectic eigenvalue {nu_min:.3e}")
    return V


def mode_occupation(V, mode):
    """Mean excitation number ``(V_XX + V_YY)/2 - 1/2`` of mode ``mode`` (0-based)."""
    V = _entries(V)
    if not 0 <= mode < V.shape[0] // 2:
        raise IndexError(f"mode index {mode} out of range")
    n = 0.5 * (V[2 * mode, 2 * mode] + V[2 * mode + 1, 2 * mode + 1]) - 0.5
    return max(n, 0.0)


def reduce(V, modes):
    """Marginal covariance matrix of ``modes`` (0-based indices, order preserved)."""
    V = _entries(V)
    modes = list(modes)
    if not modes:
        raise ValueError("need at least one mode")
    idx = [q for m in modes for q in (2 * m, 2 * m + 1)]
    return V[np.ix_(idx, idx)].copy()


def rotate_basis(R, *mats):
    """Return ``R M R^T`` for every matrix given; ``R`` must be orthogonal."""
    R = np.asarray(R, dtype=float)
    if not np.allclose(R @ R.T, np.eye(R.shape[0]), rtol=0, atol=1e-12):
        raise InvalidTransformError("basis transformation is not orthogonal")
    out = tuple(R @ _entries(M) @ R.T for M in mats)
    return out[0] if len(out) == 1 else out


def hopfield_rotation(theta):
    """Quadrature lift of ``U = x cos + c sin, L = -x sin + c cos`` acting on (x, c, b)."""
    c, s = np.cos(theta), np.sin(theta)
    I2 = np.eye(2)
    R = np.eye(6)
    R[0:2, 0:2] = c * I2
    R[0:2, 2:4] = s * I2
    R[2:4, 0:2] = -s * I2
    R[2:4, 2:4] = c * I2
    return R
