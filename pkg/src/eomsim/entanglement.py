"""Gaussian entanglement measures for two- and three-mode covariance matrices.

Natural-log logarithmic negativity and the minimum residual contangle built on
squared negativities. Covariance convention as in :mod:`eomsim.gaussian`.
"""

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import InvalidStateError
from .gaussian import _entries, check_physical, mode_occupation, reduce, symplectic_eigenvalues

RESIDUAL_TOL = 1e-9


def _negativity_from_nu(nu):
    return max(0.0, float(-np.log(2.0 * nu)))


def _checked(V, size):
    V = _entries(V)
    if V.shape != (size, size):
        raise InvalidStateError(f"expected a {size}x{size} covariance matrix, got {V.shape}")
    return check_physical(V)


def _closed_form(V4):
    A, B, C = V4[:2, :2], V4[2:, 2:], V4[:2, 2:]
    S = np.linalg.det(A) + np.linalg.det(B) - 2.0 * np.linalg.det(C)
    disc = max(S * S - 4.0 * np.linalg.det(V4), 0.0)
    nu = np.sqrt(max((S - np.sqrt(disc)) / 2.0, 0.0))
    if nu == 0.0:
        raise InvalidStateError("degenerate partially transposed spectrum")
    return _negativity_from_nu(nu)


def _pt_route(V, mode):
    return _negativity_from_nu(symplectic_eigenvalues(partial_transpose(V, mode)).min())


def log_negativity(V4):
    """Logarithmic negativity of a two-mode state in closed form.

    With ``V4 = [[A, C], [C^T, B]]`` the smallest partially transposed symplectic
    eigenvalue is ``sqrt((S - sqrt(S^2 - 4 det V4)) / 2)``, ``S = det A + det B - 2 det C``.
    """
    return _closed_form(_checked(V4, 4))


def partial_transpose(V, mode):
    """Flip the sign of the ``Y`` quadrature of ``mode`` (0-based)."""
    V = _entries(V)
    P = np.ones(V.shape[0])
    P[2 * mode + 1] = -1.0
    return V * np.outer(P, P)


def log_negativity_pt(V, mode=0):
    """Logarithmic negativity of the bipartition ``mode | rest``.

    Works for any number of modes; it is the general route and is used to cross-check
    the two-mode closed form.
    """
    return _pt_route(check_physical(V), mode)


def log_negativity_one_vs_two(V6, mode):
    """Logarithmic negativity of ``mode`` against the other two modes of a three-mode state."""
    V6 = _checked(V6, 6)
    if mode not in (0, 1, 2):
        raise IndexError(f"mode index {mode} out of range")
    return _pt_route(V6, mode)


def _residuals(V6, pairwise=None):
    pair = pairwise or {p: _closed_form(reduce(V6, p)) for p in combinations(range(3), 2)}
    out = []
    for i in range(3):
        j, k = (m for m in range(3) if m != i)
        one_vs_two = _pt_route(V6, i) ** 2
        out.append(one_vs_two - pair[tuple(sorted((i, j)))] ** 2 - pair[tuple(sorted((i, k)))] ** 2)
    return [float(r) for r in out]


def residual_contangles(V6):
    """Raw residuals ``C_{i|jk} - C_{i|j} - C_{i|k}`` for i = 0, 1, 2 (unclamped)."""
    return _residuals(_checked(V6, 6))


def min_residual_contangle(V6, tol=RESIDUAL_TOL):
    """Minimum residual contangle and whether all three residuals are strictly positive.

    Residuals within ``-tol`` of zero are rounded up to zero.

    Returns
    -------
    (float, bool, list)
        ``R_tau_min``, the genuine-tripartite flag and the raw residuals.
    """
    return _clamp(residual_contangles(V6), tol)


def _clamp(raw, tol=RESIDUAL_TOL):
    clamped = [0.0 if -tol <= r < 0 else r for r in raw]
    genuine = all(r > 0 for r in clamped)
    return max(0.0, min(clamped)), genuine, raw


@dataclass
class EntanglementReport:
    labels: tuple
    pairwise: dict = field(default_factory=dict)
    one_vs_two: dict = field(default_factory=dict)
    R_tau_min: float = 0.0
    genuine_tripartite: bool = False
    raw_residuals: list = field(default_factory=list)
    occupations: dict = field(default_factory=dict)
    stable: bool = True

    def as_dict(self):
        d = {f"E_{a}{b}": v for (a, b), v in self.pairwise.items()}
        for m, v in self.one_vs_two.items():
            rest = "".join(x for x in self.labels if x != m)
            d[f"E_{m}_{rest}"] = v
        d["R_tau_min"] = self.R_tau_min
        d["genuine_tripartite"] = self.genuine_tripartite
        for m, n in self.occupations.items():
            d[f"n_{m}"] = n
        return d


def entanglement_report(V6, labels=("1", "2", "3")):
    """All pairwise, one-vs-two and tripartite measures of a three-mode state."""
    V6 = _checked(V6, 6)
    labels = tuple(labels)
    rep = EntanglementReport(labels=labels)
    pair = {p: _closed_form(reduce(V6, p)) for p in combinations(range(3), 2)}
    for (i, j), e in pair.items():
        rep.pairwise[(labels[i], labels[j])] = e
    for i in range(3):
        rep.one_vs_two[labels[i]] = _pt_route(V6, i)
    rep.R_tau_min, rep.genuine_tripartite, rep.raw_residuals = _clamp(_residuals(V6, pair))
    rep.occupations = {labels[i]: mode_occupation(V6, i) for i in range(3)}
    return rep
