import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from eomsim.entanglement import (entanglement_report, log_negativity, log_negativity_one_vs_two,
                                 log_negativity_pt, min_residual_contangle, partial_transpose,
                                 residual_contangles)
from eomsim.errors import InvalidStateError
from eomsim.gaussian import reduce
from eomsim.validation import random_physical_cm, tmsv


def block_diag(*blocks):
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n))
    k = 0
    for b in blocks:
        out[k:k + b.shape[0], k:k + b.shape[0]] = b
        k += b.shape[0]
    return out


def test_vacuum_is_separable():
    assert log_negativity(0.5 * np.eye(4)) == 0.0
    for m in range(3):
        assert log_negativity_one_vs_two(0.5 * np.eye(6), m) == 0.0


@pytest.mark.parametrize("r", [0.1, 0.5, 1.0])
def test_tmsv(r):
    assert log_negativity(tmsv(r)) == pytest.approx(2 * r, abs=1e-9)
    assert log_negativity_pt(tmsv(r), 1) == pytest.approx(2 * r, abs=1e-9)


def test_appended_vacuum_does_not_change_split():
    V = block_diag(tmsv(0.4), 0.5 * np.eye(2))
    assert log_negativity_one_vs_two(V, 0) == pytest.approx(0.8, abs=1e-9)
    assert log_negativity_one_vs_two(V, 1) == pytest.approx(0.8, abs=1e-9)
    assert log_negativity_one_vs_two(V, 2) == 0.0


def test_thermal_product_has_no_residual():
    V = np.diag([0.7, 0.7, 1.9, 1.9, 3.0, 3.0])
    value, genuine, raw = min_residual_contangle(V)
    assert value == 0.0 and not genuine
    assert raw == [0.0, 0.0, 0.0]


def test_unphysical_state_rejected():
    with pytest.raises(InvalidStateError):
        log_negativity(0.3 * np.eye(4))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_closed_form_matches_partial_transpose(seed):
    V = random_physical_cm(np.random.default_rng(seed), 2)
    assert log_negativity(V) == pytest.approx(log_negativity_pt(V, 0), abs=1e-10)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_swap_symmetry(seed):
    V = random_physical_cm(np.random.default_rng(seed), 2)
    swapped = reduce(V, [1, 0])
    assert log_negativity(swapped) == pytest.approx(log_negativity(V), abs=1e-10)
    assert log_negativity_pt(V, 1) == pytest.approx(log_negativity_pt(V, 0), abs=1e-10)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(0, 2 * np.pi))
def test_local_phase_rotation_invariance(seed, phi):
    V = random_physical_cm(np.random.default_rng(seed), 2)
    c, s = np.cos(phi), np.sin(phi)
    R = np.eye(4)
    R[:2, :2] = [[c, -s], [s, c]]
    assert log_negativity(R @ V @ R.T) == pytest.approx(log_negativity(V), abs=1e-10)


def test_partial_transpose_flips_momentum_only():
    V = np.arange(16.0).reshape(4, 4)
    P = partial_transpose(V, 1)
    assert P[3, 0] == -V[3, 0] and P[3, 3] == V[3, 3] and P[0, 1] == V[0, 1]


def test_report_labels_and_consistency():
    rng = np.random.default_rng(9)
    V = random_physical_cm(rng, 3, max_squeeze=0.8, max_thermal=0.2)
    rep = entanglement_report(V, ("x", "c", "b"))
    d = rep.as_dict()
    assert set(d) >= {"E_xc", "E_xb", "E_cb", "E_x_cb", "E_c_xb", "E_b_xc", "R_tau_min", "n_b"}
    assert d["E_xc"] == pytest.approx(log_negativity(reduce(V, [0, 1])))
    assert d["E_c_xb"] == pytest.approx(log_negativity_one_vs_two(V, 1))
    assert rep.raw_residuals == pytest.approx(residual_contangles(V))
    assert d["R_tau_min"] >= 0


def test_pure_three_mode_state_is_monogamous():
    # the CKW inequality for squared negativity is a theorem for pure Gaussian states
    rng = np.random.default_rng(21)
    for _ in range(20):
        V = random_physical_cm(rng, 3, max_squeeze=1.2, max_thermal=0.0)
        assert min(residual_contangles(V)) >= -1e-9
