import math

import numpy as np
import pytest
from helpers import synthetic_pair
from hypothesis import given
from hypothesis import strategies as st

from switchdwell import mat2
from switchdwell.dwellflee import CASES, dwell_flee, tau_rc
from switchdwell.sampling import random_pair
from switchdwell.verify import (ScalingParams, brute_force_tau, candidate_scalings, grouping_norm,
                                scaled_transition, scaling_matrix, verify_rect)


def explicit_norm(pair, sc, t, s, order):
    Ms = scaled_transition(pair, sc, order)
    E1, E2 = mat2.expm(pair.d1.J, t), mat2.expm(pair.d2.J, s)
    if order == "12":
        X = np.linalg.inv(Ms) @ E2 @ Ms @ E1
    else:
        X = Ms @ E1 @ np.linalg.inv(Ms) @ E2
    return np.linalg.norm(X, 2)


def test_origin_norm_is_one(nn_pair):
    for order in ("12", "21"):
        assert grouping_norm(nn_pair, ScalingParams(eps1=3.0), 0.0, 0.0, order) == pytest.approx(1.0)


def test_rc_order21_ignores_lambda1(rc_pair):
    v1 = grouping_norm(rc_pair, ScalingParams(lambda1=0.3), 4.0, 1.5, "21")
    v2 = grouping_norm(rc_pair, ScalingParams(lambda1=7.0), 4.0, 1.5, "21")
    assert v1 == pytest.approx(v2, abs=1e-12)


@pytest.mark.parametrize("case", CASES)
@given(t=st.floats(0, 30), s=st.floats(0, 3), lam=st.floats(0.1, 10), eps=st.floats(-5, 5))
def test_matches_explicit_product(case, t, s, lam, eps):
    pair = random_pair(case, np.random.default_rng(ord(case[0]) * 31 + ord(case[1])))
    sc = ScalingParams(lam, 1.0 / lam, eps, -eps)
    for order in ("12", "21"):
        got = grouping_norm(pair, sc, t, s, order)
        assert got == pytest.approx(explicit_norm(pair, sc, t, s, order), rel=1e-9, abs=1e-12)


def test_grid_shape(nn_pair):
    vals = grouping_norm(nn_pair, ScalingParams(), np.linspace(0, 5, 7), np.linspace(0, 1, 3), "12")
    assert vals.shape == (7, 3)


def test_negative_times_rejected(nn_pair):
    with pytest.raises(ValueError):
        grouping_norm(nn_pair, ScalingParams(), -1.0, 0.0, "12")
    with pytest.raises(ValueError):
        scaled_transition(nn_pair, ScalingParams(), "33")


def test_scaling_matrix_per_class(nn_pair, rc_pair):
    np.testing.assert_allclose(scaling_matrix(rc_pair.d1, 2.0, 0.0), np.diag([2.0, 0.5]))
    np.testing.assert_allclose(scaling_matrix(nn_pair.d1, 2.0, 3.0), [[1.0, 3.0], [0.0, 1.0]])
    np.testing.assert_allclose(scaling_matrix(rc_pair.d2, 2.0, 3.0), np.eye(2))


def test_sweep_sizes(rc_pair, nn_pair):
    assert len(candidate_scalings(rc_pair, "12", "sweep", None)) == 64
    assert len(candidate_scalings(rc_pair, "21", "sweep", None)) == 1
    assert len(candidate_scalings(nn_pair, "12", "both", None)) == 65
    with pytest.raises(ValueError):
        candidate_scalings(nn_pair, "12", "everything", None)


def test_cc_corner():
    pair = synthetic_pair("CC", (-0.5, 1.0), (0.25, 2.0), np.eye(2))
    rep = verify_rect(pair, 0.5, 1.0)
    assert rep.passed
    assert rep.max_norm == pytest.approx(1.0, abs=1e-9)


def test_nn_prescribed_example(nn_pair):
    rep = verify_rect(nn_pair, 87.89, 10.0, scaling_policy="prescribed",
                      prescribed=ScalingParams(eps1=3.0), orders=("12",))
    assert rep.passed


def test_rc_tightness(rc_pair):
    t21 = tau_rc(rc_pair, 5.0)[1]
    assert verify_rect(rc_pair, t21, 5.0, orders=("21",)).passed
    assert not verify_rect(rc_pair, t21 - 0.5, 5.0, orders=("21",)).passed


def test_report_fields(rc_pair):
    rep = verify_rect(rc_pair, 40.0, 5.0, grid=(50, 20, 30.0))
    assert rep.grid == (50, 20, 30.0)
    assert rep.passed == (rep.max_norm <= 1 + 1e-9)
    assert 40.0 <= rep.argmax[0] <= 70.0 and 0.0 <= rep.argmax[1] <= 5.0


def test_refinement_does_not_flip(rc_pair):
    r = dwell_flee(rc_pair, 3.0)
    coarse = verify_rect(rc_pair, r.tau + 1e-6, 3.0, grid=(100, 100, None), prescribed=r.scaling)
    fine = verify_rect(rc_pair, r.tau + 1e-6, 3.0, grid=(200, 200, None), prescribed=r.scaling)
    assert coarse.passed and fine.passed


class TestBruteForce:
    def test_small_eta(self, rc_pair):
        t = np.linspace(0, 50, 2001)
        assert brute_force_tau(rc_pair, 1e-9, t_grid=t, n_s=5) <= 0.4

    def test_cc_identity(self):
        pair = synthetic_pair("CC", (-0.5, 1.0), (0.25, 2.0), np.eye(2))
        t = np.linspace(0, 10, 2001)
        assert brute_force_tau(pair, 2.0, t_grid=t) == pytest.approx(1.0, abs=t[1] - t[0])

    def test_rc_dominated(self, rc_pair):
        bf = brute_force_tau(rc_pair, 5.0, t_max=80.0, n_t=1000, n_s=50)
        assert bf <= dwell_flee(rc_pair, 5.0).tau + 80.0 / 999

    def test_monotone_in_eta(self, rc_pair):
        t = np.linspace(0, 120, 1201)
        vals = [brute_force_tau(rc_pair, e, t_grid=t, n_s=40) for e in (0.5, 1, 2, 4, 8)]
        assert vals == sorted(vals)

    def test_unreachable(self, rc_pair):
        assert brute_force_tau(rc_pair, 5.0, t_grid=np.linspace(0, 1, 11)) == math.inf
