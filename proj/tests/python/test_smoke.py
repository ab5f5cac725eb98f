import math

import numpy as np
import pytest

import witnessforge as wf


def test_classify_reference_points():
    flags = wf.classify(1.0, 0.0, 1.0)
    assert flags["positive"]
    assert not flags["decomposable"]
    assert not flags["completely_positive"]
    assert not flags["completely_copositive"]

    assert wf.classify(2.0, 0.0, 0.0)["completely_positive"]
    assert wf.classify(0.0, 1.0, 1.0)["completely_copositive"]
    assert wf.classify(1.0, 2.0, 2.0)["decomposable"]
    two_sided = wf.classify(1.0, 1.0, 0.0)
    assert two_sided["positive"] and not two_sided["decomposable"]


def test_t_params_slice():
    a, b, c = wf.t_params(0.5)
    assert a == pytest.approx(1.0 / 3.0, abs=1e-15)
    assert b == pytest.approx(1.0 / 3.0, abs=1e-15)
    assert c == pytest.approx(4.0 / 3.0, abs=1e-15)


def test_choi_matrix_and_apply():
    w = wf.choi_matrix(1.0, 0.0, 1.0)
    assert w.shape == (9, 9)
    assert np.allclose(w, w.conj().T)

    e11 = np.zeros((3, 3), dtype=complex)
    e11[0, 0] = 1.0
    image = wf.apply_map(w, 3, 3, e11)
    assert np.allclose(image, np.diag([1.0, 1.0, 0.0]))

    identity_image = wf.apply_map(w, 3, 3, np.eye(3, dtype=complex))
    assert np.allclose(identity_image, 2.0 * np.eye(3))


def test_pairing_against_mixed_state():
    w = wf.choi_matrix_t(0.5)
    mixed = np.eye(9, dtype=complex) / 9.0
    assert wf.pairing(mixed, w, 3, 3) == pytest.approx(2.0 / 3.0, abs=1e-12)


def test_partial_transpose_and_eig_min():
    v = np.zeros(9, dtype=complex)
    v[0] = v[4] = v[8] = 1.0 / math.sqrt(3.0)
    p = np.outer(v, v.conj())
    assert wf.eig_min(p) == pytest.approx(0.0, abs=1e-12)
    pt = wf.partial_transpose(p, 3, 3)
    assert wf.eig_min(pt) == pytest.approx(-1.0 / 3.0, abs=1e-12)
    assert not wf.is_ppt(p, 3, 3)
    assert wf.is_ppt(np.eye(9, dtype=complex) / 9.0, 3, 3)


def test_canonical_kill_vectors():
    w = wf.choi_matrix_t(0.7)
    vectors = wf.canonical_kill_vectors(0.7)
    assert len(vectors) == 9
    for pv in vectors:
        assert abs(wf.kill_value(w, 3, 3, pv["y"], pv["x"])) < 1e-10
    assert wf.span_rank([pv["embedded"] for pv in vectors]) == 9
    assert wf.span_rank([pv["partial_conjugate"] for pv in vectors]) == 9


def test_detects_not_detected_on_mixed():
    report = wf.detects(np.eye(9, dtype=complex) / 9.0, wf.choi_matrix_t(0.5), 3, 3)
    assert report["verdict"] == "not-detected"
    assert report["state_is_ppt"]


def test_find_detected_ppt_state_deterministic():
    w = wf.choi_matrix_t(0.5)
    first = wf.find_detected_ppt_state(w, 3, 3)
    assert first["detected"]
    assert first["best_pairing"] < -1e-4
    state = first["state"]
    assert state.trace().real == pytest.approx(1.0, abs=1e-12)
    assert wf.is_ppt(state, 3, 3)

    second = wf.find_detected_ppt_state(w, 3, 3)
    assert second["best_pairing"] == first["best_pairing"]
    assert np.array_equal(second["state"], state)


def test_no_detection_for_decomposable_map():
    w = wf.choi_matrix(0.0, 1.0, 1.0)
    result = wf.find_detected_ppt_state(w, 3, 3, max_iterations=400, restarts=3)
    assert not result["detected"]


def test_certify_exposedness():
    cert = wf.certify_exposedness(0.5)
    assert cert["verdict"] == "exposed-ray-confirmed"
    assert cert["null_space_dim"] == cert["null_space_dim_doubled"]
    assert cert["ray_residual"] <= 1e-8
    assert cert["choi_residual"] <= 1e-10


def test_d_polynomial_matches_oracle():
    assert wf.d_polynomial(0.0, 1.0, 2.0, 3.0, 4.0) == pytest.approx(46.0)
    assert wf.det_oracle(0.0, 1.0, 2.0, 3.0, 4.0) == pytest.approx(46.0)
    # on the ray p=q=r with the constrained alpha the determinant vanishes
    t, p = 0.5, 1.0
    alpha = (1.0 - t) ** 2 * p
    assert abs(wf.d_polynomial(t, alpha, p, p, p)) < 1e-10


def test_decompose_on_plane():
    split = wf.decompose_on_plane(1.0 / 3.0, 1.0 / 3.0, 4.0 / 3.0)
    assert split["t"] == pytest.approx(0.5, abs=1e-12)
    assert split["weight"] == pytest.approx(1.0, abs=1e-12)
    assert split["residual"] <= 1e-12
