import json
import math

import numpy as np
import pytest

import qccr


def test_normal_form_exact_and_float():
    assert qccr.normal_form("a1 c1") == "(1-q)*I + q*c1 a1"
    assert qccr.normal_form("c1 a2") == "c1 a2"
    text = qccr.normal_form("a1 c1", q=0.5)
    assert "c1 a1" in text and "0.5" in text


def test_parse_error_is_value_error():
    with pytest.raises(ValueError):
        qccr.normal_form("a1 * * c1")


def test_expectation_modes():
    assert qccr.expectation("a1 c1", [0.5]) == "1-3/4*q"
    # (1-q)|f|^2 + q|phi|^2|f|^2 at q = 0.5, phi = 0.5
    assert qccr.expectation("a1 c1", [0.5], q=0.5) == pytest.approx(0.625)


def test_fock_rep_relations():
    q = -0.4
    rep = qccr.fock_rep(2, q, 4)
    A, Adag = rep["A"], rep["Adag"]
    assert A[0].dtype == np.complex128
    np.testing.assert_allclose(Adag[1], A[1].conj().T, atol=1e-15)
    # a_i a_j^* - q a_j^* a_i = delta_ij away from the top degree
    keep = np.array(rep["grading"]) < 4
    for i in range(2):
        for j in range(2):
            lhs = A[i] @ Adag[j] - q * Adag[j] @ A[i]
            rhs = (1 - q) * (i == j) * np.eye(lhs.shape[0])
            np.testing.assert_allclose(lhs[np.ix_(keep, keep)], rhs[np.ix_(keep, keep)], atol=1e-12)


def test_single_mode_numbers():
    numeric, closed = qccr.shift_norm(-0.5, 20)
    assert closed == pytest.approx(math.sqrt(1.5))
    assert numeric == pytest.approx(closed, abs=1e-12)
    lo, hi = qccr.beta_bounds(0.5)
    assert hi == 1.0
    assert lo == pytest.approx(np.prod([1 - 0.5**k for k in range(1, 80)]), abs=1e-15)
    t = qccr.epsilon_threshold()
    assert qccr.epsilon(t) == pytest.approx(t * t, abs=1e-11)


def test_clifford_odd_rank():
    theta = qccr.coherent_theta([0.6, 0.8j])
    reps = qccr.clifford_rep(theta)
    assert reps["full"]["r"] == 3
    labels = sorted(r["label"].imag for r in reps["irreducible"])
    assert labels == pytest.approx([-1.0, 1.0])
    s = reps["full"]["s"]
    for i in range(3):
        for j in range(3):
            anti = s[i] @ s[j] + s[j] @ s[i]
            np.testing.assert_allclose(anti, 2.0 * (i == j) * np.eye(4), atol=1e-15)


def test_verify_and_acceptance():
    results = qccr.verify("wick", q=[0.5], d=2, N=4)
    assert results and all(r["passed"] for r in results)
    (c1,) = qccr.acceptance(1)
    assert c1["id"] == "C1" and c1["passed"]
    with pytest.raises(ValueError):
        qccr.verify("nope")


def test_export_is_json():
    doc = json.loads(qccr.export_fock(1, 0.5, 3))
    assert doc["schema"] == "qccr.export/1"
    assert [m["name"] for m in doc["matrices"]] == ["A1", "Adag1", "W"]


def test_errors_are_typed():
    with pytest.raises(qccr.BudgetExceeded):
        qccr.fock_rep(2, 0.5, 30)
