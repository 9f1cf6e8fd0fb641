import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

import bernq


def test_bernoulli_exact_and_float():
    assert bernq.bernoulli_coefficients(2) == [Fraction(1, 6), Fraction(-1), Fraction(1)]
    assert bernq.bernoulli(2, 0.5) == pytest.approx(-1 / 12, rel=1e-15)


def test_reference_q_identity():
    for w in (2 + 5j, -7 + 1j, 0.05):
        assert abs(bernq.reference_q(1.0, w) - bernq.reference_q(0.0, w) - w) < 1e-13 * (1 + abs(w))
    w = -3.0
    assert bernq.reference_q(0.25, w).real == pytest.approx(w * math.exp(0.25 * w) / math.expm1(w), rel=1e-14)


def test_lanczos_coefficient_example():
    c, s = bernq.lanczos_coefficients(4, 2, 2 * math.pi)
    assert s.real == pytest.approx(-0.025, rel=1e-13)


def test_acceleration_improves_scalar_error():
    w, tau = -8.0, 0.125
    exact = w * math.exp(tau * w) / math.expm1(w)
    e0 = abs(bernq.G_approx(2, 100, 0, tau, w) - exact)
    e3 = abs(bernq.G_approx(2, 100, 3, tau, w) - exact)
    assert e3 < 1e-8 and e3 < e0 / 100
    assert bernq.G_approx(4, 40, 0, 0.3, -2.0) == bernq.g_approx(4, 40, 0.3, -2.0)


def test_domain_errors_are_value_errors():
    with pytest.raises(bernq.DomainError):
        bernq.G_approx(2, 100, 1, 0.0, -1.0)
    with pytest.raises(ValueError):
        bernq.g_approx(0, 10, 0.3, 1.0)
    with pytest.raises(bernq.DomainError):
        bernq.reference_q(0.2, 2j * cmath.pi)


def test_matrix_action_matches_reference():
    grid = bernq.uniform_grid(24.0, 128)
    a = bernq.discretize_laplacian(grid)
    f = np.ones(128)
    exact = bernq.reference_solution(a, 1 / 6, f)
    approx = bernq.G_action(a, 2, 200, 4, 1 / 6, f)
    assert np.max(np.abs(approx - exact)) < 1e-10
    plan = bernq.LanczosActionPlan(a, f, 2, 200, 4)
    assert plan.solve_count == 208
    assert np.array_equal(plan.evaluate(1 / 6), approx)


def test_reference_against_numpy_eigendecomposition():
    rng = np.random.default_rng(3)
    m = rng.standard_normal((6, 6))
    m = -(m @ m.T) - np.eye(6)
    lam, vec = np.linalg.eigh(m)
    f = rng.standard_normal(6)
    q = lam * np.exp(0.4 * lam) / np.expm1(lam)
    expected = vec @ (q * (vec.T @ f))
    got = bernq.reference_solution_dense(m, 0.4, f)
    assert np.allclose(got, expected, rtol=0, atol=1e-12)


def test_arnoldi_full_dimension():
    a = bernq.discretize_laplacian(bernq.uniform_grid(3.0, 16))
    # A mirror-symmetric f would only span half the space.
    f = np.linspace(1.0, 2.0, 16)
    dec = bernq.arnoldi(a, f, 16, reorthogonalize=True)
    assert dec.steps == 16
    assert np.max(np.abs(dec.q_approx(0.3) - bernq.reference_solution(a, 0.3, f))) < 1e-10


def test_delta_table_csv():
    text = bernq.delta_table(z=[1.0], N=[512], K=2048)
    lines = text.strip().splitlines()
    assert lines[0] == "experiment,method,p,n,N,ell,tau,z,value,elapsed_s"
    value = float(lines[1].split(",")[8])
    assert abs(value - 0.5327) < 5e-3
