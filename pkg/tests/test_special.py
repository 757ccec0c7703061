"""Gamma/Beta accuracy and the identity suite for the reference elliptic
function."""

import numpy as np
import pytest

from hankelbands import DomainError, beta, log_gamma, ref_elliptic
from hankelbands.special import pole_lattice_distance, sech

from oracles import gamma_modulus_half_line, gamma_modulus_one_line, ref_elliptic_sum

# frozen from oracles (mpmath, 50 digits)
LOG_SQRT_PI = 0.5723649429247001
GAMMA_ABS_1I = 0.5215640468649398      # sqrt(pi/sinh(pi))
PI_OVER_COSH_PI = 0.27101495139941834
P_AT_ZERO = 3.7081493546027438         # ref_elliptic_sum(0, 1)


def test_log_gamma_identity_points():
    assert log_gamma(1.0) == pytest.approx(0.0, abs=1e-14)
    assert log_gamma(0.5).real == pytest.approx(LOG_SQRT_PI, rel=1e-13)
    assert abs(np.exp(log_gamma(1 + 1j))) == pytest.approx(GAMMA_ABS_1I, rel=1e-12)


def test_log_gamma_modulus_identity_strip():
    # |Gamma(1/2+ix)|^2 = pi/cosh(pi x) across the strip used downstream
    for x in np.linspace(-30.0, 30.0, 61):
        lhs = np.exp(2.0 * log_gamma(0.5 + 1j * x).real)
        rhs = gamma_modulus_half_line(x)
        assert lhs == pytest.approx(rhs, rel=1e-12)


def test_log_gamma_accuracy_wide_strip():
    # relative error of exp(log_gamma) within 1e-12 against mpmath
    import mpmath as mp
    rng = np.random.default_rng(42)
    for _ in range(25):
        z = complex(rng.uniform(-50, 50), rng.uniform(-200, 200))
        if z.real <= 0 and abs(z - round(z.real)) < 0.1:
            continue
        ours = log_gamma(z)
        ref = mp.loggamma(mp.mpc(z))
        assert abs(ours - complex(ref)) <= 1e-12 * max(1.0, abs(complex(ref)))


def test_log_gamma_conjugate_symmetry():
    rng = np.random.default_rng(3)
    for _ in range(50):
        z = complex(rng.uniform(-20, 20), rng.uniform(0.3, 50))
        assert log_gamma(np.conj(z)) == pytest.approx(np.conj(log_gamma(z)), rel=1e-14)


def test_log_gamma_pole_rejected():
    for z in (0.0, -1.0, -2.0, -7.0 + 1e-13j):
        with pytest.raises(DomainError, match=r"-?\d"):
            log_gamma(z)


def test_beta_values():
    assert beta(0.5, 0.5) == pytest.approx(np.pi, rel=1e-12)
    assert beta(1.0, 1.0) == pytest.approx(1.0, rel=1e-13)
    # B(1/2-i, 1/2+i) = pi/cosh(pi)
    assert beta(0.5 - 1j, 0.5 + 1j) == pytest.approx(PI_OVER_COSH_PI, rel=1e-12)


def test_beta_large_imaginary_no_overflow():
    v = beta(0.5 - 150j, 0.5 + 150j)
    assert np.isfinite(v.real) and np.isfinite(v.imag)
    assert abs(v) == pytest.approx(gamma_modulus_half_line(150.0), rel=1e-11)


def test_beta_pole_rejected():
    with pytest.raises(DomainError):
        beta(-1.0, 0.5)
    with pytest.raises(DomainError):
        beta(0.75, -0.75)  # z1 + z2 = 0


def test_sech_stable_at_large_argument():
    assert sech(800.0) == pytest.approx(0.0, abs=1e-300)
    assert sech(-800.0 + 0.3j) == pytest.approx(0.0, abs=1e-300)


def test_ref_elliptic_value_at_zero():
    assert ref_elliptic(0.0, 1.0, 1e-12) == pytest.approx(P_AT_ZERO, rel=1e-12)
    # and against the direct extended-precision sum at a generic point
    s = 0.2 + 0.31j
    assert ref_elliptic(s, 1.0, 1e-12) == pytest.approx(ref_elliptic_sum(s, 1.0), rel=1e-11)


def test_ref_elliptic_zero_and_sign_flip():
    omega = 1.0
    assert abs(ref_elliptic((omega + 1j) / 2, omega, 1e-12)) < 1e-11
    s = 0.3
    assert ref_elliptic(s + 1j, omega, 1e-12) == pytest.approx(
        -ref_elliptic(s, omega, 1e-12), rel=1e-11)


def test_ref_elliptic_symmetries_random_points():
    rng = np.random.default_rng(11)
    omega, tol = 1.0, 1e-12
    n_checked = 0
    while n_checked < 40:
        s = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        if pole_lattice_distance(s, omega)[0] <= 0.05:
            continue
        n_checked += 1
        p = ref_elliptic(s, omega, tol)
        for other in (ref_elliptic(-s, omega, tol),
                      ref_elliptic(s + omega, omega, tol),
                      ref_elliptic(s + 2j, omega, tol),
                      -ref_elliptic(s + 1j, omega, tol)):
            assert abs(other - p) <= 10 * tol * max(1.0, abs(p))


def test_ref_elliptic_residue():
    # residue at i/2 is -i: four approach directions at eps = 1e-5
    omega = 1.0
    for direction in (1.0, -1.0, 1j, -1j):
        eps = 1e-5 * direction
        val = eps * ref_elliptic(0.5j + eps, omega, 1e-12)
        assert abs(val - (-1j)) <= 1e-4


def test_ref_elliptic_monotone_decreasing():
    omega = 1.0
    grid = np.linspace(0.01 * omega, 0.49 * omega, 200)
    vals = np.array([ref_elliptic(k, omega, 1e-12).real for k in grid])
    assert np.all(np.diff(vals) < 0.0)


def test_ref_elliptic_pole_guard():
    with pytest.raises(DomainError, match="0.5"):
        ref_elliptic(0.5j + 1e-9, 1.0, 1e-12)


def test_ref_elliptic_recentres_large_real_part():
    omega = 1.0
    assert ref_elliptic(100.3, omega, 1e-12) == pytest.approx(
        ref_elliptic(0.3, omega, 1e-12), rel=1e-11)


def test_ref_elliptic_other_dual_period():
    # window selection adapts to omega; check against the direct sum
    for omega in (0.5, 2.0):
        s = 0.1 * omega + 0.2j
        assert ref_elliptic(s, omega, 1e-12) == pytest.approx(
            ref_elliptic_sum(s, omega, 120), rel=1e-10)
