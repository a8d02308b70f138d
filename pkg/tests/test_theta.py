import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from heptagonal.embedding import KAPPA, SiegelPoint, ThetaChar, torsion_char
from heptagonal.theta import (
    WORKING_PAIRS,
    ThetaError,
    e,
    ellipsoid_points,
    reduce_char,
    shortest_vector,
    tail_bound,
    theta,
    theta_const,
    theta_mn,
    vanishing_scan,
)

ZERO_CHAR = ThetaChar((0,) * 6, (0,) * 6)

chars = st.tuples(
    st.lists(st.integers(-7, 20), min_size=6, max_size=6),
    st.lists(st.integers(-7, 20), min_size=6, max_size=6),
).map(lambda p: ThetaChar(tuple(Fraction(x, 14) for x in p[0]), tuple(Fraction(x, 14) for x in p[1])))


def test_ellipsoid_matches_brute_force():
    rng = np.random.default_rng(1)
    A = rng.normal(size=(3, 3))
    Q = A @ A.T + np.eye(3)
    shift = np.array([0.3, -0.2, 0.5])
    pts = ellipsoid_points(Q, shift, 6.0)
    brute = sorted(
        n for n in itertools.product(range(-6, 7), repeat=3)
        if (np.array(n) + shift) @ Q @ (np.array(n) + shift) <= 6.0
    )
    assert [tuple(p) for p in pts] == brute


def test_shortest_vector_of_scaled_identity():
    assert abs(shortest_vector(3.0 * np.eye(4)) - 3 ** 0.5) < 1e-12


def test_tail_bound_decreasing():
    vals = [tail_bound(R, 1.0) for R in (2.0, 3.0, 4.0, 6.0)]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    assert tail_bound(0.5, 1.0) == float("inf")


def test_diagonal_tau_factorizes():
    import mpmath

    q = 1.3
    tau = SiegelPoint(1j * q * np.eye(6))
    one = float(mpmath.jtheta(3, 0, mpmath.exp(-mpmath.pi * q)))
    assert abs(theta_const(tau, ZERO_CHAR).value - one ** 6) < 1e-12


def test_error_bound_reported(tau_half):
    v = theta_const(tau_half, KAPPA, tol=1e-12)
    assert 0 < v.error_bound < 1e-12
    assert v.n_terms > 0


def test_truncation_certificate(tau_half):
    for m, n in WORKING_PAIRS[:3]:
        coarse = theta_const(tau_half, torsion_char(m, n), tol=1e-10)
        fine = theta_const(tau_half, torsion_char(m, n), tol=1e-13)
        assert abs(coarse.value - fine.value) <= coarse.error_bound + fine.error_bound


@settings(max_examples=20)
@given(chars)
def test_parity(tau_half, ch):
    a = theta_const(tau_half, ch, tol=1e-11).value
    b = theta_const(tau_half, -ch, tol=1e-11).value
    assert abs(a - b) < 1e-9


@settings(max_examples=10)
@given(chars)
def test_reduction_phase(tau_half, ch):
    red, x = reduce_char(ch)
    a = theta_const(tau_half, ch, tol=1e-11).value
    b = theta_const(tau_half, red, tol=1e-11).value
    assert abs(a - e(x) * b) < 1e-9


def test_quasi_periodicity(tau_half):
    rng = np.random.default_rng(7)
    z = 0.1 * (rng.normal(size=6) + 1j * rng.normal(size=6))
    n = np.array([1, 0, -1, 0, 2, 0])
    ch = torsion_char(2, 5)
    a = np.array([float(x) for x in ch.a])
    lhs = theta(z + n, tau_half, ch).value
    rhs = np.exp(2j * np.pi * a @ n) * theta(z, tau_half, ch).value
    assert abs(lhs - rhs) < 1e-10


def test_vanishing_pattern(tau_half):
    scan = vanishing_scan(tau_half)
    assert scan.ok
    assert scan.gap >= 1e5
    assert (0, 0) in scan.zero


def test_scan_stable_under_tighter_tolerance(tau_half):
    a = vanishing_scan(tau_half, tol=1e-12)
    b = vanishing_scan(tau_half, tol=1e-13)
    assert a.nonzero == b.nonzero and a.zero == b.zero


def test_bad_tolerance():
    with pytest.raises(ThetaError):
        theta_const(SiegelPoint(1j * np.eye(6)), ZERO_CHAR, tol=0)


def test_theta_mn_uses_literal_characteristic(tau_half):
    lit = theta_mn(tau_half, 4, 2)
    red, x = reduce_char(torsion_char(4, 2))
    assert abs(lit - e(x) * theta_const(tau_half, red).value) < 1e-10
