import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from heptagonal.monodromy import generators
from heptagonal.periods import (
    BranchTrackingError,
    LoopSpec,
    PeriodError,
    cauchy_residuals,
    continue_along,
    eval_periods,
    gauss_legendre,
    genus,
    hermitian_norm,
    numeric_monodromy,
    projective_distance,
    schwarz,
)

# Frozen from u1 = e(3/7) t^(1/7) B(4/7,4/7) 2F1(3/7,4/7;8/7;t) and
# u3 = B(2/7,4/7) 2F1(3/7,2/7;6/7;t), evaluated at 40 digits.
GOLDEN = {
    "0.5": (
        "-2.43748880340275676187252513523", "1.17383274134630171673233102696",
        "4.87497760680551352374505027047",
    ),
    "0.1": (
        "-1.72193083736901532073217853718", "0.82923818661891215285209242766",
        "4.50544902128863539916559762242",
    ),
    "0.9": (
        "-3.44540706827619532530629146096", "1.65922059554187358129528899087",
        "5.82922679000178589291134237385",
    ),
}


@pytest.mark.parametrize("t", sorted(GOLDEN))
def test_golden_periods(t):
    re1, im1, re3 = GOLDEN[t]
    with mpmath.workdps(40):
        p = eval_periods(mpmath.mpf(t), precision=30)
        assert abs(p.u1 - mpmath.mpc(re1, im1)) < mpmath.mpf(10) ** -28
        assert abs(p.u3 - mpmath.mpf(re3)) < mpmath.mpf(10) ** -28


def test_hypergeometric_oracle_complex_t():
    t = mpmath.mpc("0.3", "0.25")
    with mpmath.workdps(40):
        a = mpmath.mpf(3) / 7
        u3 = mpmath.beta(3 * a - 1, 1 - a) * mpmath.hyp2f1(a, 3 * a - 1, 2 * a, t)
        u1 = (mpmath.expjpi(2 * a) * t ** (1 - 2 * a) * mpmath.beta(1 - a, 1 - a)
              * mpmath.hyp2f1(a, 1 - a, 2 - 2 * a, t))
        p = eval_periods(t, precision=30)
        assert abs(p.u3 - u3) < mpmath.mpf(10) ** -28
        assert abs(p.u1 - u1) < mpmath.mpf(10) ** -28


@pytest.mark.parametrize("t", [0.5, 0.2, complex(0.4, 0.3), complex(0.7, -0.2)])
def test_cauchy_relations(t):
    assert max(cauchy_residuals(t, precision=25)) < 1e-20


@settings(max_examples=10)
@given(st.floats(0.05, 0.95), st.floats(-0.4, 0.4))
def test_schwarz_image_in_ball(x, y):
    p = schwarz(complex(x, y), precision=15)
    assert p.ball_norm < 0
    assert hermitian_norm(p.u) < 0


def test_gauss_legendre_exact_on_polynomials():
    x, w = gauss_legendre(8, 30)
    with mpmath.workdps(30):
        # nodes on [0, 1]
        val = sum(wi * xi ** 10 for xi, wi in zip(x, w))
        assert abs(val - mpmath.mpf(1) / 11) < mpmath.mpf(10) ** -25


@pytest.mark.parametrize("t", [0, 1, 1e-9, 1 - 1e-9, 2.0, -0.5])
def test_parameter_rejected(t):
    with pytest.raises(PeriodError):
        eval_periods(t)


def test_genus():
    assert genus(7) == 6
    assert genus(6) == 4
    with pytest.raises(ValueError):
        genus(1)


def _g1():
    return generators(7).g1.to_numpy()


def test_monodromy_around_zero():
    g = numeric_monodromy(LoopSpec(target="0"), precision=20)
    z = np.exp(2j * np.pi / 7)
    assert np.abs(g - np.diag([z, 1])).max() < 1e-13


def test_monodromy_around_one():
    g = numeric_monodromy(LoopSpec(target="1"), precision=20)
    dist, s = projective_distance(g, _g1())
    assert dist < 1e-13
    assert abs(abs(s) - 1) < 1e-13


def test_trivial_loop():
    g = numeric_monodromy(LoopSpec(target="none"), precision=20)
    assert np.abs(g - np.eye(2)).max() < 1e-13


def test_large_step_rejected():
    with pytest.raises(BranchTrackingError):
        continue_along([0.5, 0.02], precision=15)


def test_projective_distance_scalar():
    a = np.array([[1, 2j], [3, 4]])
    d, s = projective_distance(1j * a, a)
    assert d < 1e-15 and abs(s - 1j) < 1e-15
