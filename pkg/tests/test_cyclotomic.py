from fractions import Fraction
from math import cos, pi

import pytest
from hypothesis import given, strategies as st

from heptagonal.cyclotomic import CycNum, Residue, cyc_embed, cyc_make, degree, reduce_mod

ints = st.integers(-5, 5)


def cyc7(draw_coeffs):
    return CycNum.from_monomials(7, dict(enumerate(draw_coeffs)))


elements = st.lists(ints, min_size=7, max_size=7).map(cyc7)
nonzero = elements.filter(lambda x: not x.is_zero())


def test_zeta_power_d_is_one():
    assert cyc_make(7, {7: 1}) == 1


def test_cyclotomic_relation():
    assert cyc_make(7, {k: 1 for k in range(7)}).is_zero()


def test_inverse_of_one_plus_zeta_cubed():
    z = CycNum.zeta(7)
    assert 1 / (1 + z ** 3) == -(z + z ** 2 + z ** 3)


def test_conductor_zero_rejected():
    with pytest.raises(ValueError):
        cyc_make(0, {0: 1})


def test_conductor_mismatch():
    with pytest.raises(ValueError):
        CycNum.zeta(7) + CycNum.zeta(5)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        CycNum.zeta(7) / CycNum.from_int(7, 0)


def test_conj_of_zeta():
    assert CycNum.zeta(7).conj() == CycNum.zeta(7, 6)


def test_one_minus_zeta12_is_unit():
    inv = 1 / (1 - CycNum.zeta(12))
    assert inv.is_integral()
    assert inv == CycNum.zeta(12, 2) + CycNum.zeta(12, 3)


def test_embedding_values():
    z = CycNum.zeta(7)
    assert abs(complex(1 + z ** 3 + z ** 4) - (1 + 2 * cos(6 * pi / 7))) < 1e-14
    assert abs(complex(1 + z ** 3 + z ** 4) - (-0.8019377358)) < 1e-10
    assert abs(complex(z + z ** 6) - 1.2469796037) < 1e-10
    z5 = CycNum.zeta(5)
    assert abs(complex(1 + z5 ** 2 + z5 ** 3) - (-0.6180339887)) < 1e-10
    assert complex(CycNum.from_int(7, 1)) == 1


def test_embed_precision_guard():
    with pytest.raises(ValueError):
        cyc_embed(CycNum.zeta(7), 10)


def test_embed_high_precision():
    import mpmath

    with mpmath.workdps(60):
        ref = 2 * mpmath.cos(2 * mpmath.pi / 7)
        assert abs(cyc_embed(CycNum.zeta(7) + CycNum.zeta(7, 6), 50) - ref) < mpmath.mpf(10) ** -50


def test_norm_and_trace():
    z = CycNum.zeta(7)
    assert (1 - z).norm() == 7
    assert z.trace() == -1
    assert CycNum.from_int(7, 1).trace() == 6
    assert degree(7) == 6 and degree(12) == 4


def test_reduce_mod_examples():
    z = CycNum.zeta(7)
    assert reduce_mod(z, 1).value == 1
    assert reduce_mod((1 - z) ** 2, 2).is_zero()
    assert reduce_mod(1 - z, 2).digits == (0, 1)
    assert reduce_mod(CycNum.from_int(7, 7), 6).is_zero()


def test_reduce_mod_rejects_nonintegral():
    with pytest.raises(ValueError):
        reduce_mod(CycNum.from_monomials(7, {0: Fraction(1, 2)}))


def test_h1_mod_one_minus_zeta():
    from heptagonal.monodromy import generators

    h1 = generators(7).h1
    img = tuple(tuple(reduce_mod(x, 1).value for x in r) for r in h1.rows)
    assert img == ((4, 2), (3, 3))


@given(elements, elements, elements)
def test_ring_axioms(x, y, w):
    assert (x + y) + w == x + (y + w)
    assert (x * y) * w == x * (y * w)
    assert x * (y + w) == x * y + x * w
    assert x * y == y * x


@given(nonzero)
def test_inverse(x):
    assert x * x.inverse() == 1


@given(elements)
def test_conj_involution_and_embedding(x):
    assert x.conj().conj() == x
    assert abs(complex(x.conj()) - complex(x).conjugate()) < 1e-9


@given(elements, elements, st.integers(1, 6))
def test_reduce_mod_is_ring_hom(x, y, k):
    assert reduce_mod(x + y, k) == reduce_mod(x, k) + reduce_mod(y, k)
    assert reduce_mod(x * y, k) == reduce_mod(x, k) * reduce_mod(y, k)


@given(st.integers(1, 6))
def test_residue_validation(k):
    with pytest.raises(ValueError):
        Residue(k, (0,) * (k + 1))
