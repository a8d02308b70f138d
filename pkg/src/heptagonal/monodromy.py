"""Monodromy of the periods of y^n = x(x-1)(x-t) and its arithmetic.

The connection matrices h0, h1, the monodromy generators g0 = h0^2,
g1 = h1^2 and the invariant Hermitian form H = diag(1, 1 + c + 1/c) are
built exactly over Q(zeta).  For n = 7 the congruence structure of the
unitary group Gamma = U_H(Z[zeta_7]) is checked by reduction modulo
powers of (1 - zeta_7).
"""

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .cyclotomic import CycNum, reduce_mod

F7 = 7
Q_F7 = ((1, 0), (0, 3))


class CycMatrix2:
    """A 2x2 matrix over Q(zeta_d)."""

    __slots__ = ("rows", "d")

    def __init__(self, rows):
        rows = tuple(tuple(x for x in r) for r in rows)
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ValueError("need a 2x2 array")
        d = rows[0][0].d
        if any(x.d != d for r in rows for x in r):
            raise ValueError("entries must share a conductor")
        self.rows = rows
        self.d = d

    @classmethod
    def identity(cls, d):
        one, zero = CycNum.from_int(d, 1), CycNum.from_int(d, 0)
        return cls(((one, zero), (zero, one)))

    @classmethod
    def diag(cls, a, b):
        zero = CycNum.from_int(a.d, 0)
        return cls(((a, zero), (zero, b)))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other):
        a, b = self.rows, other.rows
        return CycMatrix2(
            [[a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2)] for i in range(2)]
        )

    def scale(self, s):
        return CycMatrix2([[s * x for x in r] for r in self.rows])

    def __add__(self, other):
        return CycMatrix2([[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return CycMatrix2([[x - y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def det(self):
        (a, b), (c, d) = self.rows
        return a * d - b * c

    def inverse(self):
        (a, b), (c, d) = self.rows
        inv = 1 / self.det()
        return CycMatrix2(((d * inv, -b * inv), (-c * inv, a * inv)))

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = CycMatrix2.identity(self.d)
        base = self
        while n:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    def conj_transpose(self):
        (a, b), (c, d) = self.rows
        return CycMatrix2(((a.conj(), c.conj()), (b.conj(), d.conj())))

    def is_integral(self):
        return all(x.is_integral() for r in self.rows for x in r)

    def to_numpy(self):
        return np.array([[complex(x) for x in r] for r in self.rows])

    def __eq__(self, other):
        return isinstance(other, CycMatrix2) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "CycMatrix2(%r)" % (self.rows,)


@dataclass(frozen=True)
class HermForm:
    """The diagonal Hermitian form diag(1, 1 + c + 1/c)."""

    diag2: tuple

    @property
    def matrix(self):
        return CycMatrix2.diag(*self.diag2)


@dataclass(frozen=True)
class Generators:
    n: int
    c: CycNum
    h0: CycMatrix2
    h1: CycMatrix2
    g0: CycMatrix2
    g1: CycMatrix2
    H: HermForm


def generators(n=7):
    """Connection matrices, monodromy generators and invariant form for Delta(n,n,n).

    Odd n = 2k+1 uses alpha = k/(2k+1) and c = zeta_n^k; even n = 2k uses
    alpha = (2k-1)/(4k) and c = zeta_{4k}^(2k-1).
    """
    if n < 4:
        raise ValueError("n must be at least 4")
    if n % 2:
        k = (n - 1) // 2
        d, e = n, k
    else:
        k = n // 2
        d, e = 4 * k, 2 * k - 1
    c = CycNum.zeta(d, e)
    one = CycNum.from_int(d, 1)
    zero = CycNum.from_int(d, 0)
    h0 = CycMatrix2(((-c.inverse(), zero), (zero, one)))
    cc = c * c
    h1 = CycMatrix2(
        (
            (c / (c + 1), -(cc + c + 1) / (c + 1)),
            (-1 / (cc + c), -1 / (cc + c)),
        )
    )
    H = HermForm((one, 1 + c + c.inverse()))
    return Generators(n, c, h0, h1, h0 @ h0, h1 @ h1, H)


def is_unitary(g, H):
    """Exact test of conj(g)^T H g = H."""
    Hm = H.matrix if isinstance(H, HermForm) else H
    if g.d != Hm.d:
        raise ValueError("conductor mismatch")
    return g.conj_transpose() @ Hm @ g == Hm


def hermitian_equiv_check(A=None):
    """Check S = conj(A)^T H A for Shimura's form S = diag(1, -(zeta + zeta^6))."""
    z = CycNum.zeta(7)
    s = z + z ** 6
    if A is None:
        A = CycMatrix2.diag(CycNum.from_int(7, 1), s)
    S = CycMatrix2.diag(CycNum.from_int(7, 1), -s)
    H = generators(7).H.matrix
    return A.conj_transpose() @ H @ A == S


# finite quotients ---------------------------------------------------------


def _f7_mul(a, b):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(2)) % F7 for j in range(2)) for i in range(2)
    )


def _f7_transpose(a):
    return ((a[0][0], a[1][0]), (a[0][1], a[1][1]))


F7_ONE = ((1, 0), (0, 1))
F7_MINUS_ONE = ((6, 0), (0, 6))


def _f7(m):
    return tuple(tuple(x % F7 for x in r) for r in m)


def _require_integral(g):
    if not g.is_integral():
        raise ValueError("matrix entries must lie in Z[zeta_7]")
    if g.d != 7:
        raise ValueError("congruence maps are implemented for n = 7 only")


def quotient_image(g):
    """Entry-wise reduction of g modulo (1 - zeta_7), as a matrix over F_7."""
    _require_integral(g)
    return tuple(tuple(reduce_mod(x, 1).value for x in r) for r in g.rows)


def f7_order(a):
    x, n = a, 1
    while x != F7_ONE:
        x = _f7_mul(x, a)
        n += 1
    return n


def projective_order(a):
    """Order of a in GL_2(F_7)/{+-1}."""
    x, n = a, 1
    while x not in (F7_ONE, F7_MINUS_ONE):
        x = _f7_mul(x, a)
        n += 1
    return n


def orthogonal_group(Q=Q_F7):
    """All g in GL_2(F_7) with g^T Q g = Q, by brute force."""
    out = []
    for a, b, c, d in product(range(F7), repeat=4):
        g = ((a, b), (c, d))
        if (a * d - b * c) % F7 == 0:
            continue
        if _f7_mul(_f7_mul(_f7_transpose(g), Q), g) == Q:
            out.append(g)
    return out


def generated_subgroup(gens):
    group = {F7_ONE}
    frontier = [F7_ONE]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = _f7_mul(x, s)
                if y not in group:
                    group.add(y)
                    nxt.append(y)
        frontier = nxt
    return group


# representatives of O(Q, F_7)/{+-1} listed with the proof of the quotient structure
LISTED_ORDER2 = (((-1 % 7, 0), (0, 1)), ((3, 2), (3, 4)), ((4, 2), (3, 3)))
LISTED_ORDER3 = (((3, 2), (4, 3)), ((3, 5), (3, 3)))


@dataclass
class QuotientReport:
    order: int
    element_orders: dict
    generated_by_h: bool
    h0_image: tuple
    h1_image: tuple
    listed: dict = field(default_factory=dict)
    is_s3_times_pm1: bool = False

    @property
    def ok(self):
        return (
            self.order == 12
            and self.generated_by_h
            and self.is_s3_times_pm1
            and all(v["in_group"] and v["projective_order"] == v["expected"] for v in self.listed.values())
        )


def finite_quotient_structure():
    """Structure of O(Q, F_7) and the images of h0, h1 in it."""
    group = orthogonal_group()
    gens = generators(7)
    i0, i1 = quotient_image(gens.h0), quotient_image(gens.h1)
    sub = generated_subgroup([i0, i1, F7_MINUS_ONE])
    orders = {}
    for g in group:
        orders[f7_order(g)] = orders.get(f7_order(g), 0) + 1

    listed = {}
    for rep, expected in [(r, 2) for r in LISTED_ORDER2] + [(r, 3) for r in LISTED_ORDER3]:
        listed[rep] = {
            "in_group": rep in group,
            "projective_order": projective_order(rep),
            "expected": expected,
        }
    # S_3 x {+-1}: the projective quotient has 3 involutions and 2 elements of order 3
    classes = {}
    for g in group:
        key = min(g, _f7(tuple(tuple(-x for x in r) for r in g)))
        classes[key] = projective_order(g)
    proj_orders = sorted(classes.values())
    is_s3 = (
        len(group) == 12
        and F7_MINUS_ONE in group
        and proj_orders == [1, 2, 2, 2, 3, 3]
        and all(_f7_mul(g, F7_MINUS_ONE) == _f7_mul(F7_MINUS_ONE, g) for g in group)
    )
    return QuotientReport(
        order=len(group),
        element_orders=dict(sorted(orders.items())),
        generated_by_h=sub == set(group),
        h0_image=i0,
        h1_image=i1,
        listed=listed,
        is_s3_times_pm1=is_s3,
    )


# congruence subgroups --------------------------------------------------------


def congruent_to_identity(g, k=1):
    """g = 1 mod (1 - zeta_7)^k, entry-wise."""
    _require_integral(g)
    one = CycMatrix2.identity(7)
    return all(reduce_mod(x, k).is_zero() for r in (g - one).rows for x in r)


def in_gamma(g, k=1):
    """Membership in Gamma((1 - zeta_7)^k): integral, unitary for H, and g = 1 mod (1-zeta)^k."""
    if not g.is_integral() or g.d != 7:
        return False
    if not is_unitary(g, generators(7).H):
        return False
    if not g.det().is_zero() and not (1 / g.det()).is_integral():
        return False
    return k == 0 or congruent_to_identity(g, k)


def nu(g):
    """(g - 1)/(1 - zeta_7) mod (1 - zeta_7), an F_7 matrix."""
    _require_integral(g)
    if not congruent_to_identity(g, 1):
        raise ValueError("nu is defined on Gamma(1 - zeta) only; g is not 1 mod (1 - zeta)")
    one = CycMatrix2.identity(7)
    return tuple(tuple(reduce_mod(x, 2).digits[1] for x in r) for r in (g - one).rows)


def in_gamma_klein(g):
    """g in Gamma(1 - zeta) with upper-left entry = 1 mod (1 - zeta)^2."""
    if not in_gamma(g, 1):
        raise ValueError("g is not in Gamma(1 - zeta)")
    return reduce_mod(g[0, 0] - 1, 2).is_zero()


def commutator(a, b):
    return a @ b @ a.inverse() @ b.inverse()


def projective_equal(a, b):
    """Return the scalar s with a = s b if it exists (and is a unit of modulus one), else None."""
    for i, j in product(range(2), repeat=2):
        if not b[i, j].is_zero():
            s = a[i, j] / b[i, j]
            break
    else:
        return None
    if a == b.scale(s) and s * s.conj() == 1:
        return s
    return None


def word(letters, mats):
    """Evaluate a word given as a sequence of (index, exponent) pairs."""
    out = CycMatrix2.identity(mats[0].d)
    for idx, e in letters:
        out = out @ (mats[idx] ** e)
    return out


def word_ball(mats, radius):
    """All products of at most ``radius`` letters from mats and their inverses."""
    letters = list(mats) + [m.inverse() for m in mats]
    ball = {CycMatrix2.identity(mats[0].d)}
    frontier = list(ball)
    for _ in range(radius):
        nxt = []
        for x in frontier:
            for s in letters:
                y = x @ s
                if y not in ball:
                    ball.add(y)
                    nxt.append(y)
        frontier = nxt
    return ball


def nu_formula(a, b):
    """nu(g0^a g1^b) as predicted by additivity from nu(g0), nu(g1)."""
    return _f7(((-a + 5 * b, b), (5 * b, b)))


__all__ = [
    "CycMatrix2",
    "HermForm",
    "Generators",
    "generators",
    "is_unitary",
    "hermitian_equiv_check",
    "quotient_image",
    "finite_quotient_structure",
    "orthogonal_group",
    "nu",
    "in_gamma",
    "in_gamma_klein",
    "commutator",
    "projective_equal",
    "word_ball",
]
