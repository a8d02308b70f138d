"""The modular embedding Phi of the period disk into Siegel space H_6^M.

Also the Sp_12(Z) action on H_6, its affine action on theta
characteristics and the rational phase lambda_{a,b}(g) in the theta
transformation formula.

Symplectic matrices are plain 12x12 integer numpy arrays in block form
[[A, B], [C, D]].  Characteristics are kept as literal rational vectors:
the phase lambda depends on the representative, not only on its class
mod 1.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_decomp

from .cyclotomic import CycNum
from .homology import M, integer_inverse
from .periods import PeriodPair


class EmbeddingError(ValueError):
    pass


def _z(*terms):
    return CycNum.from_monomials(7, dict(terms))


Z = CycNum.zeta(7)
ONE = CycNum.from_int(7, 1)
# a = (1 + sqrt(-7))/2
CONST_A = 1 + Z + Z ** 2 + Z ** 4
CONST_B1 = Z - 2 * Z ** 2 - 2 * Z ** 4
CONST_B2 = -(2 * Z ** 3 + 1 - Z ** 6 + 2 * Z ** 5)


def _cmat(rows, scale=ONE):
    return np.array([[complex(scale * x) for x in r] for r in rows])


def _blocks():
    z, a, b1, b2 = Z, CONST_A, CONST_B1, CONST_B2
    A11 = _cmat(
        [[a, 0 * z, -ONE], [0 * z, a - 1, -a], [-ONE, -a, ONE]],
        (z ** 2 + z + 1) * (2 * z ** 2 - z + 2),
    )
    D11 = _cmat(
        [
            [2 * z ** 6 + z ** 5 - z ** 3 - 1, 2 * z ** 6 - z ** 3, -z ** 3],
            [2 * z ** 6 - z ** 3, z ** 2 - z ** 3, z ** 6 - a],
            [-z ** 3, z ** 6 - a, a],
        ],
        z ** 2 + 1,
    )
    z5 = z ** 5
    w = 1 + z ** 6
    B12 = _cmat(
        [[-b1, -b2, -ONE], [z5 * b1, z5 * b2, z5], [w * b1, w * b2, w]],
        z ** 3 - z ** 5,
    )
    A22 = _cmat(
        [
            [z * (z ** 5 - z ** 2 - 1), z - 1, z ** 3 + 1],
            [z - 1, z ** 5 - z ** 2 + 1, z ** 2],
            [z ** 3 + 1, z ** 2, -(z ** 2) * (z + 1)],
        ],
        CycNum.from_int(7, -3),
    )
    D22 = _cmat(
        [[3 * a - 2, a - 1, a], [a - 1, 2 * a - 1, -2 * ONE], [a, -2 * ONE, a + 1]],
        z + 1,
    )
    O = np.zeros((3, 3))
    quad11 = np.block([[A11, O], [O, D11]])
    mixed = np.block([[O, B12], [B12.T, O]])
    quad22 = np.block([[A22, O], [O, D22]])
    d1 = complex((z ** 2 + z + 1) * (2 * z ** 2 - z + 2))
    d2 = complex(3 * (z + 1))
    return quad11, mixed, quad22, d1, d2


_QUAD11, _MIXED, _QUAD22, _DELTA1, _DELTA2 = _blocks()
_H22 = complex(1 + Z ** 3 + Z ** 4).real


@dataclass(frozen=True, eq=False)
class SiegelPoint:
    """A point of H_6: symmetric with positive definite imaginary part."""

    tau: np.ndarray
    sym_tol: float = 1e-10
    pd_tol: float = 1e-10

    def __post_init__(self):
        t = np.asarray(self.tau, dtype=complex)
        if t.shape != (6, 6):
            raise EmbeddingError("tau must be 6x6")
        scale = max(1.0, float(np.abs(t).max()))
        if np.abs(t - t.T).max() > self.sym_tol * scale:
            raise EmbeddingError("tau is not symmetric")
        y = (t.imag + t.imag.T) / 2
        ev = np.linalg.eigvalsh(y)
        if ev.min() <= self.pd_tol * np.abs(ev).max():
            raise EmbeddingError("Im tau is not positive definite (min eigenvalue %.3g)" % ev.min())
        object.__setattr__(self, "tau", (t + t.T) / 2)

    @property
    def imag(self):
        return self.tau.imag

    def distance(self, other):
        return float(np.abs(self.tau - other.tau).max())


def _pair(u):
    if isinstance(u, PeriodPair):
        return u.as_complex()
    u1, u3 = u
    return complex(u1), complex(u3)


def ball_norm(u):
    u1, u3 = _pair(u)
    return abs(u1) ** 2 + _H22 * abs(u3) ** 2


def Phi(u):
    """tau = Phi(u) for u = (u_1, u_3) in the disk D_H^+."""
    u1, u3 = _pair(u)
    if not ball_norm((u1, u3)) < 0:
        raise EmbeddingError("u is not in the disk D_H^+ (Hermitian norm must be negative)")
    delta = _DELTA1 * u1 ** 2 + _DELTA2 * u3 ** 2
    if abs(delta) < 1e-300:
        raise EmbeddingError("Delta vanishes")
    tau = (_QUAD11 * u1 ** 2 + _MIXED * u1 * u3 + _QUAD22 * u3 ** 2) / delta
    return SiegelPoint(tau)


def split(g):
    g = np.asarray(g)
    return g[:6, :6], g[:6, 6:], g[6:, :6], g[6:, 6:]


def sp_action(g, tau):
    """(A tau + B)(C tau + D)^-1."""
    t = tau.tau if isinstance(tau, SiegelPoint) else np.asarray(tau)
    A, B, C, D = split(g)
    num = A @ t + B
    den = C @ t + D
    if np.linalg.cond(den) > 1e12:
        raise EmbeddingError("C tau + D is numerically singular")
    out = np.linalg.solve(den.T, num.T).T
    return SiegelPoint(out)


def sp_inverse(g):
    A, B, C, D = split(g)
    return np.block([[D.T, -B.T], [-C.T, A.T]])


# theta characteristics -------------------------------------------------------


def _frac_vec(v):
    return tuple(Fraction(x) for x in v)


@dataclass(frozen=True)
class ThetaChar:
    """A characteristic (a, b) in Q^6 x Q^6 with denominators dividing 14.

    The literal vectors are stored; ``reduced()`` gives the representative
    in [0, 1)^12 and ``congruent`` compares classes mod 1.
    """

    a: tuple
    b: tuple

    def __post_init__(self):
        a, b = _frac_vec(self.a), _frac_vec(self.b)
        if len(a) != 6 or len(b) != 6:
            raise ValueError("characteristics are 6-vectors")
        if any((14 * x).denominator != 1 for x in a + b):
            raise ValueError("denominators must divide 14")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def vector(self):
        return self.a + self.b

    def reduced(self):
        return ThetaChar(tuple(x % 1 for x in self.a), tuple(x % 1 for x in self.b))

    def congruent(self, other):
        return self.reduced() == other.reduced()

    def __neg__(self):
        return ThetaChar(tuple(-x for x in self.a), tuple(-x for x in self.b))

    def __add__(self, other):
        return ThetaChar(
            tuple(x + y for x, y in zip(self.a, other.a)),
            tuple(x + y for x, y in zip(self.b, other.b)),
        )

    def as_float(self):
        return np.array([float(x) for x in self.a]), np.array([float(x) for x in self.b])


A0 = tuple(Fraction(x, 2) for x in (1, 0, 1, 0, 0, 1))
B0 = tuple(Fraction(x, 2) for x in (1, 1, 1, 0, 1, 0))
KAPPA = ThetaChar(A0, B0)


def torsion_char(m, n, reduce=False):
    """(a_{m,n} + a_0, b_{m,n} + b_0), literal unless ``reduce``."""
    a = [Fraction(x, 7) for x in (m, 2 * m, 3 * m, 2 * m + 3 * n, 2 * m + 3 * n, 0)]
    b = [Fraction(x, 7) for x in (-m, -m, -m, 3 * m + n, 5 * m + 4 * n, m + 5 * n)]
    ch = ThetaChar(tuple(x + y for x, y in zip(a, A0)), tuple(x + y for x, y in zip(b, B0)))
    return ch.reduced() if reduce else ch


def _diag_terms(g):
    A, B, C, D = split(g)
    return np.diag(C @ D.T), np.diag(A @ B.T)


def char_action(g, ch):
    """g.(a, b) = (a, b) g^-1 + (1/2)(diag(C tD), diag(A tB)), literal."""
    ginv = sp_inverse(g)
    v = ch.vector()
    out = [sum((v[i] * int(ginv[i, j]) for i in range(12)), Fraction(0)) for j in range(12)]
    dc, da = _diag_terms(g)
    shift = [Fraction(int(x), 2) for x in np.concatenate([dc, da])]
    out = [x + s for x, s in zip(out, shift)]
    return ThetaChar(tuple(out[:6]), tuple(out[6:]))


def _qf(x, mat, y):
    return sum(
        (x[i] * int(mat[i, j]) * y[j] for i in range(6) for j in range(6) if mat[i, j]),
        Fraction(0),
    )


def _vm(x, mat):
    return [sum((x[i] * int(mat[i, j]) for i in range(6)), Fraction(0)) for j in range(6)]


def lambda_phase(g, ch, reduce=True):
    """-(1/2)(a tD B ta - 2 a tB C tb + b tC A tb) + (1/2)(a tD - b tC) diag(A tB).

    a, b are row vectors.  Of the transpose readings of the printed formula
    this is the one reproducing all six tabulated values.
    """
    A, B, C, D = split(g)
    a, b = ch.a, ch.b
    quad = _qf(a, D.T @ B, a) - 2 * _qf(a, B.T @ C, b) + _qf(b, C.T @ A, b)
    dg = np.diag(A @ B.T)
    lin = sum(
        (x * int(d) for x, d in zip([p - q for p, q in zip(_vm(a, D.T), _vm(b, C.T))], dg)),
        Fraction(0),
    )
    lam = -quad / 2 + lin / 2
    return lam % 1 if reduce else lam


def shift_phase(ch, target):
    """Phase e[x] with theta_ch = e[x] theta_target when ch = target + integers.

    Uses theta_{(a+a', b+b')} = e[a . b'] theta_{(a,b)}.
    """
    da = [x - y for x, y in zip(ch.a, target.a)]
    db = [x - y for x, y in zip(ch.b, target.b)]
    if any(x.denominator != 1 for x in da + db):
        raise ValueError("characteristics are not congruent mod 1")
    return sum((x * y for x, y in zip(target.a, db)), Fraction(0)) % 1


# M-invariant characteristics ---------------------------------------------------


def invariant_chars(g=None):
    """All (a, b) in (Z/14)^12 / 14 with g.(a, b) = (a, b) mod 1, via Smith normal form.

    Scaled by 14 the condition reads x (g^-1 - I) = -7 d mod 14 for the
    integer vector x = 14(a, b) and d = (diag(C tD), diag(A tB)).
    """
    g = M if g is None else np.asarray(g)
    K = sp_inverse(g) - np.eye(12, dtype=np.int64)
    dc, da = _diag_terms(g)
    rhs = -7 * np.concatenate([dc, da])
    # row system x K = rhs  <=>  K^T x^T = rhs^T
    KT = Matrix(K.T.tolist())
    S, U, V = smith_normal_decomp(KT, domain=ZZ)
    r = U * Matrix([int(x) for x in rhs])
    choices = []
    for i in range(12):
        s = int(S[i, i]) % 14
        ri = int(r[i]) % 14
        sols = [y for y in range(14) if (s * y - ri) % 14 == 0]
        if not sols:
            raise EmbeddingError("characteristic system is inconsistent (row %d)" % i)
        choices.append(sols)
    out = set()
    Vn = np.array(V.tolist(), dtype=np.int64)
    for y in product(*choices):
        x = (Vn @ np.array(y, dtype=np.int64)) % 14
        out.add(
            ThetaChar(
                tuple(Fraction(int(v), 14) for v in x[:6]),
                tuple(Fraction(int(v), 14) for v in x[6:]),
            )
        )
    return out


def expected_invariant_chars():
    return {torsion_char(m, n, reduce=True) for m in range(7) for n in range(7)}


def is_symplectic_int(g):
    from .homology import J

    g = np.asarray(g, dtype=np.int64)
    return bool(np.array_equal(g.T @ J @ g, J))


def int_inverse(g):
    return np.array(integer_inverse(np.asarray(g)), dtype=np.int64)
