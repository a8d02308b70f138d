"""Exact arithmetic in the cyclotomic field Q(zeta_d).

Elements are stored as rational coefficient vectors over the power basis
1, zeta, ..., zeta^(phi(d)-1), fully reduced modulo the cyclotomic
polynomial, so two elements are equal iff their coefficient tuples are.

For d = 7 the module also provides the residue maps
Z[zeta_7] -> Z[zeta_7]/(1 - zeta_7)^k, k <= 6, which are the congruence
machinery used by the monodromy module.
"""

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd

import mpmath
from sympy import Poly, QQ, Symbol, cyclotomic_poly, totient
from sympy.functions.combinatorial.numbers import mobius

_X = Symbol("x")

# mpmath's working precision is process global; callers may use threads
MP_LOCK = threading.RLock()


@lru_cache(maxsize=None)
def _phi_poly(d):
    """Coefficients of the d-th cyclotomic polynomial, constant term first."""
    return tuple(int(c) for c in reversed(Poly(cyclotomic_poly(d, _X), _X).all_coeffs()))


@lru_cache(maxsize=None)
def _power_table(d):
    """Reduced power-basis vectors of zeta^j for 0 <= j < d."""
    phi = _phi_poly(d)
    deg = len(phi) - 1
    rows = []
    vec = [0] * deg
    vec[0] = 1
    for _ in range(d):
        rows.append(tuple(vec))
        # multiply by zeta and reduce zeta^deg = -sum phi[i] zeta^i
        top = vec[-1]
        vec = [0] + vec[:-1]
        if top:
            vec = [v - top * phi[i] for i, v in enumerate(vec)]
    return tuple(rows)


def _ramanujan_sum(d, j):
    # Tr_{Q(zeta_d)/Q}(zeta_d^j)
    g = d // gcd(d, j)
    return int(mobius(g)) * int(totient(d)) // int(totient(g))


@dataclass(frozen=True)
class CycNum:
    """An element of Q(zeta_d) in reduced power-basis form."""

    d: int
    coeffs: tuple

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("conductor must be positive")
        if len(self.coeffs) != degree(self.d):
            raise ValueError("coefficient vector has wrong length for conductor %d" % self.d)

    # construction -----------------------------------------------------

    @classmethod
    def from_monomials(cls, d, terms):
        """Build sum c_j zeta_d^j from a mapping {j: c_j} (j may be any integer)."""
        if d < 1:
            raise ValueError("conductor must be positive")
        table = _power_table(d)
        acc = [Fraction(0)] * degree(d)
        for j, c in dict(terms).items():
            c = Fraction(c)
            if c == 0:
                continue
            row = table[j % d]
            for i, r in enumerate(row):
                if r:
                    acc[i] += c * r
        return cls(d, tuple(acc))

    @classmethod
    def from_int(cls, d, n):
        return cls.from_monomials(d, {0: n})

    @classmethod
    def zeta(cls, d, power=1):
        return cls.from_monomials(d, {power: 1})

    # arithmetic ----------------------------------------------------------

    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNum.from_int(self.d, other)
        if not isinstance(other, CycNum):
            return NotImplemented
        if other.d != self.d:
            raise ValueError("conductor mismatch: %d vs %d" % (self.d, other.d))
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return CycNum(self.d, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.d, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        terms = {}
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    terms[i + j] = terms.get(i + j, 0) + a * b
        return CycNum.from_monomials(self.d, terms)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_%d)" % self.d)
        p = Poly(list(reversed(self.coeffs)), _X, domain=QQ)
        m = Poly(list(reversed(_phi_poly(self.d))), _X, domain=QQ)
        inv = p.invert(m)
        c = [Fraction(int(q.numerator), int(q.denominator)) for q in reversed(inv.all_coeffs())]
        c += [Fraction(0)] * (degree(self.d) - len(c))
        return CycNum(self.d, tuple(c))

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._check(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = CycNum.from_int(self.d, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self):
        """Complex conjugation zeta -> zeta^(d-1)."""
        return CycNum.from_monomials(self.d, {-i: a for i, a in enumerate(self.coeffs)})

    def galois(self, k):
        """The automorphism zeta -> zeta^k, gcd(k, d) = 1."""
        if gcd(k, self.d) != 1:
            raise ValueError("k must be a unit mod d")
        return CycNum.from_monomials(self.d, {i * k: a for i, a in enumerate(self.coeffs)})

    def trace(self):
        """Tr_{Q(zeta_d)/Q} as an exact rational."""
        return sum((a * _ramanujan_sum(self.d, i) for i, a in enumerate(self.coeffs)), Fraction(0))

    def norm(self):
        result = CycNum.from_int(self.d, 1)
        for k in range(1, self.d + 1):
            if gcd(k, self.d) == 1:
                result = result * self.galois(k)
        return result.coeffs[0]

    # predicates ------------------------------------------------------------

    def is_zero(self):
        return not any(self.coeffs)

    def is_integral(self):
        return all(a.denominator == 1 for a in self.coeffs)

    def is_rational(self):
        return not any(self.coeffs[1:])

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycNum.from_int(self.d, other)
        if not isinstance(other, CycNum):
            return NotImplemented
        return self.d == other.d and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.d, self.coeffs))

    # numerics ----------------------------------------------------------------

    def embed(self, precision=15):
        """Value at zeta_d = exp(2 pi i / d), as an mpmath complex."""
        if precision < 15:
            raise ValueError("precision must be at least 15 digits")
        with MP_LOCK, mpmath.workdps(precision + 10):
            z = mpmath.expjpi(mpmath.mpf(2) / self.d)
            acc = mpmath.mpc(0)
            zk = mpmath.mpc(1)
            for a in self.coeffs:
                if a:
                    acc += mpmath.mpf(a.numerator) / a.denominator * zk
                zk *= z
            return +acc

    def __complex__(self):
        return complex(self.embed(15))

    def __repr__(self):
        terms = []
        for i, a in enumerate(self.coeffs):
            if a:
                terms.append("%s*z^%d" % (a, i) if i else str(a))
        return "CycNum(%d: %s)" % (self.d, " + ".join(terms) or "0")


def degree(d):
    return len(_phi_poly(d)) - 1


def cyc_make(d, terms):
    """Canonical element sum_j c_j zeta_d^j from {j: c_j}."""
    if d == 0:
        raise ValueError("conductor must be nonzero")
    return CycNum.from_monomials(d, terms)


def cyc_embed(x, precision=15):
    return x.embed(precision)


# residues modulo powers of (1 - zeta_7) --------------------------------------

P = 7


@dataclass(frozen=True)
class Residue:
    """Class of an element of Z[zeta_7] modulo (1 - zeta_7)^k.

    ``digits`` are the coefficients r_0, ..., r_{k-1} in F_7 of the unique
    expansion x = sum r_j (1 - zeta)^j mod (1 - zeta)^k.  Since 7 lies in
    (1 - zeta)^6 the quotient ring is F_7[pi]/(pi^k) for k <= 6.
    """

    k: int
    digits: tuple

    def __post_init__(self):
        if not 1 <= self.k <= 6:
            raise ValueError("modulus power must be in 1..6")
        if len(self.digits) != self.k:
            raise ValueError("need exactly k digits")

    @property
    def value(self):
        """For k = 1, the element of F_7."""
        return self.digits[0]

    def __add__(self, other):
        return Residue(self.k, tuple((a + b) % P for a, b in zip(self.digits, other.digits)))

    def __neg__(self):
        return Residue(self.k, tuple((-a) % P for a in self.digits))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = [0] * self.k
        for i, a in enumerate(self.digits):
            for j, b in enumerate(other.digits):
                if i + j < self.k:
                    out[i + j] = (out[i + j] + a * b) % P
        return Residue(self.k, tuple(out))

    def is_zero(self):
        return not any(self.digits)


def reduce_mod(x, k=1):
    """Image of x in Z[zeta_7]/(1 - zeta_7)^k."""
    if x.d != P:
        raise ValueError("residues are implemented for Z[zeta_7] only")
    if not x.is_integral():
        raise ValueError("reduce_mod needs an integral element, got %r" % (x,))
    if not 1 <= k <= 6:
        raise ValueError("k must be in 1..6")
    # zeta^i = (1 - pi)^i = sum_j C(i, j) (-pi)^j
    digits = []
    for j in range(k):
        s = sum(int(a) * comb(i, j) for i, a in enumerate(x.coeffs))
        digits.append((s * (-1) ** j) % P)
    return Residue(k, tuple(digits))
