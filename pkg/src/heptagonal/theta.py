"""Genus-6 Riemann theta functions with rational characteristics.

theta_{a,b}(z, tau) = sum_n e[(1/2)(n+a) tau (n+a) + (n+a).(z+b)], e[x] = exp(2 pi i x).

The sum runs over the lattice points inside an ellipsoid chosen so that a
Gaussian tail bound for the omitted terms is below the requested
tolerance.  With pi Y = T^T T and c = Y^-1 Im z every term has modulus
exp(pi c Y c) exp(-|T(n + a + c)|^2), and for the shifted lattice
T(Z^g + a + c) with shortest vector rho the sum of exp(-|v|^2) over
|v| >= R is at most

    (g/2) (2/rho)^g Gamma(g/2, (R - rho/2)^2),   R >= (sqrt(g + 2) + rho)/2,

(Deconinck, Heil, Bobenko, van Hoeij, Schmies, Math. Comp. 73 (2004)).
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gamma, sqrt

import numpy as np
from scipy.special import gammaincc

from .embedding import SiegelPoint, ThetaChar, torsion_char, shift_phase

WORKING_PAIRS = ((2, 4), (2, 5), (3, 5), (4, 2), (5, 2), (5, 3))


class ThetaError(ValueError):
    pass


def ellipsoid_points(Q, shift, R2):
    """Integer n with (n + shift) Q (n + shift)^T <= R2, lexicographically sorted."""
    g = Q.shape[0]
    U = np.linalg.cholesky(Q).T  # Q = U^T U, U upper triangular
    pts = np.zeros((1, 0), dtype=np.int64)
    rem = np.array([R2], dtype=float)
    for i in range(g - 1, -1, -1):
        xs = pts + shift[i + 1:]
        center = -(xs @ U[i, i + 1:]) / U[i, i] - shift[i]
        r = np.sqrt(np.maximum(rem, 0)) / U[i, i]
        lo = np.ceil(center - r).astype(np.int64)
        hi = np.floor(center + r).astype(np.int64)
        cnt = np.maximum(hi - lo + 1, 0)
        idx = np.repeat(np.arange(len(pts)), cnt)
        off = np.arange(cnt.sum()) - np.repeat(np.cumsum(cnt) - cnt, cnt)
        ni = lo[idx] + off
        rem = rem[idx] - (U[i, i] * (ni - center[idx])) ** 2
        pts = np.column_stack([ni, pts[idx]])
    order = np.lexsort(pts.T[::-1])
    return pts[order]


def shortest_vector(Q):
    """Length of the shortest nonzero vector of the lattice with Gram matrix Q."""
    R2 = float(np.min(np.diag(Q)))
    pts = ellipsoid_points(Q, np.zeros(Q.shape[0]), R2 * (1 + 1e-12))
    pts = pts[np.any(pts != 0, axis=1)]
    vals = np.einsum("ij,jk,ik->i", pts, Q, pts)
    return sqrt(float(vals.min()))


def tail_bound(R, rho, g=6):
    """Upper bound for sum over |v| >= R of exp(-|v|^2) on a lattice coset with minimum rho."""
    if R < (sqrt(g + 2) + rho) / 2:
        return float("inf")
    x = (R - rho / 2) ** 2
    return (g / 2) * (2 / rho) ** g * gammaincc(g / 2, x) * gamma(g / 2)


def radius_for(tol, rho, g=6, prefactor=1.0):
    R = (sqrt(g + 2) + rho) / 2
    while prefactor * tail_bound(R, rho, g) >= tol:
        R += 0.05
        if R > 100:
            raise ThetaError("tolerance %g unreachable" % tol)
    return R


@dataclass(frozen=True)
class ThetaValue:
    value: complex
    error_bound: float
    char: ThetaChar
    tau_ref: SiegelPoint
    n_terms: int = 0

    def __complex__(self):
        return self.value

    def __abs__(self):
        return abs(self.value)


@lru_cache(maxsize=64)
def _rho_cached(key):
    Y = np.frombuffer(key, dtype=float).reshape(6, 6)
    return shortest_vector(np.pi * Y)


def _rho(tau):
    return _rho_cached(np.ascontiguousarray(tau.imag, dtype=float).tobytes())


def theta(z, tau, ch, tol=1e-12):
    """theta_{a,b}(z, tau) with a certified truncation bound below ``tol``."""
    if tol <= 0:
        raise ThetaError("tol must be positive")
    if not isinstance(tau, SiegelPoint):
        tau = SiegelPoint(np.asarray(tau))
    t = tau.tau
    Y = tau.imag
    g = t.shape[0]
    z = np.zeros(g, dtype=complex) if z is None else np.asarray(z, dtype=complex)
    a, b = ch.as_float()
    c = np.linalg.solve(Y, z.imag)
    growth = float(np.exp(np.pi * c @ Y @ c))
    if growth * 1e-16 > tol:
        raise ThetaError("tolerance %g unreachable in double precision for this z" % tol)
    rho = _rho(tau)
    R = radius_for(tol / 2, rho, g, growth)
    Q = np.pi * Y
    n = ellipsoid_points(Q, a + c, R * R)
    x = n + a
    expo = 1j * np.pi * np.einsum("ij,jk,ik->i", x, t, x) + 2j * np.pi * (x @ (z + b))
    terms = np.exp(expo)
    value = complex(terms.sum())
    # exp loses ~eps |expo| relative; pairwise summation adds eps log2(N) sum|term|
    absterms = np.abs(terms)
    roundoff = float(
        np.finfo(float).eps
        * (absterms * (np.abs(expo) + 2)).sum()
        + np.finfo(float).eps * np.log2(len(terms) + 1) * absterms.sum()
    )
    bound = growth * tail_bound(R, rho, g) + roundoff
    if bound >= tol:
        raise ThetaError("error bound %.3g exceeds tolerance %.3g" % (bound, tol))
    return ThetaValue(value, bound, ch, tau, len(terms))


def theta_const(tau, ch, tol=1e-12):
    return theta(None, tau, ch, tol)


def theta_mn(tau, m, n, tol=1e-12):
    """theta_{[m,n]}(tau) with the literal characteristic (a_{m,n} + a_0, b_{m,n} + b_0)."""
    return theta_const(tau, torsion_char(m, n), tol).value


def reduce_char(ch):
    """(representative in [0,1)^12, phase x) with theta_ch = e[x] theta_representative."""
    red = ch.reduced()
    return red, shift_phase(ch, red)


def e(x):
    """exp(2 pi i x) for rational or real x."""
    return complex(np.exp(2j * np.pi * float(Fraction(x) if not isinstance(x, float) else x)))


@dataclass(frozen=True)
class VanishingScan:
    values: dict
    nonzero: frozenset
    zero: frozenset
    ambiguous: frozenset
    scale: float
    gap: float

    @property
    def ok(self):
        return (
            self.nonzero == frozenset(WORKING_PAIRS)
            and not self.ambiguous
            and len(self.zero) == 43
        )


def vanishing_scan(tau, tol=1e-12, tol_zero=1e-8, tol_live=1e-3):
    """Classify |theta_{[m,n]}(tau)| for all 49 torsion characteristics."""
    vals = {(m, n): abs(theta_mn(tau, m, n, tol)) for m in range(7) for n in range(7)}
    scale = max(vals.values())
    zero = frozenset(k for k, v in vals.items() if v < tol_zero * scale)
    live = frozenset(k for k, v in vals.items() if v > tol_live * scale)
    amb = frozenset(vals) - zero - live
    if live and zero:
        gap = min(vals[k] for k in live) / max(max(vals[k] for k in zero), 1e-300)
    else:
        gap = 0.0
    return VanishingScan(vals, live, zero, amb, scale, gap)
