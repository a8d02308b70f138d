"""Hypergeometric periods u_k(t) of Omega = {x(x-1)(x-t)}^(-3/7) dx.

The branch of Omega is the one continuous on the lower half plane and
positive on I_3 = (1, oo) for 0 < t < 1; on I_2, I_1, I_0 its boundary
values are then e^(i pi a), e^(2 i pi a), e^(3 i pi a) times |.|^(-a),
a = 3/7.  Each interval is mapped to [0, 1] so that the integrand has the
form x^p (1-x)^q h(x) with p, q in (1/7)Z and h analytic, and both halves
of [0, 1] are integrated with Gauss-Legendre after x = s^7, which turns the
endpoint singularities into integer powers of s.

For complex t the same parametrisations with principal powers give the
continuation along the straight path from t = 1/2, valid on
C - ((-oo, 0] u [1, oo)).
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, wraps

import mpmath
import numpy as np

from .cyclotomic import MP_LOCK as _MP_LOCK, CycNum


def _serialized(fn):
    @wraps(fn)
    def inner(*args, **kwargs):
        with _MP_LOCK:
            return fn(*args, **kwargs)

    return inner


ALPHA = Fraction(3, 7)
# Gauss hypergeometric parameters E(a, b, c) satisfied by the periods
HYP_A, HYP_B, HYP_C = Fraction(3, 7), Fraction(2, 7), Fraction(6, 7)


class PeriodError(ValueError):
    pass


class BranchTrackingError(RuntimeError):
    def __init__(self, step, msg):
        super().__init__("step %d: %s" % (step, msg))
        self.step = step


@lru_cache(maxsize=64)
def gauss_legendre(n, dps):
    """Nodes and weights on [0, 1], computed by Newton iteration on P_n."""
    with mpmath.workdps(dps + 10):
        nodes, weights = [], []
        for i in range(1, (n + 1) // 2 + 1):
            x = mpmath.cos(mpmath.pi * (i - mpmath.mpf(1) / 4) / (n + mpmath.mpf(1) / 2))
            for _ in range(100):
                p0, p1 = mpmath.mpf(1), x
                for k in range(2, n + 1):
                    p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
                dp = n * (x * p1 - p0) / (x * x - 1)
                dx = p1 / dp
                x -= dx
                if abs(dx) < mpmath.mpf(10) ** (-(dps + 8)):
                    break
            w = 2 / ((1 - x * x) * dp * dp)
            nodes.append(x)
            weights.append(w)
        full_x, full_w = [], []
        for x, w in zip(nodes, weights):
            full_x.append(x)
            full_w.append(w)
            if abs(x) > mpmath.mpf(10) ** (-(dps + 5)):
                full_x.append(-x)
                full_w.append(w)
        # map [-1, 1] -> [0, 1]
        return tuple((1 + x) / 2 for x in full_x), tuple(w / 2 for w in full_w)


def _endpoint_integral(p, q, h, n, dps):
    """Integral over [0, 1] of x^p (1-x)^q h(x) dx, with 7p, 7q integers > -7."""
    kp, kq = 7 * p, 7 * q
    if kp.denominator != 1 or kq.denominator != 1:
        raise ValueError("endpoint exponents must lie in (1/7)Z")
    ep, eq = int(kp) + 6, int(kq) + 6
    s_nodes, s_weights = gauss_legendre(n, dps)
    half = mpmath.mpf(1) / 2
    cp = 7 * half * mpmath.power(half, mpmath.mpf(p.numerator) / p.denominator)
    cq = 7 * half * mpmath.power(half, mpmath.mpf(q.numerator) / q.denominator)
    qf = mpmath.mpf(q.numerator) / q.denominator
    pf = mpmath.mpf(p.numerator) / p.denominator
    left = mpmath.mpf(0)
    right = mpmath.mpf(0)
    for s, w in zip(s_nodes, s_weights):
        s7 = s ** 7
        # left half: x = s^7 / 2, x^p dx = cp s^(7p+6) ds
        x = half * s7
        left += w * s ** ep * mpmath.power(1 - x, qf) * h(x)
        # right half: 1 - x = s^7 / 2
        x = 1 - half * s7
        right += w * s ** eq * mpmath.power(x, pf) * h(x)
    return cp * left + cq * right


def _adaptive(p, q, h, precision, n0=24, nmax=768):
    dps = precision + 10
    with mpmath.workdps(dps):
        n = n0
        prev = _endpoint_integral(p, q, h, n, dps)
        while True:
            n *= 2
            cur = _endpoint_integral(p, q, h, n, dps)
            err = abs(cur - prev)
            if err < mpmath.mpf(10) ** (-(precision + 2)) * max(1, abs(cur)):
                return cur, err
            if n >= nmax:
                raise PeriodError("quadrature did not converge (error %s)" % mpmath.nstr(err, 3))
            prev = cur


def _as_mpc(t):
    if isinstance(t, (mpmath.mpc, mpmath.mpf)):
        return mpmath.mpc(t)
    if isinstance(t, Fraction):
        return mpmath.mpc(mpmath.mpf(t.numerator) / t.denominator)
    t = complex(t)
    return mpmath.mpc(t.real, t.imag)


def check_parameter(t, clearance=1e-6):
    t = complex(t)
    if abs(t) < clearance or abs(t - 1) < clearance:
        raise PeriodError("t = %r is within %g of the singular points 0, 1" % (t, clearance))
    if abs(t.imag) <= 1e-300 and (t.real < 0 or t.real > 1):
        raise PeriodError("t = %r lies on a branch cut; continue along a loop instead" % (t,))


@dataclass(frozen=True)
class PeriodPair:
    u1: mpmath.mpc
    u3: mpmath.mpc
    t: complex
    precision_estimate: float

    def as_complex(self):
        return complex(self.u1), complex(self.u3)

    @property
    def ratio(self):
        return self.u1 / self.u3

    def ball_norm(self):
        """|u1|^2 + (1 + zeta^3 + zeta^4)|u3|^2, negative on the disk D_H^+."""
        h = 1 + 2 * mpmath.cos(6 * mpmath.pi / 7)
        return abs(self.u1) ** 2 + h * abs(self.u3) ** 2


def _c(power=1):
    power = Fraction(power)
    e = 2 * ALPHA * power
    return mpmath.expjpi(mpmath.mpf(e.numerator) / e.denominator)


def _u1(t, precision, deriv=False):
    a = mpmath.mpf(3) / 7
    if deriv:
        # d/dt [t^(1-2a) I(t)]
        h = lambda s: mpmath.power(1 - s * t, -a)
        hd = lambda s: a * s * mpmath.power(1 - s * t, -a - 1)
        i0, e0 = _adaptive(-ALPHA, -ALPHA, h, precision)
        i1, e1 = _adaptive(-ALPHA, -ALPHA, hd, precision)
        val = _c() * ((1 - 2 * a) * mpmath.power(t, -2 * a) * i0 + mpmath.power(t, 1 - 2 * a) * i1)
        return val, e0 + e1
    h = lambda s: mpmath.power(1 - s * t, -a)
    i0, e0 = _adaptive(-ALPHA, -ALPHA, h, precision)
    return _c() * mpmath.power(t, 1 - 2 * a) * i0, e0 * abs(mpmath.power(t, 1 - 2 * a))


def _u3(t, precision, deriv=False):
    a = mpmath.mpf(3) / 7
    if deriv:
        h = lambda w: a * w * mpmath.power(1 - t * w, -a - 1)
    else:
        h = lambda w: mpmath.power(1 - t * w, -a)
    return _adaptive(3 * ALPHA - 2, -ALPHA, h, precision)


def _u2(t, precision):
    a = mpmath.mpf(3) / 7
    h = lambda s: mpmath.power(t + (1 - t) * s, -a)
    val, err = _adaptive(-ALPHA, -ALPHA, h, precision)
    return _c(Fraction(1, 2)) * mpmath.power(1 - t, 1 - 2 * a) * val, err


def _u0(t, precision):
    a = mpmath.mpf(3) / 7
    # y in (0, 1): y^-a (1+y)^-a (t+y)^-a ; y in (1, oo) via y = 1/w
    h1 = lambda y: mpmath.power(1 + y, -a) * mpmath.power(t + y, -a)
    h2 = lambda w: mpmath.power(1 + w, -a) * mpmath.power(1 + t * w, -a)
    v1, e1 = _adaptive(-ALPHA, Fraction(0), h1, precision)
    v2, e2 = _adaptive(3 * ALPHA - 2, Fraction(0), h2, precision)
    return _c(Fraction(3, 2)) * (v1 + v2), e1 + e2


@_serialized
def eval_periods(t, precision=30, clearance=1e-6):
    """u_1(t), u_3(t) with an absolute error estimate."""
    check_parameter(t, clearance)
    with mpmath.workdps(precision + 10):
        tt = _as_mpc(t)
        u1, e1 = _u1(tt, precision)
        u3, e3 = _u3(tt, precision)
        return PeriodPair(+u1, +u3, complex(tt), float(e1 + e3))


@_serialized
def all_periods(t, precision=30, clearance=1e-6):
    """(u_0, u_1, u_2, u_3) on the four intervals, with the fixed branch."""
    check_parameter(t, clearance)
    with mpmath.workdps(precision + 10):
        tt = _as_mpc(t)
        return tuple(+f(tt, precision)[0] for f in (_u0, _u1, _u2, _u3))


@_serialized
def cauchy_residuals(t, precision=30):
    """Residuals of u0+u1+u2+u3 = 0 and u0+c u1+c^2 u2+c^3 u3 = 0 and of the u2 formula."""
    u0, u1, u2, u3 = all_periods(t, precision)
    with mpmath.workdps(precision + 10):
        c = _c()
        r1 = abs(u0 + u1 + u2 + u3)
        r2 = abs(u0 + c * u1 + c ** 2 * u2 + c ** 3 * u3)
        r3 = abs(u2 + (u1 + (1 + c + c ** 2) * u3) / (1 + c))
        return float(r1), float(r2), float(r3)


@dataclass(frozen=True)
class SchwarzPoint:
    u: tuple
    ratio: complex
    ball_norm: float


@_serialized
def schwarz(t, precision=30):
    """[u_1(t) : u_3(t)] and the Hermitian norm of the normalized representative (u_3 = 1)."""
    p = eval_periods(t, precision)
    with mpmath.workdps(precision + 10):
        r = p.u1 / p.u3
        h = 1 + 2 * mpmath.cos(6 * mpmath.pi / 7)
        norm = abs(r) ** 2 + h
    return SchwarzPoint(p.as_complex(), complex(r), float(norm))


def hermitian_norm(u):
    """t(conj u) H u for a complex pair."""
    h = complex(1 + CycNum.zeta(7, 3) + CycNum.zeta(7, 4)).real
    return abs(u[0]) ** 2 + h * abs(u[1]) ** 2


def genus(m):
    """Genus of y^m = x(x-1)(x-t)."""
    if m < 2:
        raise ValueError("m must be at least 2")
    return m - 2 if m % 3 == 0 else m - 1


# numeric monodromy ----------------------------------------------------------------


@dataclass(frozen=True)
class LoopSpec:
    """A closed loop in the t-line starting and ending at ``base``.

    target "0" / "1" is the counterclockwise circle through ``base`` centred
    at 0 / 1; "none" is a small circle not enclosing either point.
    """

    base: float = 0.5
    target: str = "0"
    steps: int = 64
    clearance: float = 0.1

    def path(self):
        b = complex(self.base)
        if self.target == "0":
            center = 0j
        elif self.target == "1":
            center = 1 + 0j
        elif self.target == "none":
            center = b + 0.1j
        else:
            raise ValueError("target must be '0', '1' or 'none'")
        r = b - center
        pts = [center + r * np.exp(2j * np.pi * k / self.steps) for k in range(self.steps + 1)]
        pts[-1] = b
        return pts


def _series_step(t0, u, du, h, eps, max_terms=4000):
    """Advance (u, u') of E(a, b, c) from t0 to t0 + h by its Taylor series."""
    a = mpmath.mpf(HYP_A.numerator) / HYP_A.denominator
    b = mpmath.mpf(HYP_B.numerator) / HYP_B.denominator
    c = mpmath.mpf(HYP_C.numerator) / HYP_C.denominator
    p0, p1 = t0 * (t0 - 1), 2 * t0 - 1
    q0, q1 = (a + b + 1) * t0 - c, a + b + 1
    ab = a * b
    ck, ck1 = u, du
    val = ck + ck1 * h
    dval = ck1
    hk = h  # h^(k+1) bookkeeping
    small = 0
    for k in range(0, max_terms):
        ck2 = -((p1 * k * (k + 1) + q0 * (k + 1)) * ck1 + (k * (k - 1) + q1 * k + ab) * ck) / (
            p0 * (k + 1) * (k + 2)
        )
        term_d = (k + 2) * ck2 * hk
        hk = hk * h
        term = ck2 * hk
        val += term
        dval += term_d
        ck, ck1 = ck1, ck2
        if abs(term) < eps and abs(term_d) < eps:
            small += 1
            if small > 3:
                return val, dval
        else:
            small = 0
    raise RuntimeError("series did not converge")


def _initial_data(t, precision):
    with mpmath.workdps(precision + 10):
        tt = _as_mpc(t)
        u1, _ = _u1(tt, precision)
        u3, _ = _u3(tt, precision)
        d1, _ = _u1(tt, precision, deriv=True)
        d3, _ = _u3(tt, precision, deriv=True)
        return (u1, d1), (u3, d3)


@_serialized
def continue_along(path, precision=30, max_ratio=0.5):
    """Continue (u_1, u_3) and their derivatives along a polygonal path."""
    with mpmath.workdps(precision + 10):
        eps = mpmath.mpf(10) ** (-(precision + 5))
        sols = list(_initial_data(path[0], precision))
        for i in range(1, len(path)):
            t0 = _as_mpc(path[i - 1])
            h = _as_mpc(path[i]) - t0
            dist = min(abs(t0), abs(t0 - 1))
            if abs(h) > max_ratio * dist:
                raise BranchTrackingError(
                    i, "step %.3g exceeds %.2f x distance %.3g to a singular point"
                    % (float(abs(h)), max_ratio, float(dist))
                )
            sols = [_series_step(t0, u, du, h, eps) for u, du in sols]
        return sols


@_serialized
def numeric_monodromy(spec, precision=30):
    """Matrix G with (u_1, u_3) continued around the loop = G (u_1, u_3)."""
    path = spec.path()
    for p in path:
        if min(abs(p), abs(p - 1)) < spec.clearance:
            raise PeriodError("loop comes within %g of a singular point" % spec.clearance)
    with mpmath.workdps(precision + 10):
        start = _initial_data(path[0], precision)
        end = continue_along(path, precision)
        ws = mpmath.matrix([[start[0][0], start[0][1]], [start[1][0], start[1][1]]])
        we = mpmath.matrix([[end[0][0], end[0][1]], [end[1][0], end[1][1]]])
        g = we * ws ** -1
        return np.array([[complex(g[i, j]) for j in range(2)] for i in range(2)])


def projective_distance(a, b):
    """min over unimodular s of max|a - s b|, and the optimal s."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    idx = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    s = a[idx] / b[idx]
    return float(np.max(np.abs(a - s * b))), complex(s)
