"""The elliptic K3 surface S_t : y^2 = x(x - z)(x - tz) + z^10.

Weierstrass data, discriminant, Kodaira fibres from vanishing orders,
the Neron-Severi Gram matrix of the section/fibre-component graph and the
Shioda-Tate count.  Rational t is treated exactly; float or complex t
uses numerical root isolation for the I_1 fibres.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import sympy as sp

z = sp.Symbol("z")
T = sp.Symbol("t")

# (euler number, number of components) for each Kodaira type
KODAIRA = {
    "I0": (0, 1),
    "I1": (1, 1),
    "II": (2, 1),
    "III": (3, 2),
    "IV": (4, 3),
    "I0*": (6, 5),
    "IV*": (8, 7),
    "III*": (9, 8),
    "II*": (10, 9),
}


class DegenerateFibrationError(ValueError):
    pass


def _param(t):
    if isinstance(t, sp.Basic):
        return t
    if isinstance(t, (int, Fraction)):
        t = Fraction(t)
        return sp.Rational(t.numerator, t.denominator)
    if isinstance(t, float) and t.is_integer():
        return sp.Integer(int(t))
    return sp.nsimplify(t) if isinstance(t, str) else sp.sympify(complex(t))


def _check_t(t):
    if not t.free_symbols and (sp.simplify(t) == 0 or sp.simplify(t - 1) == 0):
        raise ValueError("t must not be 0 or 1")


@dataclass(frozen=True)
class WeierstrassModel:
    t: sp.Basic
    G2: sp.Poly
    G3: sp.Poly

    def cubic(self, X):
        return X ** 3 + self.G2.as_expr() * X + self.G3.as_expr()


def weierstrass(t=T):
    """G_2 = -(1/3)(t^2 - t + 1) z^2, G_3 = z^10 - (1/27)(2t - 1)(t + 1)(t - 2) z^3."""
    t = _param(t)
    _check_t(t)
    g2 = -sp.Rational(1, 3) * (t ** 2 - t + 1) * z ** 2
    g3 = z ** 10 - sp.Rational(1, 27) * (2 * t - 1) * (t + 1) * (t - 2) * z ** 3
    return WeierstrassModel(t, sp.Poly(g2, z), sp.Poly(g3, z))


def depressed_cubic_residual(t=T):
    """x(x - z)(x - tz) + z^10 - (X^3 + G_2 X + G_3) with X = x - (1 + t)z/3; zero polynomial."""
    w = weierstrass(t)
    x = sp.Symbol("x")
    X = x - (1 + w.t) * z / 3
    return sp.expand(x * (x - z) * (x - w.t * z) + z ** 10 - w.cubic(X))


def brace(t=T):
    """27 z^14 - 2(2t - 1)(t + 1)(t - 2) z^7 - t^2 (t - 1)^2."""
    t = _param(t)
    return sp.Poly(27 * z ** 14 - 2 * (2 * t - 1) * (t + 1) * (t - 2) * z ** 7 - t ** 2 * (t - 1) ** 2, z)


def discriminant(t=T):
    """4 G_2^3 + 27 G_3^2, checked against z^6 times the brace factor."""
    w = weierstrass(t)
    d = sp.Poly(4 * w.G2.as_expr() ** 3 + 27 * w.G3.as_expr() ** 2, z)
    printed = sp.Poly(z ** 6 * brace(w.t).as_expr(), z)
    diff = sp.Poly(sp.expand(d.as_expr() - printed.as_expr()), z)
    if w.t.is_rational or w.t.free_symbols:
        ok = diff.is_zero
    else:
        ok = all(abs(complex(c)) < 1e-10 for c in diff.coeffs())
    if not ok:
        raise AssertionError("discriminant does not match the factored form")
    return d


def brace_discriminant(t=T):
    """Discriminant of the brace factor as a quadratic in y = z^7 (up to the factor 4)."""
    t = _param(t)
    return sp.expand(4 * (2 * t - 1) ** 2 * (t + 1) ** 2 * (t - 2) ** 2 + 108 * t ** 2 * (t - 1) ** 2)


def _ord(poly):
    if poly.is_zero:
        return float("inf")
    terms = poly.monoms()
    return min(m[0] for m in terms)


def kodaira_type(v2, v3, vd):
    """Kodaira symbol from vanishing orders of (G_2, G_3, Delta) in characteristic 0."""
    if v2 >= 4 and v3 >= 6:
        raise DegenerateFibrationError("non-minimal Weierstrass model")
    if vd == 0:
        return "I0"
    if v2 == 0 and v3 == 0:
        return "I%d" % vd
    if vd == 2 and v3 == 1:
        return "II"
    if vd == 3 and v2 == 1:
        return "III"
    if vd == 4 and v3 == 2:
        return "IV"
    if v2 == 2 and v3 == 3 and vd >= 6:
        return "I0*" if vd == 6 else "I%d*" % (vd - 6)
    if v2 >= 2 and v3 >= 3 and vd == 6:
        return "I0*"
    if vd == 8 and v3 == 4:
        return "IV*"
    if vd == 9 and v2 == 3:
        return "III*"
    if vd == 10 and v3 == 5:
        return "II*"
    raise DegenerateFibrationError("no Kodaira type for orders (%s, %s, %s)" % (v2, v3, vd))


def euler_number(kind):
    if kind in KODAIRA:
        return KODAIRA[kind][0]
    if kind.endswith("*"):
        return int(kind[1:-1]) + 6
    return int(kind[1:])


def components(kind):
    if kind in KODAIRA:
        return KODAIRA[kind][1]
    if kind.endswith("*"):
        return int(kind[1:-1]) + 5
    return int(kind[1:])


@dataclass(frozen=True)
class FiberReport:
    location: object
    kodaira_type: str
    euler: int
    orders: tuple


def _at_infinity(w):
    """Vanishing orders at z = oo for the K3 weights (G_2, G_3, Delta) -> (8, 12, 24)."""
    v = sp.Symbol("v")
    g2 = sp.Poly(sp.expand(v ** 8 * w.G2.as_expr().subs(z, 1 / v)), v)
    g3 = sp.Poly(sp.expand(v ** 12 * w.G3.as_expr().subs(z, 1 / v)), v)
    d = sp.Poly(sp.expand(4 * g2.as_expr() ** 3 + 27 * g3.as_expr() ** 2), v)
    return _ord(g2), _ord(g3), _ord(d)


def _finite_roots(t, tol=1e-8):
    """The 14 roots of the brace factor, checked simple and away from 0."""
    if t.is_rational:
        b = brace(t)
        if sp.degree(sp.gcd(b, b.diff(z))) > 0:
            raise DegenerateFibrationError("brace factor has a repeated root at t = %s" % t)
        roots = [complex(r) for r in sp.Poly(b, z).nroots(n=30)]
    else:
        tc = complex(t)
        p = -2 * (2 * tc - 1) * (tc + 1) * (tc - 2)
        q = -(tc ** 2) * (tc - 1) ** 2
        disc = p * p - 4 * 27 * q
        scale = max(abs(p) ** 2, abs(108 * q), 1.0)
        if abs(disc) < tol * scale:
            raise DegenerateFibrationError("brace factor has a repeated root at t = %r" % tc)
        ys = np.roots([27, p, q])
        roots = [complex(y ** (1 / 7) * np.exp(2j * np.pi * k / 7)) for y in ys for k in range(7)]
    roots = np.array(roots)
    sep = min(abs(a - b) for i, a in enumerate(roots) for b in roots[i + 1:])
    if sep < tol or np.abs(roots).min() < tol:
        raise DegenerateFibrationError("brace roots are not 14 distinct nonzero points")
    return roots


def fiber_analysis(t):
    t = _param(t)
    _check_t(t)
    if t.free_symbols:
        raise ValueError("fiber analysis needs a numerical t")
    w = weierstrass(t)
    d = discriminant(t)
    fibers = []
    o = (_ord(w.G2), _ord(w.G3), _ord(d))
    k = kodaira_type(*o)
    fibers.append(FiberReport(0, k, euler_number(k), o))
    o = _at_infinity(w)
    k = kodaira_type(*o)
    fibers.append(FiberReport("oo", k, euler_number(k), o))
    g2c = complex(sp.N((t ** 2 - t + 1)))
    if abs(g2c) < 1e-12:
        raise DegenerateFibrationError("G_2 vanishes identically at t = %s" % t)
    for r in _finite_roots(t):
        # simple zero of Delta with G_2(r) != 0
        fibers.append(FiberReport(r, "I1", 1, (0, 0, 1)))
    return fibers


def euler_sum(fibers):
    return sum(f.euler for f in fibers)


# Neron-Severi lattice ---------------------------------------------------------

NS_LABELS = ("o", "s0", "s1", "st", "l0", "l1", "l2", "l3", "l4", "l1'")
GRAPH_LABELS = NS_LABELS + ("l2'", "l3'")
GRAPH_EDGES = (
    ("l0", "l1"), ("l0", "l2"), ("l0", "l3"), ("l0", "l4"),
    ("l1", "o"), ("l2", "s0"), ("l3", "s1"), ("l4", "st"),
    ("o", "l1'"), ("s0", "l2'"), ("s1", "l2'"), ("st", "l2'"),
    ("l1'", "l2'"), ("l1'", "l3'"), ("l2'", "l3'"),
)
DOUBLE_EDGES = (("s0", "s1"), ("s0", "st"), ("s1", "st"))


def graph_gram(labels=GRAPH_LABELS):
    ix = {n: i for i, n in enumerate(GRAPH_LABELS)}
    G = -2 * sp.eye(len(GRAPH_LABELS))
    for a, b in GRAPH_EDGES:
        G[ix[a], ix[b]] = G[ix[b], ix[a]] = 1
    for a, b in DOUBLE_EDGES:
        G[ix[a], ix[b]] = G[ix[b], ix[a]] = 2
    sel = [ix[n] for n in labels]
    return G.extract(sel, sel)


@dataclass(frozen=True)
class GramLattice:
    labels: tuple
    gram: sp.Matrix
    det: int
    rank: int

    @property
    def even(self):
        return all(self.gram[i, i] % 2 == 0 for i in range(self.gram.rows))


def ns_lattice():
    G = graph_gram(NS_LABELS)
    return GramLattice(NS_LABELS, G, int(G.det()), int(G.rank()))


@dataclass(frozen=True)
class ShiodaTateReport:
    ns_rank: int
    fiber_contribution: int
    mw_rank: int
    section_relation_ok: bool
    generators: tuple


def section_relation_holds():
    """s_0 + s_1 + s_t = o on the points (az, z^5) of y^2 = x(x - z)(x - tz) + z^10.

    Three points of a Weierstrass cubic sum to zero iff they are collinear;
    the three sections lie on the line y = z^5.
    """
    x = sp.Symbol("x")
    rhs = x * (x - z) * (x - T * z) + z ** 10
    # each (az, z^5) lies on y^2 = rhs and the three x-coordinates exhaust the line y = z^5
    on_curve = all(sp.expand((z ** 5) ** 2 - rhs.subs(x, a * z)) == 0 for a in (0, 1, T))
    line = sp.expand(rhs - z ** 10 - x * (x - z) * (x - T * z)) == 0
    return on_curve and line


def shioda_tate(fibers=None):
    if fibers is None:
        fibers = fiber_analysis(sp.Rational(1, 2))
    lat = ns_lattice()
    contrib = sum(components(f.kodaira_type) - 1 for f in fibers)
    return ShiodaTateReport(
        ns_rank=lat.rank,
        fiber_contribution=contrib,
        mw_rank=lat.rank - 2 - contrib,
        section_relation_ok=section_relation_holds(),
        generators=("s0", "s1"),
    )
