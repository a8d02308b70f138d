"""Theta-quotient inverse of the Schwarz map and the Fermat / Klein points.

t(u)   = zeta^5 theta_[2,5]^7 / theta_[3,5]^7 (Phi(u)),
1 - t  =        theta_[2,5]^7 / theta_[2,4]^7 (Phi(u)),
Th(u)  = [e[5/49] th24 th25 : th25 th35 : -th24 th35] on X^7 + Y^7 + Z^7 = 0,
and the quotient map [X : Y : Z] -> [X Y^3 : Y Z^3 : Z X^3] onto
the Klein quartic X^3 Y + Y^3 Z + Z^3 X = 0.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .embedding import M, Phi, SiegelPoint, sp_action
from .periods import eval_periods
from .theta import e, theta_mn, vanishing_scan

ZETA = np.exp(2j * np.pi / 7)


class UniformizationError(ValueError):
    pass


@dataclass(frozen=True)
class ProjectivePoint3:
    X: complex
    Y: complex
    Z: complex

    def __post_init__(self):
        if max(abs(self.X), abs(self.Y), abs(self.Z)) == 0:
            raise UniformizationError("all coordinates vanish")

    @property
    def coords(self):
        return np.array([self.X, self.Y, self.Z], dtype=complex)

    def normalized(self):
        v = self.coords
        v = v / v[np.argmax(np.abs(v))]
        return ProjectivePoint3(*v)

    def scale(self, s):
        return ProjectivePoint3(*(s * self.coords))

    def distance(self, other):
        """max-norm distance between normalized representatives."""
        return float(np.abs(self.normalized().coords - other.normalized().coords).max())

    def fermat_residual(self):
        v = self.normalized().coords
        return float(abs((v ** 7).sum()))

    def klein_residual(self):
        X, Y, Z = self.normalized().coords
        return float(abs(X ** 3 * Y + Y ** 3 * Z + Z ** 3 * X))


def _theta_triplet(tau, pairs, tol):
    return [theta_mn(tau, m, n, tol) for m, n in pairs]


def _checked_ratio(num, den, tol_zero):
    if abs(den) < tol_zero:
        raise UniformizationError("denominator theta constant vanishes (|.| = %.3g)" % abs(den))
    return (num / den) ** 7


def t_from_tau(tau, tol=1e-12, tol_zero=1e-8):
    th25, th35 = _theta_triplet(tau, [(2, 5), (3, 5)], tol)
    return ZETA ** 5 * _checked_ratio(th25, th35, tol_zero)


def one_minus_t(tau, tol=1e-12, tol_zero=1e-8):
    th25, th24 = _theta_triplet(tau, [(2, 5), (2, 4)], tol)
    return _checked_ratio(th25, th24, tol_zero)


def companion_t(tau, power=3, tol=1e-12, tol_zero=1e-8):
    """zeta^power theta_[5,2]^7 / theta_[4,2]^7.

    The square identity t^2 = zeta^3 (theta_[5,2] / theta_[4,2])^14 gives
    t = +-zeta^5 theta_[5,2]^7 / theta_[4,2]^7 (the sign is +); the printed
    form with power 3 returns zeta^-2 t.
    """
    th52, th42 = _theta_triplet(tau, [(5, 2), (4, 2)], tol)
    return ZETA ** power * _checked_ratio(th52, th42, tol_zero)


def theta_point(tau, tol=1e-12):
    """[theta_[2,4] : theta_[2,5] : theta_[3,5]](tau)."""
    return ProjectivePoint3(*_theta_triplet(tau, [(2, 4), (2, 5), (3, 5)], tol))


def fermat_point(tau, tol=1e-12, tol_zero=1e-8):
    th24, th25, th35 = _theta_triplet(tau, [(2, 4), (2, 5), (3, 5)], tol)
    X = e(Fraction(5, 49)) * th24 * th25
    Y = th25 * th35
    Z = -th24 * th35
    scale = max(abs(X), abs(Y), abs(Z))
    if sum(abs(c) < tol_zero * max(scale, 1e-300) for c in (X, Y, Z)) >= 2:
        raise UniformizationError("degenerate Fermat point")
    return ProjectivePoint3(X, Y, Z)


def klein_point(p, tol_fermat=1e-6):
    if p.fermat_residual() > tol_fermat:
        raise UniformizationError("point is not on the Fermat septic (residual %.3g)" % p.fermat_residual())
    X, Y, Z = p.coords
    return ProjectivePoint3(X * Y ** 3, Y * Z ** 3, Z * X ** 3)


def klein_alpha(p):
    """alpha: [X : Y : Z] -> [zeta X : zeta^3 Y : Z]."""
    X, Y, Z = p.coords
    return ProjectivePoint3(ZETA * X, ZETA ** 3 * Y, Z)


@dataclass
class RoundTripReport:
    t: complex
    t_error: float
    one_minus_t_error: float
    sum_error: float
    fermat_residual: float
    klein_residual: float
    m_fixed_residual: float
    vanishing_ok: bool
    vanishing_gap: float
    tolerance: float
    details: dict = field(default_factory=dict)

    @property
    def ok(self):
        return (
            max(
                self.t_error,
                self.one_minus_t_error,
                self.sum_error,
                self.fermat_residual,
                self.klein_residual,
            )
            < self.tolerance
            and self.m_fixed_residual < 1e-10
            and self.vanishing_ok
        )


def tau_of_t(t, precision=20):
    return Phi(eval_periods(t, precision))


def round_trip(t, precision=20, tolerance=1e-6, theta_tol=1e-12, scan=True):
    """Run t -> u -> tau -> (t', 1 - t', Fermat point, Klein point) and collect residuals."""
    tau = tau_of_t(t, precision)
    t1 = t_from_tau(tau, theta_tol)
    s1 = one_minus_t(tau, theta_tol)
    fp = fermat_point(tau, theta_tol)
    kp = klein_point(fp, tol_fermat=np.inf)
    mres = sp_action(M, tau).distance(tau)
    if scan:
        sc = vanishing_scan(tau, theta_tol)
        vok, gap = sc.ok, sc.gap
    else:
        vok, gap = True, float("nan")
    return RoundTripReport(
        t=complex(t),
        t_error=abs(t1 - t),
        one_minus_t_error=abs(s1 - (1 - t)),
        sum_error=abs(t1 + s1 - 1),
        fermat_residual=fp.fermat_residual(),
        klein_residual=kp.klein_residual(),
        m_fixed_residual=mres,
        vanishing_ok=vok,
        vanishing_gap=gap,
        tolerance=tolerance,
        details={"t_prime": t1, "one_minus_t_prime": s1},
    )
