"""Integral homology of X_t : y^7 = x(x-1)(x-t).

H_1(X_t, Z) is free of rank 2 over Z[rho], rho the covering automorphism,
with generators gamma_1, gamma_3.  A cycle F_1(rho) gamma_1 + F_3(rho) gamma_3
is stored through its coordinates on the Z-basis rho^i gamma_1, rho^i gamma_3
(0 <= i <= 5), using 1 + rho + ... + rho^6 = 0.  All intersection numbers
follow from the two printed 6x6 windows Int_1, Int_3.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cyclotomic import CycNum

INT1 = np.array(
    [
        [0, 1, 0, 0, 0, 0],
        [-1, 0, 1, 0, 0, 0],
        [0, -1, 0, 1, 0, 0],
        [0, 0, -1, 0, 1, 0],
        [0, 0, 0, -1, 0, 1],
        [0, 0, 0, 0, -1, 0],
    ],
    dtype=np.int64,
)

INT3 = np.array(
    [
        [0, 1, 0, -1, 1, 0],
        [-1, 0, 1, 0, -1, 1],
        [0, -1, 0, 1, 0, -1],
        [1, 0, -1, 0, 1, 0],
        [-1, 1, 0, -1, 0, 1],
        [0, -1, 1, 0, -1, 0],
    ],
    dtype=np.int64,
)

J = np.block(
    [[np.zeros((6, 6), dtype=np.int64), np.eye(6, dtype=np.int64)],
     [-np.eye(6, dtype=np.int64), np.zeros((6, 6), dtype=np.int64)]]
)

# Symplectic representation of rho on (A_1..A_6, B_1..B_6), as printed.
M = np.array(
    [
        [0, 0, 0, 0, 0, 0, -1, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, -1, 1, 0, 0, 0],
        [-1, -1, -1, 0, 0, 0, 0, 0, -1, 0, 0, 0],
        [0, 0, 0, -1, 0, 1, 0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, -2, 0, 0, 0, 1, -1, 1],
        [0, 0, 0, 0, -1, 1, 0, 0, 0, 0, 1, -1],
        [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 1, -1, -2, 0, 0, 0, 0, -1, 0],
        [0, 0, 0, -1, 1, 1, 0, 0, 0, -1, 0, 0],
        [0, 0, 0, -1, 0, 3, 0, 0, 0, -1, 1, -1],
    ],
    dtype=np.int64,
)

SIGMA0 = np.array(
    [
        [0, 0, 0, 0, 0, 0, 1, -1, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 1, -1, 0, 0, 0],
        [1, 1, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0],
        [0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0],
        [-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [-1, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [-1, -1, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    ],
    dtype=np.int64,
)

SIGMA1 = np.array(
    [
        [1, 1, 1, 0, 0, 0, 1, 0, 0, 1, 1, 0],
        [0, 1, 1, 0, 1, 0, 0, 1, 0, 1, 0, 1],
        [0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0, 0],
        [0, 1, 2, 1, 1, 0, 1, 1, 0, 2, 1, 1],
        [1, 2, 2, 0, 1, 2, 0, 1, 1, 1, 2, 0],
        [0, 0, 1, 0, 1, 0, 1, 0, 0, 1, 0, 1],
        [-1, -1, -1, 0, 0, 1, 0, 0, 0, -1, 0, -1],
        [-1, -2, -2, 0, 0, 0, -1, 0, 0, -2, -1, -1],
        [-1, -2, -3, 0, -1, -1, -1, -1, 0, -2, -2, -1],
        [1, 1, 1, -1, 0, 1, 0, 0, 0, 1, 1, 0],
        [0, 0, -1, 0, -1, -1, 0, 0, -1, 0, 0, 0],
        [-1, -1, -1, 0, 0, -2, 1, -1, -1, 0, -1, 1],
    ],
    dtype=np.int64,
)


@dataclass(frozen=True)
class RhoPolynomial:
    """F(rho) = sum c_i rho^i, kept as a length-6 vector modulo 1 + rho + ... + rho^6."""

    coeffs: tuple

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        if len(c) > 7:
            # rho^7 = 1
            folded = [0] * 7
            for i, x in enumerate(c):
                folded[i % 7] += x
            c = folded
        c += [0] * (7 - len(c))
        top = c[6]
        c = tuple(x - top for x in c[:6])
        object.__setattr__(self, "coeffs", c)

    def __add__(self, other):
        return RhoPolynomial(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return RhoPolynomial(tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return RhoPolynomial(tuple(other * a for a in self.coeffs))
        out = [0] * 12
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RhoPolynomial(tuple(out))

    __rmul__ = __mul__

    def shift(self, k=1):
        return self * RhoPolynomial.monomial(k)

    @classmethod
    def monomial(cls, k):
        c = [0] * 7
        c[k % 7] = 1
        return cls(tuple(c))

    def at(self, z):
        """Evaluate at a CycNum (e.g. zeta^4)."""
        acc = CycNum.from_int(z.d, 0)
        p = CycNum.from_int(z.d, 1)
        for a in self.coeffs:
            acc = acc + a * p
            p = p * z
        return acc


def rho_poly(*terms):
    """rho_poly((0, 1), (2, 1)) is 1 + rho^2."""
    c = [0] * 7
    for k, a in terms:
        c[k % 7] += a
    return RhoPolynomial(tuple(c))


@dataclass(frozen=True)
class Cycle:
    """The class F_1(rho) gamma_1 + F_3(rho) gamma_3 in H_1(X_t, Z)."""

    f1: RhoPolynomial
    f3: RhoPolynomial

    @classmethod
    def from_coords(cls, v):
        v = [int(x) for x in v]
        return cls(RhoPolynomial(tuple(v[:6])), RhoPolynomial(tuple(v[6:])))

    def coords(self):
        return np.array(self.f1.coeffs + self.f3.coeffs, dtype=np.int64)

    def __add__(self, other):
        return Cycle(self.f1 + other.f1, self.f3 + other.f3)

    def __neg__(self):
        return Cycle(-self.f1, -self.f3)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k):
        return Cycle(k * self.f1, k * self.f3)

    def rho(self, k=1):
        return Cycle(self.f1.shift(k), self.f3.shift(k))

    def dot(self, other):
        """Topological intersection number."""
        return int(self.coords() @ GRAM_RHO @ other.coords())


GRAM_RHO = np.block(
    [[INT1, np.zeros((6, 6), dtype=np.int64)], [np.zeros((6, 6), dtype=np.int64), INT3]]
)

ZERO = rho_poly()
GAMMA1 = Cycle(rho_poly((0, 1)), ZERO)
GAMMA3 = Cycle(ZERO, rho_poly((0, 1)))

# Symplectic basis (A_1..A_6, B_1..B_6)
A_CYCLES = (
    Cycle(rho_poly((1, 1)), ZERO),
    Cycle(rho_poly((3, 1)), ZERO),
    Cycle(rho_poly((5, 1)), ZERO),
    Cycle(ZERO, rho_poly((0, 1), (2, 1))),
    Cycle(ZERO, rho_poly((1, -1), (4, 1), (5, 1))),
    Cycle(ZERO, rho_poly((0, 1), (1, 1), (2, 1))),
)
B_CYCLES = (
    Cycle(rho_poly((0, 1)), ZERO),
    Cycle(rho_poly((0, 1), (2, 1)), ZERO),
    Cycle(rho_poly((0, 1), (2, 1), (4, 1)), ZERO),
    Cycle(ZERO, rho_poly((5, 1))),
    Cycle(ZERO, rho_poly((3, 1))),
    Cycle(ZERO, rho_poly((0, 1), (1, 1), (4, -1), (5, -1))),
)
SYMPLECTIC_BASIS = A_CYCLES + B_CYCLES

# gamma_2 = A_1 + A_2 + A_3 + B_4 + B_5
GAMMA2 = A_CYCLES[0] + A_CYCLES[1] + A_CYCLES[2] + B_CYCLES[3] + B_CYCLES[4]


def intersection_matrices():
    """Int_1, Int_3 and the expression of gamma_2 in the rho-basis."""
    return INT1.copy(), GAMMA2, INT3.copy()


def rho_matrix():
    """Action of rho on rho-basis coordinates (row vectors): v -> v @ R."""
    rows = []
    for i in range(12):
        e = np.zeros(12, dtype=np.int64)
        e[i] = 1
        rows.append(Cycle.from_coords(e).rho().coords())
    return np.array(rows, dtype=np.int64)


def basis_matrix():
    """Rows: rho-basis coordinates of A_1..A_6, B_1..B_6."""
    return np.array([c.coords() for c in SYMPLECTIC_BASIS], dtype=np.int64)


def integer_inverse(m):
    """Inverse of a unimodular integer matrix, exactly."""
    from sympy import Matrix

    inv = Matrix(m.tolist()).inv()
    if any(x.q != 1 for x in inv):
        raise ValueError("matrix is not unimodular")
    return np.array(inv.tolist(), dtype=np.int64)


def symplectic_gram():
    """[e_i . e_j] over (A_1..A_6, B_1..B_6)."""
    P = basis_matrix()
    return P @ GRAM_RHO @ P.T


def symplectic_basis_check():
    """A_i.A_j = 0, B_i.B_j = 0, B_i.A_j = delta_ij; the Gram matrix is then J^T."""
    return bool(np.array_equal(symplectic_gram(), J.T))


def rho_in_symplectic_basis():
    """Matrix of rho in the (A, B) basis, derived from the cycle definitions.

    Row j holds the coordinates of rho(e_j); this is the convention
    (rho(A), rho(B)) = (A, B) M^T.
    """
    P = basis_matrix()
    return P @ rho_matrix() @ integer_inverse(P)


def is_symplectic(g):
    g = np.asarray(g, dtype=np.int64)
    return bool(np.array_equal(g.T @ J @ g, J))


def matrix_power(m, k):
    out = np.eye(m.shape[0], dtype=np.int64)
    for _ in range(k):
        out = out @ m
    return out


@dataclass
class SymplecticRep:
    M: np.ndarray
    sigma0: np.ndarray
    sigma1: np.ndarray
    checks: dict

    @property
    def ok(self):
        return all(self.checks.values())


def symplectic_rep():
    """M, sigma_0 = phi(h_0), sigma_1 = phi(h_1) as printed, with their defining checks."""
    I12 = np.eye(12, dtype=np.int64)
    cyclo = sum(matrix_power(M, k) for k in range(7))
    checks = {
        "M_symplectic": is_symplectic(M),
        "sigma0_symplectic": is_symplectic(SIGMA0),
        "sigma1_symplectic": is_symplectic(SIGMA1),
        "M_order_7": bool(np.array_equal(matrix_power(M, 7), I12)),
        "M_cyclotomic": not cyclo.any(),
        "sigma0_commutes": bool(np.array_equal(SIGMA0 @ M, M @ SIGMA0)),
        "sigma1_commutes": bool(np.array_equal(SIGMA1 @ M, M @ SIGMA1)),
        "M_from_cycles": bool(np.array_equal(rho_in_symplectic_basis(), M)),
    }
    return SymplecticRep(M.copy(), SIGMA0.copy(), SIGMA1.copy(), checks)


# phi : GL_2(Z[zeta]) -> GL_12(Z) ---------------------------------------------


def _z(*terms):
    return CycNum.from_monomials(7, dict(terms))


# Coefficients of u_1 (index 0) or u_3 (index 1) in the periods of omega_1
# over A_1..A_6, B_1..B_6.
PERIOD_COEFFS = (
    (_z((4, 1)), 0),
    (_z((5, 1)), 0),
    (_z((6, 1)), 0),
    (_z((0, 1), (1, 1)), 1),
    (_z((2, 1), (4, -1), (6, 1)), 1),
    (_z((0, 1), (1, 1), (4, 1)), 1),
    (_z((0, 1)), 0),
    (_z((0, 1), (1, 1)), 0),
    (_z((0, 1), (1, 1), (2, 1)), 0),
    (_z((6, 1)), 1),
    (_z((5, 1)), 1),
    (_z((0, 1), (4, 1), (2, -1), (6, -1)), 1),
)


def period_coefficients():
    """The map u -> (Pi_A1, Pi_B1) as a 12x2 complex matrix."""
    out = np.zeros((12, 2), dtype=complex)
    for i, (k, var) in enumerate(PERIOD_COEFFS):
        out[i, var] = complex(k)
    return out


def _basis_for(var):
    idx = [i for i, (_, v) in enumerate(PERIOD_COEFFS) if v == var]
    mat = np.array([[int(c) for c in PERIOD_COEFFS[i][0].coeffs] for i in idx], dtype=np.int64)
    return idx, mat


def _coords_in(var, x):
    idx, mat = _basis_for(var)
    if not x.is_integral():
        raise ValueError("phi needs entries in Z[zeta_7]")
    vec = np.array([int(c) for c in x.coeffs], dtype=np.int64)
    # vec = coords @ mat
    coords = vec @ integer_inverse(mat)
    return idx, coords


def phi(g):
    """Integer matrix with Phi_1(g u) = phi(g) Phi_1(u)."""
    if not g.is_integral():
        raise ValueError("phi needs entries in Z[zeta_7]")
    out = np.zeros((12, 12), dtype=np.int64)
    for i, (k, var) in enumerate(PERIOD_COEFFS):
        for w in range(2):
            entry = k * g[var, w]
            idx, coords = _coords_in(w, entry)
            out[i, idx] = coords
    return out


# Riemann form ------------------------------------------------------------------


def lam(x):
    """lambda(F_1 gamma_1 + F_3 gamma_3) = (F_1(zeta^4), F_3(zeta^4))."""
    z4 = CycNum.zeta(7, 4)
    return x.f1.at(z4), x.f3.at(z4)


def riemann_form(x, y):
    """(1/7) Tr((zeta^3 - zeta^4) conj(lambda x)^T H^{-1} lambda y)."""
    z = CycNum.zeta(7)
    hinv2 = 1 / (1 + z ** 3 + z ** 4)
    lx, ly = lam(x), lam(y)
    inner = lx[0].conj() * ly[0] + lx[1].conj() * hinv2 * ly[1]
    return ((z ** 3 - z ** 4) * inner).trace() / 7


def riemann_form_gram():
    return np.array(
        [[riemann_form(a, b) for b in SYMPLECTIC_BASIS] for a in SYMPLECTIC_BASIS], dtype=object
    )


# half-open chains as rational combinations of the symplectic basis

SEVENTH = rho_poly((0, 6), (1, 5), (2, 4), (3, 3), (4, 2), (5, 1))


def chain_in_basis(cycle):
    """Rational coordinates (over A_1..A_6, B_1..B_6) of cycle / 7."""
    P = basis_matrix()
    from sympy import Matrix, Rational

    sol = Matrix(P.tolist()).T.solve(Matrix(cycle.coords().tolist()))
    return [Rational(x) / 7 for x in sol]


def abel_jacobi_of_chain(cycle):
    """Split basis coordinates of cycle/7 into (tau-part a, 1-part b) mod 1.

    Integrals of the normalized forms over A_i give the rows of tau and over
    B_i give the identity, so the A-coefficients form a and the
    B-coefficients form b.
    """
    c = chain_in_basis(cycle)
    a = [Fraction(int(x.p), int(x.q)) for x in c[:6]]
    b = [Fraction(int(x.p), int(x.q)) for x in c[6:]]
    return a, b
