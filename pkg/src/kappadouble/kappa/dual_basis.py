"""Coordinates dual to the classical momenta, and the finite-difference
conditions they are expected to satisfy.

The solver only uses the pairing; the finite-difference operator works on
commuting polynomials and is an independent check.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from ..alphabet import P, X
from ..hopf import CheckReport, combine, report_from_residual
from ..ncalg import NCPoly
from ..scalars import ONE, ZERO, NotInvertible, Scalar, get_order, truncation
from .pairings import pair_by_differentiation
from .presentations import DEFAULT_PROFILE, c
from .realization import classical_momenta


_HALF = Fraction(1, 2)


class SingularSystem(ArithmeticError):
    def __init__(self, degree, message=""):
        super().__init__("dual-basis system is singular at degree %d %s" % (degree, message))
        self.degree = degree


# -- commuting polynomials in x0..x3 -----------------------------------------

class CPoly:
    """Commutative polynomial: exponent tuple (e0, e1, e2, e3) -> Scalar."""

    def __init__(self, terms=None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def var(cls, mu):
        e = [0, 0, 0, 0]
        e[mu] = 1
        return cls({tuple(e): ONE})

    @classmethod
    def const(cls, s=ONE):
        return cls({(0, 0, 0, 0): Scalar.coerce(s)})

    @classmethod
    def from_ordered(cls, p):
        """Read an ordered NCPoly in x as a commuting polynomial."""
        out = {}
        for word, coeff in p.items():
            e = tuple(word.count(x) for x in X)
            out[e] = out.get(e, ZERO) + coeff
        return cls(out)

    def to_ordered(self):
        out = NCPoly()
        for e, coeff in self.terms.items():
            word = sum(((X[mu],) * e[mu] for mu in range(4)), ())
            out = out + NCPoly.word(word, coeff)
        return out

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, ZERO) + v
        return CPoly(out)

    def __neg__(self):
        return CPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, CPoly):
            s = Scalar.coerce(other)
            return CPoly({k: v * s for k, v in self.terms.items()})
        out = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, ZERO) + v1 * v2
        return CPoly(out)

    def __pow__(self, n):
        out = CPoly.const()
        for _ in range(n):
            out = out * self
        return out

    def derivative(self, mu, times=1):
        out = self
        for _ in range(times):
            acc = {}
            for e, v in out.terms.items():
                if e[mu]:
                    k = list(e)
                    k[mu] -= 1
                    acc[tuple(k)] = acc.get(tuple(k), ZERO) + v * e[mu]
            out = CPoly(acc)
        return out

    def laplacian(self):
        out = CPoly()
        for k in (1, 2, 3):
            out = out + self.derivative(k, 2)
        return out

    def shift_time(self, a):
        """psi(x0 + a, x) for a Scalar a, by binomial expansion."""
        out = {}
        for e, v in self.terms.items():
            for j in range(e[0] + 1):
                k = (e[0] - j,) + e[1:]
                binom = factorial(e[0]) // (factorial(j) * factorial(e[0] - j))
                out[k] = out.get(k, ZERO) + v * (a ** j) * binom
        return CPoly(out)

    def map_scalars(self, fn):
        return CPoly({k: fn(v) for k, v in self.terms.items()})

    def at_zero(self):
        return self.terms.get((0, 0, 0, 0), ZERO)

    def __repr__(self):
        return "CPoly(%s)" % self.to_ordered()


def difference_operator(psi):
    """((kappa/2)(1 - exp((2i/kappa) d0)) - (1/2kappa) Laplacian) psi.

    The shift is exact on polynomials and kappa/2 = 1/(2 lam) is an exact
    division of the lam-divisible difference.
    """
    diff = psi - psi.shift_time(c(im=2, l=1))
    half = diff.map_scalars(lambda s: s.divide_by_lambda() * _HALF)
    return half - psi.laplacian() * c(_HALF, l=1)


def finite_difference_apply(F, m, n, r):
    """D^m d_r^n F(x0 - i(m+n)/kappa, x) at x = 0, D the difference operator above.

    ``F`` may be an NCPoly of ordered x-words or a CPoly.  The truncation is
    raised internally because each D divides by lam once.
    """
    psi = F if isinstance(F, CPoly) else CPoly.from_ordered(F)
    base = get_order()
    with truncation(base + m + 1):
        psi = psi.shift_time(c(im=-(m + n), l=1))
        psi = psi.derivative(r, n) if n else psi
        for _ in range(m):
            psi = difference_operator(psi)
        value = psi.at_zero()
    return value.truncate(base)


# -- solver ------------------------------------------------------------------

def monomials(degree, nvars=4):
    """Exponent tuples of total degree 1..degree in a fixed enumeration."""
    out = []
    for d in range(1, degree + 1):
        for combo in itertools.combinations_with_replacement(range(nvars), d):
            out.append(tuple(combo.count(v) for v in range(nvars)))
    return out


def _ordered_word(e, gens):
    return sum(((gens[mu],) * e[mu] for mu in range(4)), ())


def _monomial_poly(e, images):
    out = NCPoly.const()
    for mu in range(4):
        for _ in range(e[mu]):
            out = out * images[P[mu]]
    return out


def _pivot_ok(s):
    if not s:
        return False
    try:
        s.inverse()
    except NotInvertible:
        return False
    return s.min_lam() == 0


def solve_linear(A, B, degree=0):
    """Solve A X = B over Scalars by Gaussian elimination (B has several columns)."""
    n = len(A)
    A = [row[:] for row in A]
    B = [row[:] for row in B]
    for col in range(n):
        piv = next((r for r in range(col, n) if _pivot_ok(A[r][col])), None)
        if piv is None:
            raise SingularSystem(degree, "(column %d)" % col)
        A[col], A[piv] = A[piv], A[col]
        B[col], B[piv] = B[piv], B[col]
        inv = A[col][col].inverse()
        A[col] = [v * inv for v in A[col]]
        B[col] = [v * inv for v in B[col]]
        for r in range(n):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
                B[r] = [a - f * b for a, b in zip(B[r], B[col])]
    return B


@dataclass
class DualBasisSolution:
    F0: NCPoly
    F: dict
    degree: int
    report: CheckReport = None
    details: dict = field(default_factory=dict)


def solve_dual_basis(degree=3, N=6, profile=DEFAULT_PROFILE, shuffle_seed=None, check=True):
    """Ordered polynomials F0, F_l with <:F_mu:, P~-monomial> canonical up to ``degree``.

    The canonical values are <x~_l, P~_k> = i hbar delta_kl,
    <x~_0, P~_0> = -i hbar and zero on every other P~ monomial.
    ``shuffle_seed`` permutes the unknowns, which must not change the answer.
    """
    with truncation(N):
        images = classical_momenta(N)
        basis = monomials(degree)
        if shuffle_seed is not None:
            random.Random(shuffle_seed).shuffle(basis)
        rows = []
        for alpha in basis:
            f = _monomial_poly(alpha, images)
            row = [pair_by_differentiation(NCPoly.word(_ordered_word(beta, X)), f, profile)
                   for beta in basis]
            rows.append(row)
        rhs = []
        for alpha in basis:
            rhs.append([c(im=profile.lower_sign(mu), h=1) if alpha == _unit(mu) else ZERO
                        for mu in range(4)])
        sol = solve_linear(rows, rhs, degree)
        polys = []
        for mu in range(4):
            p = NCPoly()
            for beta, row in zip(basis, sol):
                if row[mu]:
                    p = p + NCPoly.word(_ordered_word(beta, X), row[mu])
            polys.append(p)
    sol = DualBasisSolution(polys[0], {l: polys[l] for l in (1, 2, 3)}, degree)
    if check:
        sol.report = check_dual_basis(sol, degree, degree, N)
    return sol


def _unit(mu):
    e = [0, 0, 0, 0]
    e[mu] = 1
    return tuple(e)


def _expected_time(k, m):
    if k != m:
        return ZERO
    return c(im=-1) ** k * factorial(k)


def _expected_space(l, n, r, s):
    if l != n or (l + n and r != s):
        return ZERO
    return Scalar.coerce(factorial(n))


def check_dual_basis(sol, kmax=3, lmax=3, N=6):
    """Finite-difference conditions on a solved dual basis.

    time: D^m F0^k (x0 - i m / kappa) at 0 = (-i)^k k! delta_km
    space: d_r^n F_s^l (-i n / kappa, x) at 0 = n! delta_rs delta_ln
    """
    reports = []
    with truncation(N):
        f0 = CPoly.from_ordered(sol.F0)
        reports.append(report_from_residual("F0 at lam^0",
                                            sol.F0.classical_part() - NCPoly.gen("x0")))
        for l in (1, 2, 3):
            reports.append(report_from_residual("F%d at lam^0" % l,
                                                sol.F[l].classical_part() - NCPoly.gen(X[l])))
        for k in range(kmax + 1):
            for m in range(kmax + 1):
                v = finite_difference_apply(f0 ** k, m, 0, 1)
                rep = report_from_residual("time[k=%d,m=%d]" % (k, m), v - _expected_time(k, m),
                                           "k=%d m=%d" % (k, m))
                reports.append(rep)
        for l in range(lmax + 1):
            for n in range(lmax + 1):
                for r, s in itertools.product((1, 2, 3), repeat=2):
                    fs = CPoly.from_ordered(sol.F[s]) ** l
                    v = finite_difference_apply(fs, 0, n, r)
                    rep = report_from_residual("space[l=%d,n=%d,r=%d,s=%d]" % (l, n, r, s),
                                               v - _expected_space(l, n, r, s),
                                               "l=%d n=%d r=%d s=%d" % (l, n, r, s))
                    reports.append(rep)
    return combine("dual-basis", reports)
