"""The classical basis change of the momenta, the realization of the phase
space on a Weyl algebra, and adjoint-series conjugation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from ..alphabet import M_ALL, P, PH, X, XH, g
from ..hopf import FAIL, CheckReport, combine, report_from_residual
from ..ncalg import NCPoly, substitute
from ..scalars import truncation
from .double import _mismatch_status, family_of, phase_space_table
from .presentations import (DEFAULT_PROFILE, _m_indices, build_kappa_algebra, build_weyl, c,
                            exp_p0, gen, p_squared)


class SeriesNotTerminated(RuntimeError):
    pass


# -- basis change -----------------------------------------------------------

def sinh_p0(order):
    """(hbar/lam) sinh(lam P0 / hbar), expanded through lam^order."""
    out = NCPoly()
    for n in range(1, order + 2, 2):
        out = out + NCPoly.word(("P0",) * n,
                                c(Fraction(1, factorial(n)), h=1 - n, l=n - 1))
    return out


def classical_momenta(N=6):
    """P~_mu as polynomials in P: P~_i = P_i k(P0), P~_0 = h(P0, P^2), k = exp(lam P0/hbar)."""
    with truncation(N):
        k = exp_p0(1, N)
        out = {P[i]: gen(P[i]) * k for i in (1, 2, 3)}
        out["P0"] = sinh_p0(N) + p_squared() * k * c(Fraction(1, 2), h=-1, l=1)
    return out


def classical_bracket(m, mu, pt, profile=DEFAULT_PROFILE):
    """Undeformed [M_ab, P~_mu] = -i hbar (g_a mu P~_b - g_b mu P~_a).

    Under ``paper-literal`` the boosts follow the printed (opposite) sign.
    """
    a, b = _m_indices(m)
    v = (pt[P[b]] * g(a, mu) - pt[P[a]] * g(b, mu)) * c(im=-1, h=1)
    if a == 0 and profile.policy == "paper-literal":
        v = -v
    return v


def classical_basis_change(N=6, profile=DEFAULT_PROFILE):
    """Check that P~ obeys the undeformed Poincare brackets through lam^N."""
    ha = build_kappa_algebra(N, profile)
    rs = ha.rewrite
    pt = classical_momenta(N)
    reports = []
    with truncation(N):
        for mu in range(4):
            for nu in range(mu + 1, 4):
                res = rs.commutator(pt[P[mu]], pt[P[nu]])
                reports.append(report_from_residual("[P~%d,P~%d]" % (mu, nu), res))
        for m in M_ALL:
            fam = "boost" if m.startswith("M0") else "rotation"
            for mu in range(4):
                res = rs.commutator(gen(m), pt[P[mu]]) - rs.normal_order(classical_bracket(m, mu, pt, profile))
                reports.append(report_from_residual("%s[%s,P~%d]" % (fam, m, mu), res))
        # lam^0 truncation of each rule reproduces the undeformed algebra
        one = {p: gen(p) for p in P}
        for m in M_ALL:
            for mu in range(4):
                res = rs.bracket(m, P[mu]).classical_part() - classical_bracket(m, mu, one, profile)
                reports.append(report_from_residual("classical[%s,%s]" % (m, P[mu]), res))
        reports.append(report_from_residual("P~0 at lam^0", pt["P0"].classical_part() - gen("P0")))
    return combine("basis-change", reports)


# -- Weyl realization -------------------------------------------------------

def dilation():
    """x^_k p^_k + p^_k x^_k summed over space."""
    out = NCPoly()
    for k in (1, 2, 3):
        out = out + gen(XH[k]) * gen(PH[k]) + gen(PH[k]) * gen(XH[k])
    return out


def realization_map(sign=1):
    """x_k -> x^_k, x0 -> x^_0 + sign (lam / 2 hbar) D, P_mu -> p^_mu."""
    mapping = {X[k]: gen(XH[k]) for k in (1, 2, 3)}
    mapping["x0"] = gen("xh0") + dilation() * c(Fraction(sign, 2), h=-1, l=1)
    for mu in range(4):
        mapping[P[mu]] = gen(PH[mu])
    return mapping


def realized_table(N=6, sign=1):
    """All phase-space commutators computed in the Weyl algebra."""
    rs = build_weyl(N)
    mapping = realization_map(sign)
    out = {}
    with truncation(N):
        for (a, b) in phase_space_table():
            out[(a, b)] = rs.commutator(mapping[a], mapping[b])
    return rs, mapping, out


def weyl_realization_check(N=6, profile=DEFAULT_PROFILE):
    """Realized commutators against the phase-space table mapped into the Weyl algebra.

    ``details["families"]`` says which displayed families agree; with the
    derived table every family agrees.
    """
    rs, mapping, realized = realized_table(N)
    table = phase_space_table(profile)
    reports = []
    families = {}
    status = _mismatch_status(profile)
    with truncation(N):
        for key, val in realized.items():
            res = val - substitute(table[key], mapping, rs)
            rep = report_from_residual("weyl[%s,%s]" % key, res, "%s %s" % key, fail_status=status)
            reports.append(rep)
            fam = family_of(*key)
            families[fam] = families.get(fam, True) and rep.passed
            if val.truncate(1) != val:
                reports.append(CheckReport("weyl-lam1[%s,%s]" % key, FAIL, val))
    out = combine("weyl-realization", reports)
    out.details["families"] = families
    return out


# -- adjoint series ---------------------------------------------------------

@dataclass
class SeriesResult:
    value: NCPoly
    commutators: int


def conjugation_series(A, X_, rs, max_terms=20):
    """exp(ad_A) X = X + [A, X] + [A, [A, X]]/2! + ...

    Stops at the first vanishing nested commutator; ``commutators`` counts the
    nonzero ones.
    """
    with truncation(rs.order):
        value = rs.normal_order(X_)
        term = value
        for n in range(1, max_terms + 1):
            term = rs.commutator(A, term) * c(Fraction(1, n))
            if not term:
                return SeriesResult(value, n - 1)
            value = value + term
    raise SeriesNotTerminated("adjoint series still nonzero after %d terms: %s" % (max_terms, term))


def conjugator_exponent(sign=1):
    """The exponent A of U = exp(A): sign * (i / 2 kappa hbar^2) D p^_0."""
    return dilation() * gen("ph0") * c(im=Fraction(sign, 2), h=-2, l=1)


def conjugation_check(N=6):
    """Adjoint series for U x^ U^-1 on every Weyl generator.

    x^_0 picks up exactly one commutator and lands on x^_0 - (lam/2hbar) D,
    the realization with the opposite sign; U^-1 . U gives the realization
    itself.  x^_k and p^_l are not invariant: their series only stop through
    the lam truncation, which is detected by comparing two orders.
    """
    details = {}
    reports = []
    for order in (N, N + 2):
        rs = build_weyl(order)
        for sign in (1, -1):
            A = conjugator_exponent(sign)
            for target in XH + PH:
                try:
                    res = conjugation_series(A, gen(target), rs, max_terms=order + 4)
                    details[(order, sign, target)] = res
                except SeriesNotTerminated:
                    details[(order, sign, target)] = None
    rs = build_weyl(N)
    with truncation(N):
        for sign in (1, -1):
            res = details[(N, sign, "xh0")]
            expected = realization_map(-sign)["x0"]
            reports.append(report_from_residual("U%+d x^0" % sign, res.value - rs.normal_order(expected)))
            if res.commutators != 1:
                reports.append(CheckReport("U%+d x^0 terms" % sign, FAIL, None,
                                           details={"commutators": res.commutators}))
    out = combine("conjugation", reports)
    out.details["terms"] = {
        "%s/%s" % (t, "U" if s == 1 else "U^-1"):
            (details[(N, s, t)].commutators, details[(N + 2, s, t)].commutators)
        for (o, s, t) in details if o == N}
    out.details["terminates_exactly"] = {
        k: v[0] == v[1] for k, v in out.details["terms"].items()}
    return out
