"""Closed-form pairings of ordered coordinate monomials with momentum
monomials, and pairing as differentiation."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import factorial

from ..alphabet import P, X
from ..hopf import CheckReport, PairingTable, combine, report_from_residual
from ..ncalg import NCPoly
from ..scalars import ONE, ZERO, Scalar, truncation
from .double import derive_coordinate_brackets
from .presentations import DEFAULT_PROFILE, base_pairing, build_translation_algebra, build_translation_group, c


def phase_space_pairing(N=6, profile=DEFAULT_PROFILE):
    """Pairing between coordinate words and momentum words."""
    brackets, _ = derive_coordinate_brackets(N, profile, check_degree=0)
    ha = build_translation_algebra(N)
    hg = build_translation_group(N, profile, brackets=brackets)
    return PairingTable(base_pairing(profile, with_lorentz=False), hg, ha)


def _delta_rs(r, s, l, n):
    # delta_rs only constrains anything when a spatial index is present
    if l == 0 and n == 0:
        return 1
    return 1 if r == s else 0


def closed_form_time_first(k, l, m, n, r, s):
    """<x0^k x_s^l, P_r^n P0^m> = hbar^(k+l) d_rs d^ln d^km k! l! (-i)^k i^l."""
    if l != n or k != m or not _delta_rs(r, s, l, n):
        return ZERO
    return (Scalar.monomial(factorial(k) * factorial(l), hbar=k + l)
            * c(im=-1) ** k * c(im=1) ** l)


def closed_form_space_first(k, l, m, n, r, s):
    """<x_s^l x0^k, P_r^n P0^m>; zero for k < m."""
    if k < m or l != n or not _delta_rs(r, s, l, n):
        return ZERO
    e = k - m
    coeff = Fraction(factorial(k) * factorial(l), factorial(e)) * Fraction(-n) ** e
    return (Scalar.monomial(coeff, hbar=k + l - e, lam=e)
            * c(im=-1) ** k * c(im=1) ** l)


def verify_closed_form_pairings(kmax=3, lmax=3, mmax=3, nmax=3, N=6, profile=DEFAULT_PROFILE,
                                pt=None):
    """Compare the pairing engine with both closed forms on the whole index grid."""
    pt = pt or phase_space_pairing(N, profile)
    reports = []
    count = 0
    with truncation(N):
        for k, l, m, n in itertools.product(range(kmax + 1), range(lmax + 1),
                                            range(mmax + 1), range(nmax + 1)):
            for r, s in itertools.product((1, 2, 3), repeat=2):
                a = (P[r],) * n + ("P0",) * m
                for label, bw, expected in (
                        ("time-first", ("x0",) * k + (X[s],) * l,
                         closed_form_time_first(k, l, m, n, r, s)),
                        ("space-first", (X[s],) * l + ("x0",) * k,
                         closed_form_space_first(k, l, m, n, r, s))):
                    value = pt.pair_words(bw, a)
                    count += 1
                    rep = report_from_residual(
                        "%s[k=%d,l=%d,m=%d,n=%d,r=%d,s=%d]" % (label, k, l, m, n, r, s),
                        value - expected, "k=%d l=%d m=%d n=%d r=%d s=%d" % (k, l, m, n, r, s))
                    if not rep.passed:
                        reports.append(rep)
    reports.append(CheckReport("grid", "pass", details={"count": count}))
    out = combine("pairing-grid", reports)
    out.details["count"] = count
    return out


def _exponents(word, gens):
    return tuple(word.count(g) for g in gens)


def _is_time_first(word):
    seen_space = False
    for gid in word:
        if gid not in X:
            return False
        if gid == "x0" and seen_space:
            return False
        seen_space = seen_space or gid != "x0"
    return True


def pair_by_differentiation(psi, f, profile=DEFAULT_PROFILE):
    """f(-i hbar d0, i hbar grad) psi at x = 0 for an ordered psi.

    psi must have every x0 to the left; f is any polynomial in the momenta.
    """
    factors = [c(im=profile.lower_sign(mu), h=1) for mu in range(4)]
    total = ZERO
    for pw, pc in psi.items():
        if not _is_time_first(pw):
            raise ValueError("psi is not ordered with x0 to the left: %s" % (pw,))
        xe = _exponents(pw, X)
        for fw, fc in f.items():
            if any(gid not in P for gid in fw):
                raise ValueError("f must be a polynomial in P: %s" % (fw,))
            pe = _exponents(fw, P)
            if xe != pe:
                continue
            v = ONE
            for mu in range(4):
                v = v * factors[mu] ** xe[mu] * factorial(xe[mu])
            total = total + pc * fc * v
    return total


def random_ordered_poly(rng, max_degree=4, terms=3):
    out = NCPoly()
    for _ in range(rng.randint(1, terms)):
        d = rng.randint(0, max_degree)
        w = sorted((rng.choice(X) for _ in range(d)), key=X.index)
        out = out + NCPoly.word(tuple(w), Scalar.const(rng.randint(-3, 3), rng.randint(-2, 2)))
    return out


def random_momentum_poly(rng, max_degree=4, terms=3):
    out = NCPoly()
    for _ in range(rng.randint(1, terms)):
        d = rng.randint(0, max_degree)
        w = tuple(rng.choice(P) for _ in range(d))
        out = out + NCPoly.word(w, Scalar.const(rng.randint(-3, 3), rng.randint(-2, 2)))
    return out


def check_differentiation_pairing(samples=20, seed=0, max_degree=4, N=6,
                                  profile=DEFAULT_PROFILE, pt=None):
    """pair_by_differentiation against the recursive engine on random inputs."""
    pt = pt or phase_space_pairing(N, profile)
    rng = random.Random(seed)
    reports = []
    with truncation(N):
        for i in range(samples):
            psi = random_ordered_poly(rng, max_degree)
            f = random_momentum_poly(rng, max_degree)
            res = pair_by_differentiation(psi, f, profile) - pt.pair(psi, f)
            reports.append(report_from_residual("diff-pair[%d]" % i, res, "%s | %s" % (psi, f)))
    return combine("differentiation-pairing", reports)
