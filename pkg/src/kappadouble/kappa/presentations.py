"""Bundled presentations: the kappa-Poincare algebra (bicrossproduct basis),
the kappa-Poincare group, their translation sectors, and the Weyl algebra."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from ..alphabet import (LAMBDA, METRIC, M_ALL, P, PH, ROTATIONS, X, XH,
                        delta, g, m_index)
from ..hopf import HopfPresentation
from ..ncalg import NCPoly, RewriteSystem, TensorPoly
from ..scalars import ZERO, I, Scalar, truncation


@dataclass(frozen=True)
class ConventionProfile:
    """How the phase-space symbols x0, P0 relate to the upper-index group generators.

    ``index_mode``: ``lowered`` reads x0 as x_0 = -x^0; ``plain`` reads x0 as
    x^0.  ``policy``: ``derive`` ships tables corrected to the engine-derived
    values, ``paper-literal`` ships them as printed.
    """

    index_mode: str = "lowered"
    policy: str = "derive"
    metric: tuple = METRIC

    def __post_init__(self):
        if self.index_mode not in ("lowered", "plain"):
            raise ValueError("index_mode must be 'lowered' or 'plain'")
        if self.policy not in ("derive", "paper-literal"):
            raise ValueError("policy must be 'derive' or 'paper-literal'")

    @property
    def name(self):
        return "%s/%s" % (self.index_mode, self.policy)

    def lower_sign(self, mu):
        return self.metric[mu] if self.index_mode == "lowered" else 1


DEFAULT_PROFILE = ConventionProfile()
PAPER_LITERAL = ConventionProfile(policy="paper-literal")


def gen(gid):
    return NCPoly.gen(gid)


def c(re=0, im=0, h=0, l=0):
    return Scalar.monomial(re, im, hbar=h, lam=l)


def M(mu, nu):
    """M_{mu nu} as a polynomial in the stored generators (mu < nu)."""
    sign, gid = m_index(mu, nu)
    if not sign:
        return NCPoly()
    return NCPoly.gen(gid, Scalar.coerce(sign))


def M_mixed(alpha, mu, raise_first=False):
    """M_alpha^mu = g^{mu mu} M_{alpha mu}, or M^mu_alpha = g^{mu mu} M_{mu alpha}."""
    if raise_first:
        return M(mu, alpha) * METRIC[mu]
    return M(alpha, mu) * METRIC[mu]


def x_up(mu, profile=DEFAULT_PROFILE):
    """x^mu in terms of the stored generator x{mu}."""
    return gen(X[mu]) * profile.lower_sign(mu)


def x_lower(mu, profile=DEFAULT_PROFILE):
    """x_mu = g_{mu mu} x^mu."""
    return x_up(mu, profile) * METRIC[mu]


def L(mu, nu):
    return gen("L%d%d" % (mu, nu))


def L_lower(alpha, nu):
    """Lambda_{alpha nu} = g_{alpha alpha} Lambda^alpha_nu."""
    return L(alpha, nu) * METRIC[alpha]


def exp_p0(sign, order):
    """exp(sign * lam * P0 / hbar) as a truncated series in P0."""
    out = NCPoly()
    for n in range(order + 1):
        coeff = Scalar.monomial(Fraction(sign ** n, factorial(n)), hbar=-n, lam=n)
        out = out + NCPoly.word(("P0",) * n, coeff)
    return out


def boost_function(order):
    """hbar^2 kappa sinh(P0/hbar kappa) exp(-P0/hbar kappa) expanded in lam.

    Equal to (hbar^2 / 2 lam)(1 - exp(-2 lam P0 / hbar)).
    """
    out = NCPoly()
    for n in range(1, order + 2):
        coeff = Scalar.monomial(Fraction((-1) ** (n + 1) * 2 ** (n - 1), factorial(n)),
                                hbar=2 - n, lam=n - 1)
        out = out + NCPoly.word(("P0",) * n, coeff)
    return out


def p_squared():
    return sum((gen(P[k]) * gen(P[k]) for k in (1, 2, 3)), NCPoly())


def lorentz_bracket(m1, m2):
    """[M_{mu nu}, M_{lam sig}] from the Lorentz algebra."""
    (mu, nu), (la, si) = m1, m2
    ih = c(im=1, h=1)
    return (M(nu, la) * g(mu, si) + M(mu, si) * g(nu, la)
            - M(nu, si) * g(mu, la) - M(mu, la) * g(nu, si)) * ih


def boost_momentum_bracket(k, j, order):
    """[M_{k0}, P_j] = i delta_kj (boost_function + lam/2 P^2) - i lam P_k P_j."""
    out = NCPoly()
    if k == j:
        out = out + (boost_function(order) + p_squared() * c(Fraction(1, 2), l=1)) * I
    return out - gen(P[k]) * gen(P[j]) * c(im=1, l=1)


def momentum_bracket(m, mu, order, profile=DEFAULT_PROFILE):
    """[M_{ab}, P_mu] for a stored M generator with indices m = (a, b), a < b.

    Boost brackets are printed with the opposite overall sign to what the
    pairing <Lambda, M> and the coproduct of M_k0 require in signature
    (-,+,+,+); ``derive`` flips them, ``paper-literal`` keeps them.
    """
    a, b = m
    ih = c(im=1, h=1)
    if a != 0:
        i, j = a, b
        return (gen(P[j]) * g(i, mu) - gen(P[i]) * g(j, mu)) * (-ih)
    k = b
    s = 1 if profile.policy == "paper-literal" else -1
    # stored M_{0k} = -M_{k0}
    if mu == 0:
        return -(gen(P[k]) * ih) * s
    return -boost_momentum_bracket(k, mu, order) * s


def build_kappa_algebra(N=6, profile=DEFAULT_PROFILE):
    """kappa-Poincare algebra: relations and coproducts, lam-expanded to order N."""
    if N < 2:
        raise ValueError("truncation order must be >= 2")
    with truncation(N):
        gens = M_ALL + P
        rs = RewriteSystem(gens, N, "kappa-algebra")
        rs.commute_all(P)
        for a in M_ALL:
            ia = _m_indices(a)
            for b in M_ALL:
                if a < b:
                    rs.set_commutator(a, b, lorentz_bracket(ia, _m_indices(b)))
            for mu in range(4):
                rs.set_commutator(a, P[mu], momentum_bracket(ia, mu, N, profile))
        rs.finalize()
        E = exp_p0(-1, N)
        one = NCPoly.const()
        cop = {}
        for r in ROTATIONS:
            cop[r] = TensorPoly.from_polys(gen(r), one) + TensorPoly.from_polys(one, gen(r))
        for k in (1, 2, 3):
            b = "M0%d" % k
            # Delta(M_k0) = M_k0 (x) E + 1 (x) M_k0 + (lam/hbar) M_kl (x) P_l, M_0k = -M_k0
            t = TensorPoly.from_polys(gen(b), E) + TensorPoly.from_polys(one, gen(b))
            for l in (1, 2, 3):
                mk = M(k, l)
                if mk:
                    t = t - TensorPoly.from_polys(mk, gen(P[l]), coeff=c(1, h=-1, l=1))
            cop[b] = t
        cop["P0"] = TensorPoly.from_polys(gen("P0"), one) + TensorPoly.from_polys(one, gen("P0"))
        for k in (1, 2, 3):
            cop[P[k]] = TensorPoly.from_polys(gen(P[k]), E) + TensorPoly.from_polys(one, gen(P[k]))
        counit = {gid: ZERO for gid in gens}
        return HopfPresentation("kappa-algebra", rs, cop, counit, "algebra")


def _m_indices(gid):
    return int(gid[1]), int(gid[2])


def build_translation_algebra(N=6):
    """Commuting four-momenta with the coproduct of the bicrossproduct basis."""
    with truncation(N):
        rs = RewriteSystem(P, N, "momenta")
        rs.commute_all(P)
        E = exp_p0(-1, N)
        one = NCPoly.const()
        cop = {"P0": TensorPoly.from_polys(gen("P0"), one) + TensorPoly.from_polys(one, gen("P0"))}
        for k in (1, 2, 3):
            cop[P[k]] = TensorPoly.from_polys(gen(P[k]), E) + TensorPoly.from_polys(one, gen(P[k]))
        return HopfPresentation("momenta", rs, cop, {p: ZERO for p in P}, "algebra")


def group_xx_bracket(mu, nu, profile=DEFAULT_PROFILE):
    """[x^mu, x^nu] = (i/kappa)(delta^mu_0 x^nu - delta^nu_0 x^mu)."""
    return (x_up(nu, profile) * delta(mu, 0) - x_up(mu, profile) * delta(nu, 0)) * c(im=1, l=1)


def group_lx_bracket(mu, nu, la, profile=DEFAULT_PROFILE):
    """[Lambda^mu_nu, x^lam] (upper-index x).

    The printed g^{mu lam} term carries a + sign, which breaks the Jacobi
    identity with [x, x] in signature (-,+,+,+); ``derive`` uses -.
    """
    s = 1 if profile.policy == "paper-literal" else -1
    t = (L(mu, 0) - NCPoly.const() * delta(mu, 0)) * L(la, nu)
    t = t + (L(0, nu) - NCPoly.const() * delta(0, nu)) * (g(mu, la) * s)
    return t * c(im=-1, l=1)


def build_kappa_group(N=6, profile=DEFAULT_PROFILE):
    """kappa-Poincare group: [x,x], [Lambda,x], [Lambda,Lambda] and the matrix coproduct."""
    if N < 2:
        raise ValueError("truncation order must be >= 2")
    with truncation(N):
        gens = X + LAMBDA
        rs = RewriteSystem(gens, N, "kappa-group")
        rs.commute_all(LAMBDA)
        for mu in range(4):
            for nu in range(mu + 1, 4):
                # [x^mu, x^nu] with both sides rescaled to stored generators
                s = profile.lower_sign(mu) * profile.lower_sign(nu)
                rs.set_commutator(X[mu], X[nu], group_xx_bracket(mu, nu, profile) * s)
        for mu in range(4):
            for nu in range(4):
                for la in range(4):
                    rs.set_commutator("L%d%d" % (mu, nu), X[la],
                                      group_lx_bracket(mu, nu, la, profile) * profile.lower_sign(la))
        rs.finalize()
        one = NCPoly.const()
        cop = {}
        for mu in range(4):
            t = TensorPoly.from_polys(gen(X[mu]), one)
            for al in range(4):
                t = t + TensorPoly.from_polys(L(mu, al), x_up(al, profile),
                                              coeff=Scalar.coerce(profile.lower_sign(mu)))
            cop[X[mu]] = t
            for nu in range(4):
                t = TensorPoly(arity=2)
                for al in range(4):
                    t = t + TensorPoly.from_polys(L(mu, al), L(al, nu))
                cop["L%d%d" % (mu, nu)] = t
        counit = {x: ZERO for x in X}
        for mu in range(4):
            for nu in range(4):
                counit["L%d%d" % (mu, nu)] = Scalar.coerce(delta(mu, nu))
        return HopfPresentation("kappa-group", rs, cop, counit, "group")


def build_translation_group(N=6, profile=DEFAULT_PROFILE, brackets=None):
    """Coordinates with primitive coproduct (Lambda set to the identity).

    ``brackets`` maps (a, b) generator pairs to [a, b]; by default the
    [x, x] relations of the group are used.
    """
    with truncation(N):
        rs = RewriteSystem(X, N, "coordinates")
        if brackets is None:
            brackets = {}
            for mu in range(4):
                for nu in range(mu + 1, 4):
                    s = profile.lower_sign(mu) * profile.lower_sign(nu)
                    brackets[(X[mu], X[nu])] = group_xx_bracket(mu, nu, profile) * s
        for (a, b), v in brackets.items():
            rs.set_commutator(a, b, v)
        rs.commute_all(X)
        rs.finalize()
        one = NCPoly.const()
        cop = {x: TensorPoly.from_polys(gen(x), one) + TensorPoly.from_polys(one, gen(x)) for x in X}
        return HopfPresentation("coordinates", rs, cop, {x: ZERO for x in X}, "group")


def base_pairing(profile=DEFAULT_PROFILE, with_lorentz=True):
    """<x^mu, P_nu> = i hbar delta, <Lambda^mu_nu, M_ab> = i hbar (d^mu_a g_nb - d^mu_b g_na).

    Pairings of x with M and of Lambda with P are zero.
    """
    base = {}
    for mu in range(4):
        for nu in range(4):
            base[(X[mu], P[nu])] = c(im=profile.lower_sign(mu) * delta(mu, nu), h=1)
        for m in M_ALL:
            base[(X[mu], m)] = ZERO
    if with_lorentz:
        for mu in range(4):
            for nu in range(4):
                lid = "L%d%d" % (mu, nu)
                for p in P:
                    base[(lid, p)] = ZERO
                for m in M_ALL:
                    a, b = _m_indices(m)
                    val = delta(mu, a) * g(nu, b) - delta(mu, b) * g(nu, a)
                    base[(lid, m)] = c(im=val, h=1)
    return base


def build_weyl(N=6):
    """[xh_mu, ph_nu] = i hbar g_{mu nu}; everything else commutes."""
    with truncation(N):
        rs = RewriteSystem(XH + PH, N, "weyl")
        for mu in range(4):
            for nu in range(4):
                rs.set_commutator(XH[mu], PH[nu], NCPoly.const(c(im=g(mu, nu), h=1)))
        rs.commute_all(XH)
        rs.commute_all(PH)
        return rs
