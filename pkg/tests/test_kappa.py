from fractions import Fraction

import pytest

from kappadouble.alphabet import P, ROTATIONS, X, g as metric
from kappadouble.hopf import ERRATUM, PASS
from kappadouble.kappa.double import (build_full_double, build_phase_space, cross_table,
                                      derive_coordinate_brackets, phase_space_jacobi_residual,
                                      phase_space_table)
from kappadouble.kappa.dual_basis import (CPoly, SingularSystem, finite_difference_apply,
                                          solve_dual_basis, solve_linear)
from kappadouble.kappa.pairings import (check_differentiation_pairing, closed_form_space_first,
                                        closed_form_time_first, pair_by_differentiation,
                                        verify_closed_form_pairings)
from kappadouble.kappa.presentations import (DEFAULT_PROFILE, PAPER_LITERAL, ConventionProfile,
                                             _m_indices, build_kappa_group, x_up)
from kappadouble.kappa.realization import (SeriesNotTerminated, classical_basis_change,
                                           classical_momenta, conjugation_check, conjugation_series,
                                           conjugator_exponent, dilation, realized_table,
                                           weyl_realization_check)
from kappadouble.ncalg import NCPoly
from kappadouble.scalars import ONE, ZERO, Scalar, truncation

PLAIN = ConventionProfile(index_mode="plain")


def c(re=0, im=0, h=0, l=0):
    return Scalar.monomial(re, im, hbar=h, lam=l)


def g(gid):
    return NCPoly.gen(gid)


# -- presentations ----------------------------------------------------------

def test_rotation_momentum_rules(algebra, algebra_literal):
    for ha in (algebra, algebra_literal):
        for m in ROTATIONS:
            i, j = _m_indices(m)
            for mu in range(4):
                want = (g(P[j]) * metric(i, mu) - g(P[i]) * metric(j, mu)) * c(im=-1, h=1)
                assert ha.rewrite.commutator(g(m), g(P[mu])) == want


def test_boost_p0_rule(algebra, algebra_literal):
    # [M_i0, P0] = i hbar P_i as printed; the default profile flips the boost sign
    for i in (1, 2, 3):
        m_i0 = -g("M0%d" % i)
        assert algebra_literal.rewrite.commutator(m_i0, g("P0")) == g(P[i]) * c(im=1, h=1)
        assert algebra.rewrite.commutator(m_i0, g("P0")) == g(P[i]) * c(im=-1, h=1)


def test_group_relations(group):
    rs = group.rewrite
    for k in (1, 2, 3):
        assert rs.commutator(x_up(0), x_up(k)) == x_up(k) * c(im=1, l=1)
    assert rs.commutator(g("L01"), g("L23")) == NCPoly()
    assert rs.commutator(g("L00"), g("L00")) == NCPoly()


def test_literal_group_fails_jacobi_classically_fine():
    hg = build_kappa_group(6, PAPER_LITERAL)
    with truncation(6):
        res = hg.rewrite.jacobi(g("x0"), g("x1"), g("L10"))
    assert res == NCPoly.const(c(2, l=2)) - g("L00") * c(2, l=2)


# -- phase space ------------------------------------------------------------

def test_phase_space_matches_derived_table():
    res = build_phase_space(6)
    assert res.report.status == PASS
    assert all(res.families.values())
    assert len(res.families) == 7


def test_phase_space_printed_table_differs_only_in_x0_xk(phase):
    _, derived = phase
    printed = phase_space_table(PAPER_LITERAL)
    bad = [k for k in printed if derived[k] != printed[k]]
    assert bad == [("x0", "x1"), ("x0", "x2"), ("x0", "x3")]
    for k in (1, 2, 3):
        assert derived[("x0", X[k])] == g(X[k]) * c(im=-1, l=1)
        assert derived[(X[k], "P0")] == NCPoly()
        assert derived[(X[k], P[k])] == NCPoly.const(c(im=1, h=1))


def test_phase_space_closure(phase):
    _, derived = phase
    for v in derived.values():
        assert v.generators() <= set(X + P)


def test_coordinate_brackets_are_dual():
    brackets, rep = derive_coordinate_brackets(6, check_degree=3)
    assert rep.passed
    assert brackets[("x0", "x2")] == g("x2") * c(im=-1, l=1)
    assert brackets[("x1", "x3")] == NCPoly()


def test_literal_phase_space_is_erratum():
    res = build_phase_space(6, PAPER_LITERAL)
    assert res.report.status == ERRATUM
    assert [f for f, ok in res.families.items() if not ok] == ["[x_0,x_k]"]


def test_jacobi_residual_oracle():
    for k in (1, 2, 3):
        for l in (1, 2, 3):
            lit = phase_space_jacobi_residual(PAPER_LITERAL, k, l)
            assert lit == (NCPoly.const(c(2, h=1, l=1)) if k == l else NCPoly())
            assert phase_space_jacobi_residual(DEFAULT_PROFILE, k, l) == NCPoly()


def test_plain_index_mode_breaks_time_families():
    res = build_phase_space(6, PLAIN)
    broken = sorted(f for f, ok in res.families.items() if not ok)
    assert broken == ["[x_0,P_0]", "[x_0,P_l]", "[x_0,x_k]"]


# -- full double ------------------------------------------------------------

def test_full_double_matches_table(double):
    rs, derived, _ = double
    table = cross_table()
    with truncation(6):
        for key, val in table.items():
            assert rs.normal_order(derived[key] - val) == NCPoly(), key
    assert derived[("P0", "x0")] == NCPoly.const(c(im=1, h=1))
    for l in (1, 2, 3):
        assert derived[("P0", X[l])] == NCPoly()


def test_lorentz_rotation_on_lambda(double):
    _, derived, _ = double
    # [M_12, Lambda^2_0] = i hbar (delta^2_2 Lambda_10 - 0) = i hbar Lambda^1_0
    assert derived[("M12", "L20")] == g("L10") * c(im=1, h=1)
    assert derived[("M12", "L00")] == NCPoly()


def test_literal_m_term_mismatches():
    res = build_full_double(6, PAPER_LITERAL, jacobi=False)
    bad = [r.check_id for r in res.reports if not r.passed]
    assert len(bad) == 9
    assert all(r.startswith("cross[M0") for r in bad)
    assert all(r.status == ERRATUM for r in res.reports if not r.passed)


def test_plain_mode_double_consistent():
    assert build_full_double(6, PLAIN, jacobi=False).report.passed


# -- pairings ---------------------------------------------------------------

def test_closed_form_examples(phase_pairing):
    assert closed_form_time_first(1, 0, 1, 0, 1, 1) == c(im=-1, h=1)
    for r in (1, 2, 3):
        for s in (1, 2, 3):
            want = c(-1, h=1, l=1) if r == s else ZERO
            assert closed_form_space_first(1, 1, 0, 1, r, s) == want
    assert closed_form_space_first(0, 0, 1, 0, 1, 1) == ZERO
    assert phase_pairing.pair_words((), ("P0",)) == ZERO


def test_small_grid(phase_pairing):
    rep = verify_closed_form_pairings(2, 2, 2, 2, pt=phase_pairing)
    assert rep.passed and rep.details["count"] == 2 * 81 * 9


def test_pair_by_differentiation_examples(phase_pairing):
    assert pair_by_differentiation(g("x0"), g("P0")) == c(im=-1, h=1)
    psi = NCPoly.word(("x0", "x0", "x1"))
    f = NCPoly.word(("P1", "P0", "P0"))
    assert pair_by_differentiation(psi, f) == c(im=-2, h=3)
    assert pair_by_differentiation(psi, f) == phase_pairing.pair(psi, f)
    with pytest.raises(ValueError):
        pair_by_differentiation(NCPoly.word(("x1", "x0")), g("P0"))
    with pytest.raises(ValueError):
        pair_by_differentiation(g("x0"), g("x1"))


def test_differentiation_matches_engine(phase_pairing):
    assert check_differentiation_pairing(samples=10, seed=11, pt=phase_pairing).passed


# -- basis change and realization --------------------------------------------

def test_basis_change():
    assert classical_basis_change(6).passed
    assert classical_basis_change(6, PAPER_LITERAL).passed
    pt = classical_momenta(6)
    assert pt["P0"].classical_part() == g("P0")
    for i in (1, 2, 3):
        assert pt[P[i]].classical_part() == g(P[i])


def test_classical_boost_on_tilde_momenta(algebra):
    pt = classical_momenta(6)
    with truncation(6):
        for i in (1, 2, 3):
            m_i0 = -g("M0%d" % i)
            for j in (1, 2, 3):
                res = algebra.rewrite.commutator(m_i0, pt[P[j]])
                want = algebra.normal_order(pt["P0"] * c(im=-1, h=1)) * (1 if i == j else 0)
                assert res == want


def test_realized_commutators(weyl):
    _, mapping, out = realized_table(6)
    for l in (1, 2, 3):
        assert out[("x0", P[l])] == g("ph%d" % l) * c(im=1, l=1)
        assert out[("x0", X[l])] == g("xh%d" % l) * c(im=-1, l=1)
        assert out[(X[l], P[l])] == NCPoly.const(c(im=1, h=1))


def test_weyl_check_profiles():
    assert weyl_realization_check(6).passed
    lit = weyl_realization_check(6, PAPER_LITERAL)
    assert lit.status == ERRATUM
    assert not lit.details["families"]["[x_0,x_k]"]
    assert sum(not ok for ok in lit.details["families"].values()) == 1


def test_conjugation(weyl):
    rep = conjugation_check(6)
    assert rep.passed
    res = conjugation_series(conjugator_exponent(1), g("xh0"), weyl)
    assert res.commutators == 1
    with truncation(6):
        assert res.value == weyl.normal_order(g("xh0") - dilation() * c(Fraction(1, 2), h=-1, l=1))
    r = conjugation_series(conjugator_exponent(1), g("ph0"), weyl)
    assert r.value == g("ph0") and r.commutators == 0
    r = conjugation_series(conjugator_exponent(1), g("ph1"), weyl, max_terms=10)
    assert r.value != g("ph1")
    assert rep.details["terminates_exactly"]["ph0/U"]
    assert not rep.details["terminates_exactly"]["ph1/U"]
    assert not rep.details["terminates_exactly"]["xh1/U"]
    with pytest.raises(SeriesNotTerminated):
        conjugation_series(conjugator_exponent(1), g("xh1"), weyl, max_terms=2)


# -- finite differences and the dual basis -----------------------------------

def test_finite_difference_examples():
    with truncation(6):
        assert finite_difference_apply(g("x0"), 1, 0, 1) == c(im=-1)
        for s in (1, 2, 3):
            assert finite_difference_apply(g(X[s]), 0, 1, s) == ONE
        assert finite_difference_apply(NCPoly.const(), 1, 0, 1) == ZERO
        assert finite_difference_apply(CPoly.var(0) ** 2, 2, 0, 1) == c(-2)


def test_solve_linear_singular():
    with pytest.raises(SingularSystem):
        solve_linear([[ZERO, ZERO], [ZERO, ONE]], [[ONE], [ONE]], degree=1)


@pytest.fixture(scope="module")
def dual():
    return solve_dual_basis(3)


def test_dual_basis_leading_order(dual, phase_pairing):
    assert dual.F0.classical_part() == g("x0")
    for l in (1, 2, 3):
        assert dual.F[l].classical_part() == g(X[l])
    p0 = classical_momenta(6)["P0"]
    assert pair_by_differentiation(dual.F0, p0) == c(im=-1, h=1)


def test_dual_basis_shuffle_invariant(dual):
    other = solve_dual_basis(3, shuffle_seed=5, check=False)
    assert other.F0 == dual.F0
    assert all(other.F[l] == dual.F[l] for l in (1, 2, 3))


def test_dual_basis_conditions(dual):
    # space conditions all hold; the time conditions fail only at k=3, m=1
    failures = dual.report.details.get("failures", [])
    assert [f[0] for f in failures] == ["time[k=3,m=1]"]
    assert failures[0][2] == "(i) lam^2"


def test_time_condition_residual_origin(phase_pairing):
    # <x0^3, P~0> is i hbar lam^2, not 0, which is what k=3, m=1 probes
    p0 = classical_momenta(6)["P0"]
    val = phase_pairing.pair(NCPoly.word(("x0",) * 3), p0)
    assert val == c(im=1, h=1, l=2)
