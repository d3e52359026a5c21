"""Acceptance criteria, one test each.

Every test prints a single line ``criterion N: PASS|FAIL ... (seconds)``.
Run ``python3 tests/test_acceptance.py`` for just those lines, or
``pytest -v tests/test_acceptance.py`` for the same checks under pytest.
"""

import io
import itertools
import sys
import time

import pytest

from kappadouble.alphabet import X
from kappadouble.cli import report, suites
from kappadouble.cli.config import RunConfig
from kappadouble.cli.main import main
from kappadouble.hopf import (ERRATUM, check_bialgebra_compat, check_coassociativity, check_counit)
from kappadouble.kappa.double import (build_full_double, derive_phase_space, jacobi_suite,
                                      phase_space_jacobi_residual, phase_space_table)
from kappadouble.kappa.dual_basis import solve_dual_basis
from kappadouble.kappa.lorentz import vanishes_on_lorentz
from kappadouble.kappa.pairings import check_differentiation_pairing, verify_closed_form_pairings
from kappadouble.kappa.presentations import (PAPER_LITERAL, build_kappa_algebra, build_kappa_group)
from kappadouble.kappa.realization import (classical_basis_change, conjugation_check, realized_table,
                                           weyl_realization_check)
from kappadouble.ncalg import NCPoly
from kappadouble.scalars import Scalar, truncation

N = 6


def _lam_x(k, sign):
    return NCPoly.gen(X[k], Scalar.monomial(0, sign, lam=1))


def criterion_1():
    """Translation-sector cross relations and their Jacobi suite."""
    rs, derived, xx = derive_phase_space(N)
    printed = phase_space_table(PAPER_LITERAL)
    with truncation(N):
        differing = sorted(k for k in printed if rs.normal_order(derived[k] - printed[k]))
    expected = [("x0", X[k]) for k in (1, 2, 3)]
    tenth = all(derived[("x0", X[k])] == _lam_x(k, -1) for k in (1, 2, 3))
    jac = jacobi_suite(rs, name="jacobi-derived")
    ok = xx.passed and differing == expected and tenth and jac.passed
    return ok, "only [x0,xk] differs from the printed table, = -i lam x_k; Jacobi %s" % jac.status


def criterion_2():
    res = build_full_double(N)
    mism = [r.check_id for r in res.reports if not r.passed]
    m_terms = [r for r in res.reports if r.check_id.startswith("cross[M") and "x" in r.check_id]
    ok = not mism and len(m_terms) == 24
    return ok, "%d cross relations, %d mismatches (incl. jacobi)" % (len(res.reports) - 1, len(mism))


def criterion_3():
    rep = verify_closed_form_pairings(3, 3, 3, 3, N)
    return rep.passed and rep.details["count"] == 4608, \
        "%d pairings against both closed forms, status %s" % (rep.details["count"], rep.status)


def criterion_4():
    rep = check_differentiation_pairing(samples=20, seed=0, max_degree=4, N=N)
    return rep.passed, "20 seeded (psi, f) pairs, status %s" % rep.status


def criterion_5():
    ha, hg = build_kappa_algebra(N), build_kappa_group(N)
    reps = [check_counit(ha), check_counit(hg),
            check_coassociativity(ha), check_bialgebra_compat(ha),
            check_coassociativity(hg, vanishes=vanishes_on_lorentz),
            check_bialgebra_compat(hg, vanishes=vanishes_on_lorentz)]
    bad = [r.check_id for r in reps if not r.passed]
    return not bad, "coassociativity and Delta-compatibility, both sides: %s" % (bad or "all exact")


def criterion_6():
    rep = classical_basis_change(N)
    return rep.passed, "%d bracket checks through lam^%d, status %s" % (rep.details["count"], N,
                                                                        rep.status)


def criterion_7():
    weyl = weyl_realization_check(N)
    conj = conjugation_check(N)
    _, _, lam1 = realized_table(1)
    _, _, lam6 = realized_table(N)
    stable = all(lam1[k] == lam6[k] for k in lam6)
    ok = weyl.passed and conj.passed and stable
    return ok, "realization %s, lam^1 suffices: %s, adjoint series %s" % (weyl.status, stable,
                                                                         conj.status)


def criterion_8():
    sol = solve_dual_basis(3, N)
    lead = (sol.F0.classical_part() == NCPoly.gen("x0")
            and all(sol.F[l].classical_part() == NCPoly.gen(X[l]) for l in (1, 2, 3)))
    fails = sol.report.details.get("failures", [])
    msg = "leading order ok: %s; failing conditions: %s" % (
        lead, ", ".join("%s = %s" % (f[0], f[2]) for f in fails) or "none")
    return lead and sol.report.passed, msg


def criterion_9():
    cfg = RunConfig(n_levels=40, states=100, kappa_hbar=(0.5, 1.0, 10.0), limit_kappa_hbar=1e12)
    reps = suites.uncertainty(cfg)
    bad = [r.check_id for r in reps if not r.passed]
    worst = min(r.details["worst_margin"] for r in reps if "worst_margin" in r.details)
    limit = [r for r in reps if r.check_id.startswith("standard-limit")][0]
    return not bad, "worst margin %.3g, kappa bound at 1e12 %.3g" % (worst,
                                                                    limit.details["kappa_bound"])


def criterion_10():
    two = Scalar.monomial(2, hbar=1, lam=1)
    values = all(phase_space_jacobi_residual(PAPER_LITERAL, k, l)
                 == (NCPoly.const(two) if k == l else NCPoly())
                 for k, l in itertools.product((1, 2, 3), repeat=2))
    out = io.StringIO()
    lit = main(["check", "jacobi", "--profile", "paper-literal", "--format", "json"], out=out)
    import json
    recs = {r["check_id"]: r["status"] for r in json.loads(out.getvalue())["records"]}
    tagged = recs.get("jacobi/phase-table/jacobi[x0,x1,P1]") == ERRATUM
    default = main(["check", "jacobi"], out=io.StringIO())
    ok = values and tagged and lit == report.EXIT_ERRATUM and default == report.EXIT_PASS
    return ok, "residual 2 hbar lam delta_kl, status %s, exit %d (failures exit %d)" % (
        recs.get("jacobi/phase-table/jacobi[x0,x1,P1]"), lit, report.EXIT_FAIL)


CRITERIA = [
    (1, criterion_1, 10, "phase-space cross derivation"),
    (2, criterion_2, 60, "full double against the cross table"),
    (3, criterion_3, 60, "pairing grid, exact"),
    (4, criterion_4, None, "pairing by differentiation, exact"),
    (5, criterion_5, None, "Hopf axioms to lam^6, exact"),
    (6, criterion_6, None, "classical basis change, residual O(lam^7)"),
    (7, criterion_7, None, "Weyl realization and adjoint series, exact"),
    (8, criterion_8, None, "dual basis finite-difference conditions, exact"),
    (9, criterion_9, 120, "uncertainty suite, margins >= -1e-10, kappa bound < 1e-10"),
    (10, criterion_10, None, "documented erratum on (x0, x_k, P_l)"),
]


def evaluate(number, fn, limit, title):
    t0 = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - t0
    in_time = limit is None or elapsed < limit
    status = "PASS" if ok and in_time else "FAIL"
    budget = "" if limit is None else ", limit %ds" % limit
    line = "criterion %d: %s  %s: %s (%.1fs%s)" % (number, status, title, detail, elapsed, budget)
    return ok and in_time, line


@pytest.mark.parametrize("number, fn, limit, title", CRITERIA, ids=["c%d" % c[0] for c in CRITERIA])
def test_criterion(number, fn, limit, title, capsys):
    ok, line = evaluate(number, fn, limit, title)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
