"""Named check suites.  Each returns a flat list of CheckReports."""

from __future__ import annotations

import numpy as np

from .. import numrep
from ..hopf import (FAIL, PASS, CheckReport, PairingTable, check_bialgebra_compat,
                    check_coassociativity, check_counit, check_pairing_bilinearity,
                    check_pairing_respects_relations, combine)
from ..kappa.double import (_mismatch_status, build_full_double, build_phase_space,
                            derive_full_cross, derive_phase_space, jacobi_suite,
                            phase_space_table, table_rewrite_system)
from ..kappa.dual_basis import solve_dual_basis
from ..kappa.lorentz import vanishes_on_lorentz
from ..kappa.pairings import (check_differentiation_pairing, phase_space_pairing,
                              verify_closed_form_pairings)
from ..kappa.presentations import base_pairing, build_kappa_algebra, build_kappa_group
from ..kappa.realization import classical_basis_change, conjugation_check, weyl_realization_check
from ..alphabet import P, X
from ..scalars import truncation

SUITES = ("hopf-axioms", "jacobi", "cross-derive", "pairing-grid", "basis-change",
          "weyl-realization", "dual-basis", "uncertainty")


class UnknownSuite(KeyError):
    pass


def hopf_axioms(cfg):
    prof = cfg.profile
    status = _mismatch_status(prof)
    ha = build_kappa_algebra(cfg.order, prof)
    hg = build_kappa_group(cfg.order, prof)
    return [
        check_counit(ha),
        check_counit(hg),
        check_coassociativity(ha, fail_status=status),
        check_bialgebra_compat(ha, fail_status=status),
        check_coassociativity(hg, vanishes=vanishes_on_lorentz, fail_status=status),
        check_bialgebra_compat(hg, vanishes=vanishes_on_lorentz, fail_status=status),
    ]


def jacobi(cfg):
    prof = cfg.profile
    status = _mismatch_status(prof)
    out = []
    ha = build_kappa_algebra(cfg.order, prof)
    hg = build_kappa_group(cfg.order, prof)
    out.append(jacobi_suite(ha.rewrite, fail_status=status, name="jacobi"))
    out.append(jacobi_suite(hg.rewrite, vanishes=vanishes_on_lorentz, fail_status=status,
                            name="jacobi"))
    rs, _, _ = derive_phase_space(cfg.order, prof)
    out.append(jacobi_suite(rs, name="jacobi-derived"))
    table_rs = table_rewrite_system(phase_space_table(prof), X + P, cfg.order, "phase-table")
    out.append(jacobi_suite(table_rs, fail_status=status, name="jacobi"))
    full, _, _ = derive_full_cross(cfg.order, prof)
    out.append(jacobi_suite(full, vanishes=vanishes_on_lorentz, fail_status=status,
                            name="jacobi"))
    return out


def cross_derive(cfg):
    prof = cfg.profile
    ps = build_phase_space(cfg.order, prof)
    cmp_phase = combine("phase-compare", [r for r in ps.reports if r.check_id.startswith("phase[")])
    cmp_phase.details["families"] = ps.families
    full = build_full_double(cfg.order, prof, jacobi=False)
    return [ps.reports[0], cmp_phase, combine("cross-compare", full.reports)]


def pairing_grid(cfg):
    prof = cfg.profile
    pt = phase_space_pairing(cfg.order, prof)
    out = [verify_closed_form_pairings(N=cfg.order, profile=prof, pt=pt),
           check_differentiation_pairing(seed=cfg.seed, N=cfg.order, profile=prof, pt=pt)]
    with truncation(cfg.order):
        out.append(check_pairing_bilinearity(pt, seed=cfg.seed))
        full = PairingTable(base_pairing(prof), build_kappa_group(cfg.order, prof),
                            build_kappa_algebra(cfg.order, prof))
        rep = check_pairing_respects_relations(full, max_len=1)
        if not rep.passed:
            rep.status = _mismatch_status(prof)
        out.append(rep)
    return out


def basis_change(cfg):
    return [classical_basis_change(cfg.order, cfg.profile)]


def weyl_realization(cfg):
    return [weyl_realization_check(cfg.order, cfg.profile), conjugation_check(cfg.order)]


def dual_basis(cfg):
    sol = solve_dual_basis(cfg.dual_degree, cfg.order, cfg.profile)
    other = solve_dual_basis(cfg.dual_degree, cfg.order, cfg.profile,
                             shuffle_seed=cfg.seed + 1, check=False)
    same = other.F0 == sol.F0 and all(other.F[l] == sol.F[l] for l in (1, 2, 3))
    shuffle = CheckReport("dual-basis-shuffle", PASS if same else FAIL,
                          None if same else other.F0 - sol.F0)
    return [sol.report, shuffle]


def uncertainty(cfg, rows_out=None):
    """Uncertainty families per kappa*hbar, plus the large-kappa limit.

    ``rows_out`` collects every UncertaintyRow for CSV export.
    """
    states = numrep.random_states(cfg.states, cfg.n_levels, 1 + cfg.n_space, cfg.seed)
    out = []
    for kh in cfg.kappa_hbar:
        ops = numrep.build_deformed_operators(kh, cfg.n_space, cfg.n_levels)
        rep, rows = numrep.check_uncertainty_suite(kh, states, cfg.n_space, cfg.n_levels, ops)
        out.append(rep)
        ok, err = numrep.symbolic_agreement(ops, states[:10])
        out.append(CheckReport("symbolic-agreement[kappa_hbar=%g]" % kh, PASS if ok else FAIL,
                               None if ok else "%.3g" % err, details={"relative_error": err}))
        if rows_out is not None:
            rows_out.extend(rows)
    kh = cfg.limit_kappa_hbar
    ops = numrep.build_deformed_operators(kh, cfg.n_space, cfg.n_levels)
    rep, rows = numrep.check_uncertainty_suite(kh, states, cfg.n_space, cfg.n_levels, ops)
    out.append(rep)
    bound = numrep.kappa_bounds(rows)
    gap = float(np.max(np.abs(ops["X0"].entries - ops["xh0"].entries)))
    ok = bound < 1e-10 and gap < 1e-10
    out.append(CheckReport("standard-limit[kappa_hbar=%g]" % kh, PASS if ok else FAIL,
                           None if ok else "bound %.3g, |X0 - x0| %.3g" % (bound, gap),
                           details={"kappa_bound": bound, "x0_gap": gap}))
    if rows_out is not None:
        rows_out.extend(rows)
    return out


_RUNNERS = {
    "hopf-axioms": hopf_axioms,
    "jacobi": jacobi,
    "cross-derive": cross_derive,
    "pairing-grid": pairing_grid,
    "basis-change": basis_change,
    "weyl-realization": weyl_realization,
    "dual-basis": dual_basis,
    "uncertainty": uncertainty,
}


def suite_names(name):
    if name == "all":
        return list(SUITES)
    if name not in _RUNNERS:
        raise UnknownSuite(name)
    return [name]


def run(name, cfg, rows_out=None):
    if name == "uncertainty":
        return uncertainty(cfg, rows_out)
    return _RUNNERS[name](cfg)
