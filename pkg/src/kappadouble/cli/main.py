"""kappadouble command line."""

from __future__ import annotations

import argparse
import json
import sys
import time

from .. import numrep
from ..alphabet import PH, XH
from ..kappa.double import (compare_tables, cross_table, derive_full_cross, derive_phase_space,
                            export_table, family_of, phase_space_table)
from ..kappa.dual_basis import solve_dual_basis
from ..kappa.pairings import phase_space_pairing
from ..kappa.presentations import ConventionProfile, build_weyl
from ..scalars import truncation
from ..text import render_poly, render_scalar
from . import report, suites
from .config import ConfigError, load_config
from .parser import ParseError, parse


class UsageError(Exception):
    pass


def _common(p):
    p.add_argument("--config", help="key = value config file (default: $KAPPADOUBLE_CONFIG)")
    p.add_argument("-N", "--order", type=int, help="truncation order in lam")
    p.add_argument("--floor", type=int, help="lowest lam power is lam^-floor")
    p.add_argument("--profile", dest="policy", choices=("derive", "paper-literal"))
    p.add_argument("--index-mode", choices=("lowered", "plain"))
    p.add_argument("--seed", type=int)
    p.add_argument("--output", help="write the JSON report here")
    p.add_argument("--record-timing", action="store_true", default=None,
                   help="fill duration_ms (reports stop being byte-identical)")


def build_parser():
    ap = argparse.ArgumentParser(prog="kappadouble",
                                 description="Exact checks for the kappa-Poincare Heisenberg double.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normal-order", help="normal-order an expression")
    p.add_argument("expr")
    p.add_argument("--system", choices=("auto", "phase", "double", "weyl"), default="auto")
    _common(p)

    p = sub.add_parser("commutator", help="[a, b] in normal order")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--system", choices=("auto", "phase", "double", "weyl"), default="auto")
    _common(p)

    p = sub.add_parser("pair", help="<group element, algebra element>")
    p.add_argument("group_expr")
    p.add_argument("algebra_expr")
    _common(p)

    p = sub.add_parser("derive-cross", help="cross relations derived from the pairing")
    p.add_argument("--sector", choices=("phase", "full"), default="phase")
    p.add_argument("--json", action="store_true", help="print the derived table as JSON")
    _common(p)

    p = sub.add_parser("check", help="run a check suite")
    p.add_argument("suite", help="one of %s or all" % ", ".join(suites.SUITES))
    p.add_argument("--format", choices=("text", "json", "md"), default="text")
    p.add_argument("--csv", help="uncertainty rows as CSV")
    _common(p)

    p = sub.add_parser("solve-dual", help="solve for the dual coordinates")
    p.add_argument("--degree", type=int, dest="dual_degree")
    _common(p)

    p = sub.add_parser("uncertainty", help="numerical uncertainty relations")
    p.add_argument("--kappa-hbar", type=float, action="append", dest="kappa_hbar")
    p.add_argument("--n-levels", type=int)
    p.add_argument("--states", type=int)
    p.add_argument("--csv", help="uncertainty rows as CSV")
    p.add_argument("--format", choices=("text", "json", "md"), default="text")
    _common(p)

    p = sub.add_parser("report", help="render a report as JSON or Markdown")
    p.add_argument("--format", choices=("json", "md"), default="md")
    p.add_argument("--input", help="existing JSON report; otherwise the suite is run")
    p.add_argument("--suite", default="all")
    _common(p)
    return ap


_CONFIG_KEYS = ("order", "floor", "policy", "index_mode", "seed", "output", "record_timing",
                "dual_degree", "kappa_hbar", "n_levels", "states", "csv")


def config_from_args(args):
    overrides = {k: getattr(args, k, None) for k in _CONFIG_KEYS}
    return load_config(args.config, overrides)


# -- expression commands ----------------------------------------------------

def _pick_system(polys, choice, cfg):
    gens = set()
    for p in polys:
        gens |= p.generators()
    weyl = gens & set(XH + PH)
    if choice == "auto":
        if weyl:
            if gens - weyl:
                raise UsageError("cannot mix Weyl symbols with double generators")
            choice = "weyl"
        elif all(g[0] in "xP" for g in gens):
            choice = "phase"
        else:
            choice = "double"
    if choice == "weyl":
        return build_weyl(cfg.order)
    if choice == "phase":
        return derive_phase_space(cfg.order, cfg.profile)[0]
    return derive_full_cross(cfg.order, cfg.profile)[0]


def cmd_normal_order(args, cfg, out):
    with truncation(cfg.order, cfg.floor):
        p = parse(args.expr)
        rs = _pick_system([p], args.system, cfg)
        out.write(render_poly(rs.normal_order(p)) + "\n")
    return report.EXIT_PASS


def cmd_commutator(args, cfg, out):
    with truncation(cfg.order, cfg.floor):
        a, b = parse(args.a), parse(args.b)
        rs = _pick_system([a, b], args.system, cfg)
        out.write(render_poly(rs.commutator(a, b)) + "\n")
    return report.EXIT_PASS


def cmd_pair(args, cfg, out):
    with truncation(cfg.order, cfg.floor):
        b, a = parse(args.group_expr), parse(args.algebra_expr)
        gens = b.generators() | a.generators()
        if all(g[0] in "xP" for g in gens):
            pt = phase_space_pairing(cfg.order, cfg.profile)
        else:
            pt = derive_full_cross(cfg.order, cfg.profile)[2][2]
        if b.generators() - set(pt.group.generators):
            raise UsageError("first argument must be a group element")
        if a.generators() - set(pt.algebra.generators):
            raise UsageError("second argument must be an algebra element")
        out.write(render_scalar(pt.pair(b, a)) + "\n")
    return report.EXIT_PASS


def cmd_derive_cross(args, cfg, out):
    prof = cfg.profile
    printed = ConventionProfile(prof.index_mode, "paper-literal")
    if args.sector == "phase":
        rs, derived, _ = derive_phase_space(cfg.order, prof)
        tables = phase_space_table(printed), phase_space_table(prof)
    else:
        rs, derived, _ = derive_full_cross(cfg.order, prof)
        tables = cross_table(printed), cross_table(prof)
    reps = compare_tables(derived, tables[1], rs, prof)
    code = report.exit_code([{"status": r.status} for r in reps])
    if args.json:
        picked = {key: derived[key] for key in tables[0]}
        out.write(json.dumps(export_table(picked), indent=2, sort_keys=True) + "\n")
        return code
    with truncation(cfg.order):
        for key in tables[0]:
            a, b = key
            val = derived[key]
            note = "as printed"
            if rs.normal_order(val - tables[0][key]):
                note = "differs from printed %s" % render_poly(tables[0][key])
            fam = " %s" % family_of(a, b) if args.sector == "phase" else ""
            out.write("[%s, %s] = %s   (%s)%s\n" % (a, b, render_poly(val), note, fam))
    return code


# -- suites -----------------------------------------------------------------

def run_suites(name, cfg, rows_out=None):
    """Records for a suite (or all of them)."""
    records = []
    for s in suites.suite_names(name):
        t0 = time.perf_counter()
        with truncation(cfg.order, cfg.floor):
            reps = suites.run(s, cfg, rows_out)
        ms = (time.perf_counter() - t0) * 1000
        records.extend(report.records_for(s, reps, cfg, ms))
    return records


def _emit(records, cfg, fmt, out):
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(report.to_json(records))
    if fmt == "json":
        out.write(report.to_json(records))
    elif fmt == "md":
        out.write(report.to_markdown(records))
    else:
        for r in records:
            out.write("%-18s %-60s %-18s %s\n" % (r["suite"], r["check_id"], r["status"],
                                                 r["residual_text"]))
    return report.exit_code(records)


def _write_csv(rows, path):
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(numrep.rows_to_csv(rows))


def cmd_check(args, cfg, out):
    rows = []
    records = run_suites(args.suite, cfg, rows)
    _write_csv(rows, cfg.csv)
    return _emit(records, cfg, args.format, out)


def cmd_uncertainty(args, cfg, out):
    rows = []
    records = run_suites("uncertainty", cfg, rows)
    _write_csv(rows, cfg.csv)
    return _emit(records, cfg, args.format, out)


def cmd_solve_dual(args, cfg, out):
    with truncation(cfg.order, cfg.floor):
        sol = solve_dual_basis(cfg.dual_degree, cfg.order, cfg.profile)
    out.write("F0 = %s\n" % render_poly(sol.F0))
    for l in (1, 2, 3):
        out.write("F%d = %s\n" % (l, render_poly(sol.F[l])))
    records = report.records_for("dual-basis", [sol.report], cfg)
    for r in records:
        out.write("%s %s %s\n" % (r["check_id"], r["status"], r["residual_text"]))
    return report.exit_code(records)


def cmd_report(args, cfg, out):
    if args.input:
        with open(args.input, encoding="utf-8") as fh:
            records = report.from_json(fh.read())
    else:
        records = run_suites(args.suite, cfg)
        if cfg.output:
            with open(cfg.output, "w", encoding="utf-8") as fh:
                fh.write(report.to_json(records))
    out.write(report.to_json(records) if args.format == "json" else report.to_markdown(records))
    return report.exit_code(records)


COMMANDS = {
    "normal-order": cmd_normal_order,
    "commutator": cmd_commutator,
    "pair": cmd_pair,
    "derive-cross": cmd_derive_cross,
    "check": cmd_check,
    "solve-dual": cmd_solve_dual,
    "uncertainty": cmd_uncertainty,
    "report": cmd_report,
}


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        return COMMANDS[args.command](args, cfg, out)
    except (ParseError, ConfigError, UsageError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return report.EXIT_USAGE
    except suites.UnknownSuite as exc:
        sys.stderr.write("error: unknown suite %s (choose from %s, all)\n"
                         % (exc, ", ".join(suites.SUITES)))
        return report.EXIT_USAGE
    except numrep.TruncationEdge as exc:
        sys.stderr.write("error: %s\n" % exc)
        return report.EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
