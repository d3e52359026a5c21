"""Report records, JSON and Markdown rendering, exit codes."""

from __future__ import annotations

import json

from ..hopf import ERRATUM, FAIL, PASS

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_ERRATUM = 3

FIELDS = ("suite", "check_id", "status", "residual_text", "profile", "N", "seed", "duration_ms")


def make_record(suite, report, cfg, duration_ms=0):
    return {
        "suite": suite,
        "check_id": report.check_id,
        "status": report.status,
        "residual_text": report.residual_text,
        "profile": cfg.profile.name,
        "N": cfg.order,
        "seed": cfg.seed,
        "duration_ms": int(duration_ms) if cfg.record_timing else 0,
    }


def records_for(suite, reports, cfg, duration_ms=0):
    """One record per report, then one per listed failing sub-check."""
    out = []
    for rep in reports:
        out.append(make_record(suite, rep, cfg, duration_ms))
        for check_id, status, residual in rep.details.get("failures", []):
            rec = make_record(suite, rep, cfg)
            rec.update(check_id="%s/%s" % (rep.check_id, check_id), status=status,
                       residual_text=residual)
            out.append(rec)
    return out


def exit_code(records):
    statuses = {r["status"] for r in records}
    if FAIL in statuses:
        return EXIT_FAIL
    if ERRATUM in statuses:
        return EXIT_ERRATUM
    return EXIT_PASS


def summary(records):
    counts = {PASS: 0, FAIL: 0, ERRATUM: 0}
    for r in records:
        counts[r["status"]] = counts.get(r["status"], 0) + 1
    return counts


def to_json(records):
    doc = {"records": records, "summary": summary(records), "exit_code": exit_code(records)}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def from_json(text):
    doc = json.loads(text)
    records = doc["records"]
    for r in records:
        missing = [f for f in FIELDS if f not in r]
        if missing:
            raise ValueError("record lacks %s" % ", ".join(missing))
    return records


def _cell(text):
    return str(text).replace("|", "\\|").replace("\n", " ")


def to_markdown(records):
    counts = summary(records)
    lines = ["# Check report", "",
             "pass: %d, fail: %d, documented-erratum: %d" % (counts[PASS], counts[FAIL],
                                                             counts[ERRATUM]),
             ""]
    suites = []
    for r in records:
        if r["suite"] not in suites:
            suites.append(r["suite"])
    for s in suites:
        rows = [r for r in records if r["suite"] == s]
        first = rows[0]
        lines += ["## %s" % s, "",
                  "profile %s, N = %d, seed %d" % (first["profile"], first["N"], first["seed"]), "",
                  "| check | status | residual |", "|---|---|---|"]
        for r in rows:
            lines.append("| %s | %s | %s |" % (_cell(r["check_id"]), r["status"],
                                               _cell(r["residual_text"])))
        lines.append("")
    return "\n".join(lines)
