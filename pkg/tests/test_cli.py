import io
import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kappadouble.alphabet import GENERATORS
from kappadouble.cli import report
from kappadouble.cli.config import ENV_VAR, ConfigError, RunConfig, load_config, parse_config_text
from kappadouble.cli.main import main
from kappadouble.cli.parser import ParseError, parse
from kappadouble.ncalg import NCPoly
from kappadouble.scalars import Scalar
from kappadouble.text import render_poly


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


# -- parser -----------------------------------------------------------------

def test_parse_examples(phase):
    rs, _ = phase
    assert parse("[x1, P1]", rs) == NCPoly.const(Scalar.monomial(0, 1, hbar=1))
    p = parse("hbar^2 * lam * P0^2")
    assert len(p) == 1 and p[("P0", "P0")] == Scalar.monomial(1, hbar=2, lam=1)


def test_parse_indexed_generators():
    assert parse("M[1,0]") == -NCPoly.gen("M01")
    assert parse("M[2,3]") == NCPoly.gen("M23")
    assert parse("L[3,1]") == NCPoly.gen("L31")
    assert parse("xh2 ph0") == NCPoly.word(("xh2", "ph0"))


def test_parse_scalars():
    assert parse("(1/2-3i) hbar^-1") == NCPoly.const(Scalar.monomial(Fraction(1, 2), -3, hbar=-1))
    assert parse("lam^-1 * lam") == NCPoly.const()
    assert parse("-(x0 - x1)") == NCPoly.gen("x1") - NCPoly.gen("x0")


@pytest.mark.parametrize("text, col", [
    ("x9", 1), ("x0 + @", 6), ("(x0", 4), ("M[1,1]", 1), ("x0^-1", 1), ("[x0 x1]", 7),
    ("L[4,0]", 1), ("x0 ^ 1/2", 6),
])
def test_parse_errors(text, col):
    with pytest.raises(ParseError) as err:
        parse(text)
    assert err.value.column == col
    assert err.value.line == 1


def test_parse_error_line():
    with pytest.raises(ParseError) as err:
        parse("x0 +\n  foo")
    assert (err.value.line, err.value.column) == (2, 3)


gens = st.sampled_from(sorted(GENERATORS))
coeffs = st.tuples(st.fractions(max_denominator=7).filter(lambda q: abs(q) < 20),
                   st.integers(-3, 3), st.integers(-2, 3), st.integers(-1, 6))


@st.composite
def polys(draw):
    out = NCPoly()
    for _ in range(draw(st.integers(0, 4))):
        word = tuple(draw(st.lists(gens, max_size=4)))
        re, im, h, l = draw(coeffs)
        out = out + NCPoly.word(word, Scalar.monomial(re, im, hbar=h, lam=l))
    return out


@settings(max_examples=150, deadline=None)
@given(polys())
def test_render_parse_round_trip(p):
    text = render_poly(p)
    assert parse(text) == p
    assert render_poly(parse(text)) == text


# -- config -----------------------------------------------------------------

def test_config_file_and_overrides(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("# settings\norder = 4\nkappa_hbar = 1, 2\npolicy = paper-literal\nseed = 5\n")
    cfg = load_config(str(path), {"seed": 9, "order": None}, environ={})
    assert cfg.order == 4 and cfg.kappa_hbar == (1.0, 2.0) and cfg.seed == 9
    assert cfg.profile.policy == "paper-literal"
    env_cfg = load_config(None, {}, environ={ENV_VAR: str(path)})
    assert env_cfg.seed == 5


def test_config_validation():
    with pytest.raises(ConfigError):
        parse_config_text("bogus = 1")
    with pytest.raises(ConfigError):
        parse_config_text("order = many")
    with pytest.raises(ConfigError):
        RunConfig(policy="maybe")
    with pytest.raises(ConfigError):
        RunConfig(kappa_hbar=(1.0, -2.0))
    assert RunConfig().record_timing is False


# -- commands ---------------------------------------------------------------

def test_expression_commands():
    assert run("normal-order", "[x1, P1]") == (0, "(i) hbar\n")
    assert run("normal-order", "[M[1,0], P0]", "--profile", "paper-literal") == (0, "(i) hbar P1\n")
    assert run("normal-order", "[M[1,0], P0]") == (0, "-(i) hbar P1\n")
    assert run("pair", "x0^2", "P0^2") == (0, "-2 hbar^2\n")
    assert run("commutator", "x0", "x1") == (0, "-(i) lam x1\n")
    assert run("commutator", "xh1", "ph1") == (0, "(i) hbar\n")


def test_usage_errors():
    assert run("normal-order", "x9")[0] == report.EXIT_USAGE
    assert run("check", "nonsense")[0] == report.EXIT_USAGE
    assert run("pair", "P0", "x0")[0] == report.EXIT_USAGE
    assert run("commutator", "xh0", "x0")[0] == report.EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_derive_cross_command():
    code, text = run("derive-cross")
    assert code == 0
    differing = [line for line in text.splitlines() if "differs" in line]
    assert len(differing) == 3 and all(line.startswith("[x0, x") for line in differing)
    code, text = run("derive-cross", "--json")
    table = json.loads(text)
    assert table["x0,x2"] == "-(i) lam x2" and table["x1,P1"] == "(i) hbar"
    assert run("derive-cross", "--profile", "paper-literal")[0] == report.EXIT_ERRATUM


def test_check_exit_codes_and_schema(tmp_path):
    code, text = run("check", "jacobi", "--format", "json")
    assert code == report.EXIT_PASS
    doc = json.loads(text)
    assert all(set(r) == set(report.FIELDS) for r in doc["records"])
    assert all(r["duration_ms"] == 0 for r in doc["records"])
    code, text = run("check", "jacobi", "--profile", "paper-literal", "--format", "json")
    assert code == report.EXIT_ERRATUM
    ids = {r["check_id"]: r for r in json.loads(text)["records"]}
    hit = ids["jacobi/phase-table/jacobi[x0,x1,P1]"]
    assert hit["status"] == "documented-erratum" and hit["residual_text"] == "2 hbar lam"
    assert hit["profile"] == "lowered/paper-literal"
    assert run("check", "dual-basis")[0] == report.EXIT_FAIL


def test_reports_are_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run("check", "weyl-realization", "--output", str(a))
    run("check", "weyl-realization", "--output", str(b))
    assert a.read_bytes() == b.read_bytes()
    code, md = run("report", "--input", str(a), "--format", "md")
    assert code == 0 and "| conjugation | pass | 0 |" in md
    code, js = run("report", "--input", str(a), "--format", "json")
    assert js == a.read_text()


def test_record_timing_fills_duration():
    _, text = run("check", "basis-change", "--format", "json", "--record-timing")
    assert json.loads(text)["records"][0]["duration_ms"] >= 0


def test_solve_dual_and_uncertainty(tmp_path):
    code, text = run("solve-dual", "--degree", "2")
    assert text.splitlines()[:4] == ["F0 = x0", "F1 = x1", "F2 = x2", "F3 = x3"]
    assert code == report.EXIT_PASS
    csv_path = tmp_path / "rows.csv"
    code, text = run("uncertainty", "--kappa-hbar", "1", "--states", "5", "--n-levels", "24",
                     "--csv", str(csv_path))
    assert code == report.EXIT_PASS
    assert csv_path.read_text().startswith("state,pair,kind,lhs,rhs,margin")
