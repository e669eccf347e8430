from fractions import Fraction
from pathlib import Path

import pytest

from bilip.classify import CATALOG_VARS, family_e1, family_e2
from bilip.lipschitz import SearchBudget
from bilip.parsing import (
    Options,
    ParseError,
    ProblemFile,
    parse_coefficients,
    parse_curve,
    parse_polynomial,
    parse_problem,
    serialize_problem,
)
from bilip.poly import VarContext

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"

E1_TEXT = (PROBLEMS / "e1.txt").read_text()


def body(F="x, y", theta="1, 0", vars_="x, y", param="u", extra=""):
    return f"[vars] {vars_}\n[param] {param}\n[F]\n{F}\n[theta]\n{theta}\n{extra}"


class TestPolynomial:
    def test_basic(self):
        ctx = VarContext(("x", "w"))
        p = parse_polynomial("-(x + 1)*w^2 + 3/4", ctx)
        assert p.coefficient((0, 2)) == -1 and p.constant_term() == Fraction(3, 4)

    def test_primed_names(self):
        ctx = VarContext(("w", "w'"))
        assert parse_polynomial("w' - w", ctx) == ctx.gen("w'") - ctx.gen("w")

    def test_malformed_exponent_position(self):
        with pytest.raises(ParseError) as info:
            parse_polynomial("x + w^", VarContext(("x", "w")))
        assert "malformed exponent" in str(info.value)
        assert (info.value.line, info.value.column) == (1, 6)

    def test_unknown_variable(self):
        with pytest.raises(ParseError, match="unknown variable 'q'"):
            parse_polynomial("x*q", VarContext(("x",)))

    def test_juxtaposition(self):
        t = VarContext(("t",))
        with pytest.raises(ParseError, match="missing"):
            parse_polynomial("2t", t)
        assert parse_polynomial("2t^2", t, juxtapose=True) == 2 * t.gen("t") ** 2

    def test_division_only_of_integers(self):
        with pytest.raises(ParseError):
            parse_polynomial("x/2", VarContext(("x",)))


class TestProblem:
    def test_e1_file(self):
        pf = parse_problem(E1_TEXT)
        assert pf.variables == ("x", "y", "z", "w") and pf.parameter == "u"
        assert pf.F.shape == (2, 3) and pf.theta.shape == (2, 3)
        assert (pf.F, pf.theta) == family_e1(2, 2)
        assert pf.options == Options()

    def test_e2_file(self):
        pf = parse_problem((PROBLEMS / "e2.txt").read_text())
        assert (pf.F, pf.theta) == family_e2(2)

    def test_missing_theta(self):
        text = "[vars] x\n[param] u\n[F]\nx\n"
        with pytest.raises(ParseError, match="theta block required"):
            parse_problem(text)

    def test_malformed_exponent_in_file(self):
        with pytest.raises(ParseError) as info:
            parse_problem(body(F="x^, y"))
        assert "malformed exponent" in str(info.value)
        assert info.value.line == 4 and info.value.column == 2

    def test_duplicate_variable(self):
        with pytest.raises(ParseError, match="duplicate variable 'x'") as info:
            parse_problem(body(vars_="x, y, x"))
        assert info.value.column == 14

    def test_parameter_shadows_variable(self):
        with pytest.raises(ParseError, match="shadows"):
            parse_problem(body(param="y"))

    def test_shape_mismatch(self):
        with pytest.raises(ParseError, match="shape mismatch"):
            parse_problem(body(theta="1, 0, 0"))

    def test_ragged_rows(self):
        with pytest.raises(ParseError, match="expected 2"):
            parse_problem(body(F="x, y\nx"))

    def test_unknown_section_and_option(self):
        with pytest.raises(ParseError, match="unknown section"):
            parse_problem(body(extra="[plot]\n"))
        with pytest.raises(ParseError, match="unknown option"):
            parse_problem(body(extra="[options]\ncolour = red\n"))

    def test_options(self):
        pf = parse_problem(body(extra="[options]\norder = lex\nmax_exponent = 3\n"
                                      "coefficients = 0, 1/2, -1\ninclude_param_double = no\n"))
        assert pf.options.order == "lex"
        assert pf.options.budget == SearchBudget(3, (0, Fraction(1, 2), -1))
        assert pf.options.include_param_double is False

    def test_invalid_budget(self):
        with pytest.raises(ParseError, match="0"):
            parse_problem(body(extra="[options]\ncoefficients = 1, 2\n"))

    def test_comments_and_blank_lines(self):
        pf = parse_problem("# header\n\n" + body(F="x, y  # first row") + "\n# trailing\n")
        assert pf.F.entries[0][1] == pf.context.gen("y")

    def test_round_trip(self):
        for F, theta in (family_e1(3, 2), family_e2(3)):
            opts = Options("lex", SearchBudget(1, (0, 2, Fraction(-1, 3)), 2), False)
            pf = ProblemFile(CATALOG_VARS.names, "s", F, theta, opts)
            assert parse_problem(serialize_problem(pf)) == pf


class TestCurve:
    ctx = VarContext(("w", "x", "w'", "x'"))

    def test_two_component_curve(self):
        curve = parse_curve("w=2t, w'=t", self.ctx)
        assert str(curve) == "w=2*t, w'=t"

    def test_all_zero_rejected(self):
        with pytest.raises(ParseError, match="all-zero"):
            parse_curve("w=0", self.ctx)

    def test_constant_term_rejected(self):
        with pytest.raises(ParseError, match="constant term"):
            parse_curve("w=t+1", self.ctx)

    def test_unknown_and_repeated(self):
        with pytest.raises(ParseError, match="unknown variable"):
            parse_curve("v=t", self.ctx)
        with pytest.raises(ParseError, match="twice"):
            parse_curve("w=t, w=t^2", self.ctx)


def test_coefficients():
    assert parse_coefficients("0, 1, -1/2") == (0, 1, Fraction(-1, 2))
    with pytest.raises(ParseError, match="bad coefficient"):
        parse_coefficients("0, a")
