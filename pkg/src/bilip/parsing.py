"""Recursive-descent parsers for polynomial expressions and problem files.

Expression grammar (``*`` is mandatory between factors)::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INT)?
    atom   := INT ("/" INT)? | NAME | "(" expr ")"

Names may end in apostrophes (``w'``) so doubled variables parse too.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .lipschitz import SearchBudget
from .poly import ORDER_KINDS, Polynomial, VarContext
from .unfolding import MatrixGerm, Unfolding, build_unfolding


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*'*)|(?P<op>[-+*^/()]))")


@dataclass
class _Tok:
    kind: str
    text: str
    col: int  # 1-based


def _tokenize(text: str, line: int, col0: int) -> list[_Tok]:
    toks = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col0 + pos)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append(_Tok(kind, m.group(kind), col0 + start))
        pos = m.end()
    toks.append(_Tok("eof", "", col0 + len(text)))
    return toks


class _ExprParser:
    def __init__(self, text: str, context: VarContext, line: int, col0: int, juxtapose: bool):
        self.toks = _tokenize(text, line, col0)
        self.i = 0
        self.ctx = context
        self.line = line
        self.juxtapose = juxtapose

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        raise ParseError(msg, self.line, tok.col)

    def parse(self) -> Polynomial:
        if self.peek().kind == "eof":
            self.error("empty expression")
        p = self.expr()
        tok = self.peek()
        if tok.kind != "eof":
            if tok.kind in ("name", "num") or tok.text == "(":
                self.error(f"missing '*' before {tok.text!r} (implicit multiplication is not allowed)")
            self.error(f"unexpected {tok.text!r}")
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while self.peek().text in ("+", "-") and self.peek().kind == "op":
            op = self.take().text
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.unary()
        while self.peek().text == "*":
            self.take()
            p = p * self.unary()
        return p

    def unary(self) -> Polynomial:
        tok = self.peek()
        if tok.kind == "op" and tok.text in ("+", "-"):
            self.take()
            p = self.unary()
            return -p if tok.text == "-" else p
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        tok = self.peek()
        if tok.text == "^":
            self.take()
            exp = self.peek()
            if exp.kind != "num":
                self.error("malformed exponent: '^' must be followed by a non-negative integer", tok)
            self.take()
            return base ** int(exp.text)
        return base

    def atom(self) -> Polynomial:
        tok = self.peek()
        if tok.kind == "num":
            self.take()
            value = Fraction(int(tok.text))
            if self.peek().text == "/":
                slash = self.take()
                den = self.peek()
                if den.kind != "num":
                    self.error("'/' is only allowed between integer literals", slash)
                self.take()
                if int(den.text) == 0:
                    self.error("division by zero", den)
                value = value / int(den.text)
            const = Polynomial.constant(self.ctx, value)
            if self.juxtapose and (self.peek().kind == "name" or self.peek().text == "("):
                return const * self.power()
            return const
        if tok.kind == "name":
            self.take()
            if tok.text not in self.ctx:
                self.error(f"unknown variable {tok.text!r}", tok)
            return self.ctx.gen(tok.text)
        if tok.text == "(":
            self.take()
            p = self.expr()
            if self.peek().text != ")":
                self.error("expected ')'")
            self.take()
            return p
        if tok.kind == "eof":
            self.error("unexpected end of expression")
        self.error(f"unexpected {tok.text!r}")


def parse_polynomial(text: str, context: VarContext, *, line: int = 1, column: int = 1,
                     juxtapose: bool = False) -> Polynomial:
    """Parse ``text`` over ``context``.  ``juxtapose`` permits ``2t`` for ``2*t``."""
    return _ExprParser(text, context, line, column, juxtapose).parse()


# -- problem files --------------------------------------------------------

@dataclass(frozen=True)
class Options:
    order: str = "grevlex"
    budget: SearchBudget = field(default_factory=SearchBudget)
    include_param_double: bool = True


@dataclass(frozen=True)
class ProblemFile:
    variables: tuple[str, ...]
    parameter: str
    F: MatrixGerm
    theta: MatrixGerm
    options: Options = field(default_factory=Options)

    @property
    def context(self) -> VarContext:
        return self.F.context

    def unfolding(self) -> Unfolding:
        return build_unfolding(self.F, self.theta, self.parameter, self.options.include_param_double)


_SECTIONS = ("vars", "param", "F", "theta", "options")
_HEADER = re.compile(r"^\s*\[(?P<name>[^\]]*)\](?P<rest>.*)$")


def _split_commas(text: str, col0: int):
    """Yield (piece, start column) for each comma-separated field."""
    start = 0
    for i, ch in enumerate(text + ","):
        if ch == ",":
            yield text[start:i], col0 + start
            start = i + 1


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def _parse_bool(value: str, line: int, col: int) -> bool:
    v = value.strip().lower()
    if v in ("true", "yes", "1"):
        return True
    if v in ("false", "no", "0"):
        return False
    raise ParseError(f"expected true or false, got {value.strip()!r}", line, col)


def parse_coefficients(text: str, line: int = 1, col: int = 1) -> tuple[Fraction, ...]:
    out = []
    for piece, c in _split_commas(text, col):
        s = piece.strip()
        try:
            out.append(Fraction(s))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad coefficient {s!r}", line, c) from None
    return tuple(out)


def _names(text: str, line: int, col0: int) -> list[tuple[str, int]]:
    out = []
    for piece, c in _split_commas(text, col0):
        name = piece.strip()
        col = c + (len(piece) - len(piece.lstrip()))
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
            raise ParseError(f"invalid variable name {name!r}", line, col)
        out.append((name, col))
    return out


def parse_problem(text: str) -> ProblemFile:
    sections: dict[str, list[tuple[int, int, str]]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        m = _HEADER.match(line)
        if m:
            name = m.group("name").strip()
            if name not in _SECTIONS:
                raise ParseError(f"unknown section [{name}]", lineno, line.index("[") + 1)
            if name in sections:
                raise ParseError(f"duplicate section [{name}]", lineno, line.index("[") + 1)
            sections[name] = []
            current = name
            rest = m.group("rest")
            if rest.strip():
                sections[name].append((lineno, m.start("rest") + 1, rest))
            continue
        if current is None:
            raise ParseError("content before the first [section] header", lineno, 1)
        sections[current].append((lineno, 1, line))

    for required in ("vars", "param", "F", "theta"):
        if required not in sections:
            raise ParseError(f"{required} block required", 1, 1)

    var_lines = sections["vars"]
    if not var_lines:
        raise ParseError("[vars] block is empty", 1, 1)
    names: list[str] = []
    for lineno, col0, body in var_lines:
        for name, col in _names(body, lineno, col0):
            if name in names:
                raise ParseError(f"duplicate variable {name!r}", lineno, col)
            names.append(name)
    context = VarContext(tuple(names))

    param_lines = sections["param"]
    if len(param_lines) != 1:
        raise ParseError("[param] block must hold exactly one name", param_lines[0][0] if param_lines else 1, 1)
    lineno, col0, body = param_lines[0]
    params = _names(body, lineno, col0)
    if len(params) != 1:
        raise ParseError("[param] block must hold exactly one name", lineno, col0)
    param, pcol = params[0]
    if param in names:
        raise ParseError(f"parameter {param!r} shadows a variable", lineno, pcol)

    def matrix(block: str) -> MatrixGerm:
        rows = []
        for lineno, col0, body in sections[block]:
            row = []
            for piece, col in _split_commas(body, col0):
                if not piece.strip():
                    raise ParseError(f"empty entry in [{block}]", lineno, col)
                row.append(parse_polynomial(piece, context, line=lineno, column=col))
            if rows and len(row) != len(rows[0]):
                raise ParseError(
                    f"[{block}] row has {len(row)} entries, expected {len(rows[0])}", lineno, col0
                )
            rows.append(row)
        if not rows:
            raise ParseError(f"[{block}] block is empty", 1, 1)
        return MatrixGerm.from_rows(context, rows)

    F = matrix("F")
    theta = matrix("theta")
    if F.shape != theta.shape:
        lineno = sections["theta"][0][0]
        raise ParseError(f"shape mismatch: F is {F.shape[0]}x{F.shape[1]}, theta is "
                         f"{theta.shape[0]}x{theta.shape[1]}", lineno, 1)

    options = _parse_options(sections.get("options", []))
    return ProblemFile(tuple(names), param, F, theta, options)


def _parse_options(lines) -> Options:
    order = "grevlex"
    budget = {}
    include = True
    seen = set()
    for lineno, col0, body in lines:
        if "=" not in body:
            raise ParseError("expected 'key = value'", lineno, col0)
        key, value = body.split("=", 1)
        key = key.strip()
        vcol = col0 + body.index("=") + 1
        if key in seen:
            raise ParseError(f"duplicate option {key!r}", lineno, col0)
        seen.add(key)
        if key == "order":
            order = value.strip()
            if order not in ORDER_KINDS:
                raise ParseError(f"order must be one of {', '.join(ORDER_KINDS)}", lineno, vcol)
        elif key in ("max_exponent", "max_support"):
            try:
                budget[key] = int(value.strip())
            except ValueError:
                raise ParseError(f"{key} must be an integer", lineno, vcol) from None
        elif key == "coefficients":
            budget["coefficients"] = parse_coefficients(value, lineno, vcol)
        elif key == "include_param_double":
            include = _parse_bool(value, lineno, vcol)
        else:
            raise ParseError(f"unknown option {key!r}", lineno, col0)
    try:
        sb = SearchBudget(**budget)
    except ValueError as exc:
        raise ParseError(str(exc), lines[0][0] if lines else 1, 1) from None
    return Options(order, sb, include)


def format_coefficients(coeffs) -> str:
    return ",".join(str(c) for c in coeffs)


def serialize_problem(pf: ProblemFile) -> str:
    out = [f"[vars] {', '.join(pf.variables)}", f"[param] {pf.parameter}", "[F]"]
    out += [", ".join(str(e) for e in row) for row in pf.F.entries]
    out.append("[theta]")
    out += [", ".join(str(e) for e in row) for row in pf.theta.entries]
    o = pf.options
    out += [
        "[options]",
        f"order = {o.order}",
        f"max_exponent = {o.budget.max_exponent}",
        f"max_support = {o.budget.max_support}",
        f"coefficients = {format_coefficients(o.budget.coefficients)}",
        f"include_param_double = {'true' if o.include_param_double else 'false'}",
    ]
    return "\n".join(out) + "\n"


def parse_curve(text: str, context: VarContext, line: int = 1):
    """Parse ``"w=2t, w'=t"`` into a :class:`~bilip.lipschitz.Curve` over ``context``."""
    from .lipschitz import Curve, T

    mapping = {}
    for piece, col in _split_commas(text, 1):
        if not piece.strip():
            continue
        if "=" not in piece:
            raise ParseError("curve components are written 'name=polynomial in t'", line, col)
        name, expr = piece.split("=", 1)
        name = name.strip()
        if name not in context:
            raise ParseError(f"unknown variable {name!r} in curve", line, col)
        if name in mapping:
            raise ParseError(f"variable {name!r} assigned twice", line, col)
        ecol = col + piece.index("=") + 1
        poly = parse_polynomial(expr, T, line=line, column=ecol, juxtapose=True)
        if poly.constant_term():
            raise ParseError(f"component for {name!r} has a nonzero constant term", line, ecol)
        mapping[name] = poly
    if not any(mapping.values()):
        raise ParseError("the all-zero curve is not a path germ", line, 1)
    return Curve.from_mapping(context, mapping)
