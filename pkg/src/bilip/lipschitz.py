"""Curve valuations, refuting-curve search and the Lipschitz verdict.

The canonical vector field of an unfolding is Lipschitz exactly when the
doubles of theta lie in the integral closure of the doubles ideal of the
unfolding.  Plain ideal membership proves that (every ideal sits inside its
closure).  A single path germ along which some theta-double vanishes to
strictly lower order than the whole pulled-back ideal disproves it.
Neither route is complete, so a bounded search may end ``INCONCLUSIVE``.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .groebner import Ideal, buchberger, lift, normal_form
from .doubles import diagonal_ideal
from .poly import ContextError, MonomialOrder, Polynomial, VarContext
from .unfolding import Unfolding, theta_doubles, unfolding_doubles

INF = math.inf
T = VarContext(("t",))


class Verdict(str, enum.Enum):
    CERTIFIED_LIPSCHITZ = "CERTIFIED_LIPSCHITZ"
    CERTIFIED_NOT_LIPSCHITZ = "CERTIFIED_NOT_LIPSCHITZ"
    INCONCLUSIVE = "INCONCLUSIVE"

    def __str__(self) -> str:
        return self.value


EXIT_CODES = {
    Verdict.CERTIFIED_LIPSCHITZ: 0,
    Verdict.CERTIFIED_NOT_LIPSCHITZ: 1,
    Verdict.INCONCLUSIVE: 2,
}


def t_order(f: Polynomial):
    """Order of vanishing at t = 0; ``math.inf`` for the zero polynomial."""
    if len(f.context) != 1:
        raise ContextError("t_order expects a univariate polynomial")
    return min((m[0] for m in f.terms), default=INF)


@dataclass(frozen=True)
class Curve:
    """Polynomial path germ through the origin, one component per variable of ``context``."""

    context: VarContext
    components: tuple[Polynomial, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if len(comps) != len(self.context):
            raise ValueError("curve needs exactly one component per variable")
        for name, c in zip(self.context.names, comps):
            if c.context != T:
                raise ContextError(f"component for {name!r} is not a polynomial in t")
            if c.constant_term():
                raise ValueError(f"component for {name!r} has a nonzero constant term")
        if not any(comps):
            raise ValueError("the all-zero curve is not a path germ")

    @classmethod
    def from_mapping(cls, context: VarContext, mapping: Mapping[str, Polynomial]) -> "Curve":
        """Unlisted variables map to 0."""
        for name in mapping:
            if name not in context:
                raise KeyError(f"unknown variable {name!r} in curve")
        return cls(context, tuple(mapping.get(n, T.zero()) for n in context.names))

    @classmethod
    def monomial(cls, context: VarContext, parts: Mapping[str, tuple]) -> "Curve":
        """``parts`` maps a variable to ``(coefficient, exponent)``."""
        return cls.from_mapping(
            context, {n: Polynomial.monomial(T, (e,), c) for n, (c, e) in parts.items()}
        )

    def assignment(self) -> dict[str, Polynomial]:
        return dict(zip(self.context.names, self.components))

    def nonzero(self) -> dict[str, Polynomial]:
        return {n: c for n, c in zip(self.context.names, self.components) if c}

    def __str__(self) -> str:
        return ", ".join(f"{n}={c}" for n, c in self.nonzero().items())


@dataclass(frozen=True)
class ValuationReport:
    orders: tuple[tuple[int, float], ...]
    ideal_order: float

    def order_of(self, index: int):
        return dict(self.orders)[index]


def pullback(p: Polynomial, curve: Curve) -> Polynomial:
    if p.context != curve.context:
        raise ContextError("curve does not cover the polynomial's context")
    return p.substitute(curve.assignment(), T)


def pullback_ideal_order(ideal: Ideal, curve: Curve) -> ValuationReport:
    """t-orders of every generator pulled back along ``curve``; the ideal order is their minimum."""
    if ideal.context != curve.context:
        raise ContextError("curve does not cover the ideal's context")
    orders = tuple((i, t_order(pullback(g, curve))) for i, g in enumerate(ideal.generators))
    return ValuationReport(orders, min((o for _, o in orders), default=INF))


@dataclass(frozen=True)
class RefutationWitness:
    curve: Curve
    generator_index: int
    generator: Polynomial
    generator_order: float
    ideal_order: float
    unfolding_orders: ValuationReport


@dataclass(frozen=True)
class InclusionWitness:
    """Membership evidence: ``targets[i] == sum(cofactors[i][j] * generators[j])``."""

    kind: str
    generators: tuple[Polynomial, ...] = ()
    basis: tuple[Polynomial, ...] = ()
    targets: tuple[Polynomial, ...] = ()
    cofactors: tuple[tuple[Polynomial, ...], ...] = ()


THETA_ZERO = "theta-doubles-zero"
DIAGONAL = "diagonal-fast-path"
INCLUSION = "ideal-inclusion"


@dataclass(frozen=True)
class SearchBudget:
    max_exponent: int = 2
    coefficients: tuple = (0, 1, -1, 2, -2)
    max_support: int = 3

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)
        if self.max_exponent < 1:
            raise ValueError("max_exponent must be at least 1")
        if 0 not in coeffs or not any(coeffs):
            raise ValueError("coefficient set must contain 0 and at least one nonzero value")
        if len(set(coeffs)) != len(coeffs):
            raise ValueError("coefficient set has repeated values")
        if self.max_support < 1:
            raise ValueError("max_support must be at least 1")

    def nonzero_coefficients(self) -> tuple[Fraction, ...]:
        return tuple(c for c in self.coefficients if c)


@dataclass(frozen=True)
class SearchRecord:
    budget: SearchBudget
    curves_examined: int
    nonmember_generators: tuple[Polynomial, ...] = ()


@dataclass(frozen=True)
class Certificate:
    verdict: Verdict
    witness: InclusionWitness | RefutationWitness | SearchRecord
    order: str = "grevlex"


# -- refutation -----------------------------------------------------------

def _choose_offender(theta_report: ValuationReport, gens, m):
    """Lowest-order theta-double beating ``m``; ties go to lower degree, then index."""
    best = None
    for i, o in theta_report.orders:
        if o == INF:
            continue
        if o < m or m == INF:
            rank = (o, gens[i].total_degree(), i)
            if best is None or rank < best:
                best = rank
    return None if best is None else best[2]


def curve_refutes(U: Unfolding, curve: Curve) -> RefutationWitness | None:
    thetas = theta_doubles(U)
    big = unfolding_doubles(U)
    if thetas.is_zero():
        return None
    theta_report = pullback_ideal_order(thetas, curve)
    big_report = pullback_ideal_order(big, curve)
    m = big_report.ideal_order
    i = _choose_offender(theta_report, thetas.generators, m)
    if i is None:
        return None
    return RefutationWitness(curve, i, thetas.generators[i], theta_report.order_of(i), m, big_report)


def _compile(ideal: Ideal):
    out = []
    for g in ideal.generators:
        terms = []
        for m, c in g.terms.items():
            support = tuple((i, e) for i, e in enumerate(m) if e)
            terms.append((support, int(c) if c.denominator == 1 else c))
        out.append(terms)
    return out


def _fast_order(terms, coef, expo):
    acc = {}
    for support, c in terms:
        val = c
        deg = 0
        for i, a in support:
            ci = coef[i]
            if not ci:
                break
            val *= ci ** a
            deg += expo[i] * a
        else:
            acc[deg] = acc.get(deg, 0) + val
    return min((d for d, v in acc.items() if v), default=INF)


def iter_monomial_curves(n: int, budget: SearchBudget):
    """Yield ``(pattern, exponents, coefficients)`` in the fixed search order.

    Supports grow from 1 to ``max_support``; within a support size patterns,
    then exponent tuples, then coefficient tuples run lexicographically.
    Exponent tuples with a common factor d > 1 are skipped: such a curve is
    a reparametrization t -> t^d of one already visited and scales every
    order by d, so it refutes exactly when that one does.
    """
    nonzero = budget.nonzero_coefficients()
    exps_range = range(1, budget.max_exponent + 1)
    for s in range(1, min(budget.max_support, n) + 1):
        for pattern in itertools.combinations(range(n), s):
            for exps in itertools.product(exps_range, repeat=s):
                if math.gcd(*exps) > 1:
                    continue
                for coeffs in itertools.product(nonzero, repeat=s):
                    yield pattern, exps, coeffs


def _search(U: Unfolding, budget: SearchBudget) -> tuple[RefutationWitness | None, int]:
    thetas = theta_doubles(U)
    if thetas.is_zero():
        return None, 0
    big = unfolding_doubles(U)
    ctx = thetas.context
    n = len(ctx)
    theta_c = _compile(thetas)
    big_c = _compile(big)
    theta_vars = {i for g in thetas.generators for m in g.terms for i, e in enumerate(m) if e}
    examined = 0
    coef = [0] * n
    expo = [0] * n
    for pattern, exps, coeffs in iter_monomial_curves(n, budget):
        examined += 1
        if theta_vars.isdisjoint(pattern):
            continue
        for i in pattern:
            coef[i] = 0
        for i, e, c in zip(pattern, exps, coeffs):
            coef[i] = int(c) if c.denominator == 1 else c
            expo[i] = e
        low = min(_fast_order(g, coef, expo) for g in theta_c)
        hit = low != INF and all(_fast_order(g, coef, expo) > low for g in big_c)
        for i in pattern:
            coef[i] = 0
        if hit:
            curve = Curve.monomial(ctx, {ctx.names[i]: (c, e) for i, e, c in zip(pattern, exps, coeffs)})
            witness = curve_refutes(U, curve)
            if witness is None:
                raise AssertionError(f"fast and exact pullbacks disagree on curve {curve}")
            return witness, examined
    return None, examined


def search_refuting_curve(U: Unfolding, budget: SearchBudget | None = None) -> RefutationWitness | None:
    """First refuting monomial curve in the budget's grid, or ``None``."""
    return _search(U, budget or SearchBudget())[0]


# -- inclusion ------------------------------------------------------------

def _lift_all(big: Ideal, targets: Iterable[Polynomial], order: MonomialOrder):
    gb = buchberger(big, order, track=True)
    targets = tuple(targets)
    cofs = tuple(tuple(lift(t, gb)) for t in targets)
    return gb, targets, cofs


def certify_inclusion(U: Unfolding, order: MonomialOrder | None = None,
                      use_diagonal: bool = True) -> InclusionWitness | None:
    """Membership certificate for the theta-doubles in the unfolding doubles ideal, if one exists."""
    order = order or MonomialOrder()
    thetas = theta_doubles(U)
    if thetas.is_zero():
        return InclusionWitness(THETA_ZERO)
    big = unfolding_doubles(U)
    if big.is_zero():
        return None
    gb = buchberger(big, order)
    if use_diagonal:
        diag = diagonal_ideal(U.doubled)
        if all(not normal_form(d, gb) for d in diag.generators):
            tgb, targets, cofs = _lift_all(big, diag.generators, order)
            return InclusionWitness(DIAGONAL, big.generators, tgb.basis, targets, cofs)
    if all(not normal_form(g, gb) for g in thetas.generators):
        tgb, targets, cofs = _lift_all(big, thetas.generators, order)
        return InclusionWitness(INCLUSION, big.generators, tgb.basis, targets, cofs)
    return None


def lipschitz_verdict(U: Unfolding, budget: SearchBudget | None = None,
                      order: MonomialOrder | None = None) -> Certificate:
    budget = budget or SearchBudget()
    order = order or MonomialOrder()
    inclusion = certify_inclusion(U, order)
    if inclusion is not None:
        return Certificate(Verdict.CERTIFIED_LIPSCHITZ, inclusion, order.kind)
    witness, examined = _search(U, budget)
    if witness is not None:
        return Certificate(Verdict.CERTIFIED_NOT_LIPSCHITZ, witness, order.kind)
    big = unfolding_doubles(U)
    misses = tuple(theta_doubles(U).generators)
    if not big.is_zero():
        gb = buchberger(big, order)
        misses = tuple(g for g in misses if normal_form(g, gb))
    return Certificate(Verdict.INCONCLUSIVE, SearchRecord(budget, examined, misses), order.kind)
