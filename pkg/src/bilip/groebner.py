"""Ideals, Buchberger's algorithm and normal-form reduction.

Bases are computed with the normal selection strategy and Buchberger's
product and chain criteria, then minimized, interreduced and made monic.
When ``track=True`` every basis element also carries its cofactors with
respect to the source generators, which lets :func:`lift` express a member
of the ideal as an explicit combination of the original generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .poly import (
    ContextError,
    Monomial,
    MonomialOrder,
    Polynomial,
    VarContext,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
)

Terms = dict  # Monomial -> Fraction


@dataclass(frozen=True)
class Ideal:
    """Finitely generated ideal; zero generators are dropped."""

    context: VarContext
    generators: tuple[Polynomial, ...] = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        for g in gens:
            if g.context != self.context:
                raise ContextError("ideal generator is not over the ideal's context")
        object.__setattr__(self, "generators", tuple(g for g in gens if g))

    def is_zero(self) -> bool:
        return not self.generators

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


@dataclass(frozen=True)
class GroebnerBasis:
    order: MonomialOrder
    basis: tuple[Polynomial, ...]
    source: Ideal
    cofactors: tuple[tuple[Polynomial, ...], ...] | None = None

    @property
    def context(self) -> VarContext:
        return self.source.context

    def leading_monomials(self) -> list[Monomial]:
        return [g.leading_monomial(self.order) for g in self.basis]


# -- dict-level kernels ---------------------------------------------------

def _axpy(target: Terms, coeff: Fraction, shift: Monomial, src: Terms) -> None:
    """target -= coeff * x^shift * src, in place."""
    for m, c in src.items():
        k = monomial_mul(m, shift)
        v = target.get(k, 0) - coeff * c
        if v:
            target[k] = v
        else:
            target.pop(k, None)


def _reduce(p: Terms, basis: Sequence[tuple[Monomial, Fraction, Terms]], key,
            quotients: list[Terms] | None = None) -> Terms:
    """Fully reduce ``p`` by ``basis`` (entries are (lm, lc, terms))."""
    p = dict(p)
    rem: Terms = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        for i, (lm, lc, g) in enumerate(basis):
            if monomial_divides(lm, m):
                shift = monomial_div(m, lm)
                f = c / lc
                _axpy(p, f, shift, g)
                if quotients is not None:
                    q = quotients[i]
                    v = q.get(shift, 0) + f
                    if v:
                        q[shift] = v
                    else:
                        q.pop(shift, None)
                break
        else:
            rem[m] = c
            del p[m]
    return rem


def _mul_terms(a: Terms, b: Terms) -> Terms:
    out: Terms = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            k = monomial_mul(m1, m2)
            out[k] = out.get(k, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def _add_scaled(a: Terms, b: Terms, scale: Fraction, shift: Monomial | None = None) -> Terms:
    """a + scale * x^shift * b (new dict)."""
    out = dict(a)
    for m, c in b.items():
        k = monomial_mul(m, shift) if shift is not None else m
        v = out.get(k, 0) + scale * c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def _combine_cofactors(base: list[Terms], quotients: list[Terms], cofs: list[list[Terms]]) -> list[Terms]:
    """base - sum_k quotients[k] * cofs[k]."""
    out = [dict(c) for c in base]
    for q, cof in zip(quotients, cofs):
        if not q:
            continue
        for j, h in enumerate(cof):
            if h:
                prod = _mul_terms(q, h)
                out[j] = _add_scaled(out[j], prod, Fraction(-1))
    return out


# -- Buchberger -----------------------------------------------------------

class _Builder:
    def __init__(self, ctx: VarContext, order: MonomialOrder, track: bool, nsrc: int):
        self.ctx = ctx
        self.key = order.key
        self.track = track
        self.nsrc = nsrc
        self.polys: list[Terms] = []
        self.lms: list[Monomial] = []
        self.lcs: list[Fraction] = []
        self.cofs: list[list[Terms]] = []
        self.pairs: set[tuple[int, int]] = set()

    def entries(self):
        return list(zip(self.lms, self.lcs, self.polys))

    def add(self, p: Terms, cof: list[Terms] | None) -> None:
        lm = max(p, key=self.key)
        lc = p[lm]
        inv = 1 / lc
        p = {m: c * inv for m, c in p.items()}
        if cof is not None:
            cof = [{m: c * inv for m, c in h.items()} for h in cof]
        new = len(self.polys)
        self.polys.append(p)
        self.lms.append(lm)
        self.lcs.append(Fraction(1))
        self.cofs.append(cof)
        for i in range(new):
            self.pairs.add((i, new))

    def _skip(self, i: int, j: int) -> bool:
        a, b = self.lms[i], self.lms[j]
        if all(x == 0 or y == 0 for x, y in zip(a, b)):
            return True
        lcm = monomial_lcm(a, b)
        for k, lk in enumerate(self.lms):
            if k in (i, j) or not monomial_divides(lk, lcm):
                continue
            if (min(i, k), max(i, k)) not in self.pairs and (min(j, k), max(j, k)) not in self.pairs:
                return True
        return False

    def _select(self) -> tuple[int, int]:
        def rank(pair):
            lcm = monomial_lcm(self.lms[pair[0]], self.lms[pair[1]])
            return (sum(lcm), self.key(lcm), pair)
        return min(self.pairs, key=rank)

    def run(self) -> None:
        while self.pairs:
            i, j = self._select()
            self.pairs.discard((i, j))
            if self._skip(i, j):
                continue
            lcm = monomial_lcm(self.lms[i], self.lms[j])
            si, sj = monomial_div(lcm, self.lms[i]), monomial_div(lcm, self.lms[j])
            s = _add_scaled({}, self.polys[i], 1 / self.lcs[i], si)
            s = _add_scaled(s, self.polys[j], -1 / self.lcs[j], sj)
            cof = None
            quotients = None
            if self.track:
                cof = [
                    _add_scaled(_add_scaled({}, hi, 1 / self.lcs[i], si), hj, -1 / self.lcs[j], sj)
                    for hi, hj in zip(self.cofs[i], self.cofs[j])
                ]
                quotients = [{} for _ in self.polys]
            r = _reduce(s, self.entries(), self.key, quotients)
            if r:
                if self.track:
                    cof = _combine_cofactors(cof, quotients, self.cofs)
                self.add(r, cof)

    def finish(self) -> tuple[list[Terms], list[list[Terms]] | None]:
        key = self.key
        n = len(self.polys)
        keep = []
        for i in range(n):
            redundant = False
            for j in range(n):
                if j == i or not monomial_divides(self.lms[j], self.lms[i]):
                    continue
                if self.lms[j] != self.lms[i] or j < i:
                    redundant = True
                    break
            if not redundant:
                keep.append(i)
        keep.sort(key=lambda i: key(self.lms[i]))
        polys = [self.polys[i] for i in keep]
        lms = [self.lms[i] for i in keep]
        cofs = [self.cofs[i] for i in keep] if self.track else None
        # Interreduce tails; leading terms are already minimal so they survive.
        for idx in range(len(polys)):
            others = [(lms[k], Fraction(1), polys[k]) for k in range(len(polys)) if k != idx]
            others_idx = [k for k in range(len(polys)) if k != idx]
            lead = {lms[idx]: polys[idx][lms[idx]]}
            tail = {m: c for m, c in polys[idx].items() if m != lms[idx]}
            quotients = [{} for _ in others] if self.track else None
            tail = _reduce(tail, others, key, quotients)
            new = dict(lead)
            new.update(tail)
            if self.track:
                cofs[idx] = _combine_cofactors(cofs[idx], quotients, [cofs[k] for k in others_idx])
            polys[idx] = new
        return polys, cofs


def _check_context(ideal: Ideal, order: MonomialOrder) -> MonomialOrder:
    if order.context is not None and order.context != ideal.context:
        raise ContextError("monomial order is tied to a different context")
    return order.on(ideal.context)


def buchberger(ideal: Ideal, order: MonomialOrder | None = None, track: bool = False) -> GroebnerBasis:
    """Reduced Gröbner basis of ``ideal``; deterministic for fixed input."""
    order = _check_context(ideal, order or MonomialOrder())
    if len(ideal.context) == 0:
        raise ValueError("buchberger needs a nonempty variable context")
    ctx = ideal.context
    nsrc = len(ideal.generators)
    b = _Builder(ctx, order, track, nsrc)
    one = ctx.one_monomial()
    for idx, g in enumerate(ideal.generators):
        terms = dict(g.terms)
        cof = None
        quotients = None
        if track:
            cof = [({one: Fraction(1)} if j == idx else {}) for j in range(nsrc)]
            quotients = [{} for _ in b.polys]
        r = _reduce(terms, b.entries(), order.key, quotients)
        if r:
            if track:
                cof = _combine_cofactors(cof, quotients, b.cofs)
            b.add(r, cof)
    b.run()
    polys, cofs = b.finish()
    basis = tuple(Polynomial._raw(ctx, p) for p in polys)
    cofactors = None
    if track:
        cofactors = tuple(tuple(Polynomial._raw(ctx, h) for h in row) for row in cofs)
    return GroebnerBasis(order, basis, ideal, cofactors)


def _entries(gb: GroebnerBasis):
    out = []
    for g in gb.basis:
        lm = g.leading_monomial(gb.order)
        out.append((lm, g.coefficient(lm), dict(g.terms)))
    return out


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    if p.context != gb.context:
        raise ContextError("polynomial and basis live in different contexts")
    return Polynomial._raw(p.context, _reduce(dict(p.terms), _entries(gb), gb.order.key))


def reduce_with_quotients(p: Polynomial, gb: GroebnerBasis) -> tuple[list[Polynomial], Polynomial]:
    """Division with remainder: ``p == sum(q_i * basis_i) + r``."""
    if p.context != gb.context:
        raise ContextError("polynomial and basis live in different contexts")
    quotients = [{} for _ in gb.basis]
    r = _reduce(dict(p.terms), _entries(gb), gb.order.key, quotients)
    return [Polynomial._raw(p.context, q) for q in quotients], Polynomial._raw(p.context, r)


def lift(p: Polynomial, gb: GroebnerBasis) -> list[Polynomial]:
    """Cofactors ``h`` with ``p == sum(h_i * gb.source.generators[i])``.

    Requires a basis built with ``track=True``; raises if ``p`` is not a member.
    """
    if gb.cofactors is None:
        raise ValueError("basis was computed without cofactor tracking")
    quotients, r = reduce_with_quotients(p, gb)
    if r:
        raise ValueError("polynomial is not in the ideal")
    ctx = gb.context
    out = [ctx.zero() for _ in gb.source.generators]
    for q, row in zip(quotients, gb.cofactors):
        if q:
            for j, h in enumerate(row):
                if h:
                    out[j] = out[j] + q * h
    return out


def ideal_member(p: Polynomial, ideal: Ideal, order: MonomialOrder | None = None) -> bool:
    if p.context != ideal.context:
        raise ContextError("polynomial and ideal live in different contexts")
    if not p:
        return True
    if ideal.is_zero():
        return False
    return normal_form(p, buchberger(ideal, order)).is_zero()


def ideal_contains(outer: Ideal, inner: Ideal, order: MonomialOrder | None = None) -> bool:
    """True when every generator of ``inner`` lies in ``outer``; one basis is shared."""
    if outer.context != inner.context:
        raise ContextError("ideals live in different contexts")
    if inner.is_zero():
        return True
    if outer.is_zero():
        return False
    gb = buchberger(outer, order)
    return all(normal_form(g, gb).is_zero() for g in inner.generators)


def zero_dimensional(ideal: Ideal, order: MonomialOrder | None = None) -> bool:
    """Leading-monomial pure-power test: every variable has a pure power among the leading monomials."""
    if ideal.is_zero():
        raise ValueError("zero_dimensional is undefined for the zero ideal")
    gb = buchberger(ideal, order)
    n = len(ideal.context)
    covered = set()
    for lm in gb.leading_monomials():
        support = [i for i, e in enumerate(lm) if e]
        if len(support) == 1:
            covered.add(support[0])
        elif not support:
            return True  # unit ideal: empty variety
    return len(covered) == n


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    lf, lg = f.leading_monomial(order), g.leading_monomial(order)
    lcm = monomial_lcm(lf, lg)
    a = Polynomial.monomial(f.context, monomial_div(lcm, lf), 1 / f.coefficient(lf))
    b = Polynomial.monomial(g.context, monomial_div(lcm, lg), 1 / g.coefficient(lg))
    return a * f - b * g


def is_groebner_basis(basis: Iterable[Polynomial], order: MonomialOrder) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    basis = [g for g in basis if g]
    if not basis:
        return True
    ctx = basis[0].context
    fake = GroebnerBasis(order.on(ctx), tuple(basis), Ideal(ctx, tuple(basis)))
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if normal_form(s_polynomial(basis[i], basis[j], order), fake):
                return False
    return True
