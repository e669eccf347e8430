"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Polynomial` lives in a :class:`VarContext` (an ordered tuple of
variable names) and stores its terms as a map from exponent tuples to
:class:`fractions.Fraction` coefficients.  Zero coefficients are never
stored, so two polynomials are equal exactly when their term maps are.

Example::

    >>> ctx = VarContext(("x", "y"))
    >>> x, y = ctx.gens()
    >>> str((x + 1) * y)
    'x*y + y'
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from types import MappingProxyType
from typing import Iterable, Mapping, Union

Monomial = tuple[int, ...]
Scalar = Union[int, Fraction]


class ContextError(ValueError):
    """Operands live in different variable contexts."""


class UnassignedVariableError(ValueError):
    """A substitution left a variable that occurs in the polynomial unassigned."""


@dataclass(frozen=True)
class VarContext:
    """Ordered, duplicate-free list of variable names."""

    names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise ValueError(f"duplicate variable names: {', '.join(dupes)}")

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name) -> bool:
        return name in self.names

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def gen(self, name: str) -> "Polynomial":
        return Polynomial.variable(self, name)

    def gens(self) -> list["Polynomial"]:
        return [self.gen(n) for n in self.names]

    def zero(self) -> "Polynomial":
        return Polynomial(self)

    def one(self) -> "Polynomial":
        return Polynomial.constant(self, 1)

    def unit(self, i: int) -> Monomial:
        return tuple(1 if j == i else 0 for j in range(len(self.names)))

    def one_monomial(self) -> Monomial:
        return (0,) * len(self.names)


def _grevlex_key(m: Monomial):
    return (sum(m), tuple(-e for e in reversed(m)))


def _lex_key(m: Monomial):
    return m


ORDER_KINDS = ("grevlex", "lex")


@dataclass(frozen=True)
class MonomialOrder:
    """A term order on the monomials of ``context``.

    ``key(m)`` maps a monomial to a value whose natural ordering is the
    term order, so ``max(monomials, key=order.key)`` is the leading one.
    """

    kind: str = "grevlex"
    context: VarContext | None = None

    def __post_init__(self):
        if self.kind not in ORDER_KINDS:
            raise ValueError(f"unknown monomial order {self.kind!r}; expected one of {ORDER_KINDS}")

    @property
    def key(self):
        return _grevlex_key if self.kind == "grevlex" else _lex_key

    def on(self, context: VarContext) -> "MonomialOrder":
        return MonomialOrder(self.kind, context)


def compare(m1: Monomial, m2: Monomial, order: MonomialOrder) -> int:
    """Return -1, 0 or 1 as ``m1`` is smaller than, equal to or larger than ``m2``."""
    if len(m1) != len(m2):
        raise ContextError("monomials have different lengths")
    if order.context is not None and len(m1) != len(order.context):
        raise ContextError("monomial length does not match the order's context")
    k1, k2 = order.key(m1), order.key(m2)
    return (k1 > k2) - (k1 < k2)


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


class Polynomial:
    """Immutable sparse polynomial over the rationals."""

    __slots__ = ("context", "_terms", "_hash")

    def __init__(self, context: VarContext, terms: Mapping[Monomial, Scalar] | None = None):
        self.context = context
        clean: dict[Monomial, Fraction] = {}
        n = len(context)
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) != n or any(e < 0 for e in m):
                raise ValueError(f"bad exponent vector {m} for context of size {n}")
            c = _as_fraction(c)
            if c:
                clean[m] = clean.get(m, 0) + c
                if not clean[m]:
                    del clean[m]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, context: VarContext, terms: dict[Monomial, Fraction]) -> "Polynomial":
        # Trusted constructor: terms already canonical.
        p = object.__new__(cls)
        p.context = context
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, context: VarContext, c: Scalar) -> "Polynomial":
        c = _as_fraction(c)
        return cls._raw(context, {context.one_monomial(): c} if c else {})

    @classmethod
    def variable(cls, context: VarContext, name: str) -> "Polynomial":
        return cls._raw(context, {context.unit(context.index(name)): Fraction(1)})

    @classmethod
    def monomial(cls, context: VarContext, m: Monomial, c: Scalar = 1) -> "Polynomial":
        return cls(context, {m: c})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get(self.context.one_monomial(), Fraction(0))

    def total_degree(self) -> int:
        """Largest total degree of a term; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def variables(self) -> list[str]:
        used = set()
        for m in self._terms:
            used.update(i for i, e in enumerate(m) if e)
        return [self.context.names[i] for i in sorted(used)]

    def coefficient(self, m: Monomial) -> Fraction:
        return self._terms.get(tuple(m), Fraction(0))

    def leading_monomial(self, order: MonomialOrder) -> Monomial:
        if not self._terms:
            raise ValueError("the zero polynomial has no leading monomial")
        return max(self._terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder) -> Fraction:
        return self._terms[self.leading_monomial(order)]

    def monic(self, order: MonomialOrder) -> "Polynomial":
        if not self._terms:
            return self
        return self * (1 / self.leading_coefficient(order))

    def sorted_terms(self, order: MonomialOrder | None = None) -> list[tuple[Monomial, Fraction]]:
        key = (order or MonomialOrder()).key
        return sorted(self._terms.items(), key=lambda mc: key(mc[0]), reverse=True)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.context != self.context:
                raise ContextError(
                    f"context mismatch: {self.context.names} vs {other.context.names}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.context, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(self.context, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.context, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if not c:
                return Polynomial._raw(self.context, {})
            return Polynomial._raw(self.context, {m: a * c for m, a in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial._raw(self.context, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(self.context, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.context == other.context and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Polynomial.constant(self.context, other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.context, frozenset(self._terms.items())))
        return self._hash

    # -- structural maps --------------------------------------------------

    def diff(self, name: str) -> "Polynomial":
        """Formal partial derivative with respect to ``name``."""
        i = self.context.index(name)
        out = {}
        for m, c in self._terms.items():
            if m[i]:
                dm = m[:i] + (m[i] - 1,) + m[i + 1:]
                out[dm] = c * m[i]
        return Polynomial._raw(self.context, out)

    def relabel(self, target: VarContext, positions: Iterable[int]) -> "Polynomial":
        """Move variable ``i`` of this context to slot ``positions[i]`` of ``target``."""
        positions = list(positions)
        n = len(target)
        out = {}
        for m, c in self._terms.items():
            new = [0] * n
            for i, e in enumerate(m):
                if e:
                    new[positions[i]] += e
            key = tuple(new)
            out[key] = out.get(key, 0) + c
        return Polynomial._raw(target, {m: c for m, c in out.items() if c})

    def embed(self, target: VarContext) -> "Polynomial":
        """Re-express in a larger context containing all of this context's names."""
        return self.relabel(target, [target.index(n) for n in self.context.names])

    def substitute(self, assignment: Mapping[str, "Polynomial"], target: VarContext | None = None) -> "Polynomial":
        """Ring homomorphism sending each variable to a polynomial over ``target``.

        Only variables that occur in ``self`` need to be assigned.
        """
        if target is None:
            target = next((q.context for q in assignment.values()), self.context)
        images = []
        for i, name in enumerate(self.context.names):
            if any(m[i] for m in self._terms):
                if name not in assignment:
                    raise UnassignedVariableError(f"no value assigned to variable {name!r}")
                img = assignment[name]
                if isinstance(img, (int, Fraction)):
                    img = Polynomial.constant(target, img)
                if img.context != target:
                    raise ContextError(f"image of {name!r} is not over the target context")
                images.append(img)
            else:
                images.append(None)
        powers: dict[tuple[int, int], Polynomial] = {}
        result = Polynomial._raw(target, {})
        for m, c in self._terms.items():
            term = Polynomial.constant(target, c)
            for i, e in enumerate(m):
                if e:
                    if (i, e) not in powers:
                        powers[(i, e)] = images[i] ** e
                    term = term * powers[(i, e)]
            result = result + term
        return result

    # -- text -------------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms():
            factors = []
            for name, e in zip(self.context.names, m):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            pieces.append(("-" if c < 0 else "+", body))
        sign, body = pieces[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r}, vars={list(self.context.names)})"
