"""Doubled coordinates and doubles ideals.

For a polynomial ``h`` in variables ``z`` the double is ``h(z) - h(z')``,
living in the doubled context ``(z, z')``.  Pairing is positional: base
variable ``i`` is doubled-context slot ``i`` and its primed partner is slot
``N + i``.  In text the partner of ``x`` is written ``x'``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .groebner import Ideal
from .poly import ContextError, Polynomial, VarContext

PRIME = "'"


def primed(name: str) -> str:
    return name + PRIME


def unprimed(name: str) -> str:
    if not name.endswith(PRIME):
        raise ValueError(f"{name!r} is not a primed name")
    return name[: -len(PRIME)]


@dataclass(frozen=True)
class DoubledContext:
    base: VarContext
    doubled: VarContext = field(init=False)

    def __post_init__(self):
        names = self.base.names + tuple(primed(n) for n in self.base.names)
        # VarContext rejects the case where a base name already ends in a prime
        # and collides with a generated partner.
        object.__setattr__(self, "doubled", VarContext(names))

    def __len__(self) -> int:
        return len(self.base)

    def partner(self, name: str) -> str:
        """Priming is an involution on the doubled names."""
        i = self.doubled.index(name)
        n = len(self.base)
        return self.doubled.names[i + n if i < n else i - n]

    def embed_unprimed(self, h: Polynomial) -> Polynomial:
        self._check(h)
        return h.relabel(self.doubled, range(len(self.base)))

    def embed_primed(self, h: Polynomial) -> Polynomial:
        self._check(h)
        n = len(self.base)
        return h.relabel(self.doubled, range(n, 2 * n))

    def collapse(self, p: Polynomial) -> Polynomial:
        """Restrict a doubled-context polynomial to the diagonal (v' -> v), over the base."""
        if p.context != self.doubled:
            raise ContextError("polynomial is not over the doubled context")
        n = len(self.base)
        return p.relabel(self.base, list(range(n)) * 2)

    def _check(self, h: Polynomial) -> None:
        if h.context != self.base:
            raise ContextError(
                f"expected a polynomial over {list(self.base.names)}, got {list(h.context.names)}"
            )


def double(h: Polynomial, dc: DoubledContext | None = None) -> Polynomial:
    """``h(z) - h(z')`` over the doubled context."""
    dc = dc or DoubledContext(h.context)
    return dc.embed_unprimed(h) - dc.embed_primed(h)


def doubles_ideal(components: Iterable[Polynomial], dc: DoubledContext) -> Ideal:
    """Ideal generated by the doubles of ``components``.

    Zero doubles (constant components) are dropped, as are repeats, so the
    generator list keeps first-occurrence order.
    """
    gens: list[Polynomial] = []
    for h in components:
        d = double(h, dc)
        if d and d not in gens:
            gens.append(d)
    return Ideal(dc.doubled, tuple(gens))


def diagonal_ideal(dc: DoubledContext) -> Ideal:
    gens = [dc.doubled.gen(n) - dc.doubled.gen(primed(n)) for n in dc.base.names]
    return Ideal(dc.doubled, tuple(gens))
