"""One-parameter unfoldings ``(y, x) -> (y, F(x) + y*theta(x))``."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .doubles import DoubledContext, doubles_ideal
from .groebner import Ideal
from .poly import ContextError, Polynomial, VarContext


@dataclass(frozen=True)
class MatrixGerm:
    """An n x p matrix of polynomials sharing one context."""

    context: VarContext
    entries: tuple[tuple[Polynomial, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        object.__setattr__(self, "entries", rows)
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and one column")
        width = len(rows[0])
        for r in rows:
            if len(r) != width:
                raise ValueError("matrix rows have different lengths")
            for e in r:
                if e.context != self.context:
                    raise ContextError("matrix entry is not over the matrix context")

    @classmethod
    def from_rows(cls, context: VarContext, rows: Sequence[Sequence]) -> "MatrixGerm":
        """Build from rows whose entries are polynomials or integer/Fraction constants."""
        conv = []
        for r in rows:
            conv.append(tuple(
                e if isinstance(e, Polynomial) else Polynomial.constant(context, e) for e in r
            ))
        return cls(context, tuple(conv))

    @classmethod
    def zeros(cls, context: VarContext, n: int, p: int) -> "MatrixGerm":
        return cls.from_rows(context, [[0] * p for _ in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.entries[0])

    def flatten(self) -> list[Polynomial]:
        """Entries in row-major order."""
        return [e for row in self.entries for e in row]

    def __getitem__(self, ij) -> Polynomial:
        i, j = ij
        return self.entries[i][j]


@dataclass(frozen=True)
class Unfolding:
    param: str
    F: MatrixGerm
    theta: MatrixGerm
    include_param_double: bool = True
    ambient: VarContext = field(init=False)
    components: tuple[Polynomial, ...] = field(init=False)

    def __post_init__(self):
        if self.F.shape != self.theta.shape:
            raise ValueError(f"shape mismatch: F is {self.F.shape}, theta is {self.theta.shape}")
        if self.F.context != self.theta.context:
            raise ContextError("F and theta are over different contexts")
        if self.param in self.F.context:
            raise ValueError(f"parameter {self.param!r} collides with a variable of F")
        ambient = VarContext((self.param,) + self.F.context.names)
        y = ambient.gen(self.param)
        comps = [y]
        for f, t in zip(self.F.flatten(), self.theta.flatten()):
            comps.append(f.embed(ambient) + y * t.embed(ambient))
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "components", tuple(comps))

    @property
    def doubled(self) -> DoubledContext:
        return DoubledContext(self.ambient)

    def matrix_components(self) -> tuple[Polynomial, ...]:
        return self.components[1:]

    def theta_components(self) -> list[Polynomial]:
        return [t.embed(self.ambient) for t in self.theta.flatten()]

    def parameter_derivatives(self) -> list[Polynomial]:
        """d/d(param) of every matrix component; equals theta entry-wise."""
        return [c.diff(self.param) for c in self.matrix_components()]


def build_unfolding(F: MatrixGerm, theta: MatrixGerm, param: str = "u",
                    include_param_double: bool = True) -> Unfolding:
    return Unfolding(param, F, theta, include_param_double)


def unfolding_doubles(U: Unfolding) -> Ideal:
    """Doubles ideal of the unfolding map.

    With ``include_param_double`` the parameter component contributes
    ``u - u'``; otherwise only the matrix components are doubled.
    """
    comps = U.components if U.include_param_double else U.matrix_components()
    return doubles_ideal(comps, U.doubled)


def theta_doubles(U: Unfolding) -> Ideal:
    return doubles_ideal(U.theta_components(), U.doubled)
