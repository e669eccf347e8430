"""Reduced-point / fat-point classification of a presentation matrix, and the
two built-in normal-form families.

The ideal generated by the entries of ``F`` (its 1-minors) defines the
origin as a reduced point when the linear parts of the entries span all of
the cotangent space, i.e. their rank equals the number of variables.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .groebner import Ideal, zero_dimensional
from .poly import MonomialOrder, Polynomial, VarContext
from .unfolding import MatrixGerm

CATALOG_VARS = VarContext(("x", "y", "z", "w"))


class JetKind(str, enum.Enum):
    REDUCED_POINT = "REDUCED_POINT"
    FAT_POINT = "FAT_POINT"
    NOT_ISOLATED = "NOT_ISOLATED"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class JetType:
    kind: JetKind
    linear_rank: int
    q: int


def _integer_rank(rows: list[list[int]]) -> int:
    """Rank by fraction-free elimination (cross-multiplication, no division)."""
    rows = [r[:] for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank][col]
        for r in range(rank + 1, len(rows)):
            a = rows[r][col]
            rows[r] = [p * rows[r][c] - a * rows[rank][c] for c in range(ncols)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def linear_part_rank(F: MatrixGerm) -> int:
    """Rank of the matrix of degree-one coefficients of the entries of ``F``."""
    ctx = F.context
    q = len(ctx)
    rows = []
    for e in F.flatten():
        if e.constant_term():
            raise ValueError(f"entry {e} has a nonzero constant term; F must vanish at the origin")
        coeffs = [e.coefficient(ctx.unit(i)) for i in range(q)]
        den = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
        rows.append([int(c * den) for c in coeffs])
    return _integer_rank(rows) if q else 0


def entries_ideal(F: MatrixGerm) -> Ideal:
    return Ideal(F.context, tuple(F.flatten()))


def jet_type(F: MatrixGerm, order: MonomialOrder | None = None) -> JetType:
    q = len(F.context)
    r = linear_part_rank(F)
    if r == q:
        return JetType(JetKind.REDUCED_POINT, r, q)
    ideal = entries_ideal(F)
    if not ideal.is_zero() and zero_dimensional(ideal, order):
        return JetType(JetKind.FAT_POINT, r, q)
    return JetType(JetKind.NOT_ISOLATED, r, q)


def _geometric(v: Polynomial, n: int) -> Polynomial:
    """1 + v + ... + v^(n-1)."""
    total = v.context.zero()
    for i in range(n):
        total = total + v ** i
    return total


def family_e1(l: int, k: int) -> tuple[MatrixGerm, MatrixGerm]:
    """F = [[w^l, y, x], [z, w, y^k]] with its Lipschitz deformation."""
    if l < 2 or k < 2:
        raise ValueError("family E1 needs l >= 2 and k >= 2")
    x, y, z, w = CATALOG_VARS.gens()
    F = MatrixGerm.from_rows(CATALOG_VARS, [[w ** l, y, x], [z, w, y ** k]])
    theta = MatrixGerm.from_rows(CATALOG_VARS, [[_geometric(w, l), 0, 0], [0, 0, _geometric(y, k)]])
    return F, theta


def family_e2(k: int) -> tuple[MatrixGerm, MatrixGerm]:
    """F = [[z, y + w^2, x^2], [w^k, x, y]] with its non-Lipschitz deformation."""
    if k < 2:
        raise ValueError("family E2 needs k >= 2")
    x, y, z, w = CATALOG_VARS.gens()
    F = MatrixGerm.from_rows(CATALOG_VARS, [[z, y + w ** 2, x ** 2], [w ** k, x, y]])
    theta = MatrixGerm.from_rows(CATALOG_VARS, [[0, 1, x * w + w], [_geometric(w, k), w, w]])
    return F, theta


def identify_catalog(F: MatrixGerm, theta: MatrixGerm, max_param: int = 8) -> str | None:
    """Name of the catalog instance equal to ``(F, theta)``, if any."""
    if F.context != CATALOG_VARS or F.shape != (2, 3):
        return None
    for k in range(2, max_param + 1):
        if family_e2(k) == (F, theta):
            return f"e2(k={k})"
        for l in range(2, max_param + 1):
            if family_e1(l, k) == (F, theta):
                return f"e1(l={l},k={k})"
    return None
