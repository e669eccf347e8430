"""Independent re-checking of certificates.

Nothing here touches Gröbner bases or the compiled search kernel.  Doubles
are rebuilt by substitution, membership claims are checked by expanding the
recorded cofactor combinations, and refutations by re-pulling back every
generator along the recorded curve.
"""

from __future__ import annotations

from .lipschitz import (
    DIAGONAL,
    INCLUSION,
    INF,
    THETA_ZERO,
    Certificate,
    InclusionWitness,
    RefutationWitness,
    SearchRecord,
    T,
    Verdict,
    t_order,
)
from .poly import Polynomial, VarContext
from .unfolding import Unfolding


class CertificateError(ValueError):
    """A certificate failed re-verification."""


def _doubled(ambient: VarContext) -> VarContext:
    return VarContext(ambient.names + tuple(n + "'" for n in ambient.names))


def _double_by_substitution(h: Polynomial, dctx: VarContext) -> Polynomial:
    left = {n: dctx.gen(n) for n in h.context.names}
    right = {n: dctx.gen(n + "'") for n in h.context.names}
    return h.substitute(left, dctx) - h.substitute(right, dctx)


def recompute_ideals(U: Unfolding) -> tuple[VarContext, list[Polynomial], list[Polynomial]]:
    """(doubled context, unfolding doubles, theta doubles), nonzero ones only."""
    dctx = _doubled(U.ambient)
    comps = U.components if U.include_param_double else U.components[1:]
    big = _distinct_nonzero(_double_by_substitution(c, dctx) for c in comps)
    small = _distinct_nonzero(_double_by_substitution(t, dctx) for t in U.theta_components())
    return dctx, big, small


def _distinct_nonzero(polys) -> list[Polynomial]:
    out = []
    for p in polys:
        if p and p not in out:
            out.append(p)
    return out


def _check_combination(target: Polynomial, cofactors, gens) -> None:
    if len(cofactors) != len(gens):
        raise CertificateError("cofactor list does not match the generator list")
    total = target.context.zero()
    for h, g in zip(cofactors, gens):
        if h.context != target.context:
            raise CertificateError("cofactor is over the wrong context")
        total = total + h * g
    if total != target:
        raise CertificateError(f"cofactor combination does not reproduce {target}")


def _verify_inclusion(U: Unfolding, w: InclusionWitness) -> None:
    dctx, big, small = recompute_ideals(U)
    if w.kind == THETA_ZERO:
        if small:
            raise CertificateError("theta has a nonzero double")
        return
    if list(w.generators) != big:
        raise CertificateError("recorded generators differ from the recomputed doubles ideal")
    if len(w.targets) != len(w.cofactors):
        raise CertificateError("every target needs a cofactor row")
    for target, cofs in zip(w.targets, w.cofactors):
        _check_combination(target, cofs, big)
    if w.kind == DIAGONAL:
        wanted = [dctx.gen(n) - dctx.gen(n + "'") for n in U.ambient.names]
        if set(w.targets) != set(wanted):
            raise CertificateError("diagonal certificate does not cover every coordinate difference")
        # Generated by linear differences, so membership in the diagonal ideal is vanishing on it.
        collapse = {n: U.ambient.gen(n) for n in U.ambient.names}
        collapse.update({n + "'": U.ambient.gen(n) for n in U.ambient.names})
        for g in small:
            if g.substitute(collapse, U.ambient):
                raise CertificateError(f"{g} does not vanish on the diagonal")
    elif w.kind == INCLUSION:
        if set(w.targets) != set(small):
            raise CertificateError("inclusion certificate does not cover every theta double")
    else:
        raise CertificateError(f"unknown inclusion kind {w.kind!r}")


def _verify_refutation(U: Unfolding, w: RefutationWitness) -> None:
    dctx, big, small = recompute_ideals(U)
    curve = w.curve
    if curve.context != dctx:
        raise CertificateError("curve is not over the doubled ambient space")
    if not any(curve.components):
        raise CertificateError("curve is identically zero")
    for c in curve.components:
        if c.context != T or c.constant_term():
            raise CertificateError("curve component does not vanish at t = 0")
    if w.generator not in small:
        raise CertificateError(f"{w.generator} is not a double of a theta entry")
    assignment = curve.assignment()
    g_order = t_order(w.generator.substitute(assignment, T))
    m = min((t_order(f.substitute(assignment, T)) for f in big), default=INF)
    if g_order != w.generator_order or m != w.ideal_order:
        raise CertificateError(
            f"recorded orders ({w.generator_order}, {w.ideal_order}) differ from recomputed ({g_order}, {m})"
        )
    if g_order == INF or not (g_order < m or m == INF):
        raise CertificateError("pullback of the generator does not have strictly lower order")


def verify_certificate(U: Unfolding, cert: Certificate) -> None:
    """Raise :class:`CertificateError` unless ``cert`` re-checks against ``U``."""
    w = cert.witness
    if cert.verdict == Verdict.CERTIFIED_LIPSCHITZ:
        if not isinstance(w, InclusionWitness):
            raise CertificateError("a Lipschitz verdict needs a membership witness")
        _verify_inclusion(U, w)
    elif cert.verdict == Verdict.CERTIFIED_NOT_LIPSCHITZ:
        if not isinstance(w, RefutationWitness):
            raise CertificateError("a non-Lipschitz verdict needs a refuting curve")
        _verify_refutation(U, w)
    elif cert.verdict == Verdict.INCONCLUSIVE:
        if not isinstance(w, SearchRecord):
            raise CertificateError("an inconclusive verdict needs a search record")
        if not recompute_ideals(U)[2]:
            raise CertificateError("theta doubles vanish; the verdict should have been Lipschitz")
    else:
        raise CertificateError(f"unknown verdict {cert.verdict!r}")
