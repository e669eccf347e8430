"""Analysis reports: JSON (schema 1) and a plain-text rendering of the same data."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any

from . import __version__
from .classify import JetType, identify_catalog, jet_type
from .lipschitz import (
    INF,
    Certificate,
    Curve,
    InclusionWitness,
    RefutationWitness,
    SearchBudget,
    SearchRecord,
    T,
    ValuationReport,
    Verdict,
    curve_refutes,
    lipschitz_verdict,
    pullback_ideal_order,
)
from .parsing import ProblemFile, parse_polynomial, parse_problem, serialize_problem
from .poly import MonomialOrder, VarContext
from .unfolding import theta_doubles, unfolding_doubles

SCHEMA = 1
TOOL = "bilip"

ASSUMPTIONS = (
    "homeomorphism-onto-image: the unfolding map is assumed to be a homeomorphism onto its image (not checked)",
    "theta-in-T1: theta is not checked to be a first-order deformation class",
    "polynomial-representatives: entries are polynomials over Q; membership is decided in the polynomial ring",
)

HEURISTIC_NOTE = (
    "heuristic: the reduced/fat-point dichotomy is proven only for simple isolated "
    "Cohen-Macaulay codimension-2 singularities with a semi-universal unfolding"
)


def _order_out(o):
    return "inf" if o == INF else int(o)


def _order_in(o):
    return INF if o == "inf" else int(o)


def _polys(ps) -> list[str]:
    return [str(p) for p in ps]


def budget_to_dict(b: SearchBudget) -> dict:
    return {
        "max_exponent": b.max_exponent,
        "max_support": b.max_support,
        "coefficients": [str(c) for c in b.coefficients],
    }


def curve_to_dict(curve: Curve) -> dict:
    return {n: str(c) for n, c in curve.nonzero().items()}


def curve_from_dict(d: dict, context: VarContext) -> Curve:
    return Curve.from_mapping(context, {n: parse_polynomial(s, T) for n, s in d.items()})


def valuation_to_list(v: ValuationReport) -> list:
    return [[i, _order_out(o)] for i, o in v.orders]


def witness_to_dict(w) -> dict:
    if isinstance(w, InclusionWitness):
        return {
            "type": "inclusion",
            "kind": w.kind,
            "generators": _polys(w.generators),
            "basis": _polys(w.basis),
            "members": [
                {"target": str(t), "cofactors": _polys(c)} for t, c in zip(w.targets, w.cofactors)
            ],
        }
    if isinstance(w, RefutationWitness):
        return {
            "type": "refutation",
            "curve": curve_to_dict(w.curve),
            "curve_text": str(w.curve),
            "generator": str(w.generator),
            "generator_index": w.generator_index,
            "generator_order": _order_out(w.generator_order),
            "ideal_order": _order_out(w.ideal_order),
            "unfolding_orders": valuation_to_list(w.unfolding_orders),
        }
    if isinstance(w, SearchRecord):
        return {
            "type": "search-exhausted",
            "budget": budget_to_dict(w.budget),
            "curves_examined": w.curves_examined,
            "nonmember_generators": _polys(w.nonmember_generators),
        }
    raise TypeError(f"unknown witness type {type(w).__name__}")


def witness_from_dict(d: dict, dctx: VarContext):
    """Rebuild a witness; polynomials are parsed over the doubled context ``dctx``."""
    kind = d.get("type")
    if kind == "inclusion":
        parse = lambda s: parse_polynomial(s, dctx)  # noqa: E731
        members = d.get("members", [])
        return InclusionWitness(
            d["kind"],
            tuple(parse(s) for s in d.get("generators", [])),
            tuple(parse(s) for s in d.get("basis", [])),
            tuple(parse(m["target"]) for m in members),
            tuple(tuple(parse(s) for s in m["cofactors"]) for m in members),
        )
    if kind == "refutation":
        orders = tuple((int(i), _order_in(o)) for i, o in d.get("unfolding_orders", []))
        return RefutationWitness(
            curve_from_dict(d["curve"], dctx),
            int(d["generator_index"]),
            parse_polynomial(d["generator"], dctx),
            _order_in(d["generator_order"]),
            _order_in(d["ideal_order"]),
            ValuationReport(orders, _order_in(d["ideal_order"])),
        )
    if kind == "search-exhausted":
        b = d["budget"]
        budget = SearchBudget(b["max_exponent"], tuple(b["coefficients"]), b["max_support"])
        return SearchRecord(budget, int(d["curves_examined"]),
                            tuple(parse_polynomial(s, dctx) for s in d.get("nonmember_generators", [])))
    raise ValueError(f"unknown witness type {kind!r}")


def input_to_dict(pf: ProblemFile) -> dict:
    o = pf.options
    return {
        "variables": list(pf.variables),
        "parameter": pf.parameter,
        "F": [_polys(r) for r in pf.F.entries],
        "theta": [_polys(r) for r in pf.theta.entries],
        "options": {
            "order": o.order,
            "include_param_double": o.include_param_double,
            **budget_to_dict(o.budget),
        },
        "problem": serialize_problem(pf),
    }


def jet_to_dict(jt: JetType, catalog: str | None) -> dict:
    return {
        "kind": str(jt.kind),
        "linear_rank": jt.linear_rank,
        "q": jt.q,
        "scope": f"catalog {catalog}" if catalog else "heuristic",
        "note": None if catalog else HEURISTIC_NOTE,
    }


def _convention(pf: ProblemFile) -> str:
    return "include-parameter-double" if pf.options.include_param_double else "matrix-components-only"


@dataclass
class Report:
    problem: ProblemFile
    certificate: Certificate
    jet: JetType | None
    catalog: str | None = None
    durations: dict[str, float] = field(default_factory=dict)
    jet_error: str | None = None

    @property
    def verdict(self) -> Verdict:
        return self.certificate.verdict

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema": SCHEMA,
            "kind": "analysis",
            "tool": TOOL,
            "version": __version__,
            "input": input_to_dict(self.problem),
            "verdict": str(self.certificate.verdict),
            "witness": witness_to_dict(self.certificate.witness),
            "jet_type": jet_to_dict(self.jet, self.catalog) if self.jet else {"error": self.jet_error},
            "budget": budget_to_dict(self.problem.options.budget),
            "order": self.certificate.order,
            "doubles_convention": _convention(self.problem),
            "assumptions": list(ASSUMPTIONS),
            "durations": {k: round(v, 6) for k, v in self.durations.items()},
        }

    def to_text(self) -> str:
        return render_text(self.to_dict())


def run_analysis(pf: ProblemFile) -> Report:
    U = pf.unfolding()
    order = MonomialOrder(pf.options.order)
    t0 = time.perf_counter()
    cert = lipschitz_verdict(U, pf.options.budget, order)
    t1 = time.perf_counter()
    jet, jet_error = None, None
    try:
        jet = jet_type(pf.F, order)
    except ValueError as exc:
        jet_error = str(exc)
    t2 = time.perf_counter()
    durations = {"verdict_s": t1 - t0, "jet_s": t2 - t1, "total_s": t2 - t0}
    return Report(pf, cert, jet, identify_catalog(pf.F, pf.theta), durations, jet_error)


def check_curve(pf: ProblemFile, curve: Curve) -> dict[str, Any]:
    """Valuations of both doubles ideals along ``curve`` and whether it refutes."""
    U = pf.unfolding()
    thetas, big = theta_doubles(U), unfolding_doubles(U)
    tv = pullback_ideal_order(thetas, curve)
    bv = pullback_ideal_order(big, curve)
    witness = curve_refutes(U, curve)
    out = {
        "schema": SCHEMA,
        "kind": "curve-check",
        "tool": TOOL,
        "version": __version__,
        "input": input_to_dict(pf),
        "curve": curve_to_dict(curve),
        "curve_text": str(curve),
        "theta_doubles": {
            "generators": _polys(thetas.generators),
            "orders": valuation_to_list(tv),
            "ideal_order": _order_out(tv.ideal_order),
        },
        "unfolding_doubles": {
            "generators": _polys(big.generators),
            "orders": valuation_to_list(bv),
            "ideal_order": _order_out(bv.ideal_order),
        },
        "refutes": witness is not None,
        "doubles_convention": _convention(pf),
    }
    if witness is not None:
        out["verdict"] = str(Verdict.CERTIFIED_NOT_LIPSCHITZ)
        out["witness"] = witness_to_dict(witness)
    else:
        out["verdict"] = str(Verdict.INCONCLUSIVE)
    return out


def load_report(data: dict) -> tuple[ProblemFile, Certificate]:
    """Rebuild the problem and certificate recorded in a report dictionary."""
    if data.get("schema") != SCHEMA:
        raise ValueError(f"unsupported report schema {data.get('schema')!r}")
    pf = parse_problem(data["input"]["problem"])
    U = pf.unfolding()
    dctx = U.doubled.doubled
    verdict = Verdict(data["verdict"])
    witness = witness_from_dict(data["witness"], dctx)
    return pf, Certificate(verdict, witness, data.get("order", "grevlex"))


def _fmt_matrix(rows) -> list[str]:
    return ["    [ " + ", ".join(r) + " ]" for r in rows]


def render_text(d: dict) -> str:
    inp = d["input"]
    lines = [f"{d['tool']} {d['version']}  ({d['kind']})"]
    lines.append(f"variables: {', '.join(inp['variables'])}   parameter: {inp['parameter']}")
    lines.append("F =")
    lines += _fmt_matrix(inp["F"])
    lines.append("theta =")
    lines += _fmt_matrix(inp["theta"])
    lines.append(f"doubles convention: {d['doubles_convention']}")
    if d["kind"] == "curve-check":
        lines.append(f"curve: {d['curve_text']}   (all other coordinates 0)")
        for key, label in (("theta_doubles", "I_D(theta)"), ("unfolding_doubles", "I_D(F~)")):
            block = d[key]
            lines.append(f"{label} pulls back to order {block['ideal_order']}")
            for (i, o), g in zip(block["orders"], block["generators"]):
                lines.append(f"    [{i}] order {o}: {g}")
        lines.append(f"refutes: {'yes' if d['refutes'] else 'no'}")
        lines.append(f"verdict: {d['verdict']}")
        return "\n".join(lines) + "\n"

    lines.append(f"verdict: {d['verdict']}")
    w = d["witness"]
    if w["type"] == "inclusion":
        lines.append(f"  witness: {w['kind']}")
        if w["members"]:
            lines.append(f"  {len(w['members'])} membership(s) certified by explicit cofactors over "
                         f"{len(w['generators'])} generators; reduced basis has {len(w['basis'])} elements")
            for m in w["members"]:
                lines.append(f"    {m['target']}")
    elif w["type"] == "refutation":
        lines.append(f"  refuting curve: {w['curve_text']}   (all other coordinates 0)")
        lines.append(f"  offending generator: {w['generator']}   t-order {w['generator_order']}")
        lines.append(f"  doubles ideal of the unfolding pulls back to t^{w['ideal_order']}")
    else:
        lines.append(f"  searched {w['curves_examined']} monomial curves without a refutation")
        for g in w["nonmember_generators"]:
            lines.append(f"    not an ideal member: {g}")
    jt = d["jet_type"]
    if "error" in jt:
        lines.append(f"jet type: unavailable ({jt['error']})")
    else:
        lines.append(f"jet type: {jt['kind']}  (linear rank {jt['linear_rank']} of {jt['q']}; {jt['scope']})")
        if jt["note"]:
            lines.append(f"  {jt['note']}")
    b = d["budget"]
    lines.append(f"search budget: max_exponent={b['max_exponent']} max_support={b['max_support']} "
                 f"coefficients={','.join(b['coefficients'])}   order: {d['order']}")
    lines.append("assumptions:")
    lines += [f"  - {a}" for a in d["assumptions"]]
    lines.append(f"time: {d['durations'].get('total_s', 0):.3f} s")
    return "\n".join(lines) + "\n"
