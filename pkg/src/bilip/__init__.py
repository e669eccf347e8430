"""Certified Lipschitz decisions for canonical vector fields of determinantal unfoldings."""

from .classify import JetKind, JetType, family_e1, family_e2, jet_type, linear_part_rank
from .doubles import DoubledContext, diagonal_ideal, double, doubles_ideal
from .groebner import GroebnerBasis, Ideal, buchberger, ideal_contains, ideal_member, normal_form, zero_dimensional
from .lipschitz import (
    Certificate,
    Curve,
    SearchBudget,
    Verdict,
    curve_refutes,
    lipschitz_verdict,
    pullback_ideal_order,
    search_refuting_curve,
    t_order,
)
from .poly import MonomialOrder, Polynomial, VarContext, compare
from .unfolding import MatrixGerm, Unfolding, build_unfolding, theta_doubles, unfolding_doubles

__version__ = "0.1.0"

__all__ = [
    "Certificate", "Curve", "DoubledContext", "GroebnerBasis", "Ideal", "JetKind", "JetType",
    "MatrixGerm", "MonomialOrder", "Polynomial", "SearchBudget", "Unfolding", "VarContext", "Verdict",
    "build_unfolding", "buchberger", "compare", "curve_refutes", "diagonal_ideal", "double",
    "doubles_ideal", "family_e1", "family_e2", "ideal_contains", "ideal_member", "jet_type",
    "linear_part_rank", "lipschitz_verdict", "normal_form", "pullback_ideal_order",
    "search_refuting_curve", "t_order", "theta_doubles", "unfolding_doubles", "zero_dimensional",
]
