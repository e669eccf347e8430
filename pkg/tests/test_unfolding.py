import random

import pytest

from bilip.classify import CATALOG_VARS, family_e1, family_e2
from bilip.doubles import diagonal_ideal
from bilip.groebner import Ideal, ideal_contains
from bilip.parsing import parse_polynomial
from bilip.poly import ContextError, VarContext
from bilip.unfolding import MatrixGerm, build_unfolding, theta_doubles, unfolding_doubles

from conftest import random_poly


def D(U, text):
    return parse_polynomial(text, U.doubled.doubled)


def A(U, text):
    return parse_polynomial(text, U.ambient)


def same_ideal(I, J):
    return ideal_contains(I, J) and ideal_contains(J, I)


def test_e1_components():
    U = build_unfolding(*family_e1(2, 2))
    expected = ["u", "w^2 + u*(1 + w)", "y", "x", "z", "w", "y^2 + u*(1 + y)"]
    assert list(U.components) == [A(U, e) for e in expected]
    assert U.ambient.names == ("u", "x", "y", "z", "w")


def test_zero_theta_keeps_f():
    F, _ = family_e1(2, 2)
    U = build_unfolding(F, MatrixGerm.zeros(CATALOG_VARS, 2, 3))
    assert list(U.matrix_components()) == [e.embed(U.ambient) for e in F.flatten()]


def test_e2_perturbed_entry():
    U = build_unfolding(*family_e2(2))
    assert U.components[3] == A(U, "x^2 + u*(x*w + w)")


def test_shape_and_param_errors():
    F, theta = family_e1(2, 2)
    with pytest.raises(ValueError, match="shape"):
        build_unfolding(F, MatrixGerm.zeros(CATALOG_VARS, 3, 2))
    with pytest.raises(ValueError, match="collides"):
        build_unfolding(F, theta, param="x")
    other = MatrixGerm.zeros(VarContext(("a", "b", "c", "d")), 2, 3)
    with pytest.raises(ContextError):
        build_unfolding(F, other)


def test_e2_unfolding_doubles_match_printed_list():
    U = build_unfolding(*family_e2(2))
    printed = ["u - u'", "z - z'", "(y - y') + w^2 - w'^2",
               "x^2 - x'^2 + u*(x*w + w) - u'*(x'*w' + w')",
               "w^2 - w'^2 + u*(1 + w) - u'*(1 + w')",
               "x + u*w - x' - u'*w'", "y + u*w - y' - u'*w'"]
    J = Ideal(U.doubled.doubled, tuple(D(U, t) for t in printed))
    assert same_ideal(unfolding_doubles(U), J)
    assert D(U, "u - u'") in unfolding_doubles(U).generators


def test_param_double_switch():
    F = MatrixGerm.from_rows(VarContext(("x",)), [[VarContext(("x",)).gen("x")]])
    U = build_unfolding(F, MatrixGerm.zeros(F.context, 1, 1))
    assert list(unfolding_doubles(U).generators) == [D(U, "u - u'"), D(U, "x - x'")]
    U2 = build_unfolding(F, MatrixGerm.zeros(F.context, 1, 1), include_param_double=False)
    assert list(unfolding_doubles(U2).generators) == [D(U2, "x - x'")]


def test_e1_contains_linear_differences():
    U = build_unfolding(*family_e1(2, 2))
    gens = unfolding_doubles(U).generators
    for v in "xyzw":
        assert D(U, f"{v} - {v}'") in gens


def test_e2_theta_doubles():
    U = build_unfolding(*family_e2(2))
    printed = ["w - w'", "w*(x + 1) - w'*(x' + 1)", "(1 + w) - (1 + w')"]
    J = Ideal(U.doubled.doubled, tuple(D(U, t) for t in printed))
    assert same_ideal(theta_doubles(U), J)
    assert D(U, "w - w'") in theta_doubles(U).generators


def test_constant_theta_doubles_vanish():
    F, _ = family_e2(2)
    theta = MatrixGerm.from_rows(CATALOG_VARS, [[1, 2, 3], [0, -1, 5]])
    assert theta_doubles(build_unfolding(F, theta)).is_zero()


def test_single_entry_theta():
    ctx = VarContext(("x",))
    x = ctx.gen("x")
    U = build_unfolding(MatrixGerm.from_rows(ctx, [[x ** 2]]), MatrixGerm.from_rows(ctx, [[x]]))
    assert list(theta_doubles(U).generators) == [D(U, "x - x'")]


def _random_unfolding(rng, q=3, include=True):
    ctx = VarContext(("a", "b", "c")[:q])
    F = MatrixGerm.from_rows(ctx, [[random_poly(rng, ctx, 3, 3, constant=False) for _ in range(2)]])
    theta = MatrixGerm.from_rows(ctx, [[random_poly(rng, ctx, 2, 3) for _ in range(2)]])
    return build_unfolding(F, theta, "s", include)


def test_parameter_derivative_equals_theta():
    rng = random.Random(5)
    cases = [build_unfolding(*family_e1(3, 2)), build_unfolding(*family_e2(3))]
    cases += [_random_unfolding(rng) for _ in range(20)]
    for U in cases:
        assert U.parameter_derivatives() == U.theta_components()


def test_theta_doubles_inside_diagonal_and_param_double_present():
    rng = random.Random(6)
    cases = [build_unfolding(*family_e1(2, 3)), build_unfolding(*family_e2(2))]
    cases += [_random_unfolding(rng) for _ in range(10)]
    for U in cases:
        assert ideal_contains(diagonal_ideal(U.doubled), theta_doubles(U))
        assert D(U, f"{U.param} - {U.param}'") in unfolding_doubles(U).generators
