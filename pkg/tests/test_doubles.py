import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bilip.doubles import DoubledContext, diagonal_ideal, double, doubles_ideal, primed, unprimed
from bilip.groebner import buchberger, ideal_member, normal_form
from bilip.parsing import parse_polynomial
from bilip.poly import ContextError, Polynomial, VarContext

from conftest import XYZ, polynomials, random_poly

XW = VarContext(("x", "w"))
UXYZW = VarContext(("u", "x", "y", "z", "w"))


def test_doubled_context_layout():
    dc = DoubledContext(XW)
    assert dc.doubled.names == ("x", "w", "x'", "w'")
    assert dc.partner("w") == "w'" and dc.partner("w'") == "w"
    assert unprimed(primed("x")) == "x"


def test_double_of_constant_is_zero():
    assert double(Polynomial.constant(XW, 7)).is_zero()


def test_double_of_square():
    dc = DoubledContext(XW)
    assert double(XW.gen("w") ** 2, dc) == parse_polynomial("w^2 - w'^2", dc.doubled)


def test_double_of_mixed_entry():
    dc = DoubledContext(XW)
    h = parse_polynomial("x*w + w", XW)
    assert double(h, dc) == parse_polynomial("x*w + w - x'*w' - w'", dc.doubled)


def test_double_context_mismatch():
    with pytest.raises(ContextError):
        double(XYZ.gen("x"), DoubledContext(XW))


def test_doubles_ideal_of_constants_is_zero():
    dc = DoubledContext(XW)
    assert doubles_ideal([Polynomial.constant(XW, c) for c in (0, 1, -3)], dc).is_zero()


def test_doubles_ideal_of_linear_coordinate():
    dc = DoubledContext(VarContext(("x",)))
    I = doubles_ideal([dc.base.gen("x")], dc)
    assert I.generators == (parse_polynomial("x - x'", dc.doubled),)


def test_diagonal_ideal():
    dc = DoubledContext(UXYZW)
    expected = [parse_polynomial(f"{v} - {v}'", dc.doubled) for v in "uxyzw"]
    assert list(diagonal_ideal(dc).generators) == expected
    dc1 = DoubledContext(VarContext(("x",)))
    assert list(diagonal_ideal(dc1).generators) == [parse_polynomial("x - x'", dc1.doubled)]


def test_random_doubles_lie_in_diagonal_ideal():
    rng = random.Random(3)
    dc = DoubledContext(XYZ)
    gb = buchberger(diagonal_ideal(dc))
    for _ in range(20):
        h = random_poly(rng, XYZ, max_deg=3)
        assert normal_form(double(h, dc), gb).is_zero()


DC = DoubledContext(XYZ)


@settings(max_examples=80, deadline=None)
@given(polynomials())
def test_vanishes_on_diagonal(h):
    assert DC.collapse(double(h, DC)).is_zero()


@settings(max_examples=80, deadline=None)
@given(polynomials(), polynomials(), st.fractions(max_denominator=5))
def test_linearity(h, g, c):
    assert double(h + g, DC) == double(h, DC) + double(g, DC)
    assert double(h * c, DC) == double(h, DC) * c


@settings(max_examples=80, deadline=None)
@given(polynomials(), polynomials())
def test_leibniz(h, g):
    lhs = double(h * g, DC)
    rhs = DC.embed_unprimed(h) * double(g, DC) + DC.embed_primed(g) * double(h, DC)
    assert lhs == rhs


@settings(max_examples=25, deadline=None)
@given(st.lists(polynomials(max_deg=2), max_size=4))
def test_doubles_ideal_inside_diagonal(components):
    I = doubles_ideal(components, DC)
    diag = diagonal_ideal(DC)
    assert all(ideal_member(g, diag) for g in I.generators)
