import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from bilip.poly import Polynomial, VarContext

XYZ = VarContext(("x", "y", "z"))


def random_poly(rng: random.Random, ctx: VarContext, max_deg: int = 3, max_terms: int = 4,
                coeff_range: int = 5, constant: bool = True) -> Polynomial:
    n = len(ctx)
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        deg = rng.randint(0 if constant else 1, max_deg)
        m = [0] * n
        for _ in range(deg):
            m[rng.randrange(n)] += 1
        num = rng.randint(-coeff_range, coeff_range)
        den = rng.choice((1, 1, 1, 2, 3))
        terms[tuple(m)] = Fraction(num, den)
    return Polynomial(ctx, terms)


def monomials_up_to(n: int, deg: int):
    """All exponent vectors of total degree <= deg in n variables."""
    if n == 0:
        yield ()
        return
    for e in range(deg + 1):
        for rest in monomials_up_to(n - 1, deg - e):
            yield (e,) + rest


@st.composite
def polynomials(draw, ctx: VarContext = XYZ, max_deg: int = 3, max_terms: int = 5):
    n = len(ctx)

    @st.composite
    def monomial(draw_m):
        m = [0] * n
        for _ in range(draw_m(st.integers(0, max_deg))):
            m[draw_m(st.integers(0, n - 1))] += 1
        return m

    mono = monomial()
    coeff = st.fractions(min_value=-6, max_value=6, max_denominator=4)
    terms = draw(st.dictionaries(mono.map(tuple), coeff, max_size=max_terms))
    return Polynomial(ctx, terms)


@pytest.fixture
def rng():
    return random.Random(20261015)


# criterion number -> (passed, description); filled by test_acceptance.py
ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def record_criterion(n: int, passed: bool, text: str) -> None:
    ACCEPTANCE_RESULTS[n] = (passed, text)
    print(f"[{'PASS' if passed else 'FAIL'}] criterion {n}: {text}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        passed, text = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] criterion {n}: {text}")
