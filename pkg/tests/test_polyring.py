from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hankel_forge.errors import DimensionError, ParseError
from hankel_forge.polyring import (
    Monomial,
    Polynomial,
    deglex_compare,
    determinant,
    format_polynomial,
    parse_monomial,
    parse_polynomial,
)

N = 5


def x(i, n=N):
    return Polynomial.variable(n, i)


def mono(*idx, n=N):
    return Monomial.from_indices(n, idx)


def test_deglex_examples():
    assert deglex_compare(mono(1, 4), mono(2, 3)) > 0
    assert deglex_compare(mono(3), mono(3)) == 0
    assert deglex_compare(mono(3, 3), mono(1, 5)) < 0
    # degree first
    assert deglex_compare(mono(5, 5, 5), mono(1, 1)) > 0


def test_arith_examples():
    f = x(1) * x(4) - x(2) * x(3)
    assert f + x(2) * x(3) == x(1) * x(4)
    assert x(1) * x(1) == Polynomial.from_monomial(mono(1, 1))
    c, m = (x(2) * x(5) - x(3) * x(4)).leading_term()
    assert (c, m) == (1, mono(2, 5))


def test_zero_polynomial_and_cancellation():
    f = x(1) - x(1)
    assert f.is_zero()
    assert f == Polynomial.zero(N)


def test_rational_coefficients_stay_exact():
    f = x(1) * Fraction(1, 3) + x(2)
    g = f * 3
    assert g.leading_coefficient() == 1
    assert all(not isinstance(c, float) for c, _ in g.terms)


def test_normalize_makes_monic():
    f = (x(2) * 4 - x(3) * 2).normalize()
    assert f.leading_coefficient() == 1
    assert f == x(2) - x(3) * Fraction(1, 2)


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        x(1, 3) + x(1, 4)
    with pytest.raises(DimensionError):
        Monomial.from_indices(3, [4])


def test_determinant_examples():
    assert determinant([[x(5)]]) == x(5)
    assert determinant([[x(1), x(2)], [x(3), x(4)]]) == x(1) * x(4) - x(2) * x(3)
    grid = [[x(1), x(2), x(3)], [x(1), x(2), x(3)], [x(4), x(5), x(1)]]
    assert determinant(grid).is_zero()


def test_determinant_methods_agree():
    n = 16
    grid = [[Polynomial.variable(n, 4 * i + j + 1) for j in range(4)] for i in range(4)]
    assert determinant(grid, method="cofactor") == determinant(grid, method="bareiss")


def test_format_and_parse_roundtrip():
    f = x(1) * x(4) - x(2) * x(3)
    assert format_polynomial(f) == "x1*x4 - x2*x3"
    assert parse_polynomial("x1*x4 - x2*x3", N) == f
    assert parse_monomial("x1^2*x3", 4) == Monomial((2, 0, 1, 0))
    assert parse_monomial("x5").n == 5


@pytest.mark.parametrize("bad", ["", "x0", "y1", "x1^", "x1**2", "x1*", "2*x1+"])
def test_parse_rejects(bad):
    with pytest.raises(ParseError):
        parse_monomial(bad, 5)


exps = st.lists(st.integers(0, 3), min_size=N, max_size=N).map(Monomial)


@given(exps, exps, exps)
def test_deglex_total_order(a, b, c):
    assert deglex_compare(a, b) == -deglex_compare(b, a)
    if deglex_compare(a, b) > 0 and deglex_compare(b, c) > 0:
        assert deglex_compare(a, c) > 0
    if deglex_compare(a, b) > 0:
        assert deglex_compare(a * c, b * c) > 0
    assert (deglex_compare(a, b) == 0) == (a == b)


terms = st.dictionaries(st.lists(st.integers(0, 2), min_size=3, max_size=3).map(tuple), st.integers(-3, 3), min_size=1, max_size=4)


def _poly(d):
    return sum((Polynomial.from_monomial(Monomial(e), c) for e, c in d.items()), Polynomial.zero(3))


@given(terms, terms)
def test_leading_term_multiplicative(d1, d2):
    f, g = _poly(d1), _poly(d2)
    if f.is_zero() or g.is_zero():
        return
    cf, mf = f.leading_term()
    cg, mg = g.leading_term()
    assert (f * g).leading_term() == (cf * cg, mf * mg)


@given(st.lists(terms, min_size=9, max_size=9), st.integers(0, 2), st.integers(0, 2))
def test_determinant_alternating_and_multilinear(cells, i, j):
    grid = [[_poly(cells[3 * r + k]) for k in range(3)] for r in range(3)]
    d = determinant(grid)
    if i != j:
        swapped = list(grid)
        swapped[i], swapped[j] = swapped[j], swapped[i]
        assert determinant(swapped) == -d
    scaled = [list(r) for r in grid]
    scaled[i] = [p * 2 for p in scaled[i]]
    assert determinant(scaled) == d * 2
