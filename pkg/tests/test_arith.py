from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from krall.arith import (
    NEG_INF_DEGREE,
    ONE,
    X,
    ZERO,
    AffineMap,
    Poly,
    binomial_general,
    compose_affine,
    evaluate,
    falling_poly,
    format_scalar,
    parse_scalar,
    poly_arithmetic,
    rising_factorial,
    stirling2,
)

from conftest import from_sympy, polys, rationals, to_sympy, x_sym, Q


@pytest.mark.parametrize("q,k,expected", [
    (Fraction(7, 3), 0, 1),
    (Fraction(1, 2), 3, Fraction(15, 8)),
    (-2, 3, 0),
])
def test_rising_factorial_examples(q, k, expected):
    assert rising_factorial(q, k) == expected


@pytest.mark.parametrize("q,k,expected", [(5, 2, 10), (Fraction(-1, 2), 2, Fraction(3, 8)), (3, 5, 0)])
def test_binomial_examples(q, k, expected):
    assert binomial_general(q, k) == expected


def test_stirling_examples():
    assert stirling2(0, 0) == 1
    assert stirling2(3, 2) == 3
    assert stirling2(4, 4) == 1
    with pytest.raises(ValueError):
        stirling2(2, 3)


def test_poly_examples():
    assert poly_arithmetic(X + 1, X - 1, "mul") == X * X - 1
    assert poly_arithmetic(ZERO, X + 3, "mul") == ZERO
    assert poly_arithmetic(X * X, Fraction(1, 2), "scale") == Poly([0, 0, Fraction(1, 2)])
    assert ZERO.degree == NEG_INF_DEGREE
    assert ZERO.coeffs == ()
    assert (X * X - X * X).coeffs == ()


def test_compose_affine_examples():
    N = Fraction(16)
    assert compose_affine(X, AffineMap(-N / 2, N / 2)) == Poly([N / 2, -N / 2])
    assert compose_affine(X * X, AffineMap.identity()) == X * X
    assert compose_affine(X + 1, AffineMap(2, 0)) == Poly([1, 2])


def test_evaluate_examples():
    assert evaluate(X * X - 1, 1) == 0
    assert evaluate(ONE, Fraction(-7, 3)) == 1
    assert evaluate(X * (X + 4), -2) == -4


def test_scalar_serialization():
    assert format_scalar(Fraction(2)) == "2/1"
    assert parse_scalar("-6/4") == Fraction(-3, 2)
    with pytest.raises(ValueError):
        parse_scalar("1/0")


@given(rationals(), rationals(), rationals())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    if a:
        assert a * (1 / a) == 1


@given(rationals(), st.integers(0, 8), st.integers(0, 8))
def test_rising_factorial_splits(q, j, k):
    assert rising_factorial(q, j + k) == rising_factorial(q, j) * rising_factorial(q + j, k)


@given(rationals(), st.integers(0, 10))
def test_rising_factorial_against_sympy(q, k):
    assert Q(rising_factorial(q, k)) == sp.rf(Q(q), k)


@given(polys(), polys(), rationals(nonzero=True), rationals())
def test_compose_distributes(p, q, scale, offset):
    m = AffineMap(scale, offset)
    assert compose_affine(p * q, m) == compose_affine(p, m) * compose_affine(q, m)


@given(polys(), rationals(nonzero=True), rationals())
def test_compose_matches_sympy(p, scale, offset):
    expected = from_sympy(to_sympy(p).subs(x_sym, Q(scale) * x_sym + Q(offset)))
    got = compose_affine(p, AffineMap(scale, offset))
    assert got == expected
    if p:
        assert got.degree == p.degree


@given(polys(), polys())
def test_mul_degree(p, q):
    if p and q:
        assert (p * q).degree == p.degree + q.degree
    else:
        assert (p * q).degree == NEG_INF_DEGREE


@pytest.mark.parametrize("k", range(13))
def test_stirling_reconstructs_monomials(k):
    total = sum((falling_poly(j).scale(stirling2(k, j)) for j in range(k + 1)), ZERO)
    assert total == X**k
