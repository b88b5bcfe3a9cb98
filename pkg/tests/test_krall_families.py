from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import assume, given, strategies as st

from krall.arith import X, Poly, rising_factorial
from krall.classical import dual_hahn, jacobi, laguerre, meixner, theta
from krall.krall_families import (
    INFINITY,
    DegenerateParameters,
    S_value,
    UnsupportedCombination,
    krall_hahn_I,
    krall_hahn_I_coeff,
    krall_hahn_II,
    krall_jacobi_I,
    krall_jacobi_II,
    krall_laguerre,
    krall_laguerre_coeff,
    krall_meixner_I,
    krall_meixner_I_coeff,
    krall_meixner_II,
    krall_meixner_II_coeff,
    weight,
)

from conftest import Q, from_sympy, rationals, x_sym


def test_weight_parsing():
    assert weight("inf") is INFINITY
    assert weight("3/2") == Fraction(3, 2)


# -- Krall-Laguerre -------------------------------------------------------

def test_krall_laguerre_examples():
    assert krall_laguerre(1, 1, 1) == Poly([Fraction(1, 2), -1])
    assert krall_laguerre(2, 1, INFINITY) == laguerre(2, 1) - laguerre(1, 1).scale(Fraction(3, 2))
    # u = 0 collapses to the classical shift L_1^1 - L_0^1 = L_1^0
    assert krall_laguerre_coeff(1, 1, 0) == -1
    assert krall_laguerre(1, 1, 0) == laguerre(1, 0)


@pytest.mark.parametrize("kappa", [1, 2, 3])
@pytest.mark.parametrize("n", [1, 2, 5])
def test_krall_laguerre_infinite_is_coefficient_limit(kappa, n):
    closed = krall_laguerre_coeff(n, kappa, INFINITY)
    assert closed == -Fraction(n + kappa, n)
    gaps = [abs(krall_laguerre_coeff(n, kappa, 2**t) - closed) for t in range(1, 31)]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] < Fraction(1, 2**25)


def test_krall_laguerre_u_infinity_needs_n_positive():
    with pytest.raises(DegenerateParameters):
        krall_laguerre_coeff(0, 2, INFINITY)


# -- Krall-Meixner ------------------------------------------------------------

def test_krall_meixner_I_example():
    a, c = Fraction(1, 2), Fraction(4)
    # m_1^{1/a,2-c}(z) = z + (c-2)/(a-1)
    dual = lambda z: z + (c - 2) / (a - 1)
    coeff = a * dual(-2) / ((1 - a) * dual(-1))
    assert coeff == Fraction(6, 5)
    assert krall_meixner_I_coeff(1, a, c, 1) == coeff
    assert krall_meixner_I(1, a, c, 1) == X - Fraction(14, 5)


@given(rationals(), rationals(), st.integers(1, 6))
def test_krall_meixner_II_kappa_one_coefficient(a, c, n):
    assume(a not in (0, 1))
    d = (c - 2) / (1 / a - 1)
    assume(-n + d != 0)
    expected = ((-n - 1) + d) / ((1 - a) * (-n + d))
    assert krall_meixner_II_coeff(n, a, c, 1) == expected
    assert krall_meixner_II(n, a, c, 1) == meixner(n, a, c) + meixner(n - 1, a, c).scale(expected)


def test_krall_meixner_zero_index():
    assert krall_meixner_I(0, Fraction(1, 3), 6, 3) == Poly([1])
    assert krall_meixner_II(0, Fraction(1, 3), 6, 3) == Poly([1])


def test_krall_meixner_degenerate_denominator():
    # m_1^{1/a,2-c}(-1) = -1 + (c-2)/(a-1) vanishes at c = 2 + (a-1)
    with pytest.raises(DegenerateParameters):
        krall_meixner_I(1, Fraction(1, 2), Fraction(3, 2), 1)


@given(rationals(bound=9), rationals(bound=9), st.integers(1, 3), st.integers(0, 6))
def test_krall_meixner_degree(a, c, kappa, n):
    assume(a not in (0, 1))
    try:
        p, q = krall_meixner_I(n, a, c, kappa), krall_meixner_II(n, a, c, kappa)
    except DegenerateParameters:
        assume(False)
    assert p.degree == q.degree == n


# -- Krall-Jacobi -------------------------------------------------------------

def test_krall_jacobi_I_examples():
    assert krall_jacobi_I(1, 1, 1, 1) == jacobi(1, 1, 1) + Fraction(20, 18)
    assert krall_jacobi_I(1, 1, 1, INFINITY) == jacobi(1, 1, 1) + Fraction(2 * 2 * 3, 3 * 1 * 2)
    with pytest.raises(UnsupportedCombination):
        krall_jacobi_I(2, Fraction(1, 2), 1, 1)


def _jacii_rhs(n, alpha, kappa):
    """The determinant side, built with sympy from scratch."""
    P = lambda m: sp.jacobi_poly(m, alpha, kappa, x_sym) if m >= 0 else 0
    rf = sp.rf
    M = sp.Matrix([
        [P(n), P(n - 1), P(n - 2)],
        [rf(n + kappa - 1, 2) / rf(n + alpha + kappa - 1, 2), sp.Rational(n + kappa - 1, n + alpha + kappa - 1), 1],
        [1, sp.Rational(-n, n + kappa), rf(n - 1, 2) / rf(n + kappa - 1, 2)],
    ])
    return from_sympy(M.det() / ((2 * n + alpha + kappa) * (2 * n + alpha + kappa - 2)))


@pytest.mark.parametrize("alpha", [0, 1, 2, 3])
@pytest.mark.parametrize("kappa", [1, 2, 3])
def test_krall_jacobi_I_infinite_matches_determinant(alpha, kappa):
    for n in range(2, 9):
        ours = krall_jacobi_I(n, alpha, kappa, INFINITY)
        det = _jacii_rhs(n, alpha + 1, kappa)
        assert det.degree == n
        # proportional by a nonzero scalar ...
        assert ours.scale(det.leading / ours.leading) == det
        # ... and the scalar is the stated one
        a1 = alpha + 1
        assert ours.scale(Fraction(n) / (rising_factorial(n + a1 + kappa - 1, 2) * (n + kappa))) == det


def test_krall_jacobi_II_examples():
    assert krall_jacobi_II(0, 2, 3, 1, 5) == Poly([1])
    assert krall_jacobi_II(2, 1, 1, 1, 1).degree == 2
    n, k, s = 2, 1, 2
    P = lambda m: sp.jacobi_poly(m, k, s, x_sym) if m >= 0 else 0
    M = sp.Matrix([
        [P(n), P(n - 1), P(n - 2)],
        [1, sp.Rational(n, n + k), sp.rf(n - 1, 2) / sp.rf(n + k - 1, 2)],
        [1, sp.Rational(-n, n + s), sp.rf(n - 1, 2) / sp.rf(n + s - 1, 2)],
    ])
    assert krall_jacobi_II(n, k, s, INFINITY, INFINITY) == from_sympy(M.det())
    with pytest.raises(UnsupportedCombination):
        krall_jacobi_II(2, 1, 1, 1, INFINITY)


@pytest.mark.parametrize("n", range(0, 7))
def test_krall_jacobi_II_degree(n):
    assert krall_jacobi_II(n, 2, 1, 1, 2).degree == n
    assert krall_jacobi_II(n, 1, 2, INFINITY, INFINITY).degree == n


# -- Krall-Hahn -----------------------------------------------------------

def test_krall_hahn_I_example():
    a, b, N = Fraction(1, 2), Fraction(3), Fraction(6)
    R1 = lambda z: z - (a + b + N) * (1 - b)
    assert dual_hahn(1, -b, -a, a + b + N) == X - (a + b + N) * (1 - b)
    assert theta(-1, -a - b) == a + b
    expected = (1 + a) * R1(theta(-2, -a - b)) / ((1 + a + b) * R1(theta(-1, -a - b)))
    assert krall_hahn_I_coeff(1, a, b, N, 1) == expected
    assert krall_hahn_I(1, a, b, N, 1).degree == 1


def test_S_value_definition():
    a, b, N = Fraction(3), Fraction(5, 2), Fraction(8)
    assert S_value(2, a, b, N, 2) == dual_hahn(2, -b, -a, a + b + N)(theta(-3, -a - b))


def test_krall_hahn_II_examples():
    p0 = krall_hahn_II(0, 3, 3, 8, 1, 1)
    assert p0.degree == 0 and p0.leading != 0
    assert krall_hahn_II(2, 3, 3, 8, 1, 1).degree == 2


@pytest.mark.parametrize("n", range(0, 9))
def test_krall_hahn_degree(n):
    assert krall_hahn_I(n, Fraction(1, 2), 3, 10, 1).degree == n
    assert krall_hahn_II(n, 3, 3, 10, 1, 1).degree == n
