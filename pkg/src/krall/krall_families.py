"""Krall families as short expansions in consecutive classical polynomials.

Weights ``u``/``v`` are positive rationals or :data:`INFINITY`; the latter
selects the degenerate family obtained as the algebraic ``u -> oo`` limit
of the expansion coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .arith import ONE, Poly, ScalarLike, det2, det3, factorial, rising_factorial, scalar
from .classical import dual_hahn, hahn, jacobi, laguerre, meixner, theta


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()

Weight = Union[Fraction, int, str, _Infinity]


class DegenerateParameters(ValueError):
    """A coefficient denominator vanishes, or the expansion loses degree."""


class UnsupportedCombination(ValueError):
    pass


def is_infinite(w) -> bool:
    return w is INFINITY or (isinstance(w, str) and w.lower() in ("inf", "infinity", "oo"))


def weight(w: Weight):
    """Normalize a weight argument to a Fraction or :data:`INFINITY`."""
    return INFINITY if is_infinite(w) else scalar(w)


def _ratio(num: Fraction, den: Fraction, what: str) -> Fraction:
    if not den:
        raise DegenerateParameters(f"{what}: zero denominator")
    return num / den


def krall_laguerre_coeff(n: int, kappa: int, u: Weight) -> Fraction:
    """Coefficient of ``L_{n-1}^kappa`` in the Krall-Laguerre expansion."""
    u = weight(u)
    if u is INFINITY:
        if n < 1:
            raise DegenerateParameters("u=oo coefficient needs n >= 1")
        return -Fraction(n + kappa, n)
    g = factorial(kappa - 1)
    return -_ratio(g + u * rising_factorial(n + 1, kappa), g + u * rising_factorial(n, kappa), "krall_laguerre")


def krall_laguerre(n: int, kappa: int, u: Weight) -> Poly:
    if n == 0:
        return laguerre(0, kappa)
    return laguerre(n, kappa) + laguerre(n - 1, kappa).scale(krall_laguerre_coeff(n, kappa, u))


def krall_meixner_I_coeff(n: int, a: ScalarLike, c: ScalarLike, kappa: int) -> Fraction:
    a, c = scalar(a), scalar(c)
    dual = meixner(kappa, 1 / a, 2 - c)
    return _ratio(a * dual(-n - 1), (1 - a) * dual(-n), f"m_kappa^(1/a,2-c)(-{n})")


def krall_meixner_I(n: int, a: ScalarLike, c: ScalarLike, kappa: int) -> Poly:
    if n == 0:
        return meixner(0, a, c)
    return meixner(n, a, c) + meixner(n - 1, a, c).scale(krall_meixner_I_coeff(n, a, c, kappa))


def krall_meixner_II_coeff(n: int, a: ScalarLike, c: ScalarLike, kappa: int) -> Fraction:
    a, c = scalar(a), scalar(c)
    dual = meixner(kappa, a, 2 - c)
    return _ratio(dual(-n - 1), (1 - a) * dual(-n), f"m_kappa^(a,2-c)(-{n})")


def krall_meixner_II(n: int, a: ScalarLike, c: ScalarLike, kappa: int) -> Poly:
    if n == 0:
        return meixner(0, a, c)
    return meixner(n, a, c) + meixner(n - 1, a, c).scale(krall_meixner_II_coeff(n, a, c, kappa))


def _pow2_gamma(alpha: Fraction, kappa: int) -> Fraction:
    """``2^(alpha+kappa) Gamma(kappa)``, exact only for integer ``alpha``."""
    if alpha.denominator != 1:
        raise UnsupportedCombination(
            f"finite-u Krall-Jacobi needs integer alpha (2^alpha must be rational), got alpha={alpha}"
        )
    return Fraction(2) ** int(alpha + kappa) * factorial(kappa - 1)


def krall_jacobi_I_coeff(n: int, alpha: ScalarLike, kappa: int, u: Weight) -> Fraction:
    alpha, u = scalar(alpha), weight(u)
    if u is INFINITY:
        num = (n + alpha) * rising_factorial(n + 1, kappa) * rising_factorial(n + alpha + 1, kappa)
        den = (n + alpha + kappa) * rising_factorial(n, kappa) * rising_factorial(n + alpha, kappa)
        return _ratio(num, den, "krall_jacobi_I(u=oo)")
    g = _pow2_gamma(alpha, kappa)
    num = (n + alpha) * (g + u * rising_factorial(n + 1, kappa) * rising_factorial(n + alpha + 1, kappa))
    den = (n + alpha + kappa) * (g + u * rising_factorial(n, kappa) * rising_factorial(n + alpha, kappa))
    return _ratio(num, den, "krall_jacobi_I")


def krall_jacobi_I(n: int, alpha: ScalarLike, kappa: int, u: Weight) -> Poly:
    """Orthogonal polynomials for ``(1-x)^alpha (1+x)^(kappa-1) + kappa! u delta_{-1}``."""
    if n == 0:
        return ONE
    return jacobi(n, alpha, kappa) + jacobi(n - 1, alpha, kappa).scale(krall_jacobi_I_coeff(n, alpha, kappa, u))


def jacobi_degenerate_det(n: int, alpha: ScalarLike, kappa: int) -> Poly:
    """The ``u = oo`` family read off the determinant identity (valid for n >= 2).

    The determinant is built from ``P^{alpha+1, kappa}`` and rescaled by the
    factor ``(n+alpha+kappa)_2 (n+kappa) / (n (2n+alpha+kappa+1)(2n+alpha+kappa-1))``.
    """
    if n < 2:
        raise ValueError("determinant form needs n >= 2")
    alpha = scalar(alpha)
    al = alpha + 1
    rows = [
        [jacobi(n, al, kappa), jacobi(n - 1, al, kappa), jacobi(n - 2, al, kappa)],
        [
            rising_factorial(n + kappa - 1, 2) / rising_factorial(n + al + kappa - 1, 2),
            Fraction(n + kappa - 1) / (n + al + kappa - 1),
            Fraction(1),
        ],
        [Fraction(1), Fraction(-n, n + kappa), rising_factorial(n - 1, 2) / rising_factorial(n + kappa - 1, 2)],
    ]
    det = det3(rows) / ((2 * n + al + kappa) * (2 * n + al + kappa - 2))
    return det.scale(rising_factorial(n + al + kappa - 1, 2) * (n + kappa) / n)


def T_coeff(n: int, kappa: int, sigma: int) -> Fraction:
    """``2^(kappa+sigma) Gamma(kappa) / (n+sigma+1)_kappa``."""
    return _ratio(
        Fraction(2) ** (kappa + sigma) * factorial(kappa - 1),
        rising_factorial(n + sigma + 1, kappa),
        f"T(n={n})",
    )


def krall_jacobi_II(n: int, kappa: int, sigma: int, u: Weight, v: Weight) -> Poly:
    """Orthogonal polynomials for ``(1-x)^(kappa-1)(1+x)^(sigma-1) + kappa!u/2 d_1 + sigma!v/2 d_{-1}``."""
    u, v = weight(u), weight(v)
    if (u is INFINITY) != (v is INFINITY):
        raise UnsupportedCombination("u and v must both be finite or both infinite")
    if n == 0:
        return ONE
    P = [jacobi(n - i, kappa, sigma) for i in range(3)]
    if u is INFINITY:
        if n == 1:
            t1 = T_coeff(-1, kappa, sigma) / rising_factorial(2, kappa)
            t2 = T_coeff(-1, sigma, kappa) / rising_factorial(2, sigma)
            lead = det2([[Fraction(1, 1 + kappa), t1], [Fraction(-1, 1 + sigma), t2]])
            return P[0].scale(lead) - det2([[1, t1], [1, t2]])
        rows = [
            P,
            [Fraction(1), Fraction(n, n + kappa), rising_factorial(n - 1, 2) / rising_factorial(n + kappa - 1, 2)],
            [Fraction(1), Fraction(-n, n + sigma), rising_factorial(n - 1, 2) / rising_factorial(n + sigma - 1, 2)],
        ]
        return det3(rows)
    pk, ps = rising_factorial(n + 1, kappa), rising_factorial(n + 1, sigma)
    row_u = [
        u + T_coeff(n, kappa, sigma) / pk,
        u * n / (n + kappa) + T_coeff(n - 1, kappa, sigma) / pk,
        u * rising_factorial(n - 1, 2) / rising_factorial(n + kappa - 1, 2) + T_coeff(n - 2, kappa, sigma) / pk,
    ]
    row_v = [
        v + T_coeff(n, sigma, kappa) / ps,
        -v * n / (n + sigma) - T_coeff(n - 1, sigma, kappa) / ps,
        v * rising_factorial(n - 1, 2) / rising_factorial(n + sigma - 1, 2) + T_coeff(n - 2, sigma, kappa) / ps,
    ]
    out = det3([P, row_u, row_v])
    if out.degree != n:
        raise DegenerateParameters(f"krall_jacobi_II loses degree at n={n}")
    return out


def S_value(n: int, a: ScalarLike, b: ScalarLike, N: ScalarLike, kappa: int) -> Fraction:
    """``R_kappa^{-b,-a,a+b+N}(theta_{-n-1}^{-a-b})``."""
    a, b, N = scalar(a), scalar(b), scalar(N)
    return dual_hahn(kappa, -b, -a, a + b + N)(theta(-n - 1, -a - b))


def krall_hahn_I_coeff(n: int, a: ScalarLike, b: ScalarLike, N: ScalarLike, kappa: int) -> Fraction:
    a, b, N = scalar(a), scalar(b), scalar(N)
    R = dual_hahn(kappa, -b, -a, a + b + N)
    num = (n + a) * R(theta(-n - 1, -a - b))
    den = (n + a + b) * R(theta(-n, -a - b))
    return _ratio(num, den, f"krall_hahn_I at n={n}")


def krall_hahn_I(n: int, a: ScalarLike, b: ScalarLike, N: ScalarLike, kappa: int) -> Poly:
    if n == 0:
        return hahn(0, a, b, N)
    return hahn(n, a, b, N) + hahn(n - 1, a, b, N).scale(krall_hahn_I_coeff(n, a, b, N, kappa))


def krall_hahn_II(n: int, a: ScalarLike, b: ScalarLike, N: ScalarLike, kappa: int, sigma: int) -> Poly:
    """Three-term determinant in consecutive Hahn polynomials.

    Raises:
        DegenerateParameters: the determinant does not have degree ``n``.
    """
    a, b, N = scalar(a), scalar(b), scalar(N)
    h = [hahn(n - i, a, b, N) for i in range(3)]
    s1 = n + a + b - 1
    if not s1:
        raise DegenerateParameters("n+a+b-1 vanishes")
    p2 = rising_factorial(s1, 2)
    Sba = [S_value(n - i, b, a, N, kappa) for i in range(3)]
    Sab = [S_value(n - i, a, b, N, sigma) for i in range(3)]
    rows = [
        h,
        [rising_factorial(n + b - 1, 2) / p2 * Sba[0], (n + b - 1) / s1 * Sba[1], Sba[2]],
        [rising_factorial(n + a - 1, 2) / p2 * Sab[0], -(n + a - 1) / s1 * Sab[1], Sab[2]],
    ]
    out = det3(rows)
    if out.degree != n:
        raise DegenerateParameters(f"krall_hahn_II loses degree at n={n}")
    return out


FAMILIES = {
    "krall_laguerre": krall_laguerre,
    "krall_meixner_I": krall_meixner_I,
    "krall_meixner_II": krall_meixner_II,
    "krall_jacobi_I": krall_jacobi_I,
    "krall_jacobi_II": krall_jacobi_II,
    "krall_hahn_I": krall_hahn_I,
    "krall_hahn_II": krall_hahn_II,
}
