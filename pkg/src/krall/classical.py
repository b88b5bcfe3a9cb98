"""Classical families (Meixner, Laguerre, Jacobi, Hahn, dual Hahn) in exact arithmetic.

Normalizations follow the explicit sums below, not the KLS tables:

* ``meixner(n, a, c)``  -- ``a^n/(1-a)^n sum_j a^-j C(x,j) C(-x-c, n-j)``, leading coefficient ``1/n!``
* ``laguerre(n, alpha)`` -- ``sum_j (-x)^j/j! C(n+alpha, n-j)``
* ``jacobi(n, alpha, beta)`` -- ``2^-n sum_j C(n+alpha, j) C(n+beta, n-j) (x-1)^(n-j) (x+1)^j``
* ``hahn(n, a, b, N)`` -- ``(a+1)_n/n! 3F2(-n, -x, n+a+b+1; a+1, -N; 1)``
* ``dual_hahn(n, a, b, N)`` -- expansion in the ``lambda_j^{a+b}`` basis
"""

from __future__ import annotations

from fractions import Fraction

from .arith import (
    ONE,
    X,
    ZERO,
    Poly,
    ScalarLike,
    binomial_general,
    binomial_poly,
    factorial,
    falling_poly,
    rising_factorial,
    rising_poly,
    scalar,
)


class InvalidParameter(ValueError):
    """Parameters fall outside the window where a construction is defined."""


def _check_meixner(a: Fraction) -> None:
    if a in (0, 1):
        raise InvalidParameter(f"Meixner polynomials need a not in {{0, 1}}, got a={a}")


def meixner(n: int, a: ScalarLike, c: ScalarLike) -> Poly:
    """Meixner polynomial from the two-binomial sum (leading coefficient 1/n!)."""
    if n < 0:
        return ZERO
    a, c = scalar(a), scalar(c)
    _check_meixner(a)
    total = ZERO
    for j in range(n + 1):
        term = binomial_poly(X, j) * binomial_poly(-X - c, n - j)
        total = total + term.scale(a ** (n - j))
    return total.scale(1 / (1 - a) ** n)


def meixner_2f1(n: int, a: ScalarLike, c: ScalarLike) -> Poly:
    """Meixner polynomial through its terminating 2F1 form.

    ``(c)_n / (c)_k`` is folded into ``(c+k)_{n-k}`` so nonpositive integer
    ``c`` does not produce a spurious zero denominator.
    """
    if n < 0:
        return ZERO
    a, c = scalar(a), scalar(c)
    _check_meixner(a)
    z = 1 - 1 / a
    total = ZERO
    for k in range(n + 1):
        coef = rising_factorial(c + k, n - k) * rising_factorial(-n, k) * z**k / factorial(k)
        total = total + rising_poly(-X, k).scale(coef)
    return total.scale(a**n / ((a - 1) ** n * factorial(n)))


def meixner_recurrence(n_max: int, a: ScalarLike, c: ScalarLike) -> list[Poly]:
    """``m_0 .. m_{n_max}`` generated by the three-term recurrence."""
    a, c = scalar(a), scalar(c)
    _check_meixner(a)
    out = [ONE]
    prev = ZERO
    for n in range(n_max):
        cur = out[-1]
        nxt = X * cur + cur.scale(((a + 1) * n + a * c) / (a - 1)) - prev.scale(a * (n + c - 1) / (a - 1) ** 2)
        prev = cur
        out.append(nxt / (n + 1))
    return out


def laguerre(n: int, alpha: ScalarLike) -> Poly:
    if n < 0:
        return ZERO
    alpha = scalar(alpha)
    return Poly(
        (-1) ** j * binomial_general(n + alpha, n - j) / factorial(j) for j in range(n + 1)
    )


def laguerre_recurrence(n_max: int, alpha: ScalarLike) -> list[Poly]:
    alpha = scalar(alpha)
    out = [ONE]
    prev = ZERO
    for n in range(n_max):
        cur = out[-1]
        # (n+1) L_{n+1} = (2n+alpha+1-x) L_n - (n+alpha) L_{n-1}
        nxt = cur * Poly.linear(-1, 2 * n + alpha + 1) - prev.scale(n + alpha)
        prev = cur
        out.append(nxt / (n + 1))
    return out


def jacobi(n: int, alpha: ScalarLike, beta: ScalarLike) -> Poly:
    if n < 0:
        return ZERO
    alpha, beta = scalar(alpha), scalar(beta)
    xm, xp = Poly.linear(1, -1), Poly.linear(1, 1)
    total = ZERO
    for j in range(n + 1):
        coef = binomial_general(n + alpha, j) * binomial_general(n + beta, n - j)
        if coef:
            total = total + (xm ** (n - j) * xp**j).scale(coef)
    return total / 2**n


def hahn(n: int, a: ScalarLike, b: ScalarLike, N: ScalarLike) -> Poly:
    """Hahn polynomial as a terminating 3F2 sum of ``n+1`` exact terms.

    Raises:
        InvalidParameter: ``a+b`` is a negative integer, or a ``(-N)_k``
            denominator vanishes (integer ``N`` with ``n > N``).
    """
    if n < 0:
        return ZERO
    a, b, N = scalar(a), scalar(b), scalar(N)
    if (a + b).denominator == 1 and a + b < 0:
        raise InvalidParameter(f"Hahn polynomials need a+b not a negative integer, got {a + b}")
    total = ZERO
    for k in range(n + 1):
        den = rising_factorial(-N, k) * factorial(k)
        if not den:
            raise InvalidParameter(f"(-N)_{k} vanishes for N={N}; degree {n} exceeds N")
        # (a+1)_n / (a+1)_k folded into (a+1+k)_{n-k}
        coef = rising_factorial(a + 1 + k, n - k) * rising_factorial(-n, k) * rising_factorial(n + a + b + 1, k) / den
        if coef:
            total = total + rising_poly(-X, k).scale(coef)
    return total / factorial(n)


def lambda_poly(j: int, u: ScalarLike) -> Poly:
    """``prod_{i<j} (x - i(u+i+1))``."""
    u = scalar(u)
    out = ONE
    for i in range(j):
        out = out * Poly.linear(1, -i * (u + i + 1))
    return out


def theta_poly(u: ScalarLike) -> Poly:
    """``x (x + u + 1)``."""
    return Poly([0, scalar(u) + 1, 1])


def theta(x: ScalarLike, u: ScalarLike) -> Fraction:
    x = scalar(x)
    return x * (x + scalar(u) + 1)


def structural_polys(j: int, u: ScalarLike) -> tuple[Poly, Poly]:
    return lambda_poly(j, u), theta_poly(u)


def dual_hahn(n: int, a: ScalarLike, b: ScalarLike, N: ScalarLike) -> Poly:
    if n < 0:
        return ZERO
    a, b, N = scalar(a), scalar(b), scalar(N)
    total = ZERO
    for j in range(n + 1):
        coef = (
            rising_factorial(-n, j)
            * rising_factorial(-N + j, n - j)
            * rising_factorial(a + j + 1, n - j)
            / ((-1) ** j * factorial(j))
        )
        if coef:
            total = total + lambda_poly(j, a + b).scale(coef)
    return total


def falling_basis(j: int) -> Poly:
    """``x (x-1) ... (x-j+1)``."""
    return falling_poly(j)
