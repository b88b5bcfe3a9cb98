"""Catalog of polynomial identities among the classical families.

Each checker expands both sides to exact :class:`~krall.arith.Poly` values and
compares them structurally.  Denominators that vanish for the supplied
parameters raise :class:`InapplicableParameters` rather than returning False.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable

from .arith import X, Poly, det3, rising_factorial, rising_poly, scalar
from .classical import jacobi, laguerre, lambda_poly, meixner, theta_poly

IDENTITY_IDS = (
    "f1lag",
    "mxttrr",
    "lagttrr",
    "Lagder",
    "Lagdere",
    "Lagder2",
    "jaci",
    "lth",
    "jacobi_reflection",
)


class InapplicableParameters(ValueError):
    """A denominator in the identity vanishes at the supplied parameters."""


def _nz(value: Fraction, what: str) -> Fraction:
    if not value:
        raise InapplicableParameters(f"{what} vanishes")
    return value


def _sides_f1lag(n, alpha):
    return laguerre(n, alpha - 1), laguerre(n, alpha) - laguerre(n - 1, alpha)


def _sides_mxttrr(n, a, c):
    if a in (0, 1):
        raise InapplicableParameters("Meixner recurrence needs a not in {0, 1}")
    lhs = X * meixner(n, a, c)
    rhs = (
        meixner(n + 1, a, c).scale(n + 1)
        - meixner(n, a, c).scale(((a + 1) * n + a * c) / (a - 1))
        + meixner(n - 1, a, c).scale(a * (n + c - 1) / (a - 1) ** 2)
    )
    return lhs, rhs


def _sides_lagttrr(n, alpha):
    lhs = X * laguerre(n, alpha)
    rhs = (
        laguerre(n + 1, alpha).scale(-(n + 1))
        + laguerre(n, alpha).scale(2 * n + alpha + 1)
        - laguerre(n - 1, alpha).scale(n + alpha)
    )
    return lhs, rhs


def _sides_lagder(n, alpha, beta):
    s = _nz(n + alpha + beta, "n+alpha+beta")
    lhs = jacobi(n, alpha, beta - 1).scale((2 * n + alpha + beta) / s)
    rhs = jacobi(n, alpha, beta) + jacobi(n - 1, alpha, beta).scale((n + alpha) / s)
    return lhs, rhs


def _sides_lagdere(n, alpha, beta):
    s = _nz(n + alpha + beta, "n+alpha+beta")
    lhs = jacobi(n, alpha - 1, beta).scale((2 * n + alpha + beta) / s)
    rhs = jacobi(n, alpha, beta) - jacobi(n - 1, alpha, beta).scale((n + beta) / s)
    return lhs, rhs


def _jacobi_row(n, alpha, beta):
    return [jacobi(n, alpha, beta), jacobi(n - 1, alpha, beta), jacobi(n - 2, alpha, beta)]


def _sides_lagder2(n, alpha, beta):
    s1 = _nz(n + alpha + beta - 1, "n+alpha+beta-1")
    p2 = _nz(rising_factorial(n + alpha + beta - 1, 2), "(n+alpha+beta-1)_2")
    lhs = jacobi(n, alpha - 1, beta - 1).scale(
        rising_factorial(2 * n + alpha + beta - 2, 3) / (_nz(n + alpha + beta, "n+alpha+beta") * s1**2)
    )
    rhs = det3(
        [
            _jacobi_row(n, alpha, beta),
            [rising_factorial(n + beta - 1, 2) / p2, (n + beta - 1) / s1, Fraction(1)],
            [rising_factorial(n + alpha - 1, 2) / p2, -(n + alpha - 1) / s1, Fraction(1)],
        ]
    )
    return lhs, rhs


def _sides_jaci(n, alpha, beta):
    s1 = _nz(n + alpha + beta - 1, "n+alpha+beta-1")
    p2 = _nz(rising_factorial(n + alpha + beta - 1, 2), "(n+alpha+beta-1)_2")
    nb = _nz(n + beta, "n+beta")
    lhs = (jacobi(n, alpha - 1, beta).scale(n / nb) + jacobi(n - 1, alpha - 1, beta)) / p2
    det = det3(
        [
            _jacobi_row(n, alpha, beta),
            [rising_factorial(n + beta - 1, 2) / p2, (n + beta - 1) / s1, Fraction(1)],
            [Fraction(1), -n / nb, rising_factorial(n - 1, 2) / _nz(rising_factorial(n + beta - 1, 2), "(n+beta-1)_2")],
        ]
    )
    rhs = det / _nz((2 * n + alpha + beta) * (2 * n + alpha + beta - 2), "(2n+alpha+beta)(2n+alpha+beta-2)")
    return lhs, rhs


def _sides_lth(j, u):
    lhs = lambda_poly(j, u).compose(theta_poly(u)).scale((-1) ** j)
    rhs = rising_poly(-X, j) * rising_poly(X + (u + 1), j)
    return lhs, rhs


def _sides_reflection(n, alpha, beta):
    return jacobi(n, alpha, beta).compose(-X), jacobi(n, beta, alpha).scale((-1) ** n)


_SIDES: dict[str, tuple[Callable, tuple[str, ...]]] = {
    "f1lag": (_sides_f1lag, ("alpha",)),
    "mxttrr": (_sides_mxttrr, ("a", "c")),
    "lagttrr": (_sides_lagttrr, ("alpha",)),
    "Lagder": (_sides_lagder, ("alpha", "beta")),
    "Lagdere": (_sides_lagdere, ("alpha", "beta")),
    "Lagder2": (_sides_lagder2, ("alpha", "beta")),
    "jaci": (_sides_jaci, ("alpha", "beta")),
    "lth": (_sides_lth, ("u",)),
    "jacobi_reflection": (_sides_reflection, ("alpha", "beta")),
}


def identity_params(identity: str) -> tuple[str, ...]:
    return _SIDES[identity][1]


def identity_sides(identity: str, params: dict, n: int) -> tuple[Poly, Poly]:
    """Both sides of ``identity`` as expanded polynomials.

    For ``lth`` the index ``n`` plays the role of ``j`` and ``params['u']``
    is the combined parameter ``a+b``.
    """
    try:
        fn, names = _SIDES[identity]
    except KeyError:
        raise ValueError(f"unknown identity {identity!r}; known: {', '.join(IDENTITY_IDS)}") from None
    missing = [k for k in names if k not in params]
    if missing:
        raise ValueError(f"identity {identity} needs parameters {missing}")
    return fn(n, *(scalar(params[k]) for k in names))


def check_identity(identity: str, params: dict, n: int) -> bool:
    lhs, rhs = identity_sides(identity, params, n)
    return lhs == rhs


def random_rational(rng: random.Random, bound: int = 20) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_admissible(identity: str, rng: random.Random, n: int, bound: int = 20, tries: int = 1000) -> dict:
    """Rejection-sample a parameter assignment for which ``identity`` is applicable at ``n``."""
    names = identity_params(identity)
    for _ in range(tries):
        params = {k: random_rational(rng, bound) for k in names}
        try:
            identity_sides(identity, params, n)
        except (InapplicableParameters, ValueError):
            continue
        return params
    raise RuntimeError(f"no admissible draw for {identity} at n={n}")
