"""Exact rational scalars and dense univariate polynomials.

Scalars are :class:`fractions.Fraction` throughout; every helper accepts
ints, Fractions or ``"p/q"`` strings and returns Fractions.  Polynomials are
immutable values with coefficients stored in ascending order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

ScalarLike = Union[int, Fraction, str]

#: Degree reported for the zero polynomial.
NEG_INF_DEGREE = float("-inf")


def scalar(q: ScalarLike) -> Fraction:
    """Coerce ``q`` to an exact :class:`Fraction`. Floats are rejected."""
    if isinstance(q, float):
        raise TypeError("floats are not exact; pass a Fraction or 'p/q' string")
    if isinstance(q, Fraction):
        return q
    return Fraction(q)


def rising_factorial(q: ScalarLike, k: int) -> Fraction:
    """Pochhammer symbol ``(q)_k = q (q+1) ... (q+k-1)``; ``(q)_0 = 1``."""
    if k < 0:
        raise ValueError(f"rising_factorial needs k >= 0, got {k}")
    q = scalar(q)
    out = Fraction(1)
    for i in range(k):
        out *= q + i
        if not out:
            break
    return out


def falling_factorial(q: ScalarLike, k: int) -> Fraction:
    if k < 0:
        raise ValueError(f"falling_factorial needs k >= 0, got {k}")
    q = scalar(q)
    out = Fraction(1)
    for i in range(k):
        out *= q - i
    return out


def binomial_general(q: ScalarLike, k: int) -> Fraction:
    """Generalized binomial ``q (q-1) ... (q-k+1) / k!`` for rational ``q``."""
    if k < 0:
        raise ValueError(f"binomial_general needs k >= 0, got {k}")
    out = Fraction(1)
    q = scalar(q)
    for i in range(k):
        out = out * (q - i) / (i + 1)
    return out


@lru_cache(maxsize=None)
def _stirling2(k: int, j: int) -> int:
    if k == j:
        return 1
    if j == 0 or j > k:
        return 0
    return j * _stirling2(k - 1, j) + _stirling2(k - 1, j - 1)


def stirling2(k: int, j: int) -> Fraction:
    """Stirling number of the second kind ``S(k, j)``.

    Raises:
        ValueError: if ``j > k`` or either index is negative.
    """
    if k < 0 or j < 0:
        raise ValueError("stirling2 indices must be nonnegative")
    if j > k:
        raise ValueError(f"stirling2 needs j <= k, got k={k}, j={j}")
    return Fraction(_stirling2(k, j))


def factorial(k: int) -> Fraction:
    return rising_factorial(1, k)


def gamma_sign(y: ScalarLike) -> int:
    """Sign of Gamma(y) for rational ``y``; 0 flags a pole (y a nonpositive integer)."""
    y = scalar(y)
    if y > 0:
        return 1
    if y.denominator == 1:
        return 0
    # Gamma alternates sign on (-m, -m+1)
    m = -(y.numerator // y.denominator)
    return -1 if m % 2 else 1


def _trim(coeffs: Iterable[Fraction]) -> tuple[Fraction, ...]:
    out = list(coeffs)
    while out and not out[-1]:
        out.pop()
    return tuple(out)


class Poly:
    """Dense polynomial over the rationals, ``coeffs[i]`` multiplying ``x**i``.

    The zero polynomial has an empty coefficient tuple and degree
    :data:`NEG_INF_DEGREE`.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[ScalarLike] = ()):
        object.__setattr__(self, "coeffs", _trim(scalar(c) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def const(cls, c: ScalarLike) -> "Poly":
        return cls([c])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def linear(cls, slope: ScalarLike, offset: ScalarLike) -> "Poly":
        return cls([offset, slope])

    @property
    def degree(self) -> int | float:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF_DEGREE

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                num = f"({c})" if c.denominator != 1 else str(c)
                terms.append(f"{num}*{mono}" if mono else num)
        return " + ".join(terms)

    def __bool__(self):
        return bool(self.coeffs)

    @staticmethod
    def _lift(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly.const(other)

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = scalar(other)
        if not other:
            raise ZeroDivisionError("division of Poly by zero scalar")
        return Poly(c / other for c in self.coeffs)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        out, base = Poly.const(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c: ScalarLike) -> "Poly":
        c = scalar(c)
        return Poly(c * a for a in self.coeffs)

    def __call__(self, x):
        if isinstance(x, Poly):
            return self.compose(x)
        return evaluate(self, x)

    def compose(self, inner: "Poly") -> "Poly":
        """Return ``self(inner(x))`` by Horner's scheme over polynomials."""
        out = Poly()
        for c in reversed(self.coeffs):
            out = out * inner + c
        return out

    def sup_norm(self) -> Fraction:
        """Largest absolute coefficient (0 for the zero polynomial)."""
        return max((abs(c) for c in self.coeffs), default=Fraction(0))


ZERO = Poly()
ONE = Poly.const(1)
X = Poly.x()


def poly_arithmetic(p: Poly, q, op: str) -> Poly:
    """Dispatch ``add``/``sub``/``mul``/``scale``; for ``scale`` ``q`` is a scalar."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "scale":
        return p.scale(q)
    raise ValueError(f"unknown polynomial operation {op!r}")


def evaluate(p: Poly, x: ScalarLike) -> Fraction:
    x = scalar(x)
    out = Fraction(0)
    for c in reversed(p.coeffs):
        out = out * x + c
    return out


@dataclass(frozen=True)
class AffineMap:
    """The substitution ``x -> scale*x + offset``."""

    scale: Fraction = Fraction(1)
    offset: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "scale", scalar(self.scale))
        object.__setattr__(self, "offset", scalar(self.offset))

    @classmethod
    def identity(cls) -> "AffineMap":
        return cls(Fraction(1), Fraction(0))

    def then(self, outer: "AffineMap") -> "AffineMap":
        """Map ``x -> outer(self(x))``."""
        return AffineMap(outer.scale * self.scale, outer.scale * self.offset + outer.offset)

    def as_poly(self) -> Poly:
        return Poly.linear(self.scale, self.offset)

    def __call__(self, x: ScalarLike) -> Fraction:
        return self.scale * scalar(x) + self.offset


def compose_affine(p: Poly, m: AffineMap) -> Poly:
    """Expand ``p(m.scale*x + m.offset)`` exactly."""
    return p.compose(m.as_poly())


def falling_poly(j: int, shift: ScalarLike = 0) -> Poly:
    """``(x+shift)(x+shift-1)...(x+shift-j+1)`` as a Poly."""
    shift = scalar(shift)
    out = ONE
    for i in range(j):
        out = out * Poly.linear(1, shift - i)
    return out


def rising_poly(inner: Poly, k: int) -> Poly:
    """Pochhammer ``(inner)_k`` with a polynomial argument."""
    out = ONE
    for i in range(k):
        out = out * (inner + i)
    return out


def binomial_poly(inner: Poly, k: int) -> Poly:
    """Generalized binomial ``C(inner, k)`` with a polynomial upper argument."""
    out = ONE
    for i in range(k):
        out = out * (inner - i)
    return out / factorial(k)


def det3(rows: Sequence[Sequence]) -> Poly:
    """Cofactor expansion of a 3x3 determinant along the first row.

    Entries may be Polys or scalars; the result is always a Poly.
    """
    (a, b, c), (d, e, f), (g, h, i) = rows
    return (
        Poly._lift(a) * (e * i - f * h)
        - Poly._lift(b) * (d * i - f * g)
        + Poly._lift(c) * (d * h - e * g)
    )


def det2(rows: Sequence[Sequence]):
    (a, b), (c, d) = rows
    return a * d - b * c


def format_scalar(q: Fraction) -> str:
    """Serialize as ``"p/q"`` (the denominator is always written)."""
    return f"{q.numerator}/{q.denominator}"


def parse_scalar(text: str) -> Fraction:
    """Parse an exact rational from ``"p/q"``, ``"p"`` or a finite decimal string."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational: {text!r}") from exc
