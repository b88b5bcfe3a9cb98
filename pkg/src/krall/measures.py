"""Symbolic orthogonality measures and exact inner products.

A :class:`Measure` is a classical base weight, optionally translated
(``support_shift``), multiplied by a polynomial ``modifier`` (a Christoffel
transform) and augmented by Dirac masses.  Inner products are evaluated from
closed-form moments of the base weight, so everything stays rational.

Without deltas, inner products are normalized by the base mass ``mu_0``
(removing transcendental constants such as ``Gamma(c)(1-a)^-c``); with
deltas the absolute ``mu_0`` is required and only integer-parameter
Laguerre/Jacobi bases (or finite Hahn sums) qualify.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .arith import (
    ONE,
    X,
    Poly,
    binomial_general,
    factorial,
    format_scalar,
    gamma_sign,
    rising_factorial,
    rising_poly,
    scalar,
    stirling2,
)
from .classical import InvalidParameter, hahn
from .krall_families import (
    krall_hahn_I,
    krall_hahn_II,
    krall_jacobi_I,
    krall_jacobi_II,
    krall_laguerre,
    krall_meixner_I,
    krall_meixner_II,
)

BASES = ("laguerre_weight", "jacobi_weight", "meixner_weight", "hahn_weight")
DISCRETE_BASES = ("meixner_weight", "hahn_weight")


class PositivityNotGuaranteed(ValueError):
    """Parameters lie outside the window where the measure is known to be positive."""


class UnsupportedParameter(ValueError):
    """The requested quantity is not a rational number for these parameters."""


@dataclass(frozen=True)
class Measure:
    base: str
    params: tuple[Fraction, ...]
    support_shift: int = 0
    modifier: Poly = field(default=ONE)
    deltas: tuple[tuple[Fraction, Fraction], ...] = ()

    def __post_init__(self):
        if self.base not in BASES:
            raise ValueError(f"unknown base weight {self.base!r}")
        object.__setattr__(self, "params", tuple(scalar(p) for p in self.params))
        object.__setattr__(self, "deltas", tuple((scalar(x), scalar(m)) for x, m in self.deltas))
        if self.support_shift and self.base not in DISCRETE_BASES:
            raise ValueError("support_shift applies to discrete bases only")
        if self.base == "hahn_weight":
            N = self.params[2]
            if N.denominator != 1 or N < 0:
                raise InvalidParameter(f"hahn_weight needs integer N >= 0, got {N}")

    def describe(self) -> dict:
        return {
            "base": self.base,
            "params": [str(p) for p in self.params],
            "support_shift": self.support_shift,
            "modifier": [str(c) for c in self.modifier.coeffs],
            "deltas": [[str(x), str(m)] for x, m in self.deltas],
        }


def laguerre_weight(alpha) -> tuple[str, tuple]:
    return "laguerre_weight", (alpha,)


# -- base moments ---------------------------------------------------------

def _hahn_point_weight(x: int, a: Fraction, b: Fraction, N: int) -> Fraction:
    return binomial_general(x + a, x) * binomial_general(b + N - x, N - x)


def _base_moment(base: str, params: tuple[Fraction, ...], k: int) -> Fraction:
    if base == "laguerre_weight":
        (alpha,) = params
        return rising_factorial(alpha + 1, k)
    if base == "jacobi_weight":
        alpha, beta = params
        # x = 1 - 2B with B ~ Beta(alpha+1, beta+1)
        return sum(
            (
                binomial_general(k, j) * (-2) ** j * rising_factorial(alpha + 1, j) / rising_factorial(alpha + beta + 2, j)
                for j in range(k + 1)
            ),
            Fraction(0),
        )
    if base == "meixner_weight":
        a, c = params
        r = a / (1 - a)
        return sum((stirling2(k, j) * rising_factorial(c, j) * r**j for j in range(k + 1)), Fraction(0))
    a, b, N = params
    n = int(N)
    weights = [_hahn_point_weight(x, a, b, n) for x in range(n + 1)]
    total = sum(weights, Fraction(0))
    if not total:
        raise InvalidParameter("hahn_weight has zero total mass")
    return sum((w * x**k for x, w in enumerate(weights)), Fraction(0)) / total


def _check_moment_params(base: str, params: tuple[Fraction, ...]) -> None:
    if base == "laguerre_weight" and params[0] <= -1:
        raise InvalidParameter(f"laguerre_weight moments diverge for alpha={params[0]} <= -1")
    if base == "jacobi_weight" and min(params) <= -1:
        raise InvalidParameter(f"jacobi_weight moments diverge for parameters {params}")
    if base == "meixner_weight":
        a, c = params
        if not (0 < a < 1 and c > 0):
            raise InvalidParameter(f"meixner_weight moments need 0<a<1 and c>0, got a={a}, c={c}")


class _MomentCache:
    """Per-base moment sequences; one writer at a time, extended on demand."""

    def __init__(self):
        self._lock = threading.Lock()
        self._seqs: dict[tuple, list[Fraction]] = {}

    def get(self, base: str, params: tuple, k_max: int) -> list[Fraction]:
        key = (base, params)
        seq = self._seqs.get(key)
        if seq is not None and len(seq) > k_max:
            return seq[: k_max + 1]
        with self._lock:
            seq = list(self._seqs.get(key, []))
            for k in range(len(seq), k_max + 1):
                seq.append(_base_moment(base, params, k))
            self._seqs[key] = seq
            return seq[: k_max + 1]


_MOMENTS = _MomentCache()


def normalized_moments(m: Measure, k_max: int) -> list[Fraction]:
    """``mu_k / mu_0`` of the base weight for ``k = 0 .. k_max``."""
    _check_moment_params(m.base, m.params)
    return _MOMENTS.get(m.base, m.params, k_max)


def base_mass(m: Measure) -> Fraction:
    """Absolute total mass of the base weight, when it is rational."""
    if m.base == "laguerre_weight":
        (alpha,) = m.params
        if alpha.denominator != 1 or alpha < 0:
            raise UnsupportedParameter(f"Gamma({alpha}+1) is not rational")
        return factorial(int(alpha))
    if m.base == "jacobi_weight":
        alpha, beta = m.params
        if alpha.denominator != 1 or beta.denominator != 1 or alpha < 0 or beta < 0:
            raise UnsupportedParameter(f"Beta normalization for ({alpha}, {beta}) is not rational")
        a, b = int(alpha), int(beta)
        return Fraction(2) ** (a + b + 1) * factorial(a) * factorial(b) / factorial(a + b + 1)
    if m.base == "hahn_weight":
        a, b, N = m.params
        return sum((_hahn_point_weight(x, a, b, int(N)) for x in range(int(N) + 1)), Fraction(0))
    raise UnsupportedParameter("meixner_weight total mass Gamma(c)(1-a)^-c is not rational")


def inner_product(p: Poly, q: Poly, m: Measure) -> Fraction:
    """Exact ``<p, q>`` against ``m``.

    Normalized by the base mass when ``m`` has no deltas, absolute otherwise.
    """
    r = p * q * m.modifier
    if r.is_zero() and not m.deltas:
        return Fraction(0)
    if m.support_shift:
        # support points are x = y - shift with y distributed by the base weight
        r = r.compose(Poly.linear(1, -m.support_shift))
    mom = normalized_moments(m, max(int(r.degree), 0))
    total = sum((c * mom[k] for k, c in enumerate(r.coeffs)), Fraction(0))
    if not m.deltas:
        return total
    total *= base_mass(m)
    for pt, mass in m.deltas:
        total += mass * p(pt) * q(pt)
    return total


@dataclass
class GramReport:
    n_max: int
    matrix: list[list[Fraction]]
    off_diagonal_zero: bool
    diagonal_positive: bool
    failures: list[tuple[int, int]]

    @property
    def passed(self) -> bool:
        return self.off_diagonal_zero and self.diagonal_positive

    def to_dict(self) -> dict:
        return {
            "n_max": self.n_max,
            "off_diagonal_zero": self.off_diagonal_zero,
            "diagonal_positive": self.diagonal_positive,
            "failures": [list(f) for f in self.failures],
            "matrix": [[f"{v.numerator}/{v.denominator}" for v in row] for row in self.matrix],
        }


def gram_orthogonality_report(m: Measure, family: Callable[[int], Poly], n_max: int) -> GramReport:
    polys = [family(n) for n in range(n_max + 1)]
    size = n_max + 1
    G = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            G[i][j] = G[j][i] = inner_product(polys[i], polys[j], m)
    failures = [(i, j) for i in range(size) for j in range(size) if i != j and G[i][j]]
    bad_diag = [(i, i) for i in range(size) if G[i][i] <= 0]
    return GramReport(
        n_max=n_max,
        matrix=G,
        off_diagonal_zero=not failures,
        diagonal_positive=not bad_diag,
        failures=failures + bad_diag,
    )


# -- positivity ---------------------------------------------------------

def support_weight(m: Measure, x: int) -> Fraction:
    """Exact discrete weight at support point ``x`` up to a positive constant.

    For Meixner bases the common factor ``|Gamma(c)|`` is dropped but the sign
    of ``Gamma(x + shift + c)`` is kept.
    """
    y = x + m.support_shift
    if m.base == "meixner_weight":
        a, c = m.params
        s = gamma_sign(y + c)
        if s == 0:
            raise InvalidParameter(f"Gamma pole at support point x={x}")
        base = abs(rising_factorial(c, y)) * a**y / factorial(y) * s
    elif m.base == "hahn_weight":
        a, b, N = m.params
        base = _hahn_point_weight(y, a, b, int(N))
    else:
        raise ValueError("support weights are defined for discrete bases only")
    return m.modifier(x) * base


def positivity_check(m: Measure, sample_count: int = 50) -> tuple[bool, dict | None]:
    """Scan the support for a negative weight; return ``(ok, witness)``.

    Zero weights are allowed (a Christoffel factor may vanish at support
    points) as long as some weight is positive.  Continuous bases are judged
    by their parameter windows.
    """
    for pt, mass in m.deltas:
        if mass < 0:
            return False, {"delta": format_scalar(pt), "mass": format_scalar(mass)}
    if m.base == "laguerre_weight":
        if m.params[0] <= -1:
            return False, {"parameter": "alpha", "value": format_scalar(m.params[0])}
        if m.modifier.degree > 0:
            raise ValueError("modified continuous weights are not checked")
        return True, None
    if m.base == "jacobi_weight":
        for name, val in zip(("alpha", "beta"), m.params):
            if val <= -1:
                return False, {"parameter": name, "value": format_scalar(val)}
        if m.modifier.degree > 0:
            raise ValueError("modified continuous weights are not checked")
        return True, None
    if m.base == "hahn_weight":
        points = range(int(m.params[2]) + 1)
    else:
        points = range(sample_count)
    any_positive = False
    for y in points:
        x = y - m.support_shift
        try:
            w = support_weight(m, x)
        except InvalidParameter:
            return False, {"x": str(x), "weight": "pole"}
        if w < 0:
            return False, {"x": str(x), "weight": format_scalar(w)}
        any_positive = any_positive or w > 0
    if not any_positive:
        return False, {"x": None, "weight": "all zero"}
    return True, None


# -- the eight Krall measures--------------------------------------------------

MEASURE_PARAMS = {
    "lagk": ("kappa", "u"),
    "mk": ("a", "c", "kappa"),
    "mk2": ("a", "c", "kappa"),
    "jack": ("alpha", "kappa", "u"),
    "jack2": ("kappa", "sigma", "u", "v"),
    "hw": ("a", "b", "N"),
    "hk": ("a", "b", "N", "kappa"),
    "hk2": ("a", "b", "N", "kappa", "sigma"),
}

INTEGER_PARAMS = {"kappa", "sigma", "N"}


def _coerce(measure_id: str, params: dict) -> dict:
    try:
        names = MEASURE_PARAMS[measure_id]
    except KeyError:
        raise ValueError(f"unknown measure {measure_id!r}; known: {', '.join(MEASURE_PARAMS)}") from None
    missing = [k for k in names if k not in params]
    if missing:
        raise ValueError(f"measure {measure_id} needs parameters {missing}")
    out = {}
    for k in names:
        v = scalar(params[k])
        if k in INTEGER_PARAMS:
            if v.denominator != 1 or v < (0 if k == "N" else 1):
                raise InvalidParameter(f"{k} must be a {'nonnegative' if k == 'N' else 'positive'} integer, got {v}")
            v = int(v)
        out[k] = v
    return out


def _mk2_window(c: Fraction, kappa: int) -> bool:
    if kappa % 2 == 0:
        return c > kappa + 1
    lo = -(kappa - 1) // 2 + 1
    return any(kappa + 2 * j - 2 < c < kappa + 2 * j - 1 for j in range(lo, 2))


def positivity_window(measure_id: str, params: dict) -> str | None:
    """Describe the violated positivity condition, or None when inside the window."""
    p = _coerce(measure_id, params)
    if measure_id == "lagk":
        return None if p["u"] > 0 else "u > 0"
    if measure_id in ("mk", "mk2"):
        if not 0 < p["a"] < 1:
            return "0 < a < 1"
        if measure_id == "mk":
            return None if p["c"] > p["kappa"] + 1 else "c > kappa + 1"
        return None if _mk2_window(p["c"], p["kappa"]) else "c in the kappa-parity window"
    if measure_id == "jack":
        if p["alpha"] <= -1:
            return "alpha > -1"
        return None if p["u"] > 0 else "u > 0"
    if measure_id == "jack2":
        return None if p["u"] > 0 and p["v"] > 0 else "u, v > 0"
    if measure_id == "hw":
        return None if p["a"] > -1 and p["b"] > -1 else "a, b > -1"
    if measure_id == "hk":
        return None if p["a"] > -1 and p["b"] > p["kappa"] else "-1 < a and kappa < b"
    return None if p["a"] > p["kappa"] and p["b"] > p["sigma"] else "kappa < a and sigma < b"


def make_paper_measure(measure_id: str, params: dict, override: bool = False) -> Measure:
    """Canonical decomposition of one of the eight Krall measures.

    Raises:
        PositivityNotGuaranteed: parameters leave the positivity window and
            ``override`` is False.
    """
    p = _coerce(measure_id, params)
    violated = positivity_window(measure_id, params)
    if violated and not override:
        raise PositivityNotGuaranteed(f"{measure_id}: positivity requires {violated}")
    if measure_id == "lagk":
        k = p["kappa"]
        return Measure("laguerre_weight", (k - 1,), deltas=((0, factorial(k) * p["u"]),))
    if measure_id == "mk":
        a, c, k = p["a"], p["c"], p["kappa"]
        mod = ONE
        for j in range(1, k + 1):
            mod = mod * Poly.linear(1, c - j)
        return Measure("meixner_weight", (a, c - k - 1), modifier=mod)
    if measure_id == "mk2":
        a, c, k = p["a"], p["c"], p["kappa"]
        mod = ONE
        for j in range(1, k + 1):
            mod = mod * Poly.linear(1, j)
        return Measure("meixner_weight", (a, c - k - 1), support_shift=k + 1, modifier=mod)
    if measure_id == "jack":
        k = p["kappa"]
        return Measure("jacobi_weight", (p["alpha"], k - 1), deltas=((-1, factorial(k) * p["u"]),))
    if measure_id == "jack2":
        k, s = p["kappa"], p["sigma"]
        return Measure(
            "jacobi_weight",
            (k - 1, s - 1),
            deltas=((1, factorial(k) * p["u"] / 2), (-1, factorial(s) * p["v"] / 2)),
        )
    if measure_id == "hw":
        return Measure("hahn_weight", (p["a"], p["b"], p["N"]))
    if measure_id == "hk":
        a, b, N, k = p["a"], p["b"], p["N"], p["kappa"]
        mod = rising_poly(Poly.linear(-1, N + b - k + 1), k)
        return Measure("hahn_weight", (a, b - k - 1, N), modifier=mod)
    a, b, N, k, s = p["a"], p["b"], p["N"], p["kappa"], p["sigma"]
    mod = rising_poly(X + (a - k + 1), k) * rising_poly(Poly.linear(-1, N + b - s + 1), s)
    return Measure("hahn_weight", (a - k - 1, b - s - 1, N), modifier=mod)


def paper_family(measure_id: str, params: dict) -> Callable[[int], Poly]:
    """Generator ``n -> p_n`` of the polynomials orthogonal against ``measure_id``."""
    p = _coerce(measure_id, params)
    if measure_id == "lagk":
        return lambda n: krall_laguerre(n, p["kappa"], p["u"])
    if measure_id == "mk":
        return lambda n: krall_meixner_I(n, p["a"], p["c"], p["kappa"])
    if measure_id == "mk2":
        return lambda n: krall_meixner_II(n, p["a"], p["c"], p["kappa"])
    if measure_id == "jack":
        return lambda n: krall_jacobi_I(n, p["alpha"], p["kappa"], p["u"])
    if measure_id == "jack2":
        return lambda n: krall_jacobi_II(n, p["kappa"], p["sigma"], p["u"], p["v"])
    if measure_id == "hw":
        return lambda n: hahn(n, p["a"], p["b"], p["N"])
    if measure_id == "hk":
        return lambda n: krall_hahn_I(n, p["a"], p["b"], p["N"], p["kappa"])
    return lambda n: krall_hahn_II(n, p["a"], p["b"], p["N"], p["kappa"], p["sigma"])
