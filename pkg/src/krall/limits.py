"""Limits between families along exact parameter paths.

Every limit is evaluated at ``a_t = 1 - 2**-t`` (Meixner side) or
``N_t = 2**t`` (Hahn side), so each step is an exact rational computation.
A :class:`LimitCase` bundles the source family, the coupled parameter path,
the variable substitution and prefactor, and the target.  Scalar limits
(``lmk``, ``lhk``, ...) are treated as limits of polynomials in a dummy
variable whose degree index is ``kappa``.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .arith import (
    X,
    AffineMap,
    Poly,
    binomial_general,
    binomial_poly,
    compose_affine,
    factorial,
    rising_factorial,
    rising_poly,
    scalar,
)
from .classical import dual_hahn, hahn, jacobi, laguerre, lambda_poly, meixner
from .krall_families import (
    INFINITY,
    krall_hahn_I,
    krall_hahn_II,
    krall_jacobi_I,
    krall_jacobi_II,
    krall_laguerre,
    krall_meixner_I,
    krall_meixner_II,
)


PAPER_TARGET = "paper-target"
ORACLE_TARGET = "oracle-target"

DEFAULT_THRESHOLD = Fraction(1, 1000)
DEFAULT_MONOTONE_FROM = 8
RATE_TOLERANCE = Fraction(1, 10)
STABLE_RATIO_TOLERANCE = Fraction(1, 100)


class PathDegenerate(ValueError):
    """A family precondition fails at some step of the parameter path."""

    def __init__(self, t: int, cause: Exception):
        super().__init__(f"path degenerate at t={t}: {cause}")
        self.t = t
        self.cause = cause


class CannotExtrapolate(ValueError):
    pass


def a_path(t: int) -> Fraction:
    return 1 - Fraction(1, 2**t)


def N_path(t: int) -> Fraction:
    return Fraction(2**t)


@dataclass(frozen=True)
class ParameterPath:
    """Exact recipe ``t -> parameters`` given the case's fixed parameters."""

    recipe: str
    fn: Callable[[int, dict], dict]

    def at(self, t: int, params: dict) -> dict:
        return self.fn(t, params)


@dataclass(frozen=True)
class ScalingMap:
    variable: str
    variable_fn: Callable[[dict], AffineMap]
    prefactor: str
    prefactor_fn: Callable[[int, dict], Fraction]


@dataclass(frozen=True)
class LimitCase:
    id: str
    anchor: str
    source_family: str
    source: Callable[[int, dict], Poly]
    path: ParameterPath
    scaling: ScalingMap
    target: Callable[[int, dict], Poly]
    target_status: str = PAPER_TARGET
    defaults: dict = field(default_factory=dict)
    expected_rate: Fraction | None = Fraction(1, 2)
    degree_role: str = "n"
    n_min: int = 0
    hahn_sourced: bool = False
    target_formula: str = ""
    check: Callable[[int, dict], None] | None = None

    def params_with(self, overrides: dict | None) -> dict:
        params = dict(self.defaults)
        for k, v in (overrides or {}).items():
            if k not in params:
                raise ValueError(f"case {self.id} has no parameter {k!r}; known: {sorted(params)}")
            params[k] = v if v is INFINITY else scalar(v)
        for k in ("kappa", "sigma"):
            if k in params:
                if scalar(params[k]).denominator != 1 or params[k] < 1:
                    raise ValueError(f"{k} must be a positive integer")
                params[k] = int(params[k])
        return params

    def default_t_range(self) -> range:
        """``1..20`` on the Meixner side; Hahn paths start at ``N = 16`` so ``n <= N``."""
        return range(4, 21) if self.path.recipe.startswith("N_t") else range(1, 21)

    def validate(self, n: int, params: dict) -> None:
        if n < self.n_min:
            raise ValueError(f"case {self.id} needs {self.degree_role} >= {self.n_min}, got {n}")
        if self.check is not None:
            self.check(n, params)

    def describe(self) -> dict:
        return {
            "id": self.id,
            "anchor": self.anchor,
            "source": self.source_family,
            "path": self.path.recipe,
            "variable_map": self.scaling.variable,
            "prefactor": self.scaling.prefactor,
            "target": self.target_formula,
            "target_status": self.target_status,
            "defaults": {k: f"{Fraction(v).numerator}/{Fraction(v).denominator}" for k, v in self.defaults.items()},
            "degree_index": self.degree_role,
            "min_degree": self.n_min,
            "expected_rate": None if self.expected_rate is None else str(self.expected_rate),
        }


# -- shared path/scaling pieces -------------------------------------------

_MEIXNER_MAP = ScalingMap(
    "x -> x/(1-a)",
    lambda pp: AffineMap(1 / (1 - pp["a"]), 0),
    "(a-1)^n",
    lambda n, pp: (pp["a"] - 1) ** n,
)


def _hahn_map(prefactor: str, fn: Callable[[int, dict], Fraction]) -> ScalingMap:
    return ScalingMap("x -> (1-x)N/2", lambda pp: AffineMap(-pp["N"] / 2, pp["N"] / 2), prefactor, fn)


_IDENTITY = lambda pp: AffineMap.identity()  # noqa: E731


def _lam(k: int, a, b, n: int) -> Fraction:
    """``(-1)^(k+a) (a+1)_{k-a} (n+b-1)_a (n+1)_a`` for integer ``a``."""
    a = int(a)
    return (-1) ** (k + a) * rising_factorial(a + 1, k - a) * rising_factorial(n + b - 1, a) * rising_factorial(n + 1, a)


def _phi(k: int, pp: dict) -> Fraction:
    """``kappa + s/N^kappa``; depends on the degree index, so it is built per call."""
    return k + pp["s"] / pp["N"] ** k


def _int_in(value, lo: int, hi: int) -> bool:
    value = scalar(value)
    return value.denominator == 1 and lo <= value <= hi


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


def _kappa_path(fn):
    return lambda t, p: {"a": a_path(t), **fn(a_path(t), p)}


def _N_path(fn=None):
    if fn is None:
        return lambda t, p: {"N": N_path(t)}
    return lambda t, p: {"N": N_path(t), **fn(N_path(t), p)}


def _build_catalog() -> list[LimitCase]:
    cases = []
    add = cases.append

    add(LimitCase(
        id="blmel",
        anchor="blmel: lim_{a->1} (a-1)^n m_n^{a,alpha+1}(x/(1-a)) = L_n^alpha",
        source_family="meixner(n, a, alpha+1)",
        source=lambda n, pp: meixner(n, pp["a"], pp["alpha"] + 1),
        path=ParameterPath("a_t = 1 - 2^-t", _kappa_path(lambda a, p: {"alpha": p["alpha"]})),
        scaling=_MEIXNER_MAP,
        target=lambda n, p: laguerre(n, p["alpha"]),
        target_formula="L_n^alpha",
        defaults={"alpha": Fraction(1, 2)},
    ))
    add(LimitCase(
        id="blmel3",
        anchor="blmel3: c = phi(a) with phi(1) = alpha+1",
        source_family="meixner(n, a, phi(a)), phi(a) = alpha+1+(1-a)^2",
        source=lambda n, pp: meixner(n, pp["a"], pp["c"]),
        path=ParameterPath("a_t = 1 - 2^-t; c = alpha+1+(1-a)^2",
                           _kappa_path(lambda a, p: {"c": p["alpha"] + 1 + (1 - a) ** 2})),
        scaling=_MEIXNER_MAP,
        target=lambda n, p: laguerre(n, p["alpha"]),
        target_formula="L_n^alpha",
        defaults={"alpha": Fraction(1)},
    ))

    def lmk_check(k, p):
        _require(not _int_in(p["c"], 2, k + 1), "lmk needs c not in {2, ..., kappa+1}")

    add(LimitCase(
        id="lmk",
        anchor="lmk: lim (a-1)^kappa m_kappa^{1/a,2-c}(z) = (-1)^kappa C(kappa+1-c, kappa)",
        source_family="meixner(kappa, 1/a, 2-c)",
        source=lambda k, pp: meixner(k, 1 / pp["a"], 2 - pp["c"]),
        path=ParameterPath("a_t = 1 - 2^-t", _kappa_path(lambda a, p: {"c": p["c"]})),
        scaling=ScalingMap("identity", _IDENTITY, "(a-1)^kappa", lambda k, pp: (pp["a"] - 1) ** k),
        target=lambda k, p: Poly.const((-1) ** k * binomial_general(k + 1 - p["c"], k)),
        target_formula="(-1)^kappa C(kappa+1-c, kappa)",
        defaults={"c": Fraction(9, 2)},
        degree_role="kappa",
        n_min=1,
        check=lmk_check,
    ))

    def lmk2_check(k, p):
        _require(_int_in(p["c"], 2, k + 1), "lmk2 needs c in {2, ..., kappa+1}")

    add(LimitCase(
        id="lmk2",
        anchor="lmk2: lim (a-1)^{kappa+1-c} m_kappa^{1/a,2-c}(z) = (-1)^{kappa+1-c} C(z, c-1)",
        source_family="meixner(kappa, 1/a, 2-c)",
        source=lambda k, pp: meixner(k, 1 / pp["a"], 2 - pp["c"]),
        path=ParameterPath("a_t = 1 - 2^-t", _kappa_path(lambda a, p: {"c": p["c"]})),
        scaling=ScalingMap("identity", _IDENTITY, "(a-1)^(kappa+1-c)",
                           lambda k, pp: (pp["a"] - 1) ** int(k + 1 - pp["c"])),
        target=lambda k, p: binomial_poly(X, int(p["c"]) - 1).scale((-1) ** int(k + 1 - p["c"])),
        target_formula="(-1)^(kappa+1-c) C(z, c-1)",
        defaults={"c": Fraction(2)},
        degree_role="kappa",
        n_min=1,
        check=lmk2_check,
    ))

    def blmeli_reg_check(n, p):
        _require(not _int_in(p["c"], 2, p["kappa"] + 1), "regular case needs c not in {2, ..., kappa+1}")

    def blmeli_deg_check(n, p):
        _require(_int_in(p["c"], 2, p["kappa"] + 1), "degenerate case needs c in {2, ..., kappa+1}")

    meixner_fixed = _kappa_path(lambda a, p: {"c": p["c"], "kappa": p["kappa"]})
    add(LimitCase(
        id="blmeli_regular",
        anchor="blmeli (c not in {2..kappa+1}): Askey-style limit of Krall-Meixner gives L_n^{c-2}",
        source_family="krall_meixner_I(n, a, c, kappa)",
        source=lambda n, pp: krall_meixner_I(n, pp["a"], pp["c"], pp["kappa"]),
        path=ParameterPath("a_t = 1 - 2^-t; c, kappa fixed", meixner_fixed),
        scaling=_MEIXNER_MAP,
        target=lambda n, p: laguerre(n, p["c"] - 2),
        target_formula="L_n^{c-2}",
        defaults={"kappa": 2, "c": Fraction(5)},
        check=blmeli_reg_check,
    ))
    add(LimitCase(
        id="blmeli_degenerate",
        anchor="blmeli (c in {2..kappa+1}): limit is the u=oo Krall-Laguerre family L_n^{c-1;oo}",
        source_family="krall_meixner_I(n, a, c, kappa)",
        source=lambda n, pp: krall_meixner_I(n, pp["a"], pp["c"], pp["kappa"]),
        path=ParameterPath("a_t = 1 - 2^-t; c, kappa fixed", meixner_fixed),
        scaling=_MEIXNER_MAP,
        target=lambda n, p: krall_laguerre(n, int(p["c"]) - 1, INFINITY),
        target_formula="krall_laguerre(n, c-1, oo)",
        defaults={"kappa": 2, "c": Fraction(3)},
        check=blmeli_deg_check,
    ))
    add(LimitCase(
        id="limit1",
        anchor="limit1: c = kappa+1+(1-a)^kappa/u turns Krall-Meixner into Krall-Laguerre",
        source_family="krall_meixner_I(n, a, c(a), kappa)",
        source=lambda n, pp: krall_meixner_I(n, pp["a"], pp["c"], pp["kappa"]),
        path=ParameterPath(
            "a_t = 1 - 2^-t; c = kappa+1+(1-a)^kappa/u",
            _kappa_path(lambda a, p: {"kappa": p["kappa"], "c": p["kappa"] + 1 + (1 - a) ** p["kappa"] / p["u"]}),
        ),
        scaling=_MEIXNER_MAP,
        target=lambda n, p: krall_laguerre(n, p["kappa"], p["u"]),
        target_formula="krall_laguerre(n, kappa, u)",
        defaults={"kappa": 1, "u": Fraction(1)},
    ))
    add(LimitCase(
        id="meixner_lemma",
        anchor="meixner_lemma: lim m_kappa^{1/a, 1-kappa-(1-a)^kappa/u}(z) = (-1)^kappa/(kappa u) + (z-kappa+1)_kappa/kappa!",
        source_family="meixner(kappa, 1/a, 1-kappa-(1-a)^kappa/u)",
        source=lambda k, pp: meixner(k, 1 / pp["a"], 1 - k - (1 - pp["a"]) ** k / pp["u"]),
        path=ParameterPath("a_t = 1 - 2^-t", _kappa_path(lambda a, p: {"u": p["u"]})),
        scaling=ScalingMap("identity", _IDENTITY, "1", lambda k, pp: Fraction(1)),
        target=lambda k, p: rising_poly(X - (k - 1), k) / factorial(k) + Fraction((-1) ** k) / (k * p["u"]),
        target_formula="(-1)^kappa/(kappa u) + (z-kappa+1)_kappa/kappa!",
        target_status=ORACLE_TARGET,
        defaults={"u": Fraction(1)},
        degree_role="kappa",
        n_min=1,
    ))
    add(LimitCase(
        id="limit2",
        anchor="limit2: c = kappa+1+(a-1)^kappa/u on the second Krall-Meixner family",
        source_family="krall_meixner_II(n, a, c(a), kappa)",
        source=lambda n, pp: krall_meixner_II(n, pp["a"], pp["c"], pp["kappa"]),
        path=ParameterPath(
            "a_t = 1 - 2^-t; c = kappa+1+(a-1)^kappa/u",
            _kappa_path(lambda a, p: {"kappa": p["kappa"], "c": p["kappa"] + 1 + (a - 1) ** p["kappa"] / p["u"]}),
        ),
        scaling=_MEIXNER_MAP,
        target=lambda n, p: krall_laguerre(n, p["kappa"], p["u"]),
        target_formula="krall_laguerre(n, kappa, u)",
        defaults={"kappa": 2, "u": Fraction(1)},
    ))

    unit = _hahn_map("1", lambda n, pp: Fraction(1))
    add(LimitCase(
        id="blhj",
        anchor="blhj: lim_{N->oo} h_n^{a,b,N}((1-x)N/2) = P_n^{a,b}",
        source_family="hahn(n, a, b, N)",
        source=lambda n, pp: hahn(n, pp["a"], pp["b"], pp["N"]),
        path=ParameterPath("N_t = 2^t", _N_path(lambda N, p: {"a": p["a"], "b": p["b"]})),
        scaling=unit,
        target=lambda n, p: jacobi(n, p["a"], p["b"]),
        target_formula="P_n^{a,b}",
        defaults={"a": Fraction(1, 2), "b": Fraction(1, 2)},
        hahn_sourced=True,
    ))
    add(LimitCase(
        id="blhj2",
        anchor="blhj2: drifting parameters phi_1(N) -> a, phi_2(N) -> b",
        source_family="hahn(n, a+1/N, b-2/N, N)",
        source=lambda n, pp: hahn(n, pp["a"], pp["b"], pp["N"]),
        path=ParameterPath("N_t = 2^t; a(N) = a+1/N; b(N) = b-2/N",
                           _N_path(lambda N, p: {"a": p["a"] + 1 / N, "b": p["b"] - 2 / N})),
        scaling=unit,
        target=lambda n, p: jacobi(n, p["a"], p["b"]),
        target_formula="P_n^{a,b}",
        defaults={"a": Fraction(1, 2), "b": Fraction(1, 2)},
        hahn_sourced=True,
    ))

    dual_fixed = ParameterPath("N_t = 2^t", _N_path(lambda N, p: {"a": p["a"], "b": p["b"]}))

    def lhk_check(k, p):
        _require(not _int_in(p["b"], 1, k), "lhk needs b not in {1, ..., kappa}")

    def lhk2_check(k, p):
        _require(_int_in(p["b"], 1, k), "lhk2 needs b in {1, ..., kappa}")

    add(LimitCase(
        id="lhk",
        anchor="lhk: lim R_kappa^{-b,-a,a+b+N}(z)/N^kappa = (b-kappa)_kappa",
        source_family="dual_hahn(kappa, -b, -a, a+b+N)",
        source=lambda k, pp: dual_hahn(k, -pp["b"], -pp["a"], pp["a"] + pp["b"] + pp["N"]),
        path=dual_fixed,
        scaling=ScalingMap("identity", _IDENTITY, "N^-kappa", lambda k, pp: 1 / pp["N"] ** k),
        target=lambda k, p: Poly.const(rising_factorial(p["b"] - k, k)),
        target_formula="(b-kappa)_kappa",
        defaults={"a": Fraction(1, 2), "b": Fraction(9, 2)},
        degree_role="kappa",
        n_min=1,
        check=lhk_check,
    ))
    add(LimitCase(
        id="lhk2",
        anchor="lhk2: lim R_kappa^{-b,-a,a+b+N}(z)/N^{kappa-b} = (b+1)_{kappa-b} (-1)^{b+kappa} lambda_b^{-b-a}(z)",
        source_family="dual_hahn(kappa, -b, -a, a+b+N)",
        source=lambda k, pp: dual_hahn(k, -pp["b"], -pp["a"], pp["a"] + pp["b"] + pp["N"]),
        path=dual_fixed,
        scaling=ScalingMap("identity", _IDENTITY, "N^(b-kappa)", lambda k, pp: pp["N"] ** int(pp["b"] - k)),
        target=lambda k, p: lambda_poly(int(p["b"]), -p["b"] - p["a"]).scale(
            rising_factorial(p["b"] + 1, int(k - p["b"])) * (-1) ** int(p["b"] + k)
        ),
        target_formula="(b+1)_{kappa-b} / (-1)^{b+kappa} * lambda_b^{-b-a}(z)",
        defaults={"a": Fraction(1, 2), "b": Fraction(1)},
        degree_role="kappa",
        n_min=1,
        check=lhk2_check,
    ))
    add(LimitCase(
        id="lhk3",
        anchor="lhk3: phi_kappa^s(N) = kappa + s/N^kappa, psi(N) -> a",
        source_family="dual_hahn(kappa, -phi, -psi, psi+phi+N)",
        source=lambda k, pp: dual_hahn(k, -_phi(k, pp), -pp["psi"], pp["psi"] + _phi(k, pp) + pp["N"]),
        path=ParameterPath(
            "N_t = 2^t; phi = kappa+s/N^kappa; psi = a+1/N",
            _N_path(lambda N, p: {"s": p["s"], "psi": p["a"] + 1 / N}),
        ),
        scaling=ScalingMap("identity", _IDENTITY, "1", lambda k, pp: Fraction(1)),
        target=lambda k, p: lambda_poly(k, -k - p["a"]) + factorial(k - 1) * p["s"],
        target_formula="(kappa-1)! s + lambda_kappa^{-kappa-a}(z)",
        defaults={"a": Fraction(1, 2), "s": Fraction(2)},
        degree_role="kappa",
        n_min=1,
    ))

    hahn_fixed = ParameterPath("N_t = 2^t", _N_path(lambda N, p: dict(p)))

    def lhj1_reg_check(n, p):
        _require(not _int_in(p["b"], 1, p["kappa"]), "regular case needs b not in {1, ..., kappa}")

    def lhj1_deg_check(n, p):
        _require(_int_in(p["b"], 1, p["kappa"]), "degenerate case needs b in {1, ..., kappa}")

    add(LimitCase(
        id="lhj1_regular",
        anchor="lhj1 (b not in {1..kappa}): Askey-style limit of Krall-Hahn gives (2n+a+b)/(n+a+b) P_n^{a,b-1}",
        source_family="krall_hahn_I(n, a, b, N, kappa)",
        source=lambda n, pp: krall_hahn_I(n, pp["a"], pp["b"], pp["N"], pp["kappa"]),
        path=hahn_fixed,
        scaling=unit,
        target=lambda n, p: jacobi(n, p["a"], p["b"] - 1).scale((2 * n + p["a"] + p["b"]) / (n + p["a"] + p["b"])),
        target_formula="(2n+a+b)/(n+a+b) P_n^{a,b-1}",
        defaults={"kappa": 2, "a": Fraction(1, 2), "b": Fraction(4)},
        hahn_sourced=True,
        check=lhj1_reg_check,
    ))
    add(LimitCase(
        id="lhj1_degenerate",
        anchor="lhj1 (b in {1..kappa}): limit is the u=oo Krall-Jacobi family P_n^{a,b;oo}",
        source_family="krall_hahn_I(n, a, b, N, kappa)",
        source=lambda n, pp: krall_hahn_I(n, pp["a"], pp["b"], pp["N"], pp["kappa"]),
        path=hahn_fixed,
        scaling=unit,
        target=lambda n, p: krall_jacobi_I(n, p["a"], int(p["b"]), INFINITY),
        target_formula="krall_jacobi_I(n, a, b, oo)",
        defaults={"kappa": 2, "a": Fraction(1, 2), "b": Fraction(1)},
        hahn_sourced=True,
        check=lhj1_deg_check,
    ))

    def lemma32_check(n, p):
        _require(scalar(p["a"]).denominator == 1, "b(N) = kappa + 2^(a+kappa)/(u N^kappa) needs integer a")

    add(LimitCase(
        id="lemma32",
        anchor="lemma32: b = kappa + 2^(a+kappa)/(u N^kappa) turns Krall-Hahn into Krall-Jacobi",
        source_family="krall_hahn_I(n, a, b(N), N, kappa)",
        source=lambda n, pp: krall_hahn_I(n, pp["a"], pp["b"], pp["N"], pp["kappa"]),
        path=ParameterPath(
            "N_t = 2^t; b = kappa + 2^(a+kappa)/(u N^kappa)",
            _N_path(lambda N, p: {
                "a": p["a"], "kappa": p["kappa"],
                "b": p["kappa"] + Fraction(2) ** int(p["a"] + p["kappa"]) / (p["u"] * N ** p["kappa"]),
            }),
        ),
        scaling=unit,
        target=lambda n, p: krall_jacobi_I(n, p["a"], p["kappa"], p["u"]),
        target_formula="krall_jacobi_I(n, a, kappa, u)",
        defaults={"a": Fraction(1), "kappa": 2, "u": Fraction(1)},
        hahn_sourced=True,
        check=lemma32_check,
    ))

    kh2 = lambda n, pp: krall_hahn_II(n, pp["a"], pp["b"], pp["N"], pp["kappa"], pp["sigma"])  # noqa: E731

    def l33_check(a_special: bool, b_special: bool):
        def check(n, p):
            _require(_int_in(p["a"], 1, p["kappa"]) == a_special,
                     f"this case needs a {'in' if a_special else 'not in'} {{1, ..., kappa}}")
            _require(_int_in(p["b"], 1, p["sigma"]) == b_special,
                     f"this case needs b {'in' if b_special else 'not in'} {{1, ..., sigma}}")
        return check

    add(LimitCase(
        id="lemma33_case1",
        anchor="lemma33 (a not in {1..kappa}, b not in {1..sigma})",
        source_family="krall_hahn_II(n, a, b, N, kappa, sigma)",
        source=kh2,
        path=hahn_fixed,
        scaling=_hahn_map(
            "1/((a-kappa)_kappa (b-sigma)_sigma N^(kappa+sigma))",
            lambda n, pp: 1 / (rising_factorial(pp["a"] - pp["kappa"], pp["kappa"])
                               * rising_factorial(pp["b"] - pp["sigma"], pp["sigma"])
                               * pp["N"] ** (pp["kappa"] + pp["sigma"])),
        ),
        target=lambda n, p: jacobi(n, p["a"] - 1, p["b"] - 1).scale(
            rising_factorial(2 * n + p["a"] + p["b"] - 2, 3) / ((n + p["a"] + p["b"]) * (n + p["a"] + p["b"] - 1) ** 2)
        ),
        target_formula="(2n+a+b-2)_3/((n+a+b)(n+a+b-1)^2) P_n^{a-1,b-1}",
        defaults={"kappa": 1, "sigma": 2, "a": Fraction(7, 2), "b": Fraction(7, 2)},
        hahn_sourced=True,
        check=l33_check(False, False),
    ))
    add(LimitCase(
        id="lemma33_case2",
        anchor="lemma33 (a not in {1..kappa}, b in {1..sigma}), n >= 1",
        source_family="krall_hahn_II(n, a, b, N, kappa, sigma)",
        source=kh2,
        path=hahn_fixed,
        scaling=_hahn_map(
            "1/((a-kappa)_kappa N^(kappa+sigma-b))",
            lambda n, pp: 1 / (rising_factorial(pp["a"] - pp["kappa"], pp["kappa"])
                               * pp["N"] ** int(pp["kappa"] + pp["sigma"] - pp["b"])),
        ),
        target=lambda n, p: krall_jacobi_I(n, p["a"] - 1, int(p["b"]), INFINITY).scale(
            n * (2 * n + p["a"] + p["b"] - 2) * (2 * n + p["a"] + p["b"])
            / ((n + p["b"]) * rising_factorial(n + p["a"] + p["b"] - 1, 2))
            * _lam(p["sigma"], p["b"], p["a"], n)
        ),
        target_formula="n(2n+a+b-2)(2n+a+b)/((n+b)(n+a+b-1)_2) Lambda_sigma^{b,a}(n) P_n^{a-1,b;oo}(x)",
        target_status=ORACLE_TARGET,
        defaults={"kappa": 1, "sigma": 2, "a": Fraction(7, 2), "b": Fraction(1)},
        n_min=1,
        hahn_sourced=True,
        check=l33_check(False, True),
    ))
    add(LimitCase(
        id="lemma33_case3",
        anchor="lemma33 (a in {1..kappa}, b not in {1..sigma}), n >= 1",
        source_family="krall_hahn_II(n, a, b, N, kappa, sigma)",
        source=kh2,
        path=hahn_fixed,
        scaling=_hahn_map(
            "1/((b-sigma)_sigma N^(kappa+sigma-a))",
            lambda n, pp: 1 / (rising_factorial(pp["b"] - pp["sigma"], pp["sigma"])
                               * pp["N"] ** int(pp["kappa"] + pp["sigma"] - pp["a"])),
        ),
        target=lambda n, p: krall_jacobi_I(n, p["b"] - 1, int(p["a"]), INFINITY).compose(-X).scale(
            n * (2 * n + p["a"] + p["b"] - 2) * (2 * n + p["a"] + p["b"])
            / ((-1) ** n * (n + p["a"]) * rising_factorial(n + p["a"] + p["b"] - 1, 2))
            * _lam(p["kappa"], p["a"], p["b"], n)
        ),
        target_formula="n(2n+a+b-2)(2n+a+b)/((-1)^n (n+a)(n+a+b-1)_2) Lambda_kappa^{a,b}(n) P_n^{b-1,a;oo}(-x)",
        target_status=ORACLE_TARGET,
        defaults={"kappa": 1, "sigma": 2, "a": Fraction(1), "b": Fraction(7, 2)},
        n_min=1,
        hahn_sourced=True,
        check=l33_check(True, False),
    ))
    add(LimitCase(
        id="lemma33_case4",
        anchor="lemma33 (a in {1..kappa}, b in {1..sigma})",
        source_family="krall_hahn_II(n, a, b, N, kappa, sigma)",
        source=kh2,
        path=hahn_fixed,
        scaling=_hahn_map(
            "N^-(kappa+sigma-a-b)",
            lambda n, pp: 1 / pp["N"] ** int(pp["kappa"] + pp["sigma"] - pp["a"] - pp["b"]),
        ),
        target=lambda n, p: krall_jacobi_II(n, int(p["a"]), int(p["b"]), INFINITY, INFINITY).scale(
            _lam(p["kappa"], p["a"], p["b"], n) * _lam(p["sigma"], p["b"], p["a"], n)
        ),
        target_formula="Lambda_kappa^{a,b}(n) Lambda_sigma^{b,a}(n) P_n^{oo,oo; a,b}(x)",
        target_status=ORACLE_TARGET,
        defaults={"kappa": 1, "sigma": 2, "a": Fraction(1), "b": Fraction(1)},
        # the Krall-Hahn determinant loses degree for n < 2 in this regime
        n_min=2,
        hahn_sourced=True,
        check=l33_check(True, True),
    ))

    def l34_prefactor(n, pp):
        k, s = pp["kappa"], pp["sigma"]
        den = (rising_factorial(n + 1, k) * rising_factorial(n + s - 1, k)
               * rising_factorial(n + 1, s) * rising_factorial(n + k - 1, s))
        if not den:
            raise ValueError(f"lemma34 normalization vanishes at n={n}")
        return pp["u"] * pp["v"] / den

    def l34_check(n, p):
        l34_prefactor(n, {**p, "N": None})

    add(LimitCase(
        id="lemma34",
        anchor="lemma34: a = kappa + 2^(kappa+sigma)/(u N^kappa), b = sigma + 2^(kappa+sigma)/(v N^sigma)",
        source_family="krall_hahn_II(n, a(N), b(N), N, kappa, sigma)",
        source=kh2,
        path=ParameterPath(
            "N_t = 2^t; a = kappa + 2^(kappa+sigma)/(u N^kappa); b = sigma + 2^(kappa+sigma)/(v N^sigma)",
            _N_path(lambda N, p: {
                **p,
                "a": p["kappa"] + Fraction(2) ** (p["kappa"] + p["sigma"]) / (p["u"] * N ** p["kappa"]),
                "b": p["sigma"] + Fraction(2) ** (p["kappa"] + p["sigma"]) / (p["v"] * N ** p["sigma"]),
            }),
        ),
        scaling=_hahn_map("uv/[(n+1)_kappa (n+sigma-1)_kappa (n+1)_sigma (n+kappa-1)_sigma]", l34_prefactor),
        target=lambda n, p: krall_jacobi_II(n, p["kappa"], p["sigma"], p["u"], p["v"]),
        target_formula="krall_jacobi_II(n, kappa, sigma, u, v)",
        defaults={"kappa": 1, "sigma": 1, "u": Fraction(1), "v": Fraction(2)},
        n_min=1,
        hahn_sourced=True,
        check=l34_check,
    ))
    return cases


_CATALOG: list[LimitCase] | None = None


def catalog() -> list[LimitCase]:
    """All built-in limit cases, ordered by key."""
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = sorted(_build_catalog(), key=lambda c: c.id)
    return list(_CATALOG)


def get_case(case_id: str) -> LimitCase:
    for case in catalog():
        if case.id == case_id:
            return case
    raise KeyError(f"unknown limit case {case_id!r}; known: {', '.join(c.id for c in catalog())}")


# -- evaluation -------------------------------------------------------------

def scaled_source(case: LimitCase, n: int, t: int, params: dict | None = None) -> Poly:
    """``prefactor(t) * (F_n(params(t)) o variable_map(t))``.

    Raises:
        PathDegenerate: the source family rejects the path parameters at ``t``.
    """
    p = case.params_with(params)
    pp = case.path.at(t, p)
    try:
        src = case.source(n, pp)
        return compose_affine(src, case.scaling.variable_fn(pp)).scale(case.scaling.prefactor_fn(n, pp))
    except (ValueError, ZeroDivisionError) as exc:
        raise PathDegenerate(t, exc) from exc


def target(case: LimitCase, n: int, params: dict | None = None) -> Poly:
    p = case.params_with(params)
    case.validate(n, p)
    return case.target(n, p)


def _decreasing(seq: Sequence[Fraction]) -> bool:
    """Strictly decreasing, where an exact zero may be followed only by zero."""
    return all(b < a or (a == 0 and b == 0) for a, b in zip(seq, seq[1:]))


def _ratios(seq: Sequence[Fraction]) -> list[Fraction | None]:
    return [b / a if a else None for a, b in zip(seq, seq[1:])]


@dataclass
class ConvergenceReport:
    case_id: str
    n: int
    params: dict
    target_status: str
    ts: list[int]
    errors: list[Fraction]
    cauchy: list[Fraction]
    rate_ratios: list[Fraction | None]
    monotone_from: int
    monotone: bool
    cauchy_certified: bool
    final_error: Fraction
    threshold: Fraction
    rate_ok: bool
    expected_rate: Fraction | None
    target_agrees: bool | None = None
    extrapolation_gap: Fraction | None = None
    flags: list[str] = field(default_factory=list)
    passed: bool = False

    def to_dict(self) -> dict:
        def fr(q):
            return None if q is None else f"{q.numerator}/{q.denominator}"
        return {
            "case": self.case_id,
            "n": self.n,
            "params": {k: "inf" if v is INFINITY else fr(Fraction(v)) for k, v in self.params.items()},
            "target_status": self.target_status,
            "pass": self.passed,
            "monotone_from": self.monotone_from,
            "monotone": self.monotone,
            "cauchy_certified": self.cauchy_certified,
            "final_error": fr(self.final_error),
            "threshold": fr(self.threshold),
            "rate_ok": self.rate_ok,
            "expected_rate": fr(self.expected_rate),
            "target_agrees": self.target_agrees,
            "extrapolation_gap": fr(self.extrapolation_gap),
            "flags": list(self.flags),
            "rows": [
                {"t": t, "error": fr(e), "ratio": fr(r), "cauchy": fr(c)}
                for t, e, r, c in zip(self.ts, self.errors, [None] + self.rate_ratios, self.cauchy + [None])
            ],
        }


def run_convergence(
    case: LimitCase,
    n: int,
    t_range: Iterable[int] | None = None,
    params: dict | None = None,
    threshold: Fraction = DEFAULT_THRESHOLD,
    monotone_from: int = DEFAULT_MONOTONE_FROM,
    extrapolate: bool | None = None,
) -> ConvergenceReport:
    """Evaluate ``case`` along the path and certify convergence to its target.

    A paper-target case passes when the exact errors decrease strictly from
    ``monotone_from`` on, the last error is below ``threshold`` and (if the
    case has an expected rate) the last error ratio is within 10% of it.
    Oracle-target cases pass on Cauchy certification plus a stable
    extrapolation; disagreement with the stated target is flagged instead.
    """
    ts = list(case.default_t_range() if t_range is None else t_range)
    if not ts:
        raise ValueError("empty t range")
    p = case.params_with(params)
    case.validate(n, p)
    tgt = case.target(n, p)
    values = [scaled_source(case, n, t, params) for t in ts]
    errors = [(v - tgt).sup_norm() for v in values]
    cauchy = [(b - a).sup_norm() for a, b in zip(values, values[1:])]
    ratios = _ratios(errors)

    tail = [e for t, e in zip(ts, errors) if t >= monotone_from]
    ctail = [c for t, c in zip(ts, cauchy) if t >= monotone_from]
    monotone = _decreasing(tail)
    cauchy_ok = _decreasing(ctail)
    final = errors[-1]
    flags = []
    rate_ok = True
    if case.expected_rate is not None and final:
        last = ratios[-1]
        rate_ok = last is not None and abs(last - case.expected_rate) <= RATE_TOLERANCE * case.expected_rate
        if not rate_ok:
            flags.append(f"rate ratio {last} not within 10% of {case.expected_rate}")
    if not monotone:
        flags.append(f"errors not strictly decreasing from t={monotone_from}")
    if final >= threshold:
        flags.append(f"final error {float(final):.3e} not below {float(threshold):.1e}")

    report = ConvergenceReport(
        case_id=case.id, n=n, params=p, target_status=case.target_status, ts=ts, errors=errors,
        cauchy=cauchy, rate_ratios=ratios, monotone_from=monotone_from, monotone=monotone,
        cauchy_certified=cauchy_ok, final_error=final, threshold=threshold, rate_ok=rate_ok,
        expected_rate=case.expected_rate, flags=flags,
    )
    if extrapolate is None:
        extrapolate = case.target_status == ORACLE_TARGET
    if extrapolate:
        try:
            limit = _extrapolate(values[-5:], case.expected_rate)
        except CannotExtrapolate as exc:
            report.flags.append(str(exc))
            report.target_agrees = None
        else:
            gap = (limit - tgt).sup_norm() / max(Fraction(1), tgt.sup_norm())
            report.extrapolation_gap = gap
            report.target_agrees = gap < ORACLE_AGREEMENT
            if not report.target_agrees:
                report.flags.append(f"extrapolated limit differs from stated target (relative gap {float(gap):.3e})")
    if case.target_status == PAPER_TARGET:
        report.passed = monotone and final < threshold and rate_ok
    else:
        report.passed = cauchy_ok and report.extrapolation_gap is not None
    return report


#: relative sup-norm gap below which an extrapolated limit counts as matching
ORACLE_AGREEMENT = Fraction(1, 10**6)


def _extrapolate(values: Sequence[Poly], nominal: Fraction | None, levels: int = 3) -> Poly:
    """Richardson extrapolation of a geometrically converging sequence.

    The ratio is estimated from the last two Cauchy differences and must be
    stable (consecutive estimates within 1%).  When it is also within 1% of
    ``nominal`` the exact nominal ratio is used and ``levels`` elimination
    passes (ratios r, r^2, ...) are applied; otherwise a single pass with the
    observed ratio.
    """
    diffs = [(b - a).sup_norm() for a, b in zip(values, values[1:])]
    if not diffs[-1]:
        return values[-1]
    if len(diffs) < 2 or not all(diffs[-2:]):
        raise CannotExtrapolate("need two nonzero consecutive differences to extrapolate")
    if len(diffs) >= 3 and diffs[-3]:
        r1, r2 = diffs[-2] / diffs[-3], diffs[-1] / diffs[-2]
        if abs(r2 - r1) > STABLE_RATIO_TOLERANCE * abs(r1):
            raise CannotExtrapolate(f"ratios not stabilized: {float(r1):.6f}, {float(r2):.6f}")
    r = diffs[-1] / diffs[-2]
    if r >= 1:
        raise CannotExtrapolate(f"sequence is not contracting (ratio {float(r):.4f})")
    if nominal is None or abs(r - nominal) > STABLE_RATIO_TOLERANCE * nominal:
        return (values[-1] - values[-2].scale(r)).scale(1 / (1 - r))
    table = list(values[-(levels + 1):])
    power = nominal
    while len(table) > 1:
        table = [(b - a.scale(power)).scale(1 / (1 - power)) for a, b in zip(table, table[1:])]
        power *= nominal
    return table[0]


def extrapolate_target(
    case: LimitCase, n: int, t_hi: int, params: dict | None = None, levels: int = 3
) -> Poly:
    """Empirical limit of ``scaled_source`` from steps up to ``t_hi``.

    Raises:
        CannotExtrapolate: consecutive ratio estimates differ by more than 1%.
    """
    p = case.params_with(params)
    case.validate(n, p)
    count = max(levels, 2) + 2
    values = [scaled_source(case, n, t, params) for t in range(t_hi - count + 1, t_hi + 1)]
    return _extrapolate(values, case.expected_rate, levels)


def _run_job(job: tuple) -> ConvergenceReport:
    case_id, n, ts, params = job
    return run_convergence(get_case(case_id), n, ts, params)


def run_many(jobs: Sequence[tuple], workers: int = 1) -> list[ConvergenceReport]:
    """Run ``(case_id, n, t_range, params)`` jobs, optionally in worker processes.

    Results come back in job order regardless of completion order.
    """
    jobs = [(cid, n, list(ts), params) for cid, n, ts, params in jobs]
    if workers <= 1:
        return [_run_job(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_job, jobs))
