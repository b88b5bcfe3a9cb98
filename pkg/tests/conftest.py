import os
from fractions import Fraction

import sympy as sp
from hypothesis import HealthCheck, settings, strategies as st

from krall.arith import Poly

settings.register_profile(
    "krall",
    max_examples=40,
    deadline=None,
    derandomize="KRALL_SEED" not in os.environ,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("krall")

SEED = int(os.environ.get("KRALL_SEED", "20240611"))

x_sym = sp.Symbol("x")


def rationals(bound=20, nonzero=False):
    s = st.builds(Fraction, st.integers(-bound, bound), st.integers(1, bound))
    return s.filter(bool) if nonzero else s


def polys(max_degree=4, bound=9):
    return st.lists(rationals(bound), max_size=max_degree + 1).map(Poly)


def from_sympy(expr) -> Poly:
    """Independent oracle bridge: expanded sympy expression in x -> Poly."""
    expr = sp.expand(expr)
    if expr == 0:
        return Poly()
    coeffs = sp.Poly(expr, x_sym).all_coeffs()[::-1]
    return Poly(Fraction(int(sp.fraction(c)[0]), int(sp.fraction(c)[1])) for c in coeffs)


def to_sympy(p: Poly):
    return sum((sp.Rational(c.numerator, c.denominator) * x_sym**i for i, c in enumerate(p.coeffs)), sp.Integer(0))


def Q(q) -> sp.Rational:
    q = Fraction(q)
    return sp.Rational(q.numerator, q.denominator)


#: (criterion, passed, detail) lines collected by the acceptance module
ACCEPTANCE: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
