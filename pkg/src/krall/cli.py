"""Command-line front end.

    krall poly --family laguerre --n 1 --alpha 1
    krall gram --measure lagk --kappa 2 --u 1 --n-max 6
    krall identity --id jaci --draws 20 --n-max 12
    krall limit --case limit1 --kappa 1 --u 1 --n 2 --t 6..20
    krall catalog --format csv
    krall positivity --measure mk --kappa 1 --a 1/2 --c 3/2

Rationals go in and come out as ``"p/q"`` strings.  Exit status is 0 when
every check passes, 1 on a mathematical failure and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Context, Decimal
from fractions import Fraction

from . import __version__
from .arith import format_scalar, parse_scalar
from .classical import dual_hahn, hahn, jacobi, laguerre, meixner
from .identities import IDENTITY_IDS, check_identity, identity_params, random_admissible
from .krall_families import FAMILIES, INFINITY, is_infinite
from .limits import ORACLE_TARGET, catalog, get_case, run_many
from .measures import (
    MEASURE_PARAMS,
    gram_orthogonality_report,
    make_paper_measure,
    paper_family,
    positivity_check,
    positivity_window,
)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

DEFAULT_SEED = 20240611
SEED_ENV = "KRALL_SEED"

PARAM_NAMES = ("a", "b", "c", "alpha", "beta", "kappa", "sigma", "u", "v", "N", "s")
WEIGHT_PARAMS = {"u", "v"}
INTEGER_PARAMS = {"kappa", "sigma"}

POLY_FAMILIES = {
    "meixner": (meixner, ("a", "c")),
    "laguerre": (laguerre, ("alpha",)),
    "jacobi": (jacobi, ("alpha", "beta")),
    "hahn": (hahn, ("a", "b", "N")),
    "dual_hahn": (dual_hahn, ("a", "b", "N")),
    "krall_laguerre": (FAMILIES["krall_laguerre"], ("kappa", "u")),
    "krall_meixner_I": (FAMILIES["krall_meixner_I"], ("a", "c", "kappa")),
    "krall_meixner_II": (FAMILIES["krall_meixner_II"], ("a", "c", "kappa")),
    "krall_jacobi_I": (FAMILIES["krall_jacobi_I"], ("alpha", "kappa", "u")),
    "krall_jacobi_II": (FAMILIES["krall_jacobi_II"], ("kappa", "sigma", "u", "v")),
    "krall_hahn_I": (FAMILIES["krall_hahn_I"], ("a", "b", "N", "kappa")),
    "krall_hahn_II": (FAMILIES["krall_hahn_II"], ("a", "b", "N", "kappa", "sigma")),
}

#: CSV header per verb; headers are always written
CSV_COLUMNS = {
    "poly": ("power", "coefficient", "approx"),
    "gram": ("i", "j", "value", "approx"),
    "identity": ("identity", "n", "pass", "params"),
    "limit": ("case", "n", "t", "error_numerator", "error_denominator", "ratio", "approx", "pass"),
    "catalog": ("id", "target_status", "source", "path", "variable_map", "prefactor", "target", "anchor"),
    "positivity": ("measure", "pass", "window_violation", "witness_x", "witness_weight"),
}

_APPROX = Context(prec=12, rounding=ROUND_HALF_EVEN)


class UsageError(ValueError):
    pass


def approx(q: Fraction | None) -> str | None:
    """Decimal rendering with 12 significant digits, round-half-even."""
    if q is None:
        return None
    if not q:
        return "0"
    return f"{_APPROX.divide(Decimal(q.numerator), Decimal(q.denominator)):.11e}"


def _fr(q: Fraction | None) -> str | None:
    return None if q is None else format_scalar(q)


def show_param(v) -> str:
    if v is INFINITY:
        return "inf"
    return format_scalar(Fraction(v))


def _shown(params: dict) -> dict:
    return {k: show_param(v) for k, v in params.items()}


def _flag(ok: bool) -> str:
    return "true" if ok else "false"


def parse_param(name: str, text: str):
    if name in WEIGHT_PARAMS and is_infinite(text):
        return INFINITY
    value = parse_scalar(text)
    if name in INTEGER_PARAMS:
        if value.denominator != 1 or value < 1:
            raise UsageError(f"--{name} must be a positive integer, got {text}")
        return int(value)
    return value


def parse_int_range(text: str) -> list[int]:
    """``"6..20"`` (inclusive) or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise UsageError(f"empty range {text!r}")
            return list(range(lo, hi + 1))
        return [int(text)]
    except ValueError as exc:
        if isinstance(exc, UsageError):
            raise
        raise UsageError(f"not an integer or range lo..hi: {text!r}") from None


@dataclass
class Command:
    verb: str
    selector: str | None = None
    params: dict = field(default_factory=dict)
    n: list[int] | None = None
    n_max: int | None = None
    t_range: list[int] | None = None
    fmt: str = "json"
    output: str | None = None
    jobs: int = 1
    draws: int = 20
    samples: int = 50
    override: bool = False
    identities: list[str] | None = None


def _given_params(ns: argparse.Namespace) -> dict:
    out = {}
    for name in PARAM_NAMES:
        text = getattr(ns, name, None)
        if text is not None:
            out[name] = parse_param(name, text)
    return out


def _require_params(needed, params: dict, what: str) -> None:
    missing = [k for k in needed if k not in params]
    if missing:
        raise UsageError(f"{what} needs {', '.join('--' + k for k in missing)}")
    extra = sorted(set(params) - set(needed))
    if extra:
        raise UsageError(f"{what} does not take {', '.join('--' + k for k in extra)}")


def _seed() -> int:
    text = os.environ.get(SEED_ENV)
    if text is None:
        return DEFAULT_SEED
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {text!r}") from None


# -- verbs ---------------------------------------------------------------

def _poly(cmd: Command):
    fn, names = POLY_FAMILIES[cmd.selector]
    _require_params(names, cmd.params, f"family {cmd.selector}")
    if cmd.n is None or len(cmd.n) != 1 or cmd.n[0] < 0:
        raise UsageError("poly needs a single nonnegative --n")
    n = cmd.n[0]
    p = fn(n, *(cmd.params[k] for k in names))
    coeffs = list(p.coeffs)
    result = {
        "family": cmd.selector,
        "n": n,
        "params": _shown(cmd.params),
        "coefficients": [format_scalar(c) for c in coeffs],
        "approx": [approx(c) for c in coeffs],
    }
    rows = [(i, format_scalar(c), approx(c)) for i, c in enumerate(coeffs)]
    return EXIT_PASS, result, rows


def _measure_params(cmd: Command) -> dict:
    _require_params(MEASURE_PARAMS[cmd.selector], cmd.params, f"measure {cmd.selector}")
    return cmd.params


def _gram(cmd: Command):
    params = _measure_params(cmd)
    if cmd.n_max is None or cmd.n_max < 0:
        raise UsageError("gram needs a nonnegative --n-max")
    m = make_paper_measure(cmd.selector, params, override=cmd.override)
    report = gram_orthogonality_report(m, paper_family(cmd.selector, params), cmd.n_max)
    result = {"measure": cmd.selector, "params": _shown(params), "pass": report.passed}
    result.update(report.to_dict())
    rows = [
        (i, j, format_scalar(v), approx(v))
        for i, row in enumerate(report.matrix)
        for j, v in enumerate(row)
    ]
    return (EXIT_PASS if report.passed else EXIT_FAIL), result, rows


def _identity(cmd: Command):
    seed = _seed()
    ids = cmd.identities or list(IDENTITY_IDS)
    n_hi = 12 if cmd.n_max is None else cmd.n_max
    entries, rows = [], []
    for ident in ids:
        if cmd.params:
            # one explicit check per requested n
            _require_params(identity_params(ident), cmd.params, f"identity {ident}")
            draws = [(n, dict(cmd.params)) for n in (cmd.n or [n_hi])]
        else:
            rng = random.Random(f"{seed}:{ident}")
            draws = []
            for _ in range(cmd.draws):
                n = rng.randint(0, n_hi)
                draws.append((n, random_admissible(ident, rng, n)))
        checks = []
        for n, params in draws:
            ok = check_identity(ident, params, n)
            shown = _shown(params)
            checks.append({"n": n, "params": shown, "pass": ok})
            rows.append((ident, n, _flag(ok), ";".join(f"{k}={v}" for k, v in shown.items())))
        entries.append({"identity": ident, "pass": all(c["pass"] for c in checks), "checks": checks})
    ok = all(e["pass"] for e in entries)
    return (EXIT_PASS if ok else EXIT_FAIL), {"pass": ok, "identities": entries}, rows


def _limit(cmd: Command):
    if cmd.selector == "all":
        cases = catalog()
    else:
        cases = [get_case(cmd.selector)]
    jobs = []
    for case in cases:
        overrides = {k: v for k, v in cmd.params.items() if k in case.defaults}
        if cmd.selector != "all":
            unknown = sorted(set(cmd.params) - set(case.defaults))
            if unknown:
                raise UsageError(f"case {case.id} has no parameter(s) {', '.join(unknown)}; known: {sorted(case.defaults)}")
        full = case.params_with(overrides)
        ns = cmd.n if cmd.n is not None else [case.n_min]
        for n in ns:
            if cmd.selector == "all" and n < case.n_min:
                continue
            case.validate(n, full)
            ts = cmd.t_range if cmd.t_range is not None else list(case.default_t_range())
            jobs.append((case.id, n, ts, overrides))
    reports = run_many(jobs, workers=cmd.jobs)
    entries, rows = [], []
    for r in reports:
        d = r.to_dict()
        for row in d["rows"]:
            q = Fraction(row["error"])
            row["approx"] = approx(q)
        entries.append(d)
        for t, e, ratio in zip(r.ts, r.errors, [None] + r.rate_ratios):
            rows.append((r.case_id, r.n, t, e.numerator, e.denominator, _fr(ratio) or "", approx(e), _flag(r.passed)))
    ok = all(r.passed for r in reports)
    flagged = [r.case_id for r in reports if r.target_status == ORACLE_TARGET and r.target_agrees is False]
    result = {"pass": ok, "flagged": flagged, "reports": entries}
    return (EXIT_PASS if ok else EXIT_FAIL), result, rows


def _catalog(cmd: Command):
    cases = [c.describe() for c in catalog()]
    rows = [
        (c["id"], c["target_status"], c["source"], c["path"], c["variable_map"], c["prefactor"], c["target"], c["anchor"])
        for c in cases
    ]
    return EXIT_PASS, {"cases": cases}, rows


def _positivity(cmd: Command):
    params = _measure_params(cmd)
    if cmd.samples < 1:
        raise UsageError("--samples must be positive")
    m = make_paper_measure(cmd.selector, params, override=True)
    ok, witness = positivity_check(m, cmd.samples)
    violated = positivity_window(cmd.selector, params)
    result = {
        "measure": cmd.selector,
        "params": _shown(params),
        "pass": ok,
        "window_violation": violated,
        "witness": witness,
    }
    w = witness or {}
    rows = [(cmd.selector, _flag(ok), violated or "", w.get("x") or "", w.get("weight") or "")]
    return (EXIT_PASS if ok else EXIT_FAIL), result, rows


VERBS = {
    "poly": _poly,
    "gram": _gram,
    "identity": _identity,
    "limit": _limit,
    "catalog": _catalog,
    "positivity": _positivity,
}


def dispatch(cmd: Command) -> tuple[int, str]:
    """Run ``cmd`` and serialize its report; returns ``(exit status, text)``."""
    status, result, rows = VERBS[cmd.verb](cmd)
    if cmd.fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS[cmd.verb])
        writer.writerows(rows)
        return status, buf.getvalue()
    doc = {
        "meta": {"tool": "krall", "version": __version__, "verb": cmd.verb, "seed": _seed()},
        "result": result,
    }
    return status, json.dumps(doc, indent=2) + "\n"


# -- argument parsing ----------------------------------------------------

def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
    p.add_argument("--output", "-o", help="write here instead of stdout")


def _add_params(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("parameters (exact rationals such as 1/2; u, v also accept inf)")
    for name in PARAM_NAMES:
        g.add_argument(f"--{name}", metavar="Q")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="krall", description="Exact Krall polynomial checks.")
    parser.add_argument("--version", action="version", version=f"krall {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("poly", help="coefficients of one polynomial")
    p.add_argument("--family", required=True, choices=sorted(POLY_FAMILIES))
    p.add_argument("--n", required=True)
    _add_params(p)
    _add_common(p)

    p = sub.add_parser("gram", help="exact Gram matrix of a Krall family against its measure")
    p.add_argument("--measure", required=True, choices=sorted(MEASURE_PARAMS))
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--override", action="store_true", help="allow parameters outside the positivity window")
    _add_params(p)
    _add_common(p)

    p = sub.add_parser("identity", help="polynomial identity suite")
    p.add_argument("--id", dest="identities", action="append", choices=IDENTITY_IDS)
    p.add_argument("--draws", type=int, default=20, help="random draws per identity (seed from $KRALL_SEED)")
    p.add_argument("--n-max", type=int, default=None, help="largest degree drawn (default 12)")
    p.add_argument("--n", help="degree(s) for an explicit parameter check, e.g. 3 or 0..5")
    _add_params(p)
    _add_common(p)

    p = sub.add_parser("limit", help="convergence report for catalog limits")
    p.add_argument("--case", required=True, choices=sorted([c.id for c in catalog()] + ["all"]))
    p.add_argument("--n", help="degree or range, e.g. 2 or 0..3")
    p.add_argument("--t", dest="t_range", help="step range, e.g. 6..20")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    _add_params(p)
    _add_common(p)

    p = sub.add_parser("catalog", help="list the built-in limit cases")
    _add_common(p)

    p = sub.add_parser("positivity", help="scan a measure for negative weights")
    p.add_argument("--measure", required=True, choices=sorted(MEASURE_PARAMS))
    p.add_argument("--samples", type=int, default=50)
    _add_params(p)
    _add_common(p)
    return parser


def command_from_args(ns: argparse.Namespace) -> Command:
    cmd = Command(verb=ns.verb, fmt=ns.fmt, output=ns.output)
    if ns.verb == "catalog":
        return cmd
    cmd.params = _given_params(ns)
    cmd.selector = getattr(ns, "family", None) or getattr(ns, "measure", None) or getattr(ns, "case", None)
    if getattr(ns, "n", None) is not None:
        cmd.n = parse_int_range(ns.n)
    cmd.n_max = getattr(ns, "n_max", None)
    if getattr(ns, "t_range", None) is not None:
        cmd.t_range = parse_int_range(ns.t_range)
    cmd.jobs = max(1, getattr(ns, "jobs", 1))
    cmd.draws = getattr(ns, "draws", 20)
    cmd.samples = getattr(ns, "samples", 50)
    cmd.override = getattr(ns, "override", False)
    cmd.identities = getattr(ns, "identities", None)
    return cmd


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cmd = command_from_args(ns)
        status, text = dispatch(cmd)
    except (ValueError, KeyError, ZeroDivisionError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"krall {ns.verb}: error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    if cmd.output:
        with open(cmd.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
