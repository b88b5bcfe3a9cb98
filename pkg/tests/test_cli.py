import json
import re
from fractions import Fraction
from pathlib import Path

import jsonschema
import pytest

from krall import cli
from krall.arith import X

SCHEMA = json.loads((Path(__file__).resolve().parents[1] / "docs" / "schema.json").read_text())
RATIONAL = re.compile(r"^-?\d+/\d+$")


def run(capsys, *argv):
    status = cli.main(list(argv))
    out = capsys.readouterr()
    return status, out.out, out.err


def run_json(capsys, *argv):
    status, out, _ = run(capsys, *argv)
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    return status, doc


def _strings(obj):
    if isinstance(obj, str):
        yield obj
    elif isinstance(obj, dict):
        for v in obj.values():
            yield from _strings(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from _strings(v)


def test_poly_examples(capsys):
    status, doc = run_json(capsys, "poly", "--family", "laguerre", "--n", "1", "--alpha", "1")
    assert status == 0 and doc["result"]["coefficients"] == ["2/1", "-1/1"]
    status, doc = run_json(capsys, "poly", "--family", "meixner", "--n", "0", "--a", "1/2", "--c", "3")
    assert status == 0 and doc["result"]["coefficients"] == ["1/1"]


def test_limit_example(capsys):
    status, doc = run_json(capsys, "limit", "--case", "limit1", "--kappa", "1", "--u", "1", "--n", "2", "--t", "6..20")
    assert status == 0 and doc["result"]["pass"] is True
    rows = doc["result"]["reports"][0]["rows"]
    assert [r["t"] for r in rows] == list(range(6, 21))


def test_failed_paper_limit_exits_one(capsys):
    status, doc = run_json(capsys, "limit", "--case", "blmel", "--n", "2", "--t", "1..6")
    assert status == 1 and doc["result"]["pass"] is False


def test_catalog_lists_anchors(capsys):
    status, doc = run_json(capsys, "catalog")
    cases = doc["result"]["cases"]
    assert status == 0 and len(cases) >= 19 and all(c["anchor"] for c in cases)


def test_gram_exit_codes(capsys, monkeypatch):
    status, doc = run_json(capsys, "gram", "--measure", "lagk", "--kappa", "2", "--u", "1", "--n-max", "4")
    assert status == 0 and doc["result"]["off_diagonal_zero"]
    # a family that is not orthogonal: exact nonzero off-diagonal entries
    monkeypatch.setattr(cli, "paper_family", lambda mid, params: lambda n: X**n)
    status, doc = run_json(capsys, "gram", "--measure", "lagk", "--kappa", "2", "--u", "1", "--n-max", "3")
    assert status == 1 and not doc["result"]["off_diagonal_zero"]


def test_positivity_exit_codes(capsys):
    status, doc = run_json(capsys, "positivity", "--measure", "mk", "--kappa", "1", "--a", "1/2", "--c", "3")
    assert status == 0 and doc["result"]["witness"] is None
    status, doc = run_json(capsys, "positivity", "--measure", "mk", "--kappa", "1", "--a", "1/2", "--c", "3/2")
    assert status == 1 and doc["result"]["witness"]["x"] is not None


def test_identity_suite(capsys):
    status, doc = run_json(capsys, "identity", "--id", "lth", "--id", "jaci", "--draws", "3")
    assert status == 0
    assert [e["identity"] for e in doc["result"]["identities"]] == ["lth", "jaci"]
    status, doc = run_json(capsys, "identity", "--id", "Lagder2", "--alpha", "2", "--beta", "2", "--n", "3")
    assert status == 0 and doc["result"]["identities"][0]["checks"][0]["params"] == {"alpha": "2/1", "beta": "2/1"}


@pytest.mark.parametrize("argv", [
    ["poly", "--family", "meixner", "--n", "1", "--a", "1", "--c", "3"],
    ["poly", "--family", "laguerre", "--n", "1"],
    ["poly", "--family", "laguerre", "--n", "1", "--alpha", "0.1.2"],
    ["gram", "--measure", "mk", "--kappa", "1", "--a", "1/2", "--c", "3/2", "--n-max", "3"],
    ["limit", "--case", "lemma34", "--n", "0"],
    ["limit", "--case", "blmel", "--kappa", "2"],
    ["limit", "--case", "blmel", "--t", "9..3"],
])
def test_usage_errors_exit_two(capsys, argv):
    assert cli.main(argv) == 2
    assert "error" in capsys.readouterr().err


def test_argparse_rejects_unknown_selector():
    with pytest.raises(SystemExit) as info:
        cli.main(["gram", "--measure", "nope", "--n-max", "2"])
    assert info.value.code == 2


def test_determinism_and_round_trip(capsys):
    argv = ["limit", "--case", "lemma33_case2", "--n", "1..2", "--t", "6..14"]
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv, "--jobs", "2")[1]
    assert first == second
    doc = json.loads(first)
    for s in _strings(doc):
        if RATIONAL.match(s):
            q = Fraction(s)
            assert f"{q.numerator}/{q.denominator}" == s


def test_seed_is_recorded(capsys, monkeypatch):
    monkeypatch.setenv("KRALL_SEED", "7")
    _, a = run_json(capsys, "identity", "--id", "f1lag", "--draws", "4")
    _, b = run_json(capsys, "identity", "--id", "f1lag", "--draws", "4")
    assert a == b and a["meta"]["seed"] == 7
    monkeypatch.setenv("KRALL_SEED", "8")
    _, c = run_json(capsys, "identity", "--id", "f1lag", "--draws", "4")
    assert c["meta"]["seed"] == 8 and c["result"] != a["result"]


def test_csv_output(tmp_path, capsys):
    out = tmp_path / "l.csv"
    status = cli.main(["limit", "--case", "blmel", "--n", "1", "--alpha", "0", "--t", "1..4", "--format", "csv", "-o", str(out)])
    raw = out.read_bytes()
    assert status == 1  # four steps cannot reach the 1e-3 threshold
    assert b"\r" not in raw
    lines = raw.decode().splitlines()
    assert lines[0] == ",".join(cli.CSV_COLUMNS["limit"])
    # error(t) = 2^-t on this case
    assert lines[1].split(",")[3:5] == ["1", "2"]


@pytest.mark.parametrize("verb", ["catalog", "positivity"])
def test_csv_header_always_written(capsys, verb):
    argv = [verb, "--format", "csv"]
    if verb == "positivity":
        argv += ["--measure", "hw", "--a", "0", "--b", "0", "--N", "2"]
    _, out, _ = run(capsys, *argv)
    assert out.splitlines()[0] == ",".join(cli.CSV_COLUMNS[verb])


def test_approx_field():
    assert cli.approx(Fraction(1, 3)) == "3.33333333333e-1"
    assert cli.approx(Fraction(2, 3)) == "6.66666666667e-1"
    # exact tie at the 13th digit rounds to even
    assert cli.approx(Fraction(1000000000005, 10**12)) == "1.00000000000e+0"
    assert cli.approx(Fraction(0)) == "0"
