import csv
import io
import json
import math
import os
import subprocess
from pathlib import Path

import pytest

CLI = os.environ.get("QGAUSS_CLI") or str(Path(__file__).resolve().parents[2] / "build" / "tools" / "qgauss")


def run(*args, check=None):
    p = subprocess.run([CLI, *args], capture_output=True)
    if check is not None:
        assert p.returncode == check, p.stderr.decode()
    return p


def rows(out):
    return list(csv.DictReader(io.StringIO(out.decode())))


def alpha(q):
    return (2 * -math.log(q) / math.pi) ** 0.25


def qpoch(q, n):
    return math.prod(1 - q**j for j in range(1, n + 1))


def close(a, b, tol=1e-14):
    return abs(a - b) <= tol * max(1.0, abs(b))


def test_coeffs_dg_ground_state():
    r = rows(run("coeffs", "--family", "dg", "--q", "0.5", "--n", "0", "--format", "csv", check=0).stdout)
    assert len(r) == 1
    assert close(float(r[0]["coefficient"]), alpha(0.5))
    assert close(float(r[0]["c"]), math.sqrt(math.log(2)))


def test_coeffs_dg_first():
    r = rows(run("coeffs", "--family", "dg", "--q", "0.5", "--n", "1", "--format", "csv", check=0).stdout)
    scale = alpha(0.5) / math.sqrt(qpoch(0.5, 1))
    assert close(float(r[0]["coefficient"]), scale * 0.5**0.5)
    assert close(float(r[1]["coefficient"]), -scale)
    assert [float(x["center"]) for x in r] == [0.0, 1.0]


def test_coeffs_mac_first():
    j = json.loads(run("coeffs", "--family", "mac", "--q", "0.5", "--n", "1", check=0).stdout)
    assert j["schema"] == "qgauss/1"
    assert close(j["E"][0], 1.0) and close(j["E"][1], -math.sqrt(2))
    zeta = alpha(0.5) / math.sqrt(qpoch(0.5, 1))
    assert close(j["zeta"], zeta)
    assert close(j["rows"][1]["coefficient"], -math.sqrt(2) * zeta)


def test_eval_examples():
    r = rows(run("eval", "--family", "dg", "--n", "0", "--q", "0.5", "--grid", "-3:3:7", "--format", "csv", check=0).stdout)
    assert len(r) == 7
    assert close(float(r[3]["value"]), alpha(0.5))
    r = rows(run("eval", "--family", "dg", "--n", "1", "--q", "0.5", "--grid", "0:0:1", "--format", "csv", check=0).stdout)
    unit = math.sqrt(math.pi / (2 * math.log(2)))
    norm = math.sqrt(unit) * 0.5**-0.5 * math.sqrt(qpoch(0.5, 1))
    assert close(float(r[0]["value"]), (1 - math.sqrt(0.5)) / norm)


def test_eval_mac_matches_direct_sum():
    q, n = 0.5, 2
    r = rows(run("eval", "--family", "mac", "--n", "2", "--q", "0.5", "--grid", "-1:2:4", "--format", "csv", check=0).stdout)
    zeta = alpha(q) * q ** (n * (n - 1) / 4) / math.sqrt(qpoch(q, n))
    binom = [1.0, (1 - q**2) / (1 - q), 1.0]
    for row in r:
        x = float(row["x"])
        want = zeta * sum((-1) ** k * binom[k] * q ** (-n * k + k / 2) * q ** ((x - k) ** 2) for k in range(n + 1))
        assert close(float(row["value"]), want, 1e-13)


def test_csv_uses_crlf_and_scientific_format():
    out = run("eval", "--family", "dg", "--n", "0", "--q", "0.5", "--grid", "0:1:2", "--format", "csv", check=0).stdout
    assert out.endswith(b"\r\n")
    assert out.count(b"\r\n") == 3
    assert b"e+00" in out or b"e-01" in out


def test_determinism():
    for args in (
        ("verify", "--suite", "commutators", "--q", "0.5"),
        ("verify", "--suite", "gamma", "--q", "0.5"),
        ("gram", "--family", "mac", "--q", "0.9", "--nmax", "6"),
        ("weights", "--q", "0.5", "--count", "3", "--format", "csv"),
        ("limit", "--family", "dg", "--n", "2", "--format", "csv"),
    ):
        a = run(*args)
        b = run(*args)
        assert a.returncode == b.returncode
        assert a.stdout == b.stdout and a.stdout


def test_verify_exit_codes():
    p = run("verify", "--suite", "dg-gram", "--q", "0.5", "--nmax", "12", check=0)
    j = json.loads(p.stdout)
    assert j["passed"] is True
    assert all(c["value"] <= 1e-10 for c in j["checks"])
    p = run("verify", "--suite", "poisson", "--c", "1", check=0)
    assert all(c["value"] <= 1e-12 for c in json.loads(p.stdout)["checks"])


def test_verify_reports_insufficient_precision():
    p = run("verify", "--suite", "mac-gram", "--q", "0.5", "--nmax", "12", "--digits", "8")
    assert p.returncode != 0
    j = json.loads(p.stdout)
    assert j["passed"] is False
    assert "cancellation_budget" in j["details"]
    failing = [c for c in j["checks"] if not c["passed"]]
    assert failing and all(c.get("where") for c in failing)


def test_report_written_to_file(tmp_path):
    out = tmp_path / "report.json"
    run("verify", "--suite", "sumrule", "--q", "0.5", "--out", str(out), check=0)
    assert json.loads(out.read_text())["suite"] == "sumrule"


@pytest.mark.parametrize(
    "args",
    [
        ("coeffs", "--family", "dg", "--n", "1"),
        ("coeffs", "--family", "dg", "--q", "0.5", "--c", "1", "--n", "1"),
        ("coeffs", "--family", "xx", "--q", "0.5", "--n", "1"),
        ("eval", "--family", "dg", "--n", "0", "--q", "0.5", "--grid", "1:0:0"),
        ("verify", "--suite", "nope", "--q", "0.5"),
    ],
)
def test_usage_errors_exit_nonzero(args):
    p = run(*args)
    assert p.returncode not in (0, 1)
    assert p.stderr


def test_unwritable_path():
    p = run("coeffs", "--family", "dg", "--q", "0.5", "--n", "1", "--out", "/nonexistent/dir/x.json")
    assert p.returncode != 0
