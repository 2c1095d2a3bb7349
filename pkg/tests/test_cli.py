import csv
import io
import json
from fractions import Fraction

import pytest

from groupcensus import verify
from groupcensus.cli import main
from groupcensus.formulas import count_groups
from groupcensus.verify import VerificationCase, VerificationReport


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_count_basic(capsys):
    code, out, _ = run(capsys, "count", "60")
    assert code == 0
    assert "N(60) = 13" in out
    code, out, _ = run(capsys, "count", "1")
    assert code == 0
    assert "N(1) = 1" in out


def test_count_unsupported_exit_2(capsys):
    code, _, err = run(capsys, "count", "360")
    assert code == 2
    assert "unsupported: 6 prime factors" in err


def test_count_rejects_nonpositive(capsys):
    code, _, err = run(capsys, "count", "0")
    assert code == 2
    code, _, err = run(capsys, "count", "-5")
    assert code == 2


def test_count_json_round_trip(capsys):
    code, out, _ = run(capsys, "count", "56", "--json")
    assert code == 0
    payload = json.loads(out)
    gc = count_groups(56)
    assert payload["n"] == gc.n
    assert payload["shape"] == gc.shape.value
    assert payload["count"] == gc.count
    assert payload["special_case"] == gc.special_case
    rebuilt = [(t["label"], Fraction(t["value"])) for t in payload["terms"]]
    assert tuple(rebuilt) == gc.terms


def test_count_explain_sums(capsys):
    code, out, _ = run(capsys, "count", "294", "--explain")
    assert code == 0
    lines = [line for line in out.splitlines() if "=" in line]
    values = []
    for line in lines:
        left, _, right = line.rpartition("=")
        if left.strip() == "total":
            continue
        if line.startswith("  "):
            values.append(Fraction(right.strip()))
    assert sum(values) == 23


def test_explain_invariant_to_2000():
    for n in range(1, 2001):
        try:
            gc = count_groups(n)
        except Exception:
            continue
        assert sum((v for _, v in gc.terms), Fraction(0)) == gc.count, n


def test_range_rows(capsys):
    code, out, _ = run(capsys, "range", "1", "16")
    assert code == 0
    lines = out.splitlines()
    by_n = {}
    for line in lines:
        parts = line.split()
        if parts and parts[0].isdigit():
            by_n[int(parts[0])] = int(parts[2])
    assert by_n[12] == 5
    assert by_n[16] == 14
    assert len(by_n) == 16


def test_range_single(capsys):
    code, out, _ = run(capsys, "range", "5", "5")
    assert code == 0
    assert out.split()[:3] == ["5", "p", "1"]


def test_range_invalid_exit_2(capsys):
    code, _, err = run(capsys, "range", "2", "1")
    assert code == 2
    code, _, err = run(capsys, "range", "0", "4")
    assert code == 2


def test_range_reports_unsupported(capsys):
    _, out, _ = run(capsys, "range", "360", "360")
    assert "unsupported orders: 360" in out
    _, out, _ = run(capsys, "range", "360", "360", "--skip-unsupported")
    assert "unsupported" not in out


def test_range_csv_header(capsys):
    code, out, _ = run(capsys, "range", "10", "12", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "shape", "count", "special_case"]
    assert rows[1] == ["10", "p*q", "2", "False"]
    assert rows[3] == ["12", "p^2*q", "5", "False"]


def test_table_alias_is_csv(capsys):
    code, out, _ = run(capsys, "table", "24", "24")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "shape", "count", "special_case"]
    assert rows[1] == ["24", "p^3*q", "15", "True"]


def test_range_json_round_trip(capsys):
    code, out, _ = run(capsys, "range", "58", "64", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    ns = [row["n"] for row in payload["rows"]]
    assert ns == [58, 59, 60, 61, 62, 63]
    assert payload["unsupported"] == [64]
    assert payload["rows"][2]["count"] == 13


def test_verify_quick_suite(capsys):
    code, out, _ = run(capsys, "verify", "paper-values")
    assert code == 0
    assert "13/13 passed" in out


def test_verify_json_round_trip(capsys):
    code, out, _ = run(capsys, "verify", "identity", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["suite"] == "identity"
    assert payload["total"] == 300
    assert payload["failed"] == 0
    assert len(payload["cases"]) == 300
    assert all(case["pass"] for case in payload["cases"])


def test_verify_unknown_suite(capsys):
    with pytest.raises(SystemExit):
        main(["verify", "nonsense"])


def test_verify_failure_exit_1(capsys, monkeypatch):
    def fake(name):
        case = VerificationCase("forced failure", 1, 2, False)
        return VerificationReport(name, (case,), 0.0)

    monkeypatch.setitem(verify._SUITES, "identity", lambda: fake("identity").cases)
    code, out, _ = run(capsys, "verify", "identity")
    assert code == 1
    assert "FAIL forced failure" in out


def test_oracle_gl(capsys):
    code, out, _ = run(capsys, "oracle", "gl", "-d", "2", "-p", "7", "-r", "3")
    assert code == 0
    assert out.strip() == "3"


def test_oracle_gl_witnesses(capsys):
    code, out, _ = run(capsys, "oracle", "gl", "-d", "3", "-p", "2", "-r", "7",
                       "--witnesses")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "1"
    assert lines[1].startswith("class 1:")


def test_oracle_gl_cap_exit_3(capsys):
    code, _, err = run(capsys, "oracle", "gl", "-d", "3", "-p", "7", "-r", "2",
                       "--allow-heavy")
    assert code == 3
    assert "heavy cap" in err


def test_oracle_gl_free_cap_exit_3(capsys):
    code, _, err = run(capsys, "oracle", "gl", "-d", "2", "-p", "19", "-r", "2")
    assert code == 3
    assert "allow-heavy" in err


def test_oracle_cayley(capsys):
    code, out, _ = run(capsys, "oracle", "cayley", "-n", "8")
    assert code == 0
    assert out.strip() == "5"


def test_oracle_cayley_witnesses(capsys):
    code, out, _ = run(capsys, "oracle", "cayley", "-n", "4", "--witnesses")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "2"
    assert lines[1] == "class 1:"
    assert len(lines) == 1 + 2 * 5


def test_oracle_cayley_cap_exit_3(capsys):
    code, _, err = run(capsys, "oracle", "cayley", "-n", "16")
    assert code == 3
    code, _, err = run(capsys, "oracle", "cayley", "-n", "25", "--allow-heavy")
    assert code == 3


def test_usage_error_exit_2():
    with pytest.raises(SystemExit) as info:
        main(["count"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["bogus"])
    assert info.value.code == 2
