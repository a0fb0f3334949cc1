import csv
import io
import json
import subprocess
import sys

import pytest

from digitfractal.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows_of(text):
    body = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(body))))


def test_analyze_cantor(capsys):
    code, out, _ = run(capsys, "analyze", "--q", "3", "--digits", "0,2", "--no-meta")
    assert code == 0
    fields = {r["field"]: r["value"] for r in rows_of(out)}
    assert fields["image_of_one"] == "101"
    assert fields["mahler_eigenvalue"] == "2"
    assert fields["characteristic_polynomial"] == "λ - 2"
    assert fields["mahler_equation"] == "M(z) - (1 + z^2)M(z^3) = 0"
    assert float(fields["dimension_log_q_m"]) == pytest.approx(0.6309297536, abs=1e-10)
    assert fields["dimension_log_q_m"] == fields["dimension_log_q_eigenvalue"]
    assert fields["routes_agree"] == "true"


def test_analyze_full_binary_json(capsys):
    code, out, _ = run(capsys, "analyze", "--q", "2", "--digits", "0,1", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    fields = {r["field"]: r["value"] for r in doc["rows"]}
    assert float(fields["dimension_log_q_m"]) == 1.0
    assert fields["mahler_eigenvalue"] == "2"
    assert doc["meta"]["q"] == 2 and doc["meta"]["digits"] == [0, 1]
    assert "timestamp" in doc["meta"]


def test_analyze_missing_zero(capsys):
    code, _, err = run(capsys, "analyze", "--q", "3", "--digits", "1,2")
    assert code == 2
    assert "MissingZero" in err


def test_bad_digit_syntax_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["analyze", "--q", "3", "--digits", "0,x"])
    assert exc.value.code == 2


def test_sequence_figure(capsys):
    code, out, _ = run(capsys, "sequence", "--q", "3", "--digits", "0,2", "--k", "3")
    assert code == 0
    assert out == "101000101000000000101000101\n"
    _, out, _ = run(capsys, "sequence", "--q", "3", "--digits", "0,2", "--k", "0")
    assert out == "1\n"


@pytest.mark.parametrize("q, digits, k", [(3, "0,2", 6), (4, "0,1,3", 5), (10, "0,2,5,8", 4), (7, "0", 4)])
def test_sequence_oracle_flag_identical(capsys, q, digits, k):
    _, a, _ = run(capsys, "sequence", "--q", str(q), "--digits", digits, "--k", str(k))
    _, b, _ = run(capsys, "sequence", "--q", str(q), "--digits", digits, "--k", str(k), "--oracle")
    assert a == b and len(a) == q**k + 1


def test_sequence_budget_exit_3(capsys):
    code, _, err = run(capsys, "sequence", "--q", "3", "--digits", "0,2", "--k", "10", "--budget", "1000")
    assert code == 3 and "BudgetExceeded" in err


def test_sequence_json(capsys):
    _, out, _ = run(capsys, "sequence", "--q", "3", "--digits", "0,2", "--k", "2", "--format", "json", "--no-meta")
    assert json.loads(out) == {"rows": [{"k": 2, "word": "101000101"}]}


def test_fourier_table(capsys, tmp_path):
    path = tmp_path / "f.csv"
    code, out, _ = run(
        capsys, "fourier", "--q", "3", "--digits", "0,2", "--k", "8", "--L", "45",
        "--n-min", "-50", "--n-max", "50", "--out", str(path),
    )
    assert code == 0 and out == ""
    text = path.read_text()
    assert text.startswith("# meta: ")
    rows = rows_of(text)
    assert len(rows) == 101 * 4
    for r in rows:
        if r["n"] == "0":
            assert float(r["re"]) == 1.0 and float(r["im"]) == 0.0
    summary = dict(line[2:].split("=") for line in text.splitlines() if line.startswith("# max"))
    assert float(summary["max|direct-finite_product|"]) <= 1e-9


def test_fourier_full_set_limit(capsys):
    _, out, _ = run(
        capsys, "fourier", "--q", "4", "--digits", "0,1,2,3", "--routes", "truncated_limit",
        "--n-min", "1", "--n-max", "40", "--format", "json", "--no-meta",
    )
    doc = json.loads(out)
    assert len(doc["rows"]) == 40
    assert all(abs(complex(r["re"], r["im"])) < 1e-10 for r in doc["rows"])


def test_fourier_direct_budget(capsys):
    code, _, _ = run(capsys, "fourier", "--q", "3", "--digits", "0,2", "--k", "12", "--budget", "1000")
    assert code == 3


def test_fourier_bad_route(capsys):
    code, _, _ = run(capsys, "fourier", "--q", "3", "--digits", "0,2", "--routes", "nope")
    assert code == 2


def test_staircase(capsys, tmp_path):
    svg = tmp_path / "s.svg"
    code, out, _ = run(
        capsys, "staircase", "--q", "3", "--digits", "0,2", "--k", "6", "--grid", "729",
        "--no-meta", "--svg", str(svg),
    )
    assert code == 0
    rows = [(float(r["x"]), float(r["F"])) for r in rows_of(out)]
    assert rows[0] == (0.0, 0.0) and rows[-1] == (1.0, 1.0)
    assert (0.5, 0.5) in rows
    assert all(b[1] >= a[1] for a, b in zip(rows, rows[1:]))
    assert svg.read_text().startswith("<svg")


def test_deterministic_without_meta(capsys):
    argv = ["staircase", "--q", "4", "--digits", "0,1,3", "--k", "4", "--grid", "50", "--no-meta"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b


def test_verify_dimension(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "dimension")
    assert code == 0
    assert "FAIL" not in out and out.strip().endswith("checks passed")


def test_verify_failure_exit_1(capsys, monkeypatch):
    from digitfractal import cli
    from digitfractal.verify import Check

    monkeypatch.setitem(cli.SUITES, "dimension", lambda: [Check("dimension", "forced", 1.0, 0.0)])
    code, out, _ = run(capsys, "verify", "--suite", "dimension")
    assert code == 1 and out.startswith("FAIL")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "digitfractal", "sequence", "--q", "3", "--digits", "0,2", "--k", "2"],
        capture_output=True, text=True, check=True,
    )
    assert proc.stdout == "101000101\n"
