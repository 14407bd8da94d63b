import json
import subprocess
import sys

import pytest

from belltrace.arith import InvalidArgument, k_p, tau, zeta_exponent
from belltrace.cli import main, parse_exponent

KEYS = ["statement", "p", "a", "m", "n", "lhs", "rhs", "pass", "micros"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_exponent_whitelist():
    assert parse_exponent("tau(2) - 1", 5) == tau(5, 2) - 1
    assert parse_exponent("Z(1)", 5) == zeta_exponent(5, 1) == 2930
    assert parse_exponent("kp // 2 + 3**4 % 7", 3) == k_p(3) // 2 + 4
    assert parse_exponent("-(2)", 3) == -2
    for bad in ["__import__('os')", "tau", "x", "1.5", "2 ** 10**7", "tau(a=1)", "'1'", "1 +", "[1]"]:
        with pytest.raises(InvalidArgument):
            parse_exponent(bad, 5)


def test_verify_json_lines(capsys):
    code, out, err = run(capsys, "verify", "--statements", "MAIN_1", "--pmax", "7", "--amax", "3")
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert len(rows) == 6
    assert all(list(r) == KEYS and r["pass"] and r["micros"] is None for r in rows)
    assert [(r["p"], r["a"]) for r in rows] == [(5, 1), (5, 2), (5, 3), (7, 1), (7, 2), (7, 3)]
    assert "6 records, 0 failed" in err


def test_verify_timings_and_table(capsys):
    code, out, _ = run(capsys, "verify", "--statements", "POWER_SUM", "--pmax", "3", "--timings")
    assert code == 0 and all(isinstance(json.loads(l)["micros"], int) for l in out.splitlines())
    code, out, _ = run(capsys, "--format", "table", "verify", "--statements", "HANKEL", "--nmax", "4")
    assert code == 0
    assert out.splitlines()[0].split() == ["statement", "p", "a", "m", "n", "lhs", "rhs", "pass"]
    assert "12*x^6" in out and out.rstrip().endswith("4/4 passed")
    # the flag may also follow the subcommand
    code, out2, _ = run(capsys, "verify", "--statements", "HANKEL", "--nmax", "4", "--format", "table")
    assert out2 == out


def test_verify_output_file(capsys, tmp_path):
    dest = tmp_path / "out.jsonl"
    code, out, _ = run(capsys, "verify", "--statements", "INVERSE_LEMMA", "--pmax", "5", "--output", str(dest))
    assert code == 0 and out == ""
    assert len(dest.read_text().splitlines()) == 6 + 8 + 10  # a <= 12 prime to p = 2, 3, 5


def test_verify_exit_one_on_failure(capsys, monkeypatch):
    from belltrace import checks

    monkeypatch.setattr(checks, "mordell_chowla_rhs", lambda p: 0)
    code, _, err = run(capsys, "verify", "--statements", "MORDELL_CHOWLA", "--pmax", "13")
    assert code == 1 and "failed" in err


def test_verify_usage_errors(capsys):
    assert run(capsys, "verify", "--statements", "NOPE")[0] == 2
    assert run(capsys, "verify", "--workers", "0")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--bogus"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_empty_selection_warns(capsys):
    code, out, err = run(capsys, "verify", "--statements", "MAIN_1", "--pmax", "4")
    assert code == 0 and out == "" and "warning" in err


def test_trace_bell_class_unit(capsys):
    code, out, _ = run(capsys, "trace", "5", "Z(1)")
    assert code == 0 and json.loads(out) == {"p": 5, "exponent": "2930", "trace": 3}
    code, out, _ = run(capsys, "bell", "5", "1", "tau(1)")
    assert json.loads(out)["value"] == 3
    code, out, _ = run(capsys, "class", "229")
    assert json.loads(out) == {"p": 229, "h": 3, "t": 15, "u": 1, "norm": -1}
    code, out, _ = run(capsys, "class", "23")
    assert json.loads(out) == {"p": 23, "h": 3}
    code, out, _ = run(capsys, "--format", "table", "unit", "13")
    assert out == "p: 13\nt: 3\nu: 1\nnorm: -1\n"
    assert run(capsys, "unit", "7")[0] == 2
    assert run(capsys, "trace", "6", "1")[0] == 2
    assert run(capsys, "trace", "5", "open('x')")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "belltrace", "trace", "3", "tau(1)"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["exponent"] == "7"
