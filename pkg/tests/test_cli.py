import csv
import io
import json

import pytest

from assocamb.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_PASS, main
from assocamb.strings import multiset_decode, parse_bitstring


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("argv,expected", [
    (["eval", "--op", "gfun:linear", "@e", "@e"], "000"),
    (["eval", "--op", "aowf:parity-up", "@e", "@e"], "01111"),
    (["eval", "--op", "concat", "0", "1"], "01"),
    (["eval", "--op", "gfun", "--g", "linear", "0", "@e"], "001"),
    (["eval", "--op", "aowf", "--relation", "mod3-few", "0101", "0000"], "00010"),
])
def test_eval(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == EXIT_PASS
    assert out == expected + "\n"


def test_eval_dump_table(capsys, tmp_path):
    path = tmp_path / "table.csv"
    code, _, _ = run(capsys, "eval", "--op", "gfun:linear", "0", "@e", "--dump-table", str(path))
    assert code == EXIT_PASS
    rows = path.read_text().splitlines()
    assert rows[0] == "0,@e,10"
    for row in rows:
        _, key, enc = row.split(",")
        parse_bitstring(key)
        multiset_decode(enc)


def test_probe_concat(capsys):
    code, out, err = run(capsys, "probe", "--op", "concat", "--k", "5")
    assert code == EXIT_PASS
    assert err.startswith("PASS ")
    assert len(json.loads(out)["factors"]) >= 5


def test_census_aowf(capsys):
    code, out, _ = run(capsys, "census", "--op", "aowf:parity-up", "--max-rank", "30")
    assert code == EXIT_PASS
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows
    for row in rows:
        n = int(row["length"])
        assert int(row["count"]) <= (n - 2) * (1 + 9) ** 2
        assert row["case"] == parse_bitstring(row["output"])[1:3]


def test_profile_proj(capsys):
    code, out, _ = run(capsys, "profile", "--op", "proj", "--max-rank", "20")
    assert code == EXIT_PASS
    rows = list(csv.DictReader(io.StringIO(out)))
    assert {r["max_count"] for r in rows} == {"21"}


def test_cases(capsys):
    code, out, _ = run(capsys, "cases", "--op", "aowf:parity-up", "01111", "00111")
    assert code == EXIT_PASS
    assert "01111,5,1,1,11:EE" in out.splitlines()


def test_keyagree_example(capsys):
    code, out, _ = run(capsys, "keyagree", "--op", "concat", "1", "0", "1")
    assert code == EXIT_PASS
    assert out.strip().endswith("alice_key=101 bob_key=101")


def test_bound_pass_and_demo(capsys):
    code, out, _ = run(capsys, "bound", "--op", "concat", "--samples", "500", "--N", "2")
    assert code == EXIT_PASS
    data = json.loads(out)
    assert data["bound"]["j"] == 3
    assert data["demo"]["n"] == 11


def test_exit_fail_on_bound_violation(capsys):
    # i = 1 understates concatenation's growth, so sampled products break the bound
    code, out, _ = run(capsys, "bound", "--op", "concat", "--i", "1")
    assert code == EXIT_FAIL
    assert json.loads(out)["bound"]["violations"]


def test_exit_budget(capsys):
    code, _, err = run(capsys, "census", "--op", "concat", "--max-rank", "30", "--budget", "100")
    assert code == EXIT_BUDGET
    assert "budget" in err


def test_exit_budget_gfun(capsys):
    code, _, _ = run(capsys, "eval", "--op", "gfun:linear", "1111", "1111", "--budget", "10")
    assert code == EXIT_BUDGET


@pytest.mark.parametrize("argv", [
    ["eval", "--op", "nope", "0", "1"],
    ["eval", "--op", "gfun:cubic", "0", "1"],
    ["census", "--op", "concat", "--budget", "0"],
    ["eval", "--op", "concat", "2", "1"],
    ["cases", "--op", "concat", "000"],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


@pytest.mark.parametrize("argv", [
    ["census", "--op", "aowf:mod3-few", "--max-rank", "40"],
    ["profile", "--op", "max", "--max-rank", "30"],
    ["probe", "--op", "max", "--k", "6"],
    ["bound", "--op", "concat", "--samples", "300", "--seed", "4"],
    ["keyagree", "--op", "gfun:linear", "--sessions", "30", "--len-cap", "2", "--seed", "9"],
])
def test_byte_identical_reruns(tmp_path, argv):
    first, second = tmp_path / "a", tmp_path / "b"
    assert main(argv + ["--out", str(first)]) == EXIT_PASS
    assert main(argv + ["--out", str(second)]) == EXIT_PASS
    assert first.read_bytes() == second.read_bytes()
    assert first.stat().st_size > 0
