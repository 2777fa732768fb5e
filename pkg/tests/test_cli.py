import csv
import io
import json

import pytest

from weylhom.cli import WORKERS_ENV, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, [json.loads(line) for line in out.out.splitlines() if line.startswith("{")], out


def test_dim(capsys):
    code, recs, _ = run(capsys, "dim", "--a", "8", "--b", "4", "--d", "3", "--p", "2")
    assert code == 0
    assert recs == [{"a": 8, "b": 4, "d": 3, "p": 2, "predicted": 1, "computed": 1, "match": True}]


def test_dim_odd_prime(capsys):
    code, recs, _ = run(capsys, "dim", "--a", "8", "--b", "4", "--d", "3", "--p", "3")
    assert code == 0 and recs[0]["computed"] == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["dim", "--a", "2", "--b", "4", "--d", "3"],
        ["dim", "--a", "6", "--b", "4", "--d", "3", "--p", "4"],
        ["dim", "--a", "6", "--b", "1", "--d", "3"],
        ["generator", "--a", "7", "--b", "4", "--d", "3"],
        ["cp", "--a", "5", "--d", "3"],
        ["dim", "--a", "-1", "--b", "4", "--d", "3"],
        ["bogus"],
    ],
)
def test_usage_errors(capsys, argv):
    assert main(argv) == 2


def test_generator_verified(capsys):
    code, recs, _ = run(capsys, "generator", "--a", "6", "--b", "3", "--d", "2")
    assert code == 0
    rec = recs[0]
    assert rec["verified"] and rec["variant"] == "even-odd"
    # C(7, 2) is odd, so every key is in the support
    assert rec["support"] == ["1^(6) 3 4/2^(3)", "1^(6) 2 3/2^(2) 4", "1^(6) 2 4/2^(2) 3", "1^(6) 2^(2)/2 3 4"]


@pytest.mark.parametrize(
    "a,b,d,members",
    [(72, 67, 21, [10, 11, 14, 15]), (192, 148, 52, [9, 11, 13, 15, 25])],
)
def test_generator_large_examples(capsys, a, b, d, members):
    code, recs, _ = run(capsys, "generator", "--a", str(a), "--b", str(b), "--d", str(d), "--no-verify")
    assert code == 0 and recs[0]["members"] == members
    assert "support" not in recs[0]


def test_generator_support_cap(capsys):
    code = main(["generator", "--a", "72", "--b", "67", "--d", "21", "--no-verify", "--support"])
    assert code == 2


def test_ek(capsys):
    code, recs, _ = run(capsys, "ek", "--k", "10", "--l", "20")
    assert code == 0
    assert recs[0]["survivors"] == [5, 7, 13, 15] and recs[0]["agree"]
    code, recs, _ = run(capsys, "ek", "--k", "5", "--l", "21", "--variant", "even-odd")
    assert recs[0]["survivors"] == [10, 11, 14, 15]


def test_psi(capsys):
    code, recs, _ = run(capsys, "psi", "--a", "6", "--b", "3", "--d", "2")
    assert code == 0 and recs[0]["psi_nonzero"] is True and recs[0]["agree"]


def test_cp(capsys):
    code, recs, _ = run(capsys, "cp", "--a", "4", "--d", "3")
    assert code == 0 and recs[0]["conclusion"]
    values = {s["case"]: s.get("check_value") for s in recs[0]["steps"]}
    assert values["2"] == 5 and values["4"] == 3


def test_props(capsys):
    code, recs, _ = run(capsys, "props", "--suite", "row-parity", "--seed", "1", "--count", "200")
    assert code == 0
    assert recs == [{"suite": "row-parity", "seed": 1, "count": 200, "passed": 200, "ok": True, "failures": []}]


def test_grid_json(capsys):
    code, recs, _ = run(capsys, "grid", "--a-max", "7", "--b-max", "3", "--d-max", "3", "--primes", "2,3")
    assert code == 0
    summary = recs[-1]
    assert summary == {"summary": "grid", "instances": len(recs) - 1, "mismatches": 0}
    assert all(r["match"] and r["verified"] for r in recs[:-1])


def test_grid_csv(capsys):
    code = main(["grid", "--a-max", "6", "--b-max", "3", "--d-max", "3", "--primes", "2", "--csv"])
    out = capsys.readouterr()
    rows = list(csv.DictReader(io.StringIO(out.out)))
    assert code == 0 and rows
    assert all(r["match"] == "True" for r in rows)
    assert json.loads(out.err)["mismatches"] == 0


def test_out_file(tmp_path, capsys):
    target = tmp_path / "dim.jsonl"
    assert main(["--out", str(target), "dim", "--a", "6", "--b", "3", "--d", "2"]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(target.read_text())["computed"] == 1


def test_workers_keep_order(capsys, monkeypatch):
    argv = ["grid", "--a-max", "8", "--b-max", "4", "--d-max", "4", "--primes", "2"]
    main(argv)
    serial = capsys.readouterr().out
    monkeypatch.setenv(WORKERS_ENV, "4")
    main(argv)
    assert capsys.readouterr().out == serial


def test_bad_workers(capsys, monkeypatch):
    monkeypatch.setenv(WORKERS_ENV, "many")
    assert main(["grid", "--a-max", "4", "--b-max", "2", "--d-max", "2"]) == 2
