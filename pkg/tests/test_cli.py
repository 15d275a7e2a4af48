import csv
import io
import json
import subprocess
import sys

import pytest

from cycleprod.cli import int_values, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_identity_json_is_a_bare_object():
    code, out, _ = call("identity", "--N", "5", "--k", "2", "--format", "json")
    assert code == 0
    assert out.strip() == '{"N":5,"k":2,"p":"1/24"}'


def test_sweep_json_is_an_array():
    code, out, _ = call("identity", "--N", "3..5", "--k", "2", "--format", "json")
    rows = json.loads(out)
    assert code == 0
    assert [r["N"] for r in rows] == [3, 4, 5]
    assert rows[0]["p"] == "1/2"


def test_blocking_table():
    code, out, _ = call("blocking", "--N", "3", "--ell", "2", "--k", "2")
    assert code == 0
    header, row = out.strip().splitlines()
    assert header.split() == ["N", "ell", "k", "p"]
    assert row.split() == ["3", "2", "2", "0"]


def test_csv_and_json_carry_the_same_values():
    args = ("separation", "--N", "4..7", "--sets", "2,1", "--k", "2,3", "--float")
    _, out_csv, _ = call(*args, "--format", "csv")
    _, out_json, _ = call(*args, "--format", "json")
    from_csv = list(csv.DictReader(io.StringIO(out_csv)))
    from_json = json.loads(out_json)
    assert len(from_csv) == len(from_json) == 8
    for a, b in zip(from_csv, from_json):
        assert a["p"] == b["p"]
        assert int(a["N"]) == b["N"]
        assert float(a["p_float"]) == b["p_float"]


def test_range_syntax():
    assert int_values("3..6,9") == [3, 4, 5, 6, 9]
    assert int_values("5") == [5]


@pytest.mark.parametrize(
    "argv, column, expected",
    [
        (["is-cycle", "--N", "5", "--k", "2"], "p", "1/3"),
        (["cycles-dist", "--N", "3", "--k", "2", "--nu", "1"], "p", "1/2"),
        (["pgf", "--N", "3", "--k", "2", "--x", "3"], "E", "15"),
        (["cycle-type", "--type", "2,2"], "p", "1/6"),
        (["same-length", "--N", "8", "--r", "2"], "p", "1/240"),
        (["involution", "--N", "4"], "p", "1/3"),
        (["occupancy", "--N", "3", "--ell", "2", "--k", "2", "--A", "{0,1}"], "p", "1/2"),
        (["a1", "--N", "5", "--ell", "1", "--k", "2"], "p", "1/3"),
        (["a2", "--N", "3", "--ell", "2", "--k", "2"], "p", "1/2"),
        (["snab", "--n", "3", "--a", "1", "--b", "1"], "S", "-5/3"),
        (["separation", "--N", "5", "--sets", "1,1", "--k", "2", "--method", "bernardi"], "p", "1/2"),
        (["separation", "--N", "3", "--sets", "1,1,1", "--k", "2", "--method", "full"], "p", "1/2"),
    ],
)
def test_verbs(argv, column, expected):
    code, out, err = call(*argv, "--format", "json")
    assert code == 0, err
    assert json.loads(out)[column] == expected


def test_cycle_type_lists_all_types():
    code, out, _ = call("cycle-type", "--N", "4", "--k", "2,3", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 10


def test_verify_passes():
    code, out, _ = call("verify", "--N", "6", "--k", "2", "--suite", "all")
    assert code == 0
    assert "fail" not in out
    assert out.count("pass") >= 15


def test_verify_reports_refusal(monkeypatch):
    monkeypatch.delenv("CYCLEPROD_ORACLE_CAP", raising=False)
    code, out, err = call("verify", "--N", "8", "--k", "2", "--suite", "subsets")
    assert code == 2
    assert "refused" in out and "oracle" in err


def test_usage_errors_exit_2():
    assert call("identity", "--N", "x", "--k", "2")[0] == 2
    assert call("nonsense")[0] == 2
    assert call("identity", "--k", "2")[0] == 2
    assert call("same-length", "--N", "7", "--r", "2")[0] == 2
    assert call("separation", "--N", "3", "--sets", "2,2", "--k", "2")[0] == 2
    assert call("separation", "--N", "5", "--sets", "1,1", "--k", "3", "--method", "final")[0] == 2
    assert call("mc", "--N", "5", "--k", "2", "--event", "teleport")[0] == 2


def test_mc_output_is_reproducible():
    args = ("mc", "--N", "12", "--k", "2", "--event", "is-cycle", "--event", "blocks:2", "--trials", "20000", "--seed", "5")
    first = call(*args, "--format", "csv")
    second = call(*args, "--format", "csv")
    assert first == second
    rows = list(csv.DictReader(io.StringIO(first[1])))
    assert [r["event"] for r in rows] == ["is-cycle", "blocks:2"]
    assert all(r["covered"] == "true" for r in rows)


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "cycleprod", "identity", "--N", "5", "--k", "3", "--format", "json"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert res.returncode == 0
    assert json.loads(res.stdout) == {"N": 5, "k": 3, "p": "1/72"}
