import json
import re

import pytest

from newbasis.cli import main


def run(capsys, *argv):
    status = main(list(argv))
    return status, capsys.readouterr().out


def usage(capsys, *argv):
    with pytest.raises(SystemExit) as exc:
        main(list(argv))
    capsys.readouterr()
    return exc.value.code


def test_enum(capsys):
    status, out = run(capsys, "enum", "--dim", "2")
    assert status == 0
    assert out.splitlines() == ["{}\t0\t0\t0", "{1..1}\t1\te{1}\t1", "{2..2}\t1\te{2}\t1", "{3..3}\t1\te{1,2}\t1"]
    _, out = run(capsys, "enum", "--dim", "4")
    assert len(out.splitlines()) == 16
    _, out = run(capsys, "enum", "--dim", "4", "--format", "json")
    doc = json.loads(out)
    assert len(doc) == 16 and doc[0] == {"pattern": "{}", "size": 0, "epsilon": "0", "span_dim": 0}


def test_usage_errors(capsys):
    assert usage(capsys, "enum", "--dim", "3") == 2
    assert usage(capsys, "enum", "--dim", "x") == 2
    assert usage(capsys, "verify", "--dim", "4", "--checks", "nope") == 2
    assert usage(capsys, "matrix", "--dim", "4", "--kind", "q") == 2
    assert usage(capsys, "expand", "--dim", "14") == 2
    assert usage(capsys, "enum", "--dim", "16") == 2
    assert usage(capsys, "poset", "--dim", "10") == 2
    assert usage(capsys) == 2


def test_verify(capsys):
    status, out = run(capsys, "verify", "--dim", "6")
    assert status == 0
    names = [line.split()[0] for line in out.splitlines()[:-1]]
    assert names == [
        "bijection", "p15", "bshift", "order", "thm24", "cor25", "chain-identity",
        "fourier", "conjecture34", "hypothesis36", "expansion", "rotation",
    ]
    status, out = run(capsys, "verify", "--dim", "8", "--checks", "conjecture34,thm24", "--format", "json")
    doc = json.loads(out)
    assert status == 0 and [c["status"] for c in doc["checks"]] == ["pass", "pass"]


def test_verify_reports_failure_with_counterexample(capsys):
    status, out = run(capsys, "verify", "--dim", "8", "--checks", "expansion")
    assert status == 1
    assert "[1246]" in out and "[1256]" in out


def test_verify_skip_and_report(capsys):
    status, out = run(capsys, "verify", "--dim", "8", "--checks", "chain-identity,hypothesis36")
    assert status == 0
    assert re.search(r"chain-identity\s+SKIP", out)
    assert re.search(r"hypothesis36\s+REPORT", out)


def test_matrix(capsys, tmp_path):
    status, out = run(capsys, "matrix", "--dim", "2", "--kind", "n")
    assert status == 0
    assert out.splitlines()[1:] == [
        '"{}",-1,1/2^1,1/2^1,1/2^1',
        '"{1..1}",0,1,0,0',
        '"{2..2}",0,0,1,0',
        '"{3..3}",0,0,0,1',
    ]
    _, out = run(capsys, "matrix", "--dim", "2", "--kind", "d")
    assert [line.split(",")[1:] for line in out.splitlines()[1:]] == [
        ["1", "0", "0", "0"], ["1", "1", "0", "0"], ["1", "0", "1", "0"], ["1", "0", "0", "1"]
    ]
    target = tmp_path / "r.json"
    status, out = run(capsys, "matrix", "--dim", "4", "--kind", "r", "--format", "json", "--out", str(target))
    assert status == 0 and out == ""
    doc = json.loads(target.read_text(encoding="utf-8"))
    assert doc["dim"] == 4 and len(doc["order"]) == 16


def test_output_is_deterministic(capsys):
    _, a = run(capsys, "matrix", "--dim", "4", "--kind", "n", "--format", "json")
    _, b = run(capsys, "matrix", "--dim", "4", "--kind", "n", "--format", "json")
    assert a == b


def test_expand(capsys):
    assert run(capsys, "expand", "--dim", "2") == (0, "[1]-2[-]\n")
    assert run(capsys, "expand", "--dim", "4") == (0, "[123]-4[-]\n")


def test_poset(capsys):
    status, out = run(capsys, "poset", "--dim", "2")
    assert status == 0
    assert out.count("->") == 3 and out.count("label=") == 4
    _, out = run(capsys, "poset", "--dim", "4")
    assert out.count("label=") == 16
    edges = re.findall(r"n(\d+) -> n(\d+)", out)
    # drawn bottom to top along the linear extension, so acyclic
    order = [int(m) for m in re.findall(r"n(\d+) \[label", out)]
    pos = {b: k for k, b in enumerate(order)}
    assert all(pos[int(a)] < pos[int(b)] for a, b in edges)
