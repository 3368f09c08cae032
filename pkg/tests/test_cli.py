import io
import json
import subprocess
import sys

import pytest

from schubvanish.cli import EXIT_ERROR, EXIT_NO, EXIT_YES, parse_vector, QueryError, render_rothe, run


def call(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    status = run(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_parse_vector():
    assert parse_vector("2, 0,2", "code") == (2, 0, 2)
    assert parse_vector("", "alpha") == ()
    assert parse_vector(None, "alpha") == ()
    with pytest.raises(QueryError):
        parse_vector("1,x", "code")
    with pytest.raises(QueryError):
        parse_vector("1,-1", "code")


def test_decide_yes_and_no(capsys):
    assert call(capsys, "decide", "--code", "2,0,2", "--alpha", "2,1,1")[:2] == (EXIT_YES, "YES\n")
    assert call(capsys, "decide", "--code", "2,0,2", "--alpha", "4")[:2] == (EXIT_NO, "NO\n")
    status, out, _ = call(capsys, "decide", "--code", "2,0,2", "--alpha", "2,1,1",
                          "--compression", "trivial", "--engine", "flow")
    assert (status, out) == (EXIT_YES, "YES\n")


def test_decide_identity_with_empty_alpha(capsys):
    assert call(capsys, "decide", "--code", "0", "--alpha")[:2] == (EXIT_YES, "YES\n")


def test_count_json(capsys):
    status, out, _ = call(capsys, "count", "--code", "4,2,5,3", "--alpha", "4,2,5,3", "--json")
    doc = json.loads(out)
    assert status == EXIT_YES
    assert doc == {"schema": "1", "command": "count",
                   "query": {"code": [4, 2, 5, 3], "alpha": [4, 2, 5, 3]},
                   "result": 1, "witness": None}


def test_witness_text_and_json(capsys):
    status, out, _ = call(capsys, "witness", "--code", "3,2,1", "--alpha", "3,2,1")
    assert status == EXIT_YES
    assert out.splitlines()[0] == "1 1 1 _ _ _"
    status, out, _ = call(capsys, "witness", "--code", "2,0,2", "--alpha", "2,1,1", "--json")
    doc = json.loads(out)
    boxes = {(r, c): lab for r, c, lab in doc["witness"]["boxes"]}
    assert set(boxes) == {(1, 1), (1, 2), (3, 2), (3, 4)}
    assert sorted(boxes.values()) == [1, 1, 2, 3]
    status, out, _ = call(capsys, "witness", "--code", "2,0,2", "--alpha", "4")
    assert (status, out) == (EXIT_NO, "NONE\n")


def test_errors_exit_2(capsys):
    status, out, err = call(capsys, "decide", "--code", "1,a", "--alpha", "1")
    assert status == EXIT_ERROR and "not an integer" in err
    status, _, err = call(capsys, "decide", "--alpha", "1")
    assert status == EXIT_ERROR and "--code" in err
    status, _, err = call(capsys, "count", "--code", "1,1,1", "--alpha", "3", "--max-length", "2")
    assert status == EXIT_ERROR and "max-length" in err
    status, _, err = call(capsys, "selfcheck", "--n", "9")
    assert status == EXIT_ERROR


def test_stdin_batch_keeps_order(capsys, monkeypatch):
    lines = "2,0,2 2,1,1\n2,0,2 4\n\n3,2,1 3,2,1\n"
    status, out, _ = call(capsys, "decide", "--stdin", stdin=lines, monkeypatch=monkeypatch)
    assert status == 0 and out.split() == ["YES", "NO", "YES"]
    status, out, _ = call(capsys, "count", "--stdin", "--jobs", "2", "--json",
                          stdin=lines, monkeypatch=monkeypatch)
    docs = [json.loads(x) for x in out.splitlines()]
    assert [d["result"] for d in docs] == [1, 0, 1]
    assert [d["query"]["code"] for d in docs] == [[2, 0, 2], [2, 0, 2], [3, 2, 1]]


def test_stdin_batch_reports_bad_lines(capsys, monkeypatch):
    status, out, _ = call(capsys, "decide", "--stdin", stdin="2,0,2 2,1,1\nfoo\n",
                          monkeypatch=monkeypatch)
    assert status == EXIT_ERROR
    assert out.splitlines()[0] == "YES" and out.splitlines()[1].startswith("ERROR")


def test_render(capsys):
    status, out, _ = call(capsys, "render", "--code", "2,0,2", "--plain")
    assert status == EXIT_YES
    assert out.splitlines() == ["##o..", "o....", ".#.#o", ".o...", "...o."]
    status, out, _ = call(capsys, "render", "--code", "4,2,5,2", "--json")
    doc = json.loads(out)
    assert doc["result"]["accessible_box"] == [3, 7]
    assert "z" in "".join(doc["result"]["diagram"])
    assert render_rothe((3, 2, 1)).splitlines()[0] == "##Eo--"


def test_tree(capsys):
    status, out, _ = call(capsys, "tree", "--code", "4,2,5,3")
    assert status == EXIT_YES and out.startswith("53861247")
    status, out, _ = call(capsys, "tree", "--code", "4,2,5,3", "--json")
    doc = json.loads(out)
    assert [e["edge"] for e in doc["result"]["children"]] == ["x4", "2"]


def test_selfcheck(capsys):
    status, out, _ = call(capsys, "selfcheck", "--n", "3")
    assert status == EXIT_YES
    assert all(line.endswith("PASS") for line in out.splitlines())


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "schubvanish", "decide", "--code", "2,0,2",
                           "--alpha", "2,1,1"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "YES"
