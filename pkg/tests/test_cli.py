import json
import subprocess
import sys

import pytest

from missgen import classify, report
from missgen.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json", "--reproducible")
    assert code == 0
    return json.loads(out)


def test_classify_31(capsys):
    code, out, _ = run(capsys, "classify", 31)
    assert code == 0
    assert "G  = 3,11,12,13,17,21,22,24" in out


def test_classify_3_and_43(capsys):
    assert run_json(capsys, "classify", 3)["generators"] == [2]
    assert run_json(capsys, "classify", 43)["counts"]["generators"] == 12


def test_classify_composite_exit_2(capsys):
    code, _, err = run(capsys, "classify", 33)
    assert code == 2 and "error" in err


def test_missing(capsys):
    doc = run_json(capsys, "missing", 31, 17)
    assert doc["sets"] == [{"g": 17, "missing": [12, 13]}]
    assert len(run_json(capsys, "missing", 43)["sets"]) == 12
    assert run(capsys, "missing", 31, 2)[0] == 2


@pytest.mark.parametrize("p, t", [(599, [1, 132, 2]), (89, [0, 0, 0]), (31, [1, 4, 2])])
def test_triplet(capsys, p, t):
    doc = run_json(capsys, "triplet", p)
    assert [doc["c"], doc["n"], doc["e"]] == t


def test_triplet_text(capsys):
    code, out, _ = run(capsys, "triplet", 103)
    assert code == 0 and "T(103) = (2, 8, 2)" in out and "Reflexive" in out


def test_table_3(capsys):
    code, out, _ = run(capsys, "table", 3)
    assert code == 0
    assert out == "p,c,n,e,phi,q1,q2,s_character\n3,0,0,0,1,,,NotApplicable\n"


def test_table_200_row_151(capsys):
    _, out, _ = run(capsys, "table", "--pmax", 200)
    rows = {r.p: r for r in report.parse_csv(out)}
    assert (rows[151].c, rows[151].n, rows[151].e, rows[151].phi) == (1, 4, 10, 40)
    assert len(rows) == 45


def test_table_rejects_small(capsys):
    assert run(capsys, "table", 2)[0] == 2


def test_digraph_dot_31(capsys, tmp_path):
    path = tmp_path / "g31.dot"
    code, out, _ = run(capsys, "digraph", 31, "--dot", path)
    assert code == 0 and "4 vertices" in out
    dot = path.read_text()
    assert dot.count(" [label=") == 4 and dot.count("->") == 4 and dot.count("cluster_") == 1
    assert b"\r\n" not in path.read_bytes()


def test_digraph_dot_43(capsys):
    code, out, _ = run(capsys, "digraph", 43)
    assert code == 0
    assert out.count(" [label=") == 6 and out.count("cluster_") == 2


def test_digraph_dot_parses(capsys):
    pydot = pytest.importorskip("pydot")
    _, out, _ = run(capsys, "digraph", 67)
    (graph,) = pydot.graph_from_dot_data(out)
    assert len(graph.get_edges()) == 10


def test_digraph_unsupported_exit_3(capsys):
    code, _, err = run(capsys, "digraph", 89)
    assert code == 3 and "89" in err


@pytest.mark.parametrize("N, p, factors", [(21, 43, [3, 7]), (15, 31, [3, 5])])
def test_factor(capsys, N, p, factors):
    doc = run_json(capsys, "factor", N)
    assert doc["chosen"]["p"] == p and doc["recovered"] == factors
    assert doc["search_trace"][-1]["is_prime"]
    assert "not a factoring attack" in doc["note"]


def test_factor_text_mentions_limits(capsys):
    code, out, _ = run(capsys, "factor", 77)
    assert code == 0 and "p = 617" in out and "7 x 11" in out and "not a factoring attack" in out


def test_factor_square_exit_2(capsys):
    assert run(capsys, "factor", 9)[0] == 2


def test_factor_exhausted_exit_4(capsys):
    assert run(capsys, "factor", 77, "--bound", 1)[0] == 4


def test_scan(capsys):
    doc = run_json(capsys, "scan", 15, "--bound", 20)
    assert doc["first_hit"] == [1, 1]
    assert [1, 1] in run_json(capsys, "scan", 9, "--bound", 3, "--all")["hits"]
    empty = run_json(capsys, "scan", 77, "--bound", 1)
    assert empty["hits"] == [] and empty["first_hit"] is None


def test_scan_k_and_random(capsys):
    assert run_json(capsys, "scan", 15, "--k", 1)["bound"] == 4
    doc = run_json(capsys, "scan", "--random", 5, "--max-n", 1000, "--seed", 1)
    assert doc["count"] == 5 and 0 <= doc["hit_rate"] <= 1


def test_scan_needs_input(capsys):
    assert run(capsys, "scan")[0] == 2


def test_verify_3(capsys):
    code, out, _ = run(capsys, "verify", 3)
    assert code == 0 and "1 primes" in out


def test_verify_small_range(capsys):
    doc = json.loads(run(capsys, "verify", 200, "--json")[1])
    assert doc["violations"] == [] and doc["checks_run"] == doc["checks_passed"] > 0


def test_verify_names_corrupted_formula(capsys, monkeypatch):
    real = classify.cardinality_M
    monkeypatch.setattr(classify, "cardinality_M", lambda pm1: real(pm1) + 1)
    code, out, _ = run(capsys, "verify", 50)
    assert code == 1
    assert "cardinality_M" in out


@pytest.mark.parametrize(
    "argv",
    [("classify", 43), ("missing", 31), ("triplet", 103), ("digraph", 31), ("factor", 77),
     ("scan", 21, "--bound", 5, "--all")],
)
def test_json_round_trip_and_determinism(capsys, argv):
    _, first, _ = run(capsys, *argv, "--json", "--reproducible")
    _, second, _ = run(capsys, *argv, "--json", "--reproducible")
    assert first == second
    assert report.reemit_json(first) == first
    assert "generated_at" not in first and "elapsed" not in first


def test_json_timestamp_without_reproducible(capsys):
    _, out, _ = run(capsys, "triplet", 31, "--json")
    assert "generated_at" in json.loads(out)


def test_csv_round_trip(capsys):
    _, out, _ = run(capsys, "table", 300)
    assert report.reemit_csv(out) == out
    assert report.dumps_csv(report.parse_csv(out)) == out


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "missgen", "triplet", "31"], capture_output=True, text=True, check=True
    )
    assert "T(31) = (1, 4, 2)" in res.stdout
