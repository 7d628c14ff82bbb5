import json
import subprocess
import sys

import pytest

from conftest import GOLDEN
from dipaths.cli import main
from dipaths.digraph import to_edge_list
from dipaths.generators import cycle_orientation, gnp_digraph

TRIANGLE = "3 3\n0 1\n1 2\n2 0\n"


@pytest.fixture
def graph(tmp_path):
    def write(text, name="g.txt"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_triangle(capsys, graph):
    code, out, _ = run(capsys, "analyze", graph(TRIANGLE))
    assert code == 0
    doc = json.loads(out)
    assert doc["values"] == {"alpha": 1, "alpha_prime": 2, "chi": 3, "chi_prime": 2, "pi": 1, "lambda": 3}
    assert set(doc["certificates"]) == set(doc["values"])


def test_analyze_arcless_and_digon(capsys, graph):
    code, out, _ = run(capsys, "analyze", graph("3 0\n"))
    assert json.loads(out)["values"] == {"alpha": 3, "alpha_prime": 3, "chi": 1, "chi_prime": 1, "pi": 3, "lambda": 1}
    code, out, _ = run(capsys, "analyze", graph("2 2\n0 1\n1 0\n"))
    assert json.loads(out)["values"] == {"alpha": 1, "alpha_prime": 1, "chi": 2, "chi_prime": 2, "pi": 1, "lambda": 2}


def test_analyze_stdin(capsys, monkeypatch):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO(TRIANGLE))
    code, out, _ = run(capsys, "analyze", "-")
    assert code == 0 and json.loads(out)["n"] == 3


def test_linial_and_verify_round_trip(capsys, graph, tmp_path):
    code, out, _ = run(capsys, "linial", graph(TRIANGLE), "--k", "1")
    assert code == 0
    cert = tmp_path / "cert.json"
    cert.write_text(out)
    code, out, _ = run(capsys, "verify", str(cert), "--graph", graph(TRIANGLE))
    assert code == 0 and json.loads(out)["accepted"] is True

    doc = json.loads(cert.read_text())
    doc["payload"]["primal"]["norm"] += 1
    cert.write_text(json.dumps(doc))
    code, out, err = run(capsys, "verify", str(cert), "--graph", graph(TRIANGLE))
    assert code == 3 and json.loads(out)["accepted"] is False and "verification failed" in err


def test_verify_wrong_graph(capsys, graph, tmp_path):
    _, out, _ = run(capsys, "good-partition", graph(TRIANGLE))
    (tmp_path / "c.json").write_text(out)
    code, _, err = run(capsys, "verify", str(tmp_path / "c.json"), "--graph", graph("3 0\n"))
    assert code == 3 and "fingerprint" in err


def test_good_partition_c5(capsys, graph):
    code, out, _ = run(capsys, "good-partition", graph(to_edge_list(cycle_orientation(5, 0))))
    assert code == 0 and json.loads(out)["kind"] == "good-path-partition"


def test_orthogonal_path_dag_and_bad_classes(capsys, graph):
    code, out, _ = run(capsys, "orthogonal-path", graph("3 2\n0 1\n1 2\n"))
    assert code == 0 and len(json.loads(out)["payload"]["path"]) == 1
    c5 = graph(to_edge_list(cycle_orientation(5, 0)), "c5.txt")
    code, out, _ = run(capsys, "orthogonal-path", c5, "--classes", "[[0,1],[2,3],[4]]")
    assert code == 3 and len(json.loads(out)["smaller_dicoloring"]) == 2


def test_orthogonal_partition_with_set(capsys, graph):
    code, out, _ = run(capsys, "orthogonal-partition", graph(TRIANGLE), "--set", "[1, 2]")
    assert code == 0 and json.loads(out)["payload"]["set"] == [1, 2]
    code, _, _ = run(capsys, "orthogonal-partition", graph(TRIANGLE), "--set", "[1]")
    assert code == 1


def test_greedy_and_dot(capsys, graph):
    code, out, _ = run(capsys, "greedy-dicolor", graph(TRIANGLE))
    assert code == 0 and json.loads(out)["sizes"] == [2, 1]
    code, out, _ = run(capsys, "export-dot", graph(TRIANGLE))
    assert code == 0 and "0 -> 1;" in out


def test_search(capsys):
    code, out, _ = run(capsys, "search", "--question", "1", "--n", "5")
    golden = json.loads((GOLDEN / "berge_cycles.json").read_text())
    assert code == 0 and json.loads(out)["failures"] == golden["question1"]["5"]


def test_sweep_json_lines(capsys):
    code, out, err = run(capsys, "sweep", "--model", "gnp", "--n", "5", "--p", "0.5", "--count", "3", "--seed", "4")
    lines = [json.loads(x) for x in out.splitlines()]
    assert code == 0 and len(lines) == 3 and all(r["passed"] for r in lines)
    assert [r["instance"]["seed"] for r in lines] == [4, 5, 6]
    assert json.loads(err)["instances"] == 3


def test_gen_matches_golden(capsys):
    code, out, _ = run(capsys, "gen", "--model", "gnp", "--n", "5", "--p", "0.5", "--seed", "42")
    assert code == 0 and out == (GOLDEN / "gnp_n5_p0.5_seed42.txt").read_text()


def test_usage_and_parse_errors(capsys, graph):
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["linial", graph(TRIANGLE)])
    assert exc.value.code == 1
    code, _, err = run(capsys, "analyze", graph("3 1\n0 0\n"))
    assert code == 1 and "line" in err
    code, _, _ = run(capsys, "analyze", "/nonexistent/file")
    assert code == 1
    code, _, _ = run(capsys, "linial", graph(TRIANGLE), "--k", "0")
    assert code == 1


def test_budget_exit_code(capsys, graph):
    big = graph(to_edge_list(gnp_digraph(25, 0.2, 1)))
    code, _, err = run(capsys, "analyze", big)
    assert code == 2


def test_time_budget_env(capsys, graph, monkeypatch):
    monkeypatch.setenv("DIPATHS_TIME_BUDGET", "0")
    code, _, _ = run(capsys, "analyze", graph(to_edge_list(gnp_digraph(20, 0.3, 2))))
    assert code == 2


def test_console_entry_point(tmp_path):
    path = tmp_path / "t.txt"
    path.write_text(TRIANGLE)
    proc = subprocess.run([sys.executable, "-m", "dipaths.cli", "export-dot", str(path)], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("digraph")
