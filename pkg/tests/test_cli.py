import json
import subprocess
import sys

import pytest

from pauligeom import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_graph_json(capsys):
    code, out, _ = run(capsys, "graph", "--p", "2", "--n", "2", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"params", "vertices", "edges", "invariants"}
    assert doc["invariants"]["v"] == 15 and doc["invariants"]["e"] == 45
    assert doc["invariants"]["spectrum"] == {"-3": 5, "1": 9, "6": 1}
    assert doc["vertices"][3] == {"id": 3, "label": "a", "symplectic": [1, 0, 0, 0]}
    assert len(doc["edges"]) == 45


def test_graph_dot(capsys):
    code, out, _ = run(capsys, "graph", "--p", "3", "--n", "2", "--format", "dot")
    assert code == 0
    nodes = [ln for ln in out.splitlines() if ln.strip().endswith(";") and "--" not in ln]
    assert len(nodes) == 80 and '"L1"' not in out and '"72";' in out
    assert out.count(" -- ") == 80 * 25 // 2


def test_graph_text(capsys):
    code, out, _ = run(capsys, "graph")
    assert code == 0 and "spectrum: {-3^5, 1^9, 6}" in out and "chromatic_number: 4" in out


@pytest.mark.parametrize("argv", [
    ["graph", "--p", "4", "--n", "1"],
    ["graph", "--p", "2", "--n", "7"],
    ["mermin", "--p", "3", "--n", "2"],
    ["mcs", "--format", "dot"],
    ["verify", "--suite", "nope"],
    ["ringline", "--ring", "Z4"],
    ["hyperplanes", "--p", "3", "--n", "2"],
    ["hyperplanes", "--subset", "1,zz"],
    ["graph", "--threads", "0"],
])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and "error" in err and out == ""


def test_argparse_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["graph", "--format", "xml"])
    assert exc.value.code == 2


def test_bad_thread_env(capsys, monkeypatch):
    monkeypatch.setenv(cli.THREADS_ENV, "many")
    code, _, err = run(capsys, "graph")
    assert code == 2 and cli.THREADS_ENV in err


def test_mcs(capsys):
    code, out, _ = run(capsys, "mcs", "--p", "3", "--n", "2", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["count"] == 40
    assert doc["lines"][0] == {"name": "L1", "points": "1 5 a 9 13 e 41 45".split(), "entanglement": "unentangled"}


def test_spreads(capsys):
    code, out, _ = run(capsys, "spreads", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["count"] == 6 and all(s["unbiased"] for s in doc["spreads"])
    code, out, _ = run(capsys, "spreads", "--p", "3", "--n", "2", "--limit", "1")
    assert code == 0 and out.startswith("1 spreads")


def test_hyperplanes(capsys):
    code, out, _ = run(capsys, "hyperplanes")
    assert code == 0 and out.splitlines()[0] == "grid: 10, ovoid: 6, perp_set: 15"
    code, out, _ = run(capsys, "hyperplanes", "--subset", "4,5,6,7,8,9,10,11,12")
    assert out.startswith("grid 3x3")
    code, out, _ = run(capsys, "hyperplanes", "--p", "3", "--n", "2",
                       "--subset", "L1,M2,N3,P4,X3,X8,Y4,Y6,Z2,Z7")
    assert out.startswith("ovoid")


def test_mermin(capsys):
    code, out, _ = run(capsys, "mermin", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["row_products"] == [-1, -1, -1] and doc["column_products"] == [1, 1, 1]
    assert doc["contextual"] is True
    code, _, _ = run(capsys, "mermin", "--subset", "1,2,3,a,4,5,6,b,7")
    assert code == 2


def test_ringline(capsys):
    code, out, _ = run(capsys, "ringline", "--ring", "M2Z2", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and len(doc["points"]) == 35
    assert doc["units"] == ["1'", "2'", "9'", "11'", "12'", "13'"]
    assert len(doc["distant_to_both"]) == 6 and len(doc["neighbor_to_both"]) == 9
    code, out, _ = run(capsys, "ringline", "--ring", "F4")
    assert "5 points" in out and "neighbour pairs: 0" in out


def test_verify_exit_code_and_determinism(capsys, monkeypatch):
    code, out1, _ = run(capsys, "verify", "--suite", "ring_lines", "--format", "json")
    assert code == 0 and json.loads(out1)["passed"] is True
    monkeypatch.setenv(cli.THREADS_ENV, "3")
    code, out2, _ = run(capsys, "verify", "--suite", "ring_lines", "--format", "json")
    assert out1 == out2


def test_verify_all_threads_identical(capsys):
    code1, out1, _ = run(capsys, "verify", "--suite", "all", "--threads", "1")
    code4, out4, _ = run(capsys, "verify", "--suite", "all", "--threads", "4")
    assert code1 == code4 == 0 and out1 == out4
    assert out1.rstrip().endswith("overall: PASS")


def test_verify_failure_exit(capsys, monkeypatch):
    from pauligeom import suites
    from pauligeom.report import Report

    def broken():
        rep = Report("broken")
        rep.check("impossible", expected=1, measured=2)
        return [rep]

    monkeypatch.setitem(suites.SUITES, "broken", broken)
    code, out, _ = run(capsys, "verify", "--suite", "broken")
    assert code == 1 and "[FAIL] impossible" in out


def test_timings_flag(capsys):
    _, out, _ = run(capsys, "verify", "--suite", "polar", "--format", "json", "--timings")
    assert "seconds" in json.loads(out)["reports"][0]
    _, out, _ = run(capsys, "verify", "--suite", "polar", "--format", "json")
    assert "seconds" not in json.loads(out)["reports"][0]


def test_out_file(capsys, tmp_path):
    path = tmp_path / "p4.dot"
    code, out, _ = run(capsys, "graph", "--format", "dot", "--out", str(path), "--debug-oracle")
    assert code == 0 and out == "" and path.read_text().startswith("graph P4 {")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "pauligeom", "ringline", "--ring", "Z2xZ2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "9 points" in proc.stdout
