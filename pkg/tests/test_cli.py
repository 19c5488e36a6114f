import subprocess
import sys

import pytest

from tiltlab.cli import run
from tiltlab.report import parse_report


def code(*argv):
    return run(list(argv))[0]


@pytest.mark.parametrize("argv", [
    ["check", "a4_cluster"],
    ["gorenstein", "fixtures/d4_cluster.alg"],
    ["resolve", "a4_cluster", "S1"],
    ["ext", "d4_cluster", "S1", "S2", "--degree", "1"],
    ["cy3", "d4_cluster"],
    ["stablecm", "a7_3cluster", "--cy", "4"],
    ["preproj", "--rank", "3"],
    ["relcy", "--rank", "2"],
    ["cluster", "enumerate", "--type", "A", "--rank", "3"],
    ["cluster", "mutate", "--type", "D", "--rank", "4", "--k", "1"],
    ["cluster", "endo", "--type", "A", "--rank", "4"],
    ["cluster", "neighbors", "--type", "A", "--rank", "3"],
    ["cluster", "resolve-in-C", "--type", "A", "--rank", "2", "--d", "3"],
    ["cluster", "from-tilting", "--type", "A", "--rank", "2", "--d", "3", "--tilting", "2:0,0:1"],
])
def test_success(argv):
    assert code(*argv) == 0


def test_refusals_and_input_errors(tmp_path):
    assert code("stablecm", "a7_3cluster", "--cy", "3") == 1
    gd2 = tmp_path / "gd2.alg"
    gd2.write_text("vertices 1 2 3\narrow a 1 2\narrow b 2 3\nrel +1 a*b\n")
    assert code("cy3", str(gd2)) == 1
    assert code("check", str(tmp_path / "missing.alg")) == 2
    bad = tmp_path / "bad.alg"
    bad.write_text("vertices 1\nbogus\n")
    assert code("check", str(bad)) == 2
    assert code("cluster", "mutate", "--d", "3", "--rank", "2") == 2


def test_json_report(tmp_path):
    out = tmp_path / "r.json"
    c, rep = run(["cluster", "enumerate", "--type", "E", "--rank", "6", "--json", str(out)])
    assert c == 0
    d = parse_report(out.read_text())
    assert d["passed"] and d["results"]["count"] == 833
    assert rep.passed


def test_deterministic_output(tmp_path):
    out = tmp_path / "r.json"
    run(["gorenstein", "d4_cluster", "--json", str(out)])
    first = out.read_bytes()
    run(["gorenstein", "d4_cluster", "--json", str(out)])
    assert out.read_bytes() == first


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "tiltlab.cli", "cluster", "enumerate", "--rank", "2"],
                       capture_output=True, text=True)
    assert p.returncode == 0
    assert "PASS" in p.stdout
