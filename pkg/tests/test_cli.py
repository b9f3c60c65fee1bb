import io
import json
import shutil
import subprocess
from importlib import resources
from pathlib import Path

import pytest

from cli_cases import CASES
from conftest import fixture, relabel_randomly
from ograph.cli import run
from ograph.core import serialize, to_object

DATA = resources.files("ograph") / "data"
GOLDEN = Path(__file__).parent / "golden"


def _argv(argv):
    return [str(DATA / f"{a[1:]}.og") if a.startswith("@") else a for a in argv]


def call(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(_argv(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    code, out, err = call(CASES[name])
    assert code == 0, err
    assert out == (GOLDEN / f"{name}.txt").read_text()


def test_info_example():
    assert call(["info", "@lens3"])[1] == "V=3 E=6 F=4 H1=Z/3\n"


def test_theorem1_summary():
    code, out, _ = call(["verify", "theorem1"])
    assert code == 0
    assert out.splitlines()[-1] == "theorem1: 16/16 derivations OK"


def test_failing_condition_exit_code():
    code, out, err = call(["move", "apply", "@lens2", "--kind", "ps-I", "--site", "ps-I@e0,e3"])
    assert code == 1
    assert "(PS-I)" in err and "fails" in err
    assert out == ""


def test_unknown_site():
    code, _, err = call(["move", "apply", "@lens2", "--kind", "ps-I", "--site", "e0,e9"])
    assert code == 1 and "no ps-I site" in err


def test_usage_errors():
    assert call(["bogus"])[0] == 2
    assert call([])[0] == 2
    assert call(["info"])[0] == 2
    assert call(["move", "list", "@lens2", "--kind", "Q7"])[0] == 2
    assert call(["info", "/nonexistent/x.og"])[0] == 2
    assert call(["--help"])[0] == 0


def test_parse_error_exit_code(tmp_path):
    p = tmp_path / "bad.og"
    p.write_text("weights none\ncrossing c +\nedge e c.ovr_out -> c.over_in\n")
    code, _, err = call(["info", str(p)])
    assert code == 2 and "ovr_out" in err


def test_invalid_graph_exit_code(tmp_path):
    p = tmp_path / "open.og"
    p.write_text("weights none\ncrossing c +\nedge e c.over_out -> c.over_in\n")
    code, _, err = call(["validate", str(p)])
    assert code == 1 and "unmatched" in err


def test_framed_check_failures(tmp_path):
    assert call(["framed-check", "@lens3"])[0] == 1
    g = fixture("l21")
    w = g.weight_map()
    w["e1"] += 1
    p = tmp_path / "off.og"
    p.write_text(serialize(g.with_weights(w)))
    code, out, _ = call(["framed-check", str(p)])
    assert code == 1 and out.startswith("not framed")


def test_export_dot(tmp_path):
    out_file = tmp_path / "s3.dot"
    code, out, _ = call(["export-dot", "@s3", "-o", str(out_file)])
    assert code == 0
    text = out_file.read_text()
    assert text.startswith("digraph ograph {")
    assert '"c0" [label="c0 +"];' in text
    assert "(-2)" in text


def test_move_apply_output_file(tmp_path):
    target = tmp_path / "out.og"
    code, out, _ = call(["move", "apply", "@lens1", "--kind", "ps-I", "--site", "ps-I@e0,e1", "-o", str(target)])
    assert code == 0 and out == f"wrote {target}\n"
    assert target.read_text() == (GOLDEN / "move_apply_lens1.txt").read_text()


def test_json_input(tmp_path):
    p = tmp_path / "l21.json"
    p.write_text(json.dumps(to_object(fixture("l21"))))
    assert call(["info", str(p)])[1] == call(["info", "@l21"])[1]


@pytest.mark.parametrize("argv", [["info"], ["cells"], ["euler-cochain"], ["homology"], ["mod2"],
                                  ["move", "list"], ["involute", "--which", "reverse"]])
def test_reports_ignore_labels(tmp_path, argv):
    p = tmp_path / "relabeled.og"
    p.write_text(serialize(relabel_randomly(fixture("l21"), 3), canonical=False))
    assert call(argv + ["@l21"]) == call(argv + [str(p)])


def test_log_env(monkeypatch):
    monkeypatch.setenv("OGRAPH_LOG", "debug")
    err = io.StringIO()
    assert run(_argv(["homology", "@s3"]), io.StringIO(), err) == 0


def test_seeded_walk_repeats():
    a = call(["verify", "random", "--seed", "1", "--steps", "10", "--start", "@lens2"])
    b = call(["verify", "random", "--seed", "1", "--steps", "10", "--start", "@lens2"])
    assert a == b and a[0] == 0


@pytest.mark.skipif(shutil.which("ograph") is None, reason="console script not installed")
def test_console_script():
    p = subprocess.run(["ograph", "info", str(DATA / "lens3.og")], capture_output=True, text=True)
    assert p.returncode == 0
    assert p.stdout == "V=3 E=6 F=4 H1=Z/3\n"
