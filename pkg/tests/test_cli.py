import json
from fractions import Fraction
import shutil
import subprocess
import sys

import pytest

from holgds.classify import classify_a1b, classify_ternary
from holgds.cli import EXIT_BOUND, EXIT_INPUT, EXIT_OK, build_parser, chain_gadgeture, main
from holgds.evaluate import evaluate
from holgds.exactnum import scalar_text
from holgds.gadgets import LADDER_CLASSES, ladder_gadgeture
from holgds.grids import check_pairing, parse_instance, parse_source_graph
from holgds.transforms import double, gds_to_holant4, holant_to_gds

from conftest import DATA, data_text


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


# -- eval -----------------------------------------------------------------------------

@pytest.mark.parametrize("name, extra, want", [
    ("k2_ds.json", [], "3"),
    ("c4_ds.json", [], "11"),
    ("triangle_eq.json", ["--power", "2"], "4"),
    ("k2_ds.json", ["--method", "brute"], "3"),
])
def test_eval(capsys, name, extra, want):
    code, out, _ = run(capsys, "eval", DATA / name, *extra)
    assert code == EXIT_OK and out.strip() == want


def test_eval_json(capsys):
    code, out, _ = run(capsys, "eval", DATA / "c4_ds.json", "--json")
    assert json.loads(out) == {"value": "11"}


def test_eval_matches_library(capsys):
    for name in ("k2_ds.json", "c4_ds.json", "triangle_eq.json"):
        _, out, _ = run(capsys, "eval", DATA / name)
        assert out.strip() == scalar_text(evaluate(parse_instance(data_text(name))))


def test_eval_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "eval", tmp_path / "nope.json")
    assert code == EXIT_INPUT and "cannot read" in err


def test_eval_malformed(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"kind": "gds", "signatures": {"f": {"arity": 1, "domain": 2, "symmetric": ["1/0", "1"]}},'
                 ' "vertices": [{"id": 0, "sig": "f"}], "edges": []}')
    code, _, err = run(capsys, "eval", p)
    assert code == EXIT_INPUT and "signatures.f" in err


def test_eval_too_large(capsys, monkeypatch):
    monkeypatch.setenv("HOLGDS_MAX_BITS", "2")
    code, _, _ = run(capsys, "eval", DATA / "c4_ds.json", "--method", "brute")
    assert code == EXIT_BOUND


def test_usage_error_is_input_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["eval"])
    assert info.value.code == EXIT_INPUT
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == EXIT_INPUT


# -- gadgeture --------------------------------------------------------------------------

def test_gadgeture_ladder_collapsed(capsys):
    code, out, _ = run(capsys, "gadgeture", "--builtin", "ladder", "--steps", 0, "--collapsed")
    assert code == EXIT_OK and out.strip() == "57 179 194 96 165"


def test_gadgeture_chain(capsys):
    code, out, _ = run(capsys, "gadgeture", "--builtin", "chain", "--steps", 1)
    assert out.strip() == "0 1 1 1"
    assert chain_gadgeture(5) == [6, 11, 9, 11]


def test_gadgeture_ladder_matches_recurrence_and_golden(capsys):
    golden = json.loads(data_text("golden_gadgetures.json"))["ladder"]["2"]
    _, out, _ = run(capsys, "gadgeture", "--steps", 2)
    assert out.split() == [str(x) for x in ladder_gadgeture(2).table] == [str(x) for x in golden]
    _, out_brute, _ = run(capsys, "gadgeture", "--steps", 2, "--brute")
    assert out_brute == out


def test_gadgeture_json(capsys):
    _, out, _ = run(capsys, "gadgeture", "--steps", 1, "--collapsed", "--json")
    vec = json.loads(out)["gadgeture"]
    full = ladder_gadgeture(1).table
    assert vec == [str(full[c[0]]) for c in LADDER_CLASSES]


def test_gadgeture_file(capsys):
    code, out, _ = run(capsys, "gadgeture", "--file", DATA / "ladder_h0.json")
    assert code == EXIT_OK and out.split()[:4] == ["57", "179", "179", "194"]


def test_gadgeture_errors(capsys):
    assert run(capsys, "gadgeture", "--steps", -1)[0] == EXIT_INPUT
    assert run(capsys, "gadgeture", "--builtin", "chain", "--steps", 0)[0] == EXIT_INPUT
    assert run(capsys, "gadgeture", "--builtin", "chain", "--collapsed", "--steps", 1)[0] == EXIT_INPUT
    # H_9 has 26 internal vertices, beyond the brute-force bound
    assert run(capsys, "gadgeture", "--steps", 9, "--brute")[0] == EXIT_BOUND


# -- classify ----------------------------------------------------------------------------

def test_classify_symmetric(capsys):
    code, out, _ = run(capsys, "classify", "--symmetric", "1,0,0,5")
    assert code == EXIT_OK and out.strip() == classify_ternary([1, 0, 0, 5]).text()
    assert out.startswith("FP Gen-Eq")


def test_classify_planar_json(capsys):
    _, out, _ = run(capsys, "classify", "--symmetric", "2,3,3,2", "--planar", "--json")
    js = json.loads(out)
    assert js["verdict"] == "FP" and js["case"] == "planar-case-4" and js["planar_only"]


def test_classify_a1b(capsys):
    _, out, _ = run(capsys, "classify", "--a1b", "2", "1/2")
    assert out.strip() == classify_a1b(2, Fraction(1, 2)).text()
    _, out, _ = run(capsys, "classify", "--a1b", "2", "2", "--planar")
    assert "X^3=Z" in out and "planar-only" in out


def test_classify_uniform_gds(capsys):
    code, out, _ = run(capsys, "classify", "--symmetric", "0,1,1,1", "--uniform-gds")
    assert code == EXIT_OK and out.startswith("Refused")


def test_classify_bad_input(capsys):
    assert run(capsys, "classify", "--symmetric", "1,2")[0] == EXIT_INPUT
    assert run(capsys, "classify", "--symmetric", "1,x,0,0")[0] == EXIT_INPUT


# -- transform ---------------------------------------------------------------------------

def test_transform_holant_to_gds(capsys):
    _, out, _ = run(capsys, "transform", "holant-to-gds", DATA / "triangle_eq.json")
    grid = parse_instance(out)
    assert grid == holant_to_gds(parse_instance(data_text("triangle_eq.json")))
    assert evaluate(grid) == 2


def test_transform_gds_to_holant4(capsys):
    _, out, _ = run(capsys, "transform", "gds-to-holant4", DATA / "c4_ds.json")
    grid = parse_instance(out)
    assert grid == gds_to_holant4(parse_instance(data_text("c4_ds.json")))
    assert evaluate(grid) == 11


def test_transform_double(capsys):
    _, out, _ = run(capsys, "transform", "double", DATA / "k33.json")
    g = parse_source_graph(out)
    assert g == double(parse_source_graph(data_text("k33.json")))
    assert g.vertex_count == 12 and check_pairing(g)


def test_transform_tripartite(capsys, tmp_path):
    _, out, _ = run(capsys, "transform", "tripartite", DATA / "k33.json", "--matrix", "1,1;1,0")
    p = tmp_path / "tri.json"
    p.write_text(out)
    _, val, _ = run(capsys, "eval", p)
    assert val.strip() == "15"


def test_transform_errors(capsys):
    assert run(capsys, "transform", "holant-to-gds", DATA / "k2_ds.json")[0] == EXIT_INPUT
    assert run(capsys, "transform", "tripartite", DATA / "k33.json")[0] == EXIT_INPUT


def test_transform_json_is_canonical_json(capsys):
    _, out, _ = run(capsys, "transform", "gds-to-holant4", DATA / "k2_ds.json", "--json")
    assert json.loads(out)["kind"] == "holant4"


# -- reduce ------------------------------------------------------------------------------

def test_reduce_k33_is_gated(capsys):
    code, _, err = run(capsys, "reduce", "vc-ds", DATA / "k33.json")
    assert code == EXIT_BOUND and "382200" in err


# -- verify and determinism --------------------------------------------------------------

def test_verify_command(capsys):
    code, out, _ = run(capsys, "verify")
    lines = out.strip().splitlines()
    assert code == EXIT_OK and len(lines) == 13
    assert all(line.startswith("[PASS]") for line in lines)


def test_output_deterministic(capsys):
    first = run(capsys, "transform", "gds-to-holant4", DATA / "c4_ds.json")[1]
    second = run(capsys, "transform", "gds-to-holant4", DATA / "c4_ds.json")[1]
    assert first == second


def test_parser_lists_all_commands():
    text = build_parser().format_help()
    for cmd in ("eval", "gadgeture", "reduce", "classify", "transform", "verify"):
        assert cmd in text


def test_console_script_subprocess():
    exe = shutil.which("holgds")
    argv = [exe] if exe else [sys.executable, "-m", "holgds.cli"]
    proc = subprocess.run(argv + ["eval", str(DATA / "k2_ds.json")], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "3"
    proc = subprocess.run(argv + ["eval", str(DATA / "missing.json")], capture_output=True, text=True)
    assert proc.returncode == 1
