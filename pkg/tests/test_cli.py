from __future__ import annotations

import json

import pytest

from conftest import PROGRAMS
from mgtc.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def prog(name):
    return PROGRAMS / name


@pytest.mark.parametrize(
    "term, expected",
    [("7/2", "{3}"), ("-7/2", "{-3}"), ("0..2", "{0, 1, 2}"), ("2/0", "{}"), ("2+c", "{}")],
)
def test_eval(capsys, term, expected):
    code, out, _ = run(capsys, "eval", term)
    assert code == 0
    assert out.strip() == expected


def test_tight(capsys):
    code, out, _ = run(capsys, "tight", prog("rooms.mg"))
    assert code == 1 and out.strip() == "NOT TIGHT: cycle in/3 -> in/3"
    code, out, _ = run(capsys, "tight", prog("pairs.mg"))
    assert code == 0 and out.strip() == "TIGHT"


def test_tight_dot(capsys):
    code, out, _ = run(capsys, "tight", prog("pairs.mg"), "--format", "dot")
    assert code == 0 and out.startswith("digraph") and '"q/2" -> "p/1"' in out


def test_locally_tight(capsys):
    code, out, _ = run(capsys, "locally-tight", prog("rooms.mg"), "--input", prog("rooms.in"))
    assert code == 0 and out.startswith("LOCALLY TIGHT")


def test_iomodels_json(capsys):
    code, out, _ = run(capsys, "iomodels", prog("rooms.mg"), "--input", prog("rooms.in"), "--format", "json")
    assert code == 0
    models = json.loads(out)["models"]
    assert len(models) == 1 and "in(bob,hall,1)" in models[0]


def test_verify_equiv(capsys, tmp_path):
    dom = tmp_path / "dom.json"
    dom.write_text(json.dumps({"valuations": [{"h": 1}], "base": ["person(alice)", "in0(alice,hall)", "goto(alice,classroom,0)"]}))
    code, out, _ = run(
        capsys,
        "verify", "equiv", prog("rooms.mg"), prog("rooms2.mg"), "--assume", prog("as.fo"), "--domain", dom,
    )
    assert code == 0 and json.loads(out)["verdict"] == "equivalent-on-domain"


def test_verify_main_lemma_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "main-lemma", prog("toy.fo"), "--interp", prog("toy_i.in"))
    assert code == 0 and json.loads(out)["verdict"] == "holds"
    code, out, _ = run(capsys, "verify", "main-lemma", prog("toy.fo"), "--interp", prog("toy_j.in"))
    assert code == 2 and json.loads(out)["verdict"] == "hypothesis-violated"


def test_usage_errors_exit_3(capsys, tmp_path):
    with pytest.raises(SystemExit) as e:
        main(["bogus"])
    assert e.value.code == 3
    capsys.readouterr()
    code, _, err = run(capsys, "parse", tmp_path / "missing.mg")
    assert code == 3 and "cannot read" in err
    bad = tmp_path / "bad.mg"
    bad.write_text("p(X :- q.\n")
    code, _, err = run(capsys, "parse", bad)
    assert code == 3 and "bad.mg" in err
    code, _, _ = run(capsys, "ground", prog("pairs.mg"), "--int-min", "2", "--int-max", "1")
    assert code == 3


def test_output_is_deterministic(capsys):
    argv = ["complete", prog("rooms.mg"), "--format", "json"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second and first[0] == 0


def test_suite_command(capsys):
    code, out, _ = run(capsys, "verify", "suite", "prop1", "--random", "5", "--seed", "3")
    report = json.loads(out)
    assert code == 0 and report["conditions"]["cases"] == 5 and report["conditions"]["seed"] == 3
