"""
Test the catkit command line: exit statuses on the shipped documents and
on broken input, and deterministic output for a fixed seed.
"""
import sys
import os

sys.path.insert(0, os.path.dirname(__file__))

import pytest

from catkit import EXIT_LAW, EXIT_OK, EXIT_STRUCTURAL, run
from config import CATKIT_DATA_DIR, DELTA_MAX

BROKEN_UNIT = """\
begin category bad
  object pt
  morphism id pt pt
  morphism e pt pt
  identity pt id
  compose id id id
  compose id e id
  compose e id e
  compose e e e
end
"""


def data(name: str) -> str:
    return str(CATKIT_DATA_DIR / name)


def test_validate_shipped_documents(capsys):
    for name in ("arrow.cat", "modules.prof", "cocycle.mon", "operads.multi", "pasting.tree", "bundles.lax"):
        assert run(["validate", data(name)]) == EXIT_OK, name
    output = capsys.readouterr().out
    assert "✓ category arrow" in output
    assert "✓ All" in output


def test_law_violation_exits_one(tmp_path, capsys):
    path = tmp_path / "bad.cat"
    path.write_text(BROKEN_UNIT, encoding="utf-8")
    assert run(["validate", str(path)]) == EXIT_LAW
    assert "left-unit" in capsys.readouterr().out


def test_parse_error_exits_two(tmp_path, capsys):
    path = tmp_path / "widget.cat"
    path.write_text("begin widget w\nend\n", encoding="utf-8")
    assert run(["validate", str(path)]) == EXIT_STRUCTURAL
    assert "parse error [unknown-kind]" in capsys.readouterr().out


def test_validate_random_is_deterministic(capsys):
    assert run(["validate", data("arrow.cat"), "--random", "3", "--seed", "7"]) == EXIT_OK
    first = capsys.readouterr().out
    assert run(["validate", data("arrow.cat"), "--random", "3", "--seed", "7"]) == EXIT_OK
    assert capsys.readouterr().out == first
    assert "unitors on 3 random profunctors" in first


def test_compose_prof(capsys):
    assert run(["compose-prof", data("modules.prof"), "bang", "pick"]) == EXIT_OK
    output = capsys.readouterr().out
    assert "begin profunctor bang-pick" in output
    assert run(["compose-prof", data("modules.prof"), "A", "pick"]) == EXIT_STRUCTURAL


def test_delta(capsys):
    assert run(["delta", "--max", "3"]) == EXIT_OK
    output = capsys.readouterr().out
    assert "✓ F(R(1)) agrees with monotone maps" in output
    assert run(["delta"]) == EXIT_OK
    assert f"up to {DELTA_MAX}" in capsys.readouterr().out


def test_kleisli_and_monoids():
    assert run(["kleisli"]) == EXIT_OK
    assert run(["kleisli", data("arrow.cat")]) == EXIT_OK
    assert run(["monoids"]) == EXIT_OK


def test_multicategory_commands():
    assert run(["free-monoidal", data("operads.multi")]) == EXIT_OK
    assert run(["classify-lax", data("operads.multi"), "--bound", "2"]) == EXIT_OK


def test_strictify(capsys):
    assert run(["strictify", data("cocycle.mon")]) == EXIT_OK
    output = capsys.readouterr().out
    assert "comparison functor is an equivalence" in output
    assert "laws (words ≤ 2)" in output


def test_strictify_reports_broken_pentagon(tmp_path, capsys):
    text = (CATKIT_DATA_DIR / "cocycle.mon").read_text(encoding="utf-8")
    path = tmp_path / "broken.mon"
    path.write_text(text.replace("associator 1 1 0 +0", "associator 1 1 0 -0"), encoding="utf-8")
    assert run(["validate", str(path)]) == EXIT_LAW
    capsys.readouterr()
    assert run(["strictify", str(path)]) == EXIT_LAW
    output = capsys.readouterr().out
    assert "✗ monoidal cocycle" in output
    assert "pentagon" in output


def test_tree_commands(capsys):
    assert run(["tree", "realize", "[[[],[]]]"]) == EXIT_OK
    assert "cell counts per dimension: (2, 3, 2)" in capsys.readouterr().out
    assert run(["tree", "compose", "0", "[[]]", "[[]]"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "[[],[]]"
    assert run(["tree", "compose", "1", "[[]]", "[[],[]]"]) == EXIT_STRUCTURAL
    assert run(["tree", "graft", data("pasting.tree")]) == EXIT_OK
    assert "pair: [[],[],[]]" in capsys.readouterr().out
    assert run(["tree", "check", "--max", "5", "--height", "2"]) == EXIT_OK


@pytest.mark.parametrize("command", ["build", "representable", "lifts"])
def test_groth_on_the_bundle_document(command):
    assert run(["groth", command, data("bundles.lax")]) == EXIT_OK


def test_groth_lifts_verdicts(capsys):
    run(["groth", "lifts", data("bundles.lax")])
    output = capsys.readouterr().out
    assert "verdict: neither" in output
    assert "verdict: split cofibration" in output


def test_groth_random_bundles():
    assert run(["groth", "build", "--random", "6"]) == EXIT_OK


def test_groth_needs_input(capsys):
    assert run(["groth", "build"]) == EXIT_STRUCTURAL
    assert "StructuralError" in capsys.readouterr().out
