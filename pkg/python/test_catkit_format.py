"""
Test the catkit text format: parse errors with their locations, canonical
printing and loading the shipped documents.
"""
import sys
import os

sys.path.insert(0, os.path.dirname(__file__))

import pytest

from categories.builders import walking_arrow
from categories.fincat import check_category, check_functor
from config import CATKIT_DATA_DIR
from data_processing.document_loader import (
    DocumentLoader,
    bundle_sections,
    category_section,
    document_of,
    functor_section,
    labelled_tree_section,
    strict_section,
    tree_section,
)
from globular.grafting import check_labelling, graft
from globular.trees import parse_tree
from groth.grothendieck import grothendieck
from groth.lax_bundle import check_lax_bundle
from groth.representable import is_representable_lax
from monoidal.strict import check_strict_monoidal
from monoidal.weak import check_monoidal
from multicategories.multicategory import check_multicategory
from profunctors.profunctor import check_profunctor
from utils.catkit_parser import parse, print_document
from utils.report import ParseError


@pytest.fixture(scope="module")
def documents():
    return DocumentLoader.load_directory(CATKIT_DATA_DIR)


@pytest.mark.parametrize(
    "text, code, line, column",
    [
        ("begin widget w\nend\n", "unknown-kind", 1, 7),
        ("end\n", "syntax", 1, 1),
        ("begin category C\n  object a b\nend\n", "arity-mismatch", 2, 3),
        ("begin category C\n  arrow a\nend\n", "syntax", 2, 3),
        ("begin category C\n  object a\n  morphism id a b\nend\n", "dangling-reference", 3, 17),
        ("begin tree t\n  shape [[]\nend\n", "syntax", 2, 12),
        (
            "begin multicategory M\n  object o\n  arrow m1 o o\n  identity o m1\n  compose m1 m1 m1 m1\nend\n",
            "arity-mismatch",
            5,
            14,
        ),
        ("begin tree t\n  shape []\nend\nbegin functor F\n  source t\n  target t\nend\n", "dangling-reference", 5, 10),
    ],
)
def test_parse_errors_carry_locations(text, code, line, column):
    with pytest.raises(ParseError) as error:
        parse(text)
    assert error.value.code == code
    assert error.value.line == line
    assert error.value.column == column


def test_unclosed_section():
    with pytest.raises(ParseError) as error:
        parse("begin category C\n  object a\n")
    assert error.value.code == "syntax"
    assert error.value.section == "C"
    assert str(error.value).startswith("[syntax]")
    assert "line 1" in str(error.value)


def test_comments_and_blank_lines_are_skipped():
    document = parse("# header\n\nbegin tree t\n  # inside\n  shape [[]]\nend\n")
    assert [s.name for s in document.sections] == ["t"]
    assert document.section("t").value("shape") == "[[]]"


def test_canonical_printing_is_byte_identical():
    path = CATKIT_DATA_DIR / "arrow.cat"
    text = path.read_text(encoding="utf-8")
    assert print_document(parse(text)) == text
    assert print_document(document_of([category_section(walking_arrow())])) == text


def test_shipped_documents_build(documents):
    print("=" * 70)
    print("Shipped catkit documents")
    print("=" * 70)
    assert set(documents) == {"arrow.cat", "bundles.lax", "cocycle.mon", "modules.prof", "operads.multi", "pasting.tree"}
    for file_name, document in documents.items():
        built = DocumentLoader.build(document)
        print(f"✓ {file_name}: {', '.join(built)}")
        assert list(built) == [s.name for s in document.sections]


def test_built_objects(documents):
    arrow = DocumentLoader.build(documents["arrow.cat"])["arrow"]
    assert arrow == walking_arrow()
    assert check_category(arrow).is_valid

    modules = DocumentLoader.build(documents["modules.prof"])
    assert check_profunctor(modules["bang"]).is_valid
    assert check_profunctor(modules["pick"]).is_valid
    assert check_functor(modules["to-point"]).is_valid

    assert check_monoidal(DocumentLoader.build(documents["cocycle.mon"])["cocycle"]).is_valid

    operads = DocumentLoader.build(documents["operads.multi"])
    assert check_multicategory(operads["one"]).is_valid
    assert check_strict_monoidal(operads["Z2-sum"]).is_valid

    pasting = DocumentLoader.build(documents["pasting.tree"])
    assert pasting["wedge"] == parse_tree("[[[],[]]]")
    assert check_labelling(pasting["pair"]).is_valid
    assert graft(pasting["pair"]) == parse_tree("[[],[],[]]")


def test_bundle_documents(documents):
    bundles = DocumentLoader.build(documents["bundles.lax"])
    for name in ("bang-collage", "gap-collage", "chain"):
        assert check_lax_bundle(bundles[name]).is_valid, name
    assert is_representable_lax(bundles["bang-collage"]).representable
    assert not is_representable_lax(bundles["gap-collage"]).representable
    assert is_representable_lax(bundles["chain"]).representable


def test_bundle_sections_rebuild(documents):
    chain = DocumentLoader.build(documents["bundles.lax"])["chain"]
    text = print_document(document_of(bundle_sections(chain)))
    rebuilt = DocumentLoader.build(parse(text))["chain"]
    assert check_lax_bundle(rebuilt).is_valid
    total, _ = grothendieck(chain)
    again, _ = grothendieck(rebuilt)
    assert (again.object_count, again.morphism_count) == (total.object_count, total.morphism_count)


def test_emitted_sections_rebuild(documents):
    modules = DocumentLoader.build(documents["modules.prof"])
    operads = DocumentLoader.build(documents["operads.multi"])
    pasting = DocumentLoader.build(documents["pasting.tree"])
    F, D = modules["to-point"], operads["Z2-sum"]
    sections = [
        category_section(F.source, "A"),
        category_section(F.target, "T"),
        functor_section(F, "A", "T", "to-point"),
        category_section(D.base, "Z2"),
        strict_section(D, "Z2", "Z2-sum"),
        tree_section(pasting["wedge"], "wedge"),
        labelled_tree_section(pasting["pair"], "pair"),
    ]
    rebuilt = DocumentLoader.build(parse(print_document(document_of(sections))))
    assert rebuilt["to-point"] == F
    assert rebuilt["Z2-sum"].base == D.base
    assert all(
        rebuilt["Z2-sum"].tensor_obj(a, b) == D.tensor_obj(a, b) for a in D.base.objects for b in D.base.objects
    )
    assert rebuilt["wedge"] == pasting["wedge"]
    assert rebuilt["pair"].labels == pasting["pair"].labels
