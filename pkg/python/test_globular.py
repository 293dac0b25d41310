"""
Test trees, pasting diagrams, the composition calculus on tree cells,
grafting of labelled trees and globular monoids.
"""
import sys
import os

sys.path.insert(0, os.path.dirname(__file__))

import pytest
from hypothesis import given, settings, strategies as st

from config import TREE_MAX_HEIGHT
from globular.calculus import check_tree_calculus, compose_k, composite_size
from globular.globular_monoid import constant_ambient, constant_monoid, check_globular_monoid, monoids_of_constant_ambient
from globular.grafting import (
    LabelledTree,
    check_labelling,
    check_nested_graft,
    globe_labelling,
    graft,
    graft_order_independent,
    identity_labelling,
)
from globular.realization import check_globular, direct_counts, realize
from globular.trees import (
    chain,
    enumerate_trees,
    format_tree,
    from_levels,
    height,
    level_counts,
    node_count,
    parse_tree,
    path_tree,
    to_levels,
    truncate,
)
from monoidal.monoids import MonoidInC
from monoidal.strict import abelian_group_strict
from utils.report import ParseError, StructuralError

SMALL_TREES = enumerate_trees(5, 4)
trees = st.sampled_from(SMALL_TREES)


def pair_labelling() -> LabelledTree:
    """Two arrows in a row, the first filled by two composable arrows."""
    return LabelledTree(
        parse_tree("[[],[]]"),
        {
            "v0": (),
            "v1": (),
            "v2": (),
            "0:v0": parse_tree("[[],[]]"),
            "1:v0": parse_tree("[[]]"),
        },
    )


def test_tree_syntax():
    tree = parse_tree("[[[],[]]]")
    assert tree == (((), ()),)
    assert format_tree(tree) == "[[[],[]]]"
    assert parse_tree(" [ [ [ ] , [ ] ] ] ") == tree
    assert level_counts(tree) == (1, 1, 2)
    assert (height(tree), node_count(tree)) == (2, 4)
    assert height(parse_tree("[]")) == 0


@pytest.mark.parametrize("text, column", [("[[]", 4), ("[]]", 3), ("[x]", 2), ("", 1)])
def test_tree_syntax_errors(text, column):
    with pytest.raises(ParseError) as error:
        parse_tree(text)
    assert error.value.code == "syntax"
    assert error.value.column == column


def test_tree_enumeration():
    assert [len(enumerate_trees(n, n)) for n in range(1, 6)] == [1, 2, 4, 9, 23]
    assert all(height(t) <= 2 for t in enumerate_trees(6, 2))
    assert len(set(SMALL_TREES)) == len(SMALL_TREES)


def test_level_presentation():
    for tree in SMALL_TREES:
        counts, parents = to_levels(tree)
        assert from_levels(counts, parents) == tree
    with pytest.raises(StructuralError):
        from_levels((1, 2, 2), ((0, 0), (1, 0)))
    with pytest.raises(StructuralError):
        from_levels((2,), ())


def test_realization_of_a_wedge():
    print("=" * 70)
    print("Pasting diagram of [[[],[]]]")
    print("=" * 70)
    G = realize(parse_tree("[[[],[]]]"))
    print(f"✓ cells per dimension: {G.cell_counts()}")
    assert G.cell_counts() == (2, 3, 2)
    assert check_globular(G).is_valid
    assert G.source[2]["0:0:v0"] == "0:v0"
    assert G.target[2]["0:0:v0"] == "0:v1"
    assert G.source[1]["0:v1"] == "v0" and G.target[1]["0:v1"] == "v1"


def test_chains_realize_to_globes():
    for k in range(TREE_MAX_HEIGHT + 1):
        assert realize(chain(k)).cell_counts() == (2,) * k + (1,)
    assert realize(path_tree(3)).cell_counts() == (4, 3)


@settings(max_examples=40, deadline=None)
@given(trees)
def test_realizations_are_globular(tree):
    G = realize(tree)
    assert check_globular(G).is_valid
    assert G.cell_counts() == direct_counts(tree)


def test_broken_globular_set_is_reported():
    G = realize(parse_tree("[[[]]]"))
    G.target[2]["0:0:v0"] = "v1"
    assert not check_globular(G).is_valid


def test_composition():
    arrow = chain(1)
    assert compose_k(arrow, arrow, 0) == path_tree(2)
    two_cell = chain(2)
    assert compose_k(two_cell, two_cell, 1) == parse_tree("[[[],[]]]")
    assert compose_k(two_cell, arrow, 1) == two_cell
    with pytest.raises(StructuralError):
        compose_k(arrow, path_tree(2), 1)
    with pytest.raises(StructuralError):
        compose_k(arrow, arrow, -1)


@settings(max_examples=40, deadline=None)
@given(trees, trees, st.integers(min_value=0, max_value=2))
def test_composite_sizes(a, b, k):
    if truncate(a, k) != truncate(b, k):
        return
    assert node_count(compose_k(a, b, k)) == composite_size(a, b, k)
    assert truncate(compose_k(a, b, k), k) == truncate(a, k)


def test_tree_calculus_laws():
    report = check_tree_calculus(enumerate_trees(5, 3), 3, max_nodes=8)
    assert report.is_valid, report.format()


def test_labellings():
    L = pair_labelling()
    assert check_labelling(L).is_valid
    assert graft(L) == parse_tree("[[],[],[]]")
    assert graft_order_independent(L)

    missing = LabelledTree(L.shape, {k: v for k, v in L.labels.items() if k != "v2"})
    assert "coverage" in check_labelling(missing).laws()
    too_tall = LabelledTree(L.shape, {**L.labels, "1:v0": parse_tree("[[[]]]")})
    assert "dimension" in check_labelling(too_tall).laws()
    assert check_labelling(LabelledTree(L.shape, too_tall.labels, dimension=2)).is_valid
    with pytest.raises(StructuralError):
        graft(missing)


def test_identity_and_globe_labellings():
    for tree in SMALL_TREES:
        assert graft(identity_labelling(tree)) == tree
        if height(tree) <= 3:
            assert graft(globe_labelling(tree, 3)) == tree
    with pytest.raises(StructuralError):
        globe_labelling(chain(3), 2)


def test_nested_grafting():
    outer = pair_labelling()
    inner = {x: identity_labelling(label) for x, label in outer.labels.items()}
    report = check_nested_graft(outer, inner)
    assert report.is_valid, report.format()

    wedge = parse_tree("[[[],[]]]")
    inner = {x: identity_labelling(label) for x, label in identity_labelling(wedge).labels.items()}
    assert check_nested_graft(identity_labelling(wedge), inner).is_valid


def test_globular_monoids_in_a_constant_ambient():
    C = abelian_group_strict(2)
    candidates = [MonoidInC(0, e, m) for e in range(2) for m in range(2)]
    assert monoids_of_constant_ambient(C, candidates, 2) == [MonoidInC(0, 0, 0), MonoidInC(0, 1, 1)]
    ambient = constant_ambient(C, 2)
    report = check_globular_monoid(ambient, constant_monoid(MonoidInC(0, 1, 0), 2))
    assert "level 1 ⊗_0: left-unit" in report.laws()
    with pytest.raises(StructuralError):
        check_globular_monoid(ambient, constant_monoid(MonoidInC(0, 0, 0), 1))
