"""
Test strict and weak monoidal categories, the free strict monoidal
category, Δ as the monoid classifier, lax-morphism classification and
strictification.
"""
import sys
import os

sys.path.insert(0, os.path.dirname(__file__))

import numpy as np
import pytest

from categories.equivalence import EquivalenceStatus
from data_processing.corpus import multicategory_corpus
from monoidal.classification import classify_lax_morphisms
from monoidal.delta import check_delta_iso, count_table, delta, monotone_count, monotone_maps
from monoidal.free import check_free_unit, counit, free_strict_monoidal
from monoidal.monoids import classify_monoids
from monoidal.strict import (
    abelian_group_strict,
    check_strict_functor,
    check_strict_monoidal,
    discrete_group_strict,
    hom_size_table,
    relabel_strict,
    terminal_strict,
)
from monoidal.strictify import strictify
from monoidal.weak import check_monoidal, cocycle_category, from_strict, non_cocycle, trivial_cocycle
from multicategories.multicategory import terminal_multicategory
from utils.report import CoherenceError, StructuralError


def test_strict_monoidal_examples():
    for C in (terminal_strict(), discrete_group_strict(3), abelian_group_strict(2), delta(3)):
        report = check_strict_monoidal(C)
        assert report.is_valid, report.format()
        if C.name != "Δ≤3":
            assert check_monoidal(from_strict(C)).is_valid


def test_delta_hom_sizes():
    print("=" * 70)
    print("Monotone maps n -> m")
    print("=" * 70)
    D = delta(4)
    assert len(D.hom(2, 2)) == 3
    for n in range(5):
        for m in range(5):
            assert len(D.hom(n, m)) == len(monotone_maps(n, m)) == monotone_count(n, m)
    assert [monotone_count(n, 2) for n in range(7)] == [1, 2, 3, 4, 5, 6, 7]
    assert monotone_count(3, 0) == 0 and monotone_count(0, 0) == 1
    for n, m, direct, free, closed in count_table(3):
        print(f"  Δ({n},{m}) = {direct}")
        assert direct == free == closed


def test_delta_is_the_free_strict_monoidal_category_on_one():
    report = check_delta_iso(5)
    assert report.is_valid, report.format()


def test_free_strict_monoidal_unit():
    for M in multicategory_corpus():
        assert check_free_unit(free_strict_monoidal(M)).is_valid
    F = free_strict_monoidal(terminal_multicategory(3))
    assert check_strict_monoidal(F, 2).is_valid
    words = list(F.iter_objects(2))
    sizes = hom_size_table(F, words)
    assert np.array_equal(sizes, [[monotone_count(len(a), len(b)) for b in words] for a in words])


def test_counit_is_strict_monoidal():
    D = discrete_group_strict(2)
    assert check_strict_functor(counit(D, 2), 2).is_valid


def test_monoid_classification():
    print("=" * 70)
    print("Monoids as strict monoidal functors out of Δ")
    print("=" * 70)
    expected = {"1": 1, "Z/2": 1, "BZ/2": 2}
    for C in (terminal_strict(), discrete_group_strict(2), abelian_group_strict(2)):
        result = classify_monoids(C)
        print(f"✓ {C.name}: {len(result.monoids)} monoid(s)")
        assert result.certified
        assert len(result.monoids) == len(result.functors) == expected[C.name]
        assert not result.undecided

    result = classify_monoids(delta(3))
    assert result.certified
    assert [m.carrier for m in result.monoids] == [0, 1]
    assert result.undecided == [2, 3]


def test_lax_morphism_classification():
    M = terminal_multicategory(2)
    for D, count in ((discrete_group_strict(2), 1), (abelian_group_strict(2), 2)):
        result = classify_lax_morphisms(M, D)
        assert result.certified
        assert len(result.left) == len(result.right) == count


def test_relabelled_copy_is_monoidal():
    C = discrete_group_strict(3)
    R = relabel_strict(C, [0, 2, 1])
    assert check_strict_monoidal(R).is_valid
    assert R.unit == 0
    assert all(R.tensor_obj(a, b) == C.tensor_obj(a, b) for a in range(3) for b in range(3))
    assert list(R.base.object_names) == ["0", "2", "1"]
    assert R.morphism_labels == (0, 2, 1)
    with pytest.raises(StructuralError):
        relabel_strict(C, [0, 0, 1])


@pytest.mark.parametrize(
    "C, permutation",
    [(discrete_group_strict(3), [0, 2, 1]), (delta(3), [3, 2, 1, 0])],
)
def test_monoid_classification_is_stable_under_relabelling(C, permutation):
    R = relabel_strict(C, permutation)
    before = classify_monoids(C)
    after = classify_monoids(R)

    def moved_back(m):
        return (permutation.index(m.carrier), R.morphism_labels[m.unit], R.morphism_labels[m.mult])

    assert {moved_back(m) for m in after.monoids} == {(m.carrier, m.unit, m.mult) for m in before.monoids}
    assert len(after.functors) == len(before.functors)
    assert sorted(permutation.index(X) for X in after.undecided) == sorted(before.undecided)


def test_cocycle_categories():
    assert check_monoidal(cocycle_category()).is_valid
    assert check_monoidal(cocycle_category(trivial_cocycle)).is_valid
    report = check_monoidal(cocycle_category(non_cocycle))
    assert "pentagon" in report.laws()


def test_strictification_of_the_sign_category():
    print("=" * 70)
    print("Strictification")
    print("=" * 70)
    result = strictify(cocycle_category())
    print(result.equivalence.summary())
    assert result.certified
    assert result.equivalence.status is EquivalenceStatus.EQUIVALENT
    S = result.strict
    assert len(S.hom((0,), (0,))) == 2
    assert len(S.hom((0,), (1,))) == 0
    assert len(S.hom((), (0,))) == 2
    assert len(S.hom((1, 1), ())) == 2


def test_strictification_of_trivial_and_strict_constraints():
    for C in (cocycle_category(trivial_cocycle), from_strict(discrete_group_strict(2))):
        result = strictify(C)
        assert result.certified, C.name
        assert result.equivalence.status is EquivalenceStatus.EQUIVALENT
        assert result.strict_report.subject.endswith("laws (words ≤ 2)")


def test_strictify_rejects_incoherent_input():
    with pytest.raises(CoherenceError):
        strictify(cocycle_category(non_cocycle))
