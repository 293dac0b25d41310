"""
Test finite categories, functors, comma categories and equivalence checks.
"""
import sys
import os

sys.path.insert(0, os.path.dirname(__file__))

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from categories.builders import (
    arrow_category,
    cyclic_group,
    discrete_category,
    disjoint_union,
    inflate,
    poset_category,
    terminal_category,
    walking_arrow,
)
from categories.comma import comma_category
from categories.equivalence import EquivalenceStatus, equivalence_check, find_isomorphism
from categories.fincat import (
    FinCat,
    Functor,
    check_category,
    check_functor,
    check_nat_trans,
    constant_functor,
    enumerate_functors,
    identity_functor,
    opposite,
    product_category,
)
from data_processing.corpus import random_category, random_poset
from utils.report import StructuralError

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def corrupted(cat: FinCat, g: int, f: int, value: int) -> FinCat:
    table = np.array(cat.table)
    table[g, f] = value
    return FinCat(
        cat.object_count,
        list(zip(cat.dom.tolist(), cat.cod.tolist())),
        list(cat.identities),
        table,
        object_names=cat.object_names,
        morphism_names=cat.morphism_names,
    )


def test_walking_arrow_is_a_category():
    print("=" * 70)
    print("Category axioms")
    print("=" * 70)
    C = walking_arrow()
    report = check_category(C)
    print(report.format())
    assert report.is_valid
    assert (C.object_count, C.morphism_count) == (2, 3)


def test_unit_defect_is_reported():
    C = walking_arrow()
    broken = corrupted(C, C.morphism_index("u"), C.morphism_index("id_a"), C.morphism_index("id_a"))
    report = check_category(broken)
    assert not report.is_valid
    assert "right-unit" in report.laws()


def test_cyclic_group_is_a_category():
    assert check_category(cyclic_group(2)).is_valid
    assert check_category(cyclic_group(5)).is_valid


def test_malformed_indices_are_structural():
    with pytest.raises(StructuralError):
        FinCat(1, [(0, 1)], [0], {})
    with pytest.raises(StructuralError):
        FinCat(1, [(0, 0)], [3], {(0, 0): 0})
    with pytest.raises(StructuralError):
        FinCat(1, [(0, 0)], [0], {(0, 0): 7})


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_random_categories_are_valid(seed):
    C = random_category(np.random.default_rng(seed))
    assert check_category(C).is_valid
    assert opposite(opposite(C)) == C
    assert check_category(opposite(C)).is_valid


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_every_single_corruption_of_a_poset_is_caught(seed):
    C = random_poset(np.random.default_rng(seed), 3)
    for g in C.morphisms:
        for f in C.morphisms:
            if C.composite(g, f) is None:
                continue
            for value in [-1] + [h for h in C.morphisms if h != C.composite(g, f)]:
                assert not check_category(corrupted(C, g, f, value)).is_valid


def test_functor_checks():
    C = walking_arrow()
    assert check_functor(identity_functor(C)).is_valid
    assert check_functor(constant_functor(C, C, 1)).is_valid
    bad = Functor(C, C, [0, 1], [0, 1, C.morphism_index("id_a")], name="bad")
    report = check_functor(bad)
    assert "endpoints" in report.laws()
    with pytest.raises(StructuralError):
        Functor(C, C, [0, 2], [0, 1, 2])


def test_functor_counts():
    A = walking_arrow()
    assert len(list(enumerate_functors(A, A))) == 3
    assert len(list(enumerate_functors(terminal_category(), poset_category(4, lambda a, b: a <= b)))) == 4
    assert len(list(enumerate_functors(cyclic_group(2), cyclic_group(3)))) == 1
    assert len(list(enumerate_functors(cyclic_group(2), cyclic_group(2)))) == 2
    assert len(list(enumerate_functors(A, A, limit=2))) == 2
    for F in enumerate_functors(cyclic_group(4), cyclic_group(2)):
        assert check_functor(F).is_valid


def test_comma_of_identities_is_the_arrow_category():
    for X in (walking_arrow(), poset_category(3, lambda a, b: a <= b), cyclic_group(2)):
        comma = comma_category(identity_functor(X), identity_functor(X))
        direct = arrow_category(X)
        assert comma.category.object_count == direct.object_count == X.morphism_count
        assert comma.category.morphism_count == direct.morphism_count
        assert find_isomorphism(comma.category, direct) is not None
        assert check_category(comma.category).is_valid
        assert check_nat_trans(comma.cell).is_valid


def test_comma_of_points_is_a_hom_set():
    Z = poset_category(3, lambda a, b: a <= b)
    one = terminal_category()
    for a in Z.objects:
        for b in Z.objects:
            comma = comma_category(constant_functor(one, Z, a), constant_functor(one, Z, b))
            assert comma.category.object_count == len(Z.hom(a, b))
    G = cyclic_group(3)
    comma = comma_category(constant_functor(one, G, 0), constant_functor(one, G, 0))
    assert comma.category.object_count == 3
    trivial = comma_category(identity_functor(one), identity_functor(one))
    assert (trivial.category.object_count, trivial.category.morphism_count) == (1, 1)


def test_comma_needs_a_common_target():
    one = terminal_category()
    with pytest.raises(StructuralError):
        comma_category(identity_functor(one), identity_functor(walking_arrow()))


def test_equivalence_check():
    C = poset_category(3, lambda a, b: a <= b)
    assert equivalence_check(identity_functor(C)).status is EquivalenceStatus.EQUIVALENT

    inflated, collapse = inflate(C, 1)
    assert check_category(inflated).is_valid
    assert check_functor(collapse).is_valid
    result = equivalence_check(collapse)
    assert result.is_equivalence
    assert set(result.witnesses) == set(C.objects)

    squash = constant_functor(walking_arrow(), terminal_category(), 0)
    result = equivalence_check(squash)
    assert result.status is EquivalenceStatus.NOT_EQUIVALENT
    assert result.not_full


def test_equivalence_reports_indeterminate_when_the_budget_runs_out():
    G = cyclic_group(4)
    inflated, _ = inflate(G, 0)
    section = Functor(G, inflated, [0], list(inflated.hom(0, 0)))
    assert check_functor(section).is_valid
    result = equivalence_check(section, search_budget=0)
    assert result.status is EquivalenceStatus.INDETERMINATE
    assert equivalence_check(section).is_equivalence


def test_isomorphisms_and_inverses():
    walking_iso, _ = inflate(terminal_category(), 0)
    assert check_category(walking_iso).is_valid
    assert all(walking_iso.is_isomorphism(f) for f in walking_iso.morphisms)
    assert not walking_arrow().is_isomorphism(walking_arrow().morphism_index("u"))
    assert find_isomorphism(walking_arrow(), poset_category(2, lambda a, b: a <= b)) is not None
    assert find_isomorphism(walking_arrow(), discrete_category(2)) is None


def test_product_and_coproduct():
    A = walking_arrow()
    G = cyclic_group(2)
    total, p, q = product_category(A, G)
    assert check_category(total).is_valid
    assert check_functor(p).is_valid and check_functor(q).is_valid
    assert total.morphism_count == A.morphism_count * G.morphism_count
    union = disjoint_union(A, G)
    assert check_category(union).is_valid
    assert union.object_names == ("La", "Lb", "R*")
