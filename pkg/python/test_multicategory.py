"""
Test multicategories, their reading as list-profunctor monads, the list
monad, underlying multicategories and representability.
"""
import sys
import os

sys.path.insert(0, os.path.dirname(__file__))

from categories.builders import cyclic_group, poset_category, terminal_category, walking_arrow
from data_processing.corpus import multicategory_corpus
from monoidal.strict import discrete_group_strict, terminal_strict
from monoidal.weak import check_monoidal
from multicategories.bimodules import check_list_prof_monad, from_prof_monad, roundtrip_is_identity, to_prof_monad
from multicategories.list_monad import ListMonad, check_cartesian, check_list_monad, check_naturality
from multicategories.multicategory import (
    Multicategory,
    MulticatMorphism,
    binary_without_unit,
    check_multicat_morphism,
    check_multicategory,
    is_multicat_isomorphism,
    linear_core,
    multicategory_from_category,
    terminal_multicategory,
)
from multicategories.representability import induced_monoidal, induced_tensor, is_representable, is_universal
from multicategories.underlying import underlying_multicat
from categories.equivalence import find_isomorphism
from utils.report import StructuralError

import pytest


def test_terminal_multicategory():
    print("=" * 70)
    print("Terminal multicategory")
    print("=" * 70)
    M = terminal_multicategory(3)
    report = check_multicategory(M)
    print(report.format())
    assert report.is_valid
    assert [M.arity(a) for a in M.arrows()] == [0, 1, 2, 3]
    assert M.compose(2, (0, 3)) == 3
    assert find_isomorphism(linear_core(M), terminal_category()) is not None


def test_associativity_defect_is_reported():
    M = multicategory_from_category(cyclic_group(3))
    comp = dict(M.comp)
    comp[(1, (1,))] = 0
    broken = Multicategory(M.objects, list(zip(M.arrow_names, M.sources, M.targets)), M.identities, comp, M.bound)
    report = check_multicategory(broken)
    assert "associativity" in report.laws()


def test_arity_mismatch_is_structural():
    with pytest.raises(StructuralError):
        Multicategory(["*"], [("id", (0,), 0), ("m", (0, 0), 0)], [0], {(1, (0,)): 1}, 2)


def test_categories_as_multicategories():
    for C in (walking_arrow(), cyclic_group(2), poset_category(3, lambda a, b: a <= b)):
        M = multicategory_from_category(C, 3)
        assert check_multicategory(M).is_valid
        assert linear_core(M) == C


def test_multicategory_morphisms():
    M = terminal_multicategory(2)
    identity = MulticatMorphism(M, M, [0], list(M.arrows()))
    assert check_multicat_morphism(identity).is_valid
    assert is_multicat_isomorphism(identity)
    shuffled = MulticatMorphism(M, M, [0], [0, 2, 1])
    assert "boundary" in check_multicat_morphism(shuffled).laws()


def test_underlying_of_terminal_is_terminal():
    R = underlying_multicat(terminal_strict(), 3)
    assert check_multicategory(R).is_valid
    M = terminal_multicategory(3)
    assert is_multicat_isomorphism(MulticatMorphism(M, R, [0], [0, 1, 2, 3]))


def test_roundtrip_on_the_corpus():
    corpus = multicategory_corpus()
    assert len(corpus) >= 5
    for M in corpus:
        assert check_multicategory(M).is_valid, M
        T = to_prof_monad(M)
        assert check_list_prof_monad(T).is_valid
        assert roundtrip_is_identity(M)
        assert check_multicategory(from_prof_monad(T)).is_valid


def test_list_monad_laws():
    monad = ListMonad(3)
    assert check_list_monad(monad, ["a", "b"]).is_valid
    f = {0: "x", 1: "x", 2: "y"}
    assert check_naturality(monad, f, [0, 1, 2]).is_valid
    assert check_cartesian(monad, f, [0, 1, 2], ["x", "y"]).is_valid
    assert monad.mult(((1,), (), (2, 3))) == (1, 2, 3)
    with pytest.raises(ValueError):
        ListMonad(-1)


def test_representability():
    M = terminal_multicategory(3)
    assert all(is_universal(M, a) for a in M.arrows())
    assert is_representable(M)

    binary = binary_without_unit()
    assert check_multicategory(binary).is_valid
    result = is_representable(binary)
    assert not result
    assert () in result.missing


def test_underlying_multicategory_is_representable():
    R = underlying_multicat(discrete_group_strict(2), 3)
    assert check_multicategory(R).is_valid
    result = is_representable(R)
    assert result.representable
    induced = induced_tensor(R, result)
    assert induced.tensor == {(x, y): (x + y) % 2 for x in range(2) for y in range(2)}
    assert induced.unit == 0
    assert check_monoidal(induced_monoidal(R, induced)).is_valid
