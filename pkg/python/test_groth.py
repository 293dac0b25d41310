"""
Test the C⋆ monad, lax bundles into profunctors, their total categories,
representability and cocartesian lifts.
"""
import sys
import os

sys.path.insert(0, os.path.dirname(__file__))

import numpy as np
import pytest

from categories.builders import cyclic_group, inflate, poset_category, terminal_category, walking_arrow
from categories.equivalence import find_isomorphism, is_isomorphism_functor
from categories.fincat import check_category, check_functor, constant_functor, identity_functor, product_category
from config import DEFAULT_SEED, RANDOM_BUNDLE_COUNT
from data_processing.corpus import lax_bundles, strict_chain
from groth.cstar import algebra_of, check_action, check_star_algebra, classify_star_algebras, cstar, star
from groth.grothendieck import grothendieck
from groth.lax_bundle import (
    LaxProfFunctor,
    check_lax_bundle,
    check_pseudo_data,
    collage,
    lax_from_functor,
    lax_from_pseudo,
    transport_bundle,
)
from groth.lifts import NEITHER, SPLIT, COFIBRATION, check_composite_lifts, cocartesian_lifts
from groth.representable import check_pseudo_coherence, is_representable_lax
from profunctors.profunctor import Profunctor
from utils.report import ILL_DEFINED, CoherenceError, StructuralError


def chain_action():
    """Z/2 over 0 ≤ 1 ≤ 2 where both steps act trivially but their composite collapses."""
    C = poset_category(3, lambda a, b: a <= b)
    G = cyclic_group(2)
    family = [G, G, G]
    a, b, ba = C.hom(0, 1)[0], C.hom(1, 2)[0], C.hom(0, 2)[0]
    action = {C.identity(x): identity_functor(G) for x in C.objects}
    action.update({a: identity_functor(G), b: identity_functor(G), ba: constant_functor(G, G, 0)})
    return C, family, action


def two_point_profunctors():
    """P: 1 ⇸ arrow, Q: arrow ⇸ 1 and a two-element R: 1 ⇸ 1."""
    one, A = terminal_category(), walking_arrow()
    id_a, id_b, u = A.morphism_index("id_a"), A.morphism_index("id_b"), A.morphism_index("u")
    P = Profunctor(
        one,
        A,
        {(0, 0): ["p0"], (0, 1): ["p1"]},
        {(0, "p0"): "p0", (0, "p1"): "p1"},
        {("p0", id_a): "p0", ("p0", u): "p1", ("p1", id_b): "p1"},
        name="P",
    )
    Q = Profunctor(
        A,
        one,
        {(0, 0): ["q0"], (1, 0): ["q1"]},
        {(id_a, "q0"): "q0", (id_b, "q1"): "q1", (u, "q1"): "q0"},
        {("q0", 0): "q0", ("q1", 0): "q1"},
        name="Q",
    )
    R = Profunctor(
        one,
        one,
        {(0, 0): ["x", "y"]},
        {(0, "x"): "x", (0, "y"): "y"},
        {("x", 0): "x", ("y", 0): "y"},
        name="R",
    )
    return P, Q, R


def chain_bundle(second_value: str) -> LaxProfFunctor:
    """Over 0 ≤ 1 ≤ 2 with fibers 1, arrow, 1; m sends (p0, q0) to x and (p1, q1) to second_value."""
    C = poset_category(3, lambda a, b: a <= b)
    P, Q, R = two_point_profunctors()
    a, b, ba = C.hom(0, 1)[0], C.hom(1, 2)[0], C.hom(0, 2)[0]
    mult = {(b, a): {("p0", "q0"): "x", ("p1", "q1"): second_value}}
    return LaxProfFunctor(C, [P.source, P.target, Q.target], {a: P, b: Q, ba: R}, mult, name="two-step")


def walking_iso_bundle() -> LaxProfFunctor:
    """Z/2 over the walking isomorphism, with the generator as both composition comparisons."""
    base, _ = inflate(terminal_category(), 0)
    G = cyclic_group(2)
    there, back = base.hom(0, 1)[0], base.hom(1, 0)[0]
    functors = {there: identity_functor(G), back: identity_functor(G)}
    isos = {(back, there): [1], (there, back): [1]}
    assert check_pseudo_data(base, [G, G], functors, isos).is_valid
    return lax_from_pseudo(base, [G, G], functors, isos, name="twisted")


def gap_collage() -> LaxProfFunctor:
    one = terminal_category()
    return collage(Profunctor(one, one, {}, {}, {}, name="empty"))


def test_star_over_the_terminal_category():
    F = walking_arrow()
    monad = cstar(terminal_category(), [F])
    assert find_isomorphism(monad.fibers[0].category, F) is not None
    assert is_isomorphism_functor(monad.units[0])
    result = classify_star_algebras(terminal_category(), [F])
    assert len(result.algebras) == len(result.actions) == 1
    assert result.agree


def test_star_algebras_are_actions():
    print("=" * 70)
    print("C⋆-algebras over the walking arrow")
    print("=" * 70)
    G = cyclic_group(2)
    result = classify_star_algebras(walking_arrow(), [G, G])
    print(f"✓ {len(result.algebras)} algebra structure(s), {len(result.actions)} action(s)")
    assert len(result.algebras) == len(result.actions) == 2
    assert result.agree


def test_non_functorial_action_breaks_associativity():
    C, family, action = chain_action()
    assert "composition" in check_action(C, family, action).laws()
    fibers = star(C, family)
    report, induced = check_star_algebra(C, family, algebra_of(C, family, fibers, action), fibers)
    assert "associativity" in report.laws()
    assert induced is None
    with pytest.raises(CoherenceError):
        lax_from_functor(C, family, action)


def test_total_category_over_a_point():
    F = poset_category(3, lambda a, b: a <= b)
    L = LaxProfFunctor(terminal_category(), [F], {}, {}, name="point")
    total, p = grothendieck(L)
    assert find_isomorphism(total, F) is not None
    assert check_functor(p).is_valid


def test_collage():
    P, _, _ = two_point_profunctors()
    L = collage(P)
    assert check_lax_bundle(L).is_valid
    total, p = grothendieck(L)
    assert check_category(total).is_valid
    assert total.morphism_count == 6
    # * -> a -> b, with p0 followed by u equal to p1
    assert find_isomorphism(total, poset_category(3, lambda a, b: a <= b)) is not None
    assert [p.on_object(e) for e in total.objects] == [0, 1, 1]


def test_lax_bundle_construction_errors():
    P, Q, R = two_point_profunctors()
    C = poset_category(3, lambda a, b: a <= b)
    a, b, ba = C.hom(0, 1)[0], C.hom(1, 2)[0], C.hom(0, 2)[0]
    with pytest.raises(StructuralError):
        LaxProfFunctor(C, [P.source, P.target], {a: P, b: Q, ba: R}, {})
    with pytest.raises(StructuralError):
        LaxProfFunctor(C, [P.source, P.target, Q.target], {a: P, ba: R}, {})
    with pytest.raises(StructuralError):
        LaxProfFunctor(C, [P.source, P.target, Q.target], {a: P, b: Q, ba: R}, {})
    with pytest.raises(StructuralError):
        chain_bundle("q0")


def test_ill_defined_multiplication():
    lax = chain_bundle("x")
    assert check_lax_bundle(lax).is_valid
    total, _ = grothendieck(lax)
    assert check_category(total).is_valid
    assert total.morphism_count == 11

    broken = chain_bundle("y")
    report = check_lax_bundle(broken)
    assert "mult-balanced" in report.laws()
    assert report.of_kind(ILL_DEFINED)
    with pytest.raises(CoherenceError):
        grothendieck(broken)


def test_random_bundles_have_total_categories():
    print("=" * 70)
    print("Total categories of seeded lax bundles")
    print("=" * 70)
    count = 0
    for L in lax_bundles(RANDOM_BUNDLE_COUNT, DEFAULT_SEED):
        assert check_lax_bundle(L).is_valid, L
        total, p = grothendieck(L)
        assert check_category(total).is_valid, L
        assert check_functor(p).is_valid
        count += 1
    print(f"✓ {count} bundles")
    assert count == RANDOM_BUNDLE_COUNT


def test_pseudo_functor_with_twisted_comparisons():
    L = walking_iso_bundle()
    assert check_lax_bundle(L).is_valid
    result = is_representable_lax(L)
    assert result.representable, result.witness
    P = result.pseudo
    assert all(components == [1] for components in P.isos.values())
    report = check_pseudo_coherence(P)
    assert report.is_valid, report.format()

    _, p = grothendieck(L)
    lifts = cocartesian_lifts(p)
    assert lifts.verdict in (SPLIT, COFIBRATION)
    assert not lifts.missing


def test_strict_bundles_are_representable():
    rng = np.random.default_rng(DEFAULT_SEED)
    for _ in range(5):
        L = strict_chain(rng)
        assert L.is_strict()
        result = is_representable_lax(L)
        assert result.representable, result.witness
        assert check_pseudo_coherence(result.pseudo).is_valid


def test_strict_bundles_give_split_cofibrations():
    rng = np.random.default_rng(DEFAULT_SEED)
    for _ in range(5):
        _, p = grothendieck(strict_chain(rng))
        lifts = cocartesian_lifts(p)
        assert not lifts.missing
        assert lifts.verdict == SPLIT or not lifts.split_search_complete
        for (f, e), phi in (lifts.splitting or {}).items():
            assert p.on_morphism(phi) == f and p.source.source(phi) == e
        assert lifts.closure.is_valid, lifts.closure.format()


def test_product_projection_is_split():
    total, p, _ = product_category(walking_arrow(), cyclic_group(2))
    lifts = cocartesian_lifts(p)
    print(lifts.format())
    assert lifts.verdict == SPLIT
    assert lifts.split_search_complete
    assert lifts.closure.is_valid


def test_composite_lifts_must_stay_cocartesian():
    p = constant_functor(walking_arrow(), terminal_category(), 0)
    lifts = cocartesian_lifts(p)
    assert lifts.lifts == {(0, 0): [0], (0, 1): [1]}
    assert lifts.closure.is_valid

    u = p.source.morphism_index("u")
    report = check_composite_lifts(p, {(0, 0): [u], (0, 1): [1]})
    assert report.laws() == ["composite-lift"]
    assert "id_b∘u" in report.format()


def test_gap_collage_has_no_lifts():
    L = gap_collage()
    _, p = grothendieck(L)
    lifts = cocartesian_lifts(p)
    assert lifts.verdict == NEITHER
    assert len(lifts.missing) == 1
    assert lifts.witnesses[0].startswith("no cocartesian lift of u")

    result = is_representable_lax(L)
    assert not result.representable
    assert result.witness.startswith("M^u has no universal element")


def test_representability_is_stable_under_equivalence():
    for L in (walking_iso_bundle(), gap_collage()):
        equivalences = [inflate(F, 0)[1] for F in L.fibers]
        moved = transport_bundle(L, equivalences)
        assert check_lax_bundle(moved).is_valid
        assert is_representable_lax(moved).representable == is_representable_lax(L).representable

    with pytest.raises(StructuralError):
        transport_bundle(walking_iso_bundle(), [identity_functor(cyclic_group(2))])
