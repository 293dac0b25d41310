"""
Test profunctor composition, representables, duality, change of base and
profunctor monads with their Kleisli categories.
"""
import sys
import os

sys.path.insert(0, os.path.dirname(__file__))

import numpy as np
import pytest

from categories.builders import cyclic_group, discrete_category, poset_category, terminal_category, walking_arrow
from categories.equivalence import find_isomorphism, is_isomorphism_functor
from categories.fincat import NatTrans, check_functor, constant_functor, identity_functor, opposite, opposite_functor
from config import DEFAULT_SEED, RANDOM_FUNCTOR_PAIR_COUNT, RANDOM_PROFUNCTOR_COUNT
from data_processing.corpus import constant_top_monad, functor_pairs, group_monad, monad_corpus, profunctor_triples
from profunctors.monad import (
    ProfMonad,
    check_prof_monad,
    hom_monad,
    kleisli,
    kleisli_agreement,
    kleisli_of_endo,
    kleisli_reconstruction,
)
from profunctors.profunctor import (
    Profunctor,
    ProfMorphism,
    associator,
    change_of_base,
    check_prof_morphism,
    check_profunctor,
    comma_comparison,
    compose,
    dual,
    hom_profunctor,
    is_isomorphism,
    left_unitor,
    relabel,
    representable,
    right_unitor,
)
from profunctors.quotient import Quotient
from utils.report import ILL_DEFINED, CoherenceError, StructuralError


def discrete_profunctor(X, Y, sizes, tag):
    """A profunctor between discrete categories with the given fiber sizes."""
    fibers = {(x, y): [f"{tag}{x}{y}_{i}" for i in range(sizes[x][y])] for x in X.objects for y in Y.objects}
    left, right = {}, {}
    for (x, y), elements in fibers.items():
        for p in elements:
            left[(X.identity(x), p)] = p
            right[(p, Y.identity(y))] = p
    return Profunctor(X, Y, fibers, left, right, name=tag)


def through_the_arrow():
    """P: 1 ⇸ arrow and Q: arrow ⇸ 1 whose composite has a single element."""
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
    return P, Q


def test_hom_profunctors_are_valid():
    for X in (walking_arrow(), cyclic_group(3), poset_category(3, lambda a, b: a <= b)):
        assert check_profunctor(hom_profunctor(X)).is_valid


def test_missing_action_is_structural():
    one = terminal_category()
    with pytest.raises(StructuralError):
        Profunctor(one, one, {(0, 0): ["p"]}, {}, {("p", 0): "p"})


def test_composite_through_the_arrow_has_one_element():
    print("=" * 70)
    print("Profunctor composition by quotient")
    print("=" * 70)
    P, Q = through_the_arrow()
    assert check_profunctor(P).is_valid and check_profunctor(Q).is_valid
    composite = compose(P, Q)
    print(f"✓ {composite!r}")
    assert composite.elements == (("p0", "q0"),)
    assert composite.quotient.same_class(("p0", "q0"), ("p1", "q1"))
    assert composite.quotient.representative(("p1", "q1")) == ("p0", "q0")


def test_discrete_composites_multiply_fiber_sizes():
    X, Y, Z = discrete_category(2), discrete_category(3), discrete_category(2)
    rng = np.random.default_rng(DEFAULT_SEED)
    a = rng.integers(0, 3, size=(2, 3))
    b = rng.integers(0, 3, size=(3, 2))
    composite = compose(discrete_profunctor(X, Y, a, "p"), discrete_profunctor(Y, Z, b, "q"))
    assert np.array_equal(composite.fiber_sizes(), a @ b)


def test_composition_needs_a_common_middle():
    P, _ = through_the_arrow()
    with pytest.raises(StructuralError):
        compose(P, P)


def test_unitors_on_hom():
    P, Q = through_the_arrow()
    for R in (P, Q, hom_profunctor(walking_arrow())):
        assert is_isomorphism(left_unitor(R))
        assert is_isomorphism(right_unitor(R))


def test_bimodule_calculus_on_random_triples():
    count = 0
    for P, Q, R in profunctor_triples(RANDOM_PROFUNCTOR_COUNT, DEFAULT_SEED):
        assert is_isomorphism(left_unitor(P))
        assert is_isomorphism(right_unitor(P))
        alpha = associator(P, Q, R)
        assert check_prof_morphism(alpha).is_valid
        assert is_isomorphism(alpha)
        count += 1
    print(f"✓ Unitors and associators on {count} random triples")
    assert count == RANDOM_PROFUNCTOR_COUNT


def test_comma_comparison_on_random_pairs():
    for f, g in functor_pairs(RANDOM_FUNCTOR_PAIR_COUNT, DEFAULT_SEED):
        assert is_isomorphism(comma_comparison(f, g))


def test_representables():
    X = poset_category(3, lambda a, b: a <= b)
    lower, upper = representable(identity_functor(X))
    assert lower == relabel(hom_profunctor(X), lambda f: (X.source(f), f))
    assert upper == relabel(hom_profunctor(X), lambda f: (f, X.target(f)))

    bang = constant_functor(walking_arrow(), terminal_category(), 0)
    lower, upper = representable(bang)
    assert (lower.fiber_sizes() == 1).all()
    assert (upper.fiber_sizes() == 1).all()


def test_representables_compose_like_functors():
    for f, _ in functor_pairs(5, DEFAULT_SEED):
        Z = f.target
        g = identity_functor(Z)
        fg_lower = representable(f)[0]
        composite = compose(representable(f)[0], representable(g)[0])
        assert np.array_equal(composite.fiber_sizes(), fg_lower.fiber_sizes())
        assert check_profunctor(composite).is_valid


def test_dual():
    P, Q = through_the_arrow()
    for R in (P, Q):
        assert dual(dual(R)) == R
        assert check_profunctor(dual(R)).is_valid
    X = walking_arrow()
    assert dual(hom_profunctor(X)) == hom_profunctor(opposite(X))

    f = constant_functor(walking_arrow(), poset_category(3, lambda a, b: a <= b), 1)
    lower, _ = representable(f)
    _, upper_op = representable(opposite_functor(f))
    assert np.array_equal(dual(lower).fiber_sizes(), upper_op.fiber_sizes())


def test_change_of_base():
    X = walking_arrow()
    R = hom_profunctor(X)
    same = change_of_base(identity_functor(X), identity_functor(X), R)
    assert same == relabel(R, lambda r: (*R.position(r), r))

    Y = poset_category(2, lambda a, b: True)
    f = constant_functor(Y, X, 0)
    g = constant_functor(Y, X, 1)
    picked = change_of_base(f, g, R)
    assert (picked.fiber_sizes() == len(R.fiber(0, 1))).all()
    assert check_profunctor(picked).is_valid

    iso = find_isomorphism(poset_category(2, lambda a, b: a <= b), X)
    moved = change_of_base(iso, iso, R)
    assert moved.element_count == R.element_count

    swapped = relabel(dual(picked), lambda e: (e[1], e[0], e[2]))
    assert swapped == change_of_base(opposite_functor(g), opposite_functor(f), dual(R))


def test_prof_morphism_checks():
    X = walking_arrow()
    H = hom_profunctor(X)
    identity = ProfMorphism(H, H, {f: f for f in H.elements})
    assert is_isomorphism(identity)
    u = X.morphism_index("u")
    collapse = ProfMorphism(H, H, {f: f for f in H.elements})
    collapse.mapping[X.identity(0)] = u
    assert not check_prof_morphism(collapse).is_valid


def test_quotient_representatives():
    quotient = Quotient(["a", "b", "c", "d"])
    quotient.merge("d", "b")
    assert quotient.representative("d") == "b"
    assert quotient.classes() == [["a"], ["b", "d"], ["c"]]
    values, conflicts = quotient.descend(lambda item: item in ("a", "b"))
    assert values == {"a": True, "b": True, "c": False}
    assert conflicts == [("d", "b")]
    assert len(quotient) == 3


def test_monad_checks():
    H = hom_monad(walking_arrow())
    assert check_prof_monad(H).is_valid and H.normal
    Z2 = group_monad(2)
    assert check_prof_monad(Z2).is_valid

    constant = ProfMonad(Z2.carrier, {0: 0}, {pair: 1 for pair in Z2.mult}, name="const")
    assert "left-unit" in check_prof_monad(constant).laws()

    G = cyclic_group(2)
    carrier = hom_profunctor(G)
    projection = ProfMonad(carrier, {u: u for u in G.morphisms}, {(p, q): p for p in G.morphisms for q in G.morphisms})
    report = check_prof_monad(projection)
    assert report.of_kind(ILL_DEFINED)


def test_kleisli_categories():
    for X in (walking_arrow(), poset_category(3, lambda a, b: a <= b)):
        K, J = kleisli(hom_monad(X))
        assert find_isomorphism(X, K) is not None
        assert check_functor(J).is_valid and is_isomorphism_functor(J)

    K, _ = kleisli(group_monad(2))
    assert find_isomorphism(K, cyclic_group(2)) is not None

    Z2 = group_monad(2)
    with pytest.raises(CoherenceError):
        kleisli(ProfMonad(Z2.carrier, {0: 0}, {pair: 1 for pair in Z2.mult}))


def test_kleisli_reconstruction_on_the_corpus():
    monads = monad_corpus()
    assert len(monads) == 5
    for monad in monads:
        assert check_prof_monad(monad).is_valid
        K, J = kleisli(monad)
        assert is_isomorphism(kleisli_reconstruction(monad, K, J))


def test_kleisli_of_endofunctor_monads():
    t, eta, mu = constant_top_monad()
    K = kleisli_of_endo(t, eta, mu)
    assert K.morphism_count == 4
    assert all(len(K.hom(x, y)) == 1 for x in K.objects for y in K.objects)
    assert is_isomorphism_functor(kleisli_agreement(t, eta, mu))

    X = poset_category(3, lambda a, b: a <= b)
    ident = identity_functor(X)
    units = NatTrans(ident, ident, [X.identity(x) for x in X.objects])
    assert find_isomorphism(kleisli_of_endo(ident, units, units), X) is not None

    G = cyclic_group(3)
    ident = identity_functor(G)
    shift = NatTrans(ident, ident, [1])
    with pytest.raises(CoherenceError):
        kleisli_of_endo(ident, shift, shift)
