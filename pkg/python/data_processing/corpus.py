"""
Seeded corpora of small categories, profunctors, monads and lax bundles for
the randomized property runs.
"""
from typing import Iterator, List, Tuple

import numpy as np
from tqdm import tqdm

from categories.builders import cyclic_group, disjoint_union, poset_category, terminal_category, walking_arrow
from categories.fincat import FinCat, Functor, NatTrans, compose_functors, constant_functor, enumerate_functors, identity_functor
from config import DEFAULT_SEED, MAX_RANDOM_MORPHISMS, MAX_RANDOM_OBJECTS, SHOW_PROGRESS
from groth.lax_bundle import LaxProfFunctor, collage, lax_from_functor
from multicategories.multicategory import Multicategory, binary_without_unit, multicategory_from_category, terminal_multicategory
from profunctors.monad import ProfMonad, endo_prof_monad, hom_monad
from profunctors.profunctor import Profunctor, comma_profunctor, compose


def random_poset(rng: np.random.Generator, n: int) -> FinCat:
    """A random partial order on n objects, compatible with 0 < 1 < ... < n-1."""
    below = np.eye(n, dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            below[i, j] = rng.random() < 0.5
    for k in range(n):
        below |= below[:, [k]] & below[[k], :]
    return poset_category(n, lambda a, b: bool(below[a, b]))


def random_category(rng: np.random.Generator) -> FinCat:
    """A poset, a cyclic group or a disjoint union of the two, within the corpus size caps."""
    while True:
        kind = int(rng.integers(3))
        if kind == 0:
            C = random_poset(rng, int(rng.integers(1, MAX_RANDOM_OBJECTS + 1)))
        elif kind == 1:
            C = cyclic_group(int(rng.integers(1, 5)))
        else:
            C = disjoint_union(random_poset(rng, int(rng.integers(1, 3))), cyclic_group(int(rng.integers(1, 3))))
        if C.object_count <= MAX_RANDOM_OBJECTS and C.morphism_count <= MAX_RANDOM_MORPHISMS:
            return C


def random_functor(rng: np.random.Generator, source: FinCat, target: FinCat, limit: int = 256) -> Functor:
    """Uniform among the first ``limit`` functors in enumeration order."""
    functors = list(enumerate_functors(source, target, limit=limit))
    return functors[int(rng.integers(len(functors)))]


def random_profunctor(rng: np.random.Generator, X: FinCat, Y: FinCat) -> Profunctor:
    """The comma profunctor of two random functors into a random middle category."""
    Z = random_category(rng)
    return comma_profunctor(random_functor(rng, X, Z), random_functor(rng, Y, Z))


def profunctor_triples(count: int, seed: int = DEFAULT_SEED) -> Iterator[Tuple[Profunctor, Profunctor, Profunctor]]:
    """Composable (P, Q, R) over random categories."""
    rng = np.random.default_rng(seed)
    for _ in tqdm(range(count), desc="profunctors", disable=not SHOW_PROGRESS):
        X, Y, Z, W = (random_category(rng) for _ in range(4))
        yield random_profunctor(rng, X, Y), random_profunctor(rng, Y, Z), random_profunctor(rng, Z, W)


def functor_pairs(count: int, seed: int = DEFAULT_SEED) -> Iterator[Tuple[Functor, Functor]]:
    """Pairs f: X -> Z, g: Y -> Z with a common target."""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        X, Y, Z = (random_category(rng) for _ in range(3))
        yield random_functor(rng, X, Z), random_functor(rng, Y, Z)


def group_monad(n: int) -> ProfMonad:
    """Z/n as a monad on the terminal category: carrier Z/n, mult addition, unit 0."""
    X = terminal_category()
    elements = list(range(n))
    carrier = Profunctor(
        X,
        X,
        {(0, 0): elements},
        {(0, p): p for p in elements},
        {(p, 0): p for p in elements},
        name=f"Z/{n}",
    )
    mult = {(p, q): (p + q) % n for p in elements for q in elements}
    return ProfMonad(carrier, {0: 0}, mult, name=f"Z/{n}")


def constant_top_monad() -> Tuple[Functor, NatTrans, NatTrans]:
    """The monad x ↦ b on the poset a ≤ b."""
    X = poset_category(2, lambda a, b: a <= b, names=["a", "b"])
    t = constant_functor(X, X, 1)
    top = X.identity(1)
    eta = NatTrans(identity_functor(X), t, [X.hom(0, 1)[0], top])
    mu = NatTrans(compose_functors(t, t), t, [top, top])
    return t, eta, mu


def monad_corpus() -> List[ProfMonad]:
    return [
        hom_monad(terminal_category()),
        hom_monad(walking_arrow()),
        hom_monad(cyclic_group(3)),
        group_monad(2),
        endo_prof_monad(*constant_top_monad()),
    ]


def multicategory_corpus(bound: int = 3) -> List[Multicategory]:
    return [
        terminal_multicategory(bound),
        multicategory_from_category(walking_arrow(), bound),
        multicategory_from_category(cyclic_group(2), bound),
        multicategory_from_category(poset_category(3, lambda a, b: a <= b), bound),
        binary_without_unit(),
    ]


def _chain_base() -> FinCat:
    return poset_category(3, lambda a, b: a <= b)


def composite_chain(rng: np.random.Generator) -> LaxProfFunctor:
    """
    Over 0 ≤ 1 ≤ 2: random M^{01}, M^{12}, M^{02} = M^{01}•M^{12}, with the
    quotient map as multiplication.
    """
    C = _chain_base()
    fibers = [random_category(rng) for _ in range(3)]
    a, b, ba = C.hom(0, 1)[0], C.hom(1, 2)[0], C.hom(0, 2)[0]
    Ma = random_profunctor(rng, fibers[0], fibers[1])
    Mb = random_profunctor(rng, fibers[1], fibers[2])
    Mba = compose(Ma, Mb)
    mult = {(b, a): {pair: Mba.quotient.representative(pair) for pair in Mba.quotient.items}}
    return LaxProfFunctor(C, fibers, {a: Ma, b: Mb, ba: Mba}, mult, name="chain")


def strict_chain(rng: np.random.Generator) -> LaxProfFunctor:
    """The bundle of a random functor 0 ≤ 1 ≤ 2 -> Cat."""
    C = _chain_base()
    fibers = [random_category(rng) for _ in range(3)]
    a, b, ba = C.hom(0, 1)[0], C.hom(1, 2)[0], C.hom(0, 2)[0]
    Ga = random_functor(rng, fibers[0], fibers[1])
    Gb = random_functor(rng, fibers[1], fibers[2])
    action = {C.identity(x): identity_functor(fibers[x]) for x in C.objects}
    action.update({a: Ga, b: Gb, ba: compose_functors(Gb, Ga)})
    return lax_from_functor(C, fibers, action, name="strict-chain")


def lax_bundles(count: int, seed: int = DEFAULT_SEED) -> Iterator[LaxProfFunctor]:
    """Collages, composite chains and strict chains in rotation."""
    rng = np.random.default_rng(seed)
    for i in tqdm(range(count), desc="bundles", disable=not SHOW_PROGRESS):
        kind = i % 3
        if kind == 0:
            X, Y = random_category(rng), random_category(rng)
            yield collage(random_profunctor(rng, X, Y))
        elif kind == 1:
            yield composite_chain(rng)
        else:
            yield strict_chain(rng)