"""
Constructors for the small categories used throughout catkit.
"""
from itertools import product
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

from categories.fincat import FinCat, Functor
from utils.report import StructuralError


def from_morphism_list(
    object_names: Sequence[str],
    morphisms: Sequence[Tuple[Hashable, int, int]],
    compose: Callable[[Hashable, Hashable], Hashable],
    identity: Callable[[int], Hashable],
    name: str = "",
    morphism_names: Optional[Sequence[str]] = None,
) -> FinCat:
    """
    Build a FinCat from labelled morphisms and a composition function on labels.

    Args:
        object_names: Display names of the objects
        morphisms: (label, dom, cod) triples; labels must be unique
        compose: compose(g_label, f_label) -> label of g∘f
        identity: identity(object_index) -> label of the identity
        name: Category name
    """
    index = {}
    for i, (label, _, _) in enumerate(morphisms):
        if label in index:
            raise StructuralError(f"duplicate morphism label {label!r}")
        index[label] = i
    out: Dict[int, List[int]] = {}
    for i, (_, d, _) in enumerate(morphisms):
        out.setdefault(d, []).append(i)
    table = {}
    for i, (f_label, _, b) in enumerate(morphisms):
        for j in out.get(b, []):
            g_label = morphisms[j][0]
            table[(j, i)] = index[compose(g_label, f_label)]
    return FinCat(
        len(object_names),
        [(d, c) for _, d, c in morphisms],
        [index[identity(a)] for a in range(len(object_names))],
        table,
        object_names=list(object_names),
        morphism_names=list(morphism_names) if morphism_names is not None else [str(label) for label, _, _ in morphisms],
        name=name,
    )


def terminal_category() -> FinCat:
    return FinCat(1, [(0, 0)], [0], {(0, 0): 0}, object_names=["*"], morphism_names=["id"], name="1")


def discrete_category(n: int, names: Optional[Sequence[str]] = None) -> FinCat:
    names = list(names) if names is not None else [str(a) for a in range(n)]
    return FinCat(
        n,
        [(a, a) for a in range(n)],
        list(range(n)),
        {(a, a): a for a in range(n)},
        object_names=names,
        morphism_names=[f"id_{x}" for x in names],
        name=f"disc{n}",
    )


def walking_arrow() -> FinCat:
    """Objects a, b; morphisms id_a, id_b, u: a -> b."""
    return FinCat(
        2,
        [(0, 0), (1, 1), (0, 1)],
        [0, 1],
        {(0, 0): 0, (1, 1): 1, (2, 0): 2, (1, 2): 2},
        object_names=["a", "b"],
        morphism_names=["id_a", "id_b", "u"],
        name="arrow",
    )


def poset_category(n: int, leq: Callable[[int, int], bool], names: Optional[Sequence[str]] = None) -> FinCat:
    """Thin category of a preorder given by leq; one morphism x -> y iff leq(x, y)."""
    names = list(names) if names is not None else [str(a) for a in range(n)]
    pairs = [(x, y) for x in range(n) for y in range(n) if leq(x, y)]
    for x in range(n):
        if (x, x) not in pairs:
            raise StructuralError("preorder must be reflexive")
    morphisms = [((x, y), x, y) for x, y in pairs]
    pair_set = set(pairs)

    def compose(g, f):
        composite = (f[0], g[1])
        if composite not in pair_set:
            raise StructuralError("preorder must be transitive")
        return composite

    return from_morphism_list(
        names,
        morphisms,
        compose,
        lambda a: (a, a),
        name=f"poset{n}",
        morphism_names=[f"{names[x]}≤{names[y]}" for x, y in pairs],
    )


def monoid_category(elements: Sequence[Hashable], operation: Callable, unit: Hashable, name: str = "") -> FinCat:
    """One-object category whose morphisms are monoid elements; g∘f = operation(g, f)."""
    morphisms = [(e, 0, 0) for e in elements]
    return from_morphism_list(["*"], morphisms, operation, lambda a: unit, name=name)


def cyclic_group(n: int) -> FinCat:
    """Z/n as a one-object category under addition."""
    return monoid_category(list(range(n)), lambda g, f: (g + f) % n, 0, name=f"Z/{n}")


def disjoint_union(left: FinCat, right: FinCat) -> FinCat:
    """Coproduct of two categories; right's indices are shifted after left's."""
    n, m = left.object_count, left.morphism_count
    morphisms = [(left.source(f), left.target(f)) for f in left.morphisms]
    morphisms += [(right.source(f) + n, right.target(f) + n) for f in right.morphisms]
    compose = {}
    for g in left.morphisms:
        for f in left.morphisms:
            h = left.composite(g, f)
            if h is not None:
                compose[(g, f)] = h
    for g in right.morphisms:
        for f in right.morphisms:
            h = right.composite(g, f)
            if h is not None:
                compose[(g + m, f + m)] = h + m
    return FinCat(
        n + right.object_count,
        morphisms,
        list(left.identities) + [i + m for i in right.identities],
        compose,
        object_names=[f"L{x}" for x in left.object_names] + [f"R{x}" for x in right.object_names],
        morphism_names=[f"L{x}" for x in left.morphism_names] + [f"R{x}" for x in right.morphism_names],
        name=f"{left.name}+{right.name}",
    )


def arrow_category(cat: FinCat) -> FinCat:
    """
    The category of arrows of cat, built directly: objects are morphisms of
    cat, a morphism f -> f' is a commuting square (a, b) with b∘f = f'∘a.
    """
    squares = []
    for f, f2 in product(cat.morphisms, repeat=2):
        for a in cat.hom(cat.source(f), cat.source(f2)):
            for b in cat.hom(cat.target(f), cat.target(f2)):
                if cat.composite(b, f) == cat.composite(f2, a):
                    squares.append(((f, f2, a, b), f, f2))

    def compose(second, first):
        _, f2, a2, b2 = second
        f, _, a1, b1 = first
        return (f, f2, cat.compose(a2, a1), cat.compose(b2, b1))

    def identity(f):
        return (f, f, cat.identity(cat.source(f)), cat.identity(cat.target(f)))

    return from_morphism_list(
        [cat.morphism_names[f] for f in cat.morphisms],
        squares,
        compose,
        identity,
        name=f"Arr({cat.name})",
    )


def inflate(cat: FinCat, obj: int) -> Tuple[FinCat, Functor]:
    """
    Add an isomorphic copy of obj.

    Returns:
        (inflated category, projection functor onto cat); the projection is an
        equivalence and sends the copy to obj.
    """
    n = cat.object_count
    base_of = list(range(n)) + [obj]
    morphisms = []
    for x in range(n + 1):
        for y in range(n + 1):
            for f in cat.hom(base_of[x], base_of[y]):
                morphisms.append(((x, y, f), x, y))

    def compose(second, first):
        return (first[0], second[1], cat.compose(second[2], first[2]))

    def identity(x):
        return (x, x, cat.identity(base_of[x]))

    names = list(cat.object_names) + [f"{cat.object_names[obj]}'"]
    inflated = from_morphism_list(names, morphisms, compose, identity, name=f"{cat.name}+{names[-1]}")
    projection = Functor(
        inflated,
        cat,
        base_of,
        [label[2] for label, _, _ in morphisms],
        name="collapse",
    )
    return inflated, projection
