"""
Comma categories f↓g with their projections and structural 2-cell.
"""
from dataclasses import dataclass
from typing import List, Tuple

from categories.builders import from_morphism_list
from categories.fincat import FinCat, Functor, NatTrans, compose_functors
from utils.report import StructuralError


@dataclass(frozen=True)
class CommaCategory:
    """The comma category together with its span and canonical 2-cell f∘p ⇒ g∘q."""

    category: FinCat
    p: Functor
    q: Functor
    cell: NatTrans
    objects: Tuple[Tuple[int, int, int], ...]  # (x, u, y) per object index


def comma_category(f: Functor, g: Functor) -> CommaCategory:
    """
    Build f↓g for f: X -> Z and g: Y -> Z.

    Objects are triples (x, u: fx -> gy, y); a morphism (x, u, y) -> (x', u', y')
    is a pair (a: x -> x', b: y -> y') with u'∘f(a) = g(b)∘u.
    """
    if f.target != g.target:
        raise StructuralError("comma category needs functors with a common target")
    X, Y, Z = f.source, g.source, f.target

    objects: List[Tuple[int, int, int]] = []
    for x in X.objects:
        for y in Y.objects:
            for u in Z.hom(f.on_object(x), g.on_object(y)):
                objects.append((x, u, y))
    squares = []
    for i, (x, u, y) in enumerate(objects):
        for j, (x2, u2, y2) in enumerate(objects):
            for a in X.hom(x, x2):
                for b in Y.hom(y, y2):
                    if Z.composite(u2, f.on_morphism(a)) == Z.composite(g.on_morphism(b), u):
                        squares.append(((i, j, a, b), i, j))

    def compose(second, first):
        i, _, a1, b1 = first
        _, j, a2, b2 = second
        return (i, j, X.compose(a2, a1), Y.compose(b2, b1))

    def identity(i):
        x, _, y = objects[i]
        return (i, i, X.identity(x), Y.identity(y))

    names = [f"({X.object_names[x]},{Z.morphism_names[u]},{Y.object_names[y]})" for x, u, y in objects]
    category = from_morphism_list(
        names,
        squares,
        compose,
        identity,
        name=f"{f.name or 'f'}↓{g.name or 'g'}",
        morphism_names=[f"({X.morphism_names[a]},{Y.morphism_names[b]})" for (_, _, a, b), _, _ in squares],
    )
    p = Functor(category, X, [x for x, _, _ in objects], [label[2] for label, _, _ in squares], name="p")
    q = Functor(category, Y, [y for _, _, y in objects], [label[3] for label, _, _ in squares], name="q")
    cell = NatTrans(
        compose_functors(f, p),
        compose_functors(g, q),
        [u for _, u, _ in objects],
        name="comma-cell",
    )
    return CommaCategory(category, p, q, cell, tuple(objects))
