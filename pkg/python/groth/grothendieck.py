"""
The total category of a lax bundle and its projection to the base.
"""
from typing import Tuple

from categories.builders import from_morphism_list
from categories.fincat import FinCat, Functor
from groth.lax_bundle import LaxProfFunctor
from utils.report import CoherenceError


def grothendieck(L: LaxProfFunctor) -> Tuple[FinCat, Functor]:
    """
    Objects are pairs (x, a) with a in F(x); a morphism (y, b) -> (x, a) over
    f: y -> x is an element of M^f(b, a). Composition is m^{f,g} and the
    morphisms over identities are the fiber morphisms.

    Returns:
        (total category, projection p: total -> base)

    Raises:
        CoherenceError: If some m^{f,g} is not constant on the classes of the composite
    """
    C = L.base
    for f, g in L.composable_pairs():
        conflicts = L.conflicts(f, g)
        if conflicts:
            member, rep = conflicts[0]
            raise CoherenceError(
                f"m^{{{C.morphism_names[f]},{C.morphism_names[g]}}} is not well defined: {member!r} and {rep!r} differ"
            )

    objects = [(x, a) for x in C.objects for a in L.fibers[x].objects]
    position = {label: i for i, label in enumerate(objects)}
    labels, names = [], []
    for f in C.morphisms:
        y, x = C.source(f), C.target(f)
        M = L.module(f)
        for e in M.elements:
            b, a = M.position(e)
            labels.append(((f, e), position[(y, b)], position[(x, a)]))
            names.append(
                f"{C.object_names[x]}.{L.fibers[x].morphism_names[e]}" if C.is_identity(f) else f"{C.morphism_names[f]}|{e!r}"
            )

    def compose(second, first):
        (f, psi), (g, phi) = second, first
        return C.compose(f, g), L.multiply(f, g, phi, psi)

    def identity(i):
        x, a = objects[i]
        return C.identity(x), L.fibers[x].identity(a)

    total = from_morphism_list(
        [f"({C.object_names[x]},{L.fibers[x].object_names[a]})" for x, a in objects],
        labels,
        compose,
        identity,
        name=f"∫{L.name}" if L.name else "total",
        morphism_names=names,
    )
    p = Functor(total, C, [x for x, _ in objects], [f for (f, _), _, _ in labels], name="p")
    return total, p
