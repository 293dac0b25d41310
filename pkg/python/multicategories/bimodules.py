"""
Multicategories as normal monads on list categories.

A multicategory M is read as the profunctor P: T(M̄) ⇸ M̄ whose fiber at
(list of objects, object) is the set of arrows with that boundary. The list
category T(M̄) has the admitted source lists as objects and lists of unary
arrows as morphisms. The unit is the inclusion of unary arrows and the
multiplication is multicomposition.
"""
from dataclasses import dataclass
from itertools import product
from typing import Dict, Tuple

from categories.builders import from_morphism_list
from categories.fincat import FinCat
from multicategories.multicategory import (
    Multicategory,
    MulticatMorphism,
    check_multicategory,
    is_multicat_isomorphism,
    linear_core,
    unary_arrows,
)
from profunctors.profunctor import Profunctor, check_profunctor
from utils.report import StructuralError, ValidationReport


@dataclass
class ListProfMonad:
    """
    A monad in spans over the list monad, presented fiberwise.

    ``unit`` sends a morphism of the core to its element of P(⟨x⟩, y);
    ``mult`` sends (tuple of elements g_i ∈ P(xs_i, y_i), element f ∈
    P(ys, z)) to an element of P(xs_1 ++ ... ++ xs_n, z).
    """

    core: FinCat
    lists: FinCat
    list_objects: Tuple[Tuple[int, ...], ...]
    carrier: Profunctor
    unit: Dict[int, str]
    mult: Dict[Tuple[Tuple[str, ...], str], str]
    bound: int
    normal: bool = True
    name: str = ""


def list_category(core: FinCat, sources) -> Tuple[FinCat, Tuple[Tuple[int, ...], ...], Tuple[Tuple[int, int, Tuple[int, ...]], ...]]:
    """Lists of core objects (restricted to sources) with pointwise morphisms."""
    list_objects = tuple(sources)
    morphisms = []
    for i, xs in enumerate(list_objects):
        for j, ys in enumerate(list_objects):
            if len(xs) != len(ys):
                continue
            for us in product(*[core.hom(x, y) for x, y in zip(xs, ys)]):
                morphisms.append(((i, j, us), i, j))

    def compose(second, first):
        i, _, us = first
        _, k, vs = second
        return (i, k, tuple(core.compose(v, u) for u, v in zip(us, vs)))

    def identity(i):
        return (i, i, tuple(core.identity(x) for x in list_objects[i]))

    names = ["(" + ",".join(core.object_names[x] for x in xs) + ")" for xs in list_objects]
    lists = from_morphism_list(
        names,
        morphisms,
        compose,
        identity,
        name=f"T({core.name})",
        morphism_names=["(" + ",".join(core.morphism_names[u] for u in us) + ")" for (_, _, us), _, _ in morphisms],
    )
    return lists, list_objects, tuple(label for label, _, _ in morphisms)


def to_prof_monad(M: Multicategory) -> ListProfMonad:
    """
    The normal list-profunctor monad of a multicategory.

    Raises:
        StructuralError: If a required composite is missing from the
            truncated table
    """
    core = linear_core(M)
    unary = unary_arrows(M)
    lists, list_objects, list_labels = list_category(core, M.source_lists())
    position = {xs: i for i, xs in enumerate(list_objects)}
    names = M.arrow_names

    fibers = {}
    for a in M.arrows():
        if M.sources[a] not in position:
            continue
        fibers.setdefault((position[M.sources[a]], M.targets[a]), []).append(names[a])

    left, right = {}, {}
    list_morphisms = [lists.morphism_names[i] for i in lists.morphisms]
    for k in lists.morphisms:
        i, j = lists.source(k), lists.target(k)
        us = list_labels[k][2]
        for z in range(M.object_count):
            for f in M.hom(list_objects[j], z):
                h = M.composite(f, [unary[u] for u in us])
                if h is None:
                    raise StructuralError(f"composite of {names[f]} with {list_morphisms[k]} is outside the truncation")
                left[(k, names[f])] = names[h]
    for a in M.arrows():
        if M.sources[a] not in position:
            continue
        for v in core.morphisms_from(M.targets[a]):
            h = M.composite(unary[v], (a,))
            if h is None:
                raise StructuralError(f"composite of {core.morphism_names[v]} with {names[a]} is outside the truncation")
            right[(names[a], v)] = names[h]
    carrier = Profunctor(lists, core, fibers, left, right, name=f"P({M.name})")

    unit = {u: names[unary[u]] for u in core.morphisms}
    mult = {}
    for (f, gs), h in M.comp.items():
        mult[(tuple(names[g] for g in gs), names[f])] = names[h]
    return ListProfMonad(core, lists, list_objects, carrier, unit, mult, M.bound, normal=True, name=M.name)


def from_prof_monad(T: ListProfMonad) -> Multicategory:
    """
    The forward reading: arrows are the carrier's elements, identities come
    from the unit at identities and composition from the multiplication.
    """
    P = T.carrier
    arrows = []
    for element in P.elements:
        i, y = P.position(element)
        arrows.append((element, T.list_objects[i], y))
    index = {element: a for a, element in enumerate(P.elements)}
    identity = [index[T.unit[T.core.identity(x)]] for x in T.core.objects]
    comp = {(index[f], tuple(index[g] for g in gs)): index[h] for (gs, f), h in T.mult.items()}
    admitted = frozenset(T.list_objects)
    return Multicategory(T.core.object_names, arrows, identity, comp, T.bound, name=T.name, allowed_sources=admitted)


def check_list_prof_monad(T: ListProfMonad) -> ValidationReport:
    """Carrier laws, normality, and the monad laws read as multicategory laws."""
    report = ValidationReport(f"list monad {T.name}".strip())
    report.extend(check_profunctor(T.carrier), prefix="carrier ")
    singleton = {xs[0]: i for i, xs in enumerate(T.list_objects) if len(xs) == 1}
    if T.normal:
        for x in T.core.objects:
            for y in T.core.objects:
                images = [T.unit[u] for u in T.core.hom(x, y)]
                fiber = T.carrier.fiber(singleton[x], y) if x in singleton else ()
                if len(set(images)) != len(images) or set(images) != set(fiber):
                    report.add("normality", f"unit is not a bijection onto P(⟨{x}⟩, {y})")
    report.extend(check_multicategory(from_prof_monad(T)), prefix="monad ")
    return report


def roundtrip_morphism(M: Multicategory) -> MulticatMorphism:
    """The canonical comparison M -> from_prof_monad(to_prof_monad(M))."""
    N = from_prof_monad(to_prof_monad(M))
    index = {name: a for a, name in enumerate(N.arrow_names)}
    return MulticatMorphism(M, N, list(range(M.object_count)), [index[name] for name in M.arrow_names], name="roundtrip")


def roundtrip_is_identity(M: Multicategory) -> bool:
    return is_multicat_isomorphism(roundtrip_morphism(M))
