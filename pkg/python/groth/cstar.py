"""
The monad C⋆ on families of categories indexed by the objects of C.

(C⋆F)(x) is the disjoint union of F(y) over the morphisms f: y -> x, with
objects and morphisms labelled ⟨f, φ⟩. The unit picks the identity summand
and the multiplication composes the two indexing morphisms. Algebra
structures on F are the same thing as actions making F a functor C -> Cat.
"""
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from tqdm import tqdm

from categories.builders import from_morphism_list
from categories.fincat import FinCat, Functor, check_functor, compose_functors, enumerate_functors, identity_functor
from config import MAX_CANDIDATES, SHOW_PROGRESS
from utils.report import BoundExceededError, StructuralError, ValidationReport

# f ↦ the functor F(dom f) -> F(cod f)
Action = Dict[int, Functor]


@dataclass
class StarFiber:
    category: FinCat
    objects: List[Tuple[int, int]]
    morphisms: List[Tuple[int, int]]

    def object_of(self, f: int, a: int) -> int:
        return self.objects.index((f, a))

    def morphism_of(self, f: int, u: int) -> int:
        return self.morphisms.index((f, u))


def star(C: FinCat, family: Sequence[FinCat]) -> List[StarFiber]:
    """(C⋆F)(x) for every object x."""
    if len(family) != C.object_count:
        raise StructuralError(f"{len(family)} fibers for {C.object_count} objects")
    fibers = []
    for x in C.objects:
        into = [f for f in C.morphisms if C.target(f) == x]
        objects = [(f, a) for f in into for a in family[C.source(f)].objects]
        position = {label: i for i, label in enumerate(objects)}
        labels = []
        for f in into:
            F = family[C.source(f)]
            for u in F.morphisms:
                labels.append(((f, u), position[(f, F.source(u))], position[(f, F.target(u))]))

        def compose(second, first, family=family, C=C):
            return (first[0], family[C.source(first[0])].compose(second[1], first[1]))

        def identity(i, objects=objects, family=family, C=C):
            f, a = objects[i]
            return (f, family[C.source(f)].identity(a))

        names = [f"⟨{C.morphism_names[f]},{family[C.source(f)].object_names[a]}⟩" for f, a in objects]
        category = from_morphism_list(
            names,
            labels,
            compose,
            identity,
            name=f"({C.name}⋆F)({C.object_names[x]})",
            morphism_names=[f"⟨{C.morphism_names[f]},{family[C.source(f)].morphism_names[u]}⟩" for (f, u), _, _ in labels],
        )
        fibers.append(StarFiber(category, objects, [label for label, _, _ in labels]))
    return fibers


def unit_functor(C: FinCat, family: Sequence[FinCat], fibers: Sequence[StarFiber], x: int) -> Functor:
    """η_x: φ ↦ ⟨id_x, φ⟩."""
    i, F = C.identity(x), family[x]
    return Functor(
        F,
        fibers[x].category,
        [fibers[x].object_of(i, a) for a in F.objects],
        [fibers[x].morphism_of(i, u) for u in F.morphisms],
        name=f"η_{C.object_names[x]}",
    )


def multiplication_functor(C: FinCat, fibers: Sequence[StarFiber], outer: Sequence[StarFiber], x: int) -> Functor:
    """μ_x: ⟨g, ⟨f, φ⟩⟩ ↦ ⟨g∘f, φ⟩."""
    inner = fibers[x]
    object_map, morphism_map = [], []
    for g, a in outer[x].objects:
        f, b = fibers[C.source(g)].objects[a]
        object_map.append(inner.object_of(C.compose(g, f), b))
    for g, u in outer[x].morphisms:
        f, v = fibers[C.source(g)].morphisms[u]
        morphism_map.append(inner.morphism_of(C.compose(g, f), v))
    return Functor(outer[x].category, inner.category, object_map, morphism_map, name=f"μ_{C.object_names[x]}")


def star_of(C: FinCat, fibers: Sequence[StarFiber], outer: Sequence[StarFiber], alpha: Sequence[Functor], x: int) -> Functor:
    """(C⋆α)_x: ⟨g, ψ⟩ ↦ ⟨g, α(ψ)⟩."""
    inner = fibers[x]
    object_map = [inner.object_of(g, alpha[C.source(g)].on_object(a)) for g, a in outer[x].objects]
    morphism_map = [inner.morphism_of(g, alpha[C.source(g)].on_morphism(u)) for g, u in outer[x].morphisms]
    return Functor(outer[x].category, inner.category, object_map, morphism_map, name=f"(C⋆α)_{C.object_names[x]}")


def action_of(C: FinCat, family: Sequence[FinCat], fibers: Sequence[StarFiber], alpha: Sequence[Functor]) -> Action:
    """Restrict each α_x to its summands."""
    action = {}
    for f in C.morphisms:
        x, F = C.target(f), family[C.source(f)]
        action[f] = Functor(
            F,
            family[x],
            [alpha[x].on_object(fibers[x].object_of(f, a)) for a in F.objects],
            [alpha[x].on_morphism(fibers[x].morphism_of(f, u)) for u in F.morphisms],
            name=C.morphism_names[f],
        )
    return action


def algebra_of(C: FinCat, family: Sequence[FinCat], fibers: Sequence[StarFiber], action: Action) -> List[Functor]:
    """α_x⟨f, φ⟩ = action[f](φ)."""
    alpha = []
    for x in C.objects:
        objects = [action[f].on_object(a) for f, a in fibers[x].objects]
        morphisms = [action[f].on_morphism(u) for f, u in fibers[x].morphisms]
        alpha.append(Functor(fibers[x].category, family[x], objects, morphisms, name=f"α_{C.object_names[x]}"))
    return alpha


def check_action(C: FinCat, family: Sequence[FinCat], action: Action) -> ValidationReport:
    """The action is a functor C -> Cat: identities act trivially and composites act by composites."""
    report = ValidationReport(f"action on {C.name}".strip())
    for f in C.morphisms:
        report.extend(check_functor(action[f]), prefix=f"{C.morphism_names[f]}: ")
    for x in C.objects:
        if action[C.identity(x)] != identity_functor(family[x]):
            report.add("identity", f"the identity of {C.object_names[x]} acts non-trivially")
    for f in C.morphisms:
        for g in C.morphisms_from(C.target(f)):
            if compose_functors(action[g], action[f]) != action[C.compose(g, f)]:
                report.add("composition", f"{C.morphism_names[g]}∘{C.morphism_names[f]} does not act as the composite")
    return report


def check_star_algebra(
    C: FinCat,
    family: Sequence[FinCat],
    alpha: Sequence[Functor],
    fibers: Optional[Sequence[StarFiber]] = None,
) -> Tuple[ValidationReport, Optional[Action]]:
    """
    Unit and associativity laws of a candidate C⋆-algebra.

    Returns:
        (report, the induced action when the report is empty)

    Raises:
        StructuralError: If some α_x does not go (C⋆F)(x) -> F(x)
    """
    fibers = fibers if fibers is not None else star(C, family)
    outer = star(C, [s.category for s in fibers])
    report = ValidationReport(f"{C.name}⋆-algebra")
    for x in C.objects:
        if alpha[x].source != fibers[x].category or alpha[x].target != family[x]:
            raise StructuralError(f"α_{C.object_names[x]} does not go ({C.name}⋆F)(x) -> F(x)")
        report.extend(check_functor(alpha[x]), prefix=f"α_{C.object_names[x]}: ")
    if not report.is_valid:
        return report, None
    for x in C.objects:
        name = C.object_names[x]
        if compose_functors(alpha[x], unit_functor(C, family, fibers, x)) != identity_functor(family[x]):
            report.add("unit", f"α_{name}∘η_{name} ≠ id")
        lhs = compose_functors(alpha[x], multiplication_functor(C, fibers, outer, x))
        rhs = compose_functors(alpha[x], star_of(C, fibers, outer, alpha, x))
        if lhs != rhs:
            report.add("associativity", f"α_{name}∘μ_{name} ≠ α_{name}∘(C⋆α)_{name}")
    if not report.is_valid:
        return report, None
    return report, action_of(C, family, fibers, alpha)


def enumerate_cstar_algebras(C: FinCat, family: Sequence[FinCat], limit: int = MAX_CANDIDATES) -> List[Action]:
    """Every functorial action, by backtracking over the morphisms of C."""
    checks: List[List[Tuple[int, int, int]]] = [[] for _ in C.morphisms]
    for f in C.morphisms:
        for g in C.morphisms_from(C.target(f)):
            h = C.compose(g, f)
            checks[max(f, g, h)].append((g, f, h))
    identity_of = {C.identity(x): x for x in C.objects}
    candidates = []
    for f in C.morphisms:
        if f in identity_of:
            candidates.append([identity_functor(family[identity_of[f]])])
        else:
            candidates.append(list(enumerate_functors(family[C.source(f)], family[C.target(f)], limit=limit)))
    images: List[Optional[Functor]] = [None] * C.morphism_count
    found: List[Action] = []

    def assign(i: int) -> None:
        if i == C.morphism_count:
            found.append({f: images[f] for f in C.morphisms})
            if len(found) > limit:
                raise BoundExceededError(f"more than {limit} actions")
            return
        for candidate in candidates[i]:
            images[i] = candidate
            if all(compose_functors(images[g], images[f]) == images[h] for g, f, h in checks[i]):
                assign(i + 1)
        images[i] = None

    assign(0)
    return found


@dataclass
class StarClassification:
    algebras: List[Tuple[Functor, ...]] = field(default_factory=list)
    actions: List[Action] = field(default_factory=list)
    agree: bool = True


def classify_star_algebras(C: FinCat, family: Sequence[FinCat], limit: int = MAX_CANDIDATES) -> StarClassification:
    """
    Enumerate every candidate (α_x) independently, keep the lawful ones, and
    compare their actions with the directly enumerated functorial actions.
    """
    fibers = star(C, family)
    result = StarClassification(actions=enumerate_cstar_algebras(C, family, limit))
    per_object = [list(enumerate_functors(fibers[x].category, family[x], limit=limit)) for x in C.objects]
    induced = []
    for examined, alpha in enumerate(tqdm(product(*per_object), desc="algebras", disable=not SHOW_PROGRESS)):
        if examined >= limit:
            raise BoundExceededError(f"more than {limit} candidate algebra structures")
        report, action = check_star_algebra(C, family, alpha, fibers)
        if report.is_valid:
            result.algebras.append(tuple(alpha))
            induced.append(tuple(action[f] for f in C.morphisms))
    direct = [tuple(action[f] for f in C.morphisms) for action in result.actions]
    result.agree = len(set(induced)) == len(induced) and set(induced) == set(direct)
    result.agree = result.agree and all(
        tuple(algebra_of(C, family, fibers, action)) in set(result.algebras) for action in result.actions
    )
    return result


@dataclass
class StarMonad:
    """C⋆ at a family F: the fibers (C⋆F)(x), η and μ."""

    fibers: List[StarFiber]
    units: List[Functor]
    mults: List[Functor]


def cstar(C: FinCat, family: Sequence[FinCat]) -> StarMonad:
    fibers = star(C, family)
    outer = star(C, [s.category for s in fibers])
    return StarMonad(
        fibers,
        [unit_functor(C, family, fibers, x) for x in C.objects],
        [multiplication_functor(C, fibers, outer, x) for x in C.objects],
    )
