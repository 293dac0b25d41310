"""
Profunctor monads, their Kleisli categories, and monads on a single functor.

A monad on X is a profunctor M: X ⇸ X with a unit ι: Hom_X => M and a
multiplication μ: M•M => M. The multiplication is supplied on every
composable pair (p, q) with p ∈ M(x, y), q ∈ M(y, z), and must be constant on
the classes of the composite M•M.
"""
from typing import Dict, Hashable, Mapping, Tuple

from categories.builders import from_morphism_list
from categories.fincat import FinCat, Functor, NatTrans, check_nat_trans, compose_functors, identity_functor
from profunctors.profunctor import (
    Profunctor,
    ProfMorphism,
    _incoming,
    check_profunctor,
    compose,
    hom_profunctor,
    representable,
)
from utils.report import ILL_DEFINED, CoherenceError, StructuralError, ValidationReport

Element = Hashable


class ProfMonad:
    """A monad (M, ι, μ) in the bicategory of profunctors on a finite category."""

    def __init__(
        self,
        carrier: Profunctor,
        unit: Mapping[int, Element],
        mult: Mapping[Tuple[Element, Element], Element],
        normal: bool = False,
        name: str = "",
    ):
        if carrier.source != carrier.target:
            raise StructuralError("a profunctor monad needs an endo-profunctor")
        X = carrier.source
        for u in X.morphisms:
            if u not in unit:
                raise StructuralError(f"monad {name}: unit has no value at {X.morphism_names[u]}")
            if not carrier.contains(unit[u]) or carrier.position(unit[u]) != (X.source(u), X.target(u)):
                raise StructuralError(f"monad {name}: unit of {X.morphism_names[u]} lies in the wrong fiber")
        for p in carrier.elements:
            x, y = carrier.position(p)
            for z in X.objects:
                for q in carrier.fiber(y, z):
                    r = mult.get((p, q))
                    if r is None or not carrier.contains(r) or carrier.position(r) != (x, z):
                        raise StructuralError(f"monad {name}: multiplication of ({p!r}, {q!r}) is missing or mistyped")
        self.carrier = carrier
        self.category = X
        self.unit = {u: unit[u] for u in X.morphisms}
        self.mult = dict(mult)
        self.normal = normal
        self.name = name

    def multiply(self, p: Element, q: Element) -> Element:
        return self.mult[(p, q)]


def check_prof_monad(monad: ProfMonad) -> ValidationReport:
    """
    Check the monad laws element-wise.

    Failures of μ to be constant on the classes of M•M are reported with kind
    ``ill-defined``; everything else is a law violation.
    """
    M, X = monad.carrier, monad.category
    report = ValidationReport(f"monad {monad.name}".strip())
    report.extend(check_profunctor(M))
    mult, unit = monad.mult, monad.unit
    into = _incoming(X)

    for p in M.elements:
        y = M.position(p)[1]
        for v in X.morphisms_from(y):
            for z in X.objects:
                for q in M.fiber(X.target(v), z):
                    if mult[(M.act_right(p, v), q)] != mult[(p, M.act_left(v, q))]:
                        report.add(
                            "mult-balanced",
                            f"μ({p!r}·{X.morphism_names[v]}, {q!r}) ≠ μ({p!r}, {X.morphism_names[v]}·{M.act_left(v, q)!r})",
                            kind=ILL_DEFINED,
                        )

    for (p, q), r in mult.items():
        x = M.position(p)[0]
        z = M.position(q)[1]
        for u in into[x]:
            if mult[(M.act_left(u, p), q)] != M.act_left(u, r):
                report.add("mult-equivariance", f"left action of {X.morphism_names[u]} on μ({p!r}, {q!r})")
        for w in X.morphisms_from(z):
            if mult[(p, M.act_right(q, w))] != M.act_right(r, w):
                report.add("mult-equivariance", f"right action of {X.morphism_names[w]} on μ({p!r}, {q!r})")

    for f in X.morphisms:
        for u in into[X.source(f)]:
            if unit[X.compose(f, u)] != M.act_left(u, unit[f]):
                report.add("unit-equivariance", f"ι({X.morphism_names[f]}∘{X.morphism_names[u]}) ≠ {X.morphism_names[u]}·ι({X.morphism_names[f]})")
        for v in X.morphisms_from(X.target(f)):
            if unit[X.compose(v, f)] != M.act_right(unit[f], v):
                report.add("unit-equivariance", f"ι({X.morphism_names[v]}∘{X.morphism_names[f]}) ≠ ι({X.morphism_names[f]})·{X.morphism_names[v]}")

    for p in M.elements:
        x, y = M.position(p)
        if mult[(unit[X.identity(x)], p)] != p:
            report.add("left-unit", f"μ(ι(id), {p!r}) ≠ {p!r}")
        if mult[(p, unit[X.identity(y)])] != p:
            report.add("right-unit", f"μ({p!r}, ι(id)) ≠ {p!r}")

    for (p, q), pq in mult.items():
        z = M.position(q)[1]
        for w in X.objects:
            for r in M.fiber(z, w):
                if mult[(pq, r)] != mult[(p, mult[(q, r)])]:
                    report.add("associativity", f"μ(μ({p!r}, {q!r}), {r!r}) ≠ μ({p!r}, μ({q!r}, {r!r}))")

    if monad.normal:
        for x in X.objects:
            for y in X.objects:
                images = [unit[u] for u in X.hom(x, y)]
                if len(set(images)) != len(images) or set(images) != set(M.fiber(x, y)):
                    report.add("normality", f"ι is not a bijection X({x}, {y}) -> M({x}, {y})")
    return report


def hom_monad(X: FinCat) -> ProfMonad:
    """The identity monad: carrier Hom_X, unit the identity, mult composition."""
    H = hom_profunctor(X)
    mult = {}
    for f in X.morphisms:
        for g in X.morphisms_from(X.target(f)):
            mult[(f, g)] = X.compose(g, f)
    return ProfMonad(H, {u: u for u in X.morphisms}, mult, normal=True, name=f"Hom_{X.name}")


def kleisli(monad: ProfMonad) -> Tuple[FinCat, Functor]:
    """
    The Kleisli category of a valid profunctor monad.

    Objects are those of X, hom(x, y) = M(x, y), identities are ι(id_x) and
    g∘f = μ(f, g). J: X -> Kleisli is the identity on objects with J(u) = ι(u).

    Raises:
        CoherenceError: If the monad fails check_prof_monad
    """
    report = check_prof_monad(monad)
    if not report.is_valid:
        raise CoherenceError(f"kleisli needs a valid monad\n{report.format()}")
    M, X = monad.carrier, monad.category
    morphisms = [(p, *M.position(p)) for p in M.elements]
    K = from_morphism_list(
        X.object_names,
        morphisms,
        lambda g, f: monad.multiply(f, g),
        lambda x: monad.unit[X.identity(x)],
        name=f"Kl({monad.name})" if monad.name else "Kl",
    )
    index = {p: i for i, p in enumerate(M.elements)}
    J = Functor(X, K, list(X.objects), [index[monad.unit[u]] for u in X.morphisms], name="J")
    return K, J


def kleisli_reconstruction(monad: ProfMonad, K: FinCat, J: Functor) -> ProfMorphism:
    """The comparison J_#•J^* => M, [(x, a), (b, x')] ↦ b∘a read as an M-element."""
    lower, upper = representable(J)
    composite = compose(lower, upper)
    elements = monad.carrier.elements
    mapping = {((x, a), (b, x2)): elements[K.compose(b, a)] for (x, a), (b, x2) in composite.elements}
    return ProfMorphism(composite, monad.carrier, mapping, name="reconstruction")


def endo_monad_report(t: Functor, eta: NatTrans, mu: NatTrans) -> ValidationReport:
    """Check that (t, η, μ) is a monad on a finite category."""
    X = t.source
    report = ValidationReport("endofunctor monad")
    if t.target != X:
        raise StructuralError("a monad needs an endofunctor")
    if eta.source != identity_functor(X) or eta.target != t:
        raise StructuralError("unit must be a transformation id => t")
    if mu.source != compose_functors(t, t) or mu.target != t:
        raise StructuralError("multiplication must be a transformation tt => t")
    report.extend(check_nat_trans(eta), prefix="η ")
    report.extend(check_nat_trans(mu), prefix="μ ")
    if not report.is_valid:
        return report
    for x in X.objects:
        tx = t.on_object(x)
        mx = mu.component(x)
        if X.composite(mx, t.on_morphism(eta.component(x))) != X.identity(tx):
            report.add("left-unit", f"μ∘tη ≠ id at {X.object_names[x]}")
        if X.composite(mx, eta.component(tx)) != X.identity(tx):
            report.add("right-unit", f"μ∘ηt ≠ id at {X.object_names[x]}")
        if X.composite(mx, t.on_morphism(mx)) != X.composite(mx, mu.component(tx)):
            report.add("associativity", f"μ∘tμ ≠ μ∘μt at {X.object_names[x]}")
    return report


def _require_endo_monad(t: Functor, eta: NatTrans, mu: NatTrans) -> None:
    report = endo_monad_report(t, eta, mu)
    if not report.is_valid:
        raise CoherenceError(f"monad laws fail\n{report.format()}")


def kleisli_of_endo(t: Functor, eta: NatTrans, mu: NatTrans) -> FinCat:
    """
    Kleisli category of a monad (t, η, μ) on X: hom(x, y) = X(x, ty), with
    identity η_x and g∘f = μ_z∘t(g)∘f. Morphisms are labelled (x, y, f).
    """
    _require_endo_monad(t, eta, mu)
    X = t.source
    morphisms = [((x, y, f), x, y) for x in X.objects for y in X.objects for f in X.hom(x, t.on_object(y))]

    def compose_labels(second, first):
        x, _, f = first
        _, z, g = second
        return (x, z, X.compose(mu.component(z), X.compose(t.on_morphism(g), f)))

    return from_morphism_list(
        X.object_names,
        morphisms,
        compose_labels,
        lambda x: (x, x, eta.component(x)),
        name=f"Kl({t.name})" if t.name else "Kl",
        morphism_names=[X.morphism_names[f] for (_, _, f), _, _ in morphisms],
    )


def endo_prof_monad(t: Functor, eta: NatTrans, mu: NatTrans) -> ProfMonad:
    """
    The profunctor monad carried by t^*: M(x, y) = X(x, ty), ι(u) = η_y∘u and
    μ((v, y), (w, z)) = (μ_z∘t(w)∘v, z).
    """
    _require_endo_monad(t, eta, mu)
    X = t.source
    _, carrier = representable(t)
    unit = {u: (X.compose(eta.component(X.target(u)), u), X.target(u)) for u in X.morphisms}
    mult: Dict[Tuple[Element, Element], Element] = {}
    for v, y in carrier.elements:
        for z in X.objects:
            for w, _ in carrier.fiber(y, z):
                mult[((v, y), (w, z))] = (X.compose(mu.component(z), X.compose(t.on_morphism(w), v)), z)
    return ProfMonad(carrier, unit, mult, name=f"{t.name}^*")


def kleisli_agreement(t: Functor, eta: NatTrans, mu: NatTrans) -> Functor:
    """
    The functor kleisli_of_endo(t) -> kleisli(t^*) sending (x, y, f) to the
    element (f, y). It is an isomorphism whenever both constructions agree.
    """
    direct = kleisli_of_endo(t, eta, mu)
    monad = endo_prof_monad(t, eta, mu)
    via_profunctors, _ = kleisli(monad)
    index = {p: i for i, p in enumerate(monad.carrier.elements)}
    X = t.source
    morphism_map = []
    for x in X.objects:
        for y in X.objects:
            for f in X.hom(x, t.on_object(y)):
                morphism_map.append(index[(f, y)])
    return Functor(direct, via_profunctors, list(X.objects), morphism_map, name="agreement")
