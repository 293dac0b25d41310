"""
Normal lax functors from a finite category into profunctors.

A bundle over C assigns a fiber category F(x) to every object and a
profunctor M^f: F(y) ⇸ F(x) to every morphism f: y -> x. For composable
g: z -> y and f: y -> x the multiplication m^{f,g} sends a pair (φ, ψ) with
φ ∈ M^g(c, b) and ψ ∈ M^f(b, a) to an element of M^{f∘g}(c, a); it is
supplied on every pair and must be constant on the classes of M^g•M^f.
Identities carry Hom and act through the profunctor actions.
"""
from typing import Callable, Dict, Hashable, Iterator, Mapping, Sequence, Tuple, Union

from categories.builders import walking_arrow
from categories.fincat import FinCat, Functor, NatTrans, check_category, check_nat_trans, compose_functors, identity_functor
from groth.cstar import Action, check_action
from profunctors.profunctor import (
    Profunctor,
    ProfMorphism,
    change_of_base,
    check_prof_morphism,
    check_profunctor,
    compose,
    hom_profunctor,
    is_isomorphism,
    representable,
)
from utils.report import ILL_DEFINED, CoherenceError, StructuralError, ValidationReport

Element = Hashable
Pair = Tuple[int, int]
MultTable = Mapping[Pair, Mapping[Tuple[Element, Element], Element]]
MultFunction = Callable[[int, int, Element, Element], Element]


class LaxProfFunctor:
    """A normal lax functor C -> Prof, stored as fibers, modules and multiplication tables."""

    def __init__(
        self,
        base: FinCat,
        fibers: Sequence[FinCat],
        modules: Mapping[int, Profunctor],
        mult: Union[MultTable, MultFunction],
        name: str = "",
    ):
        """
        Args:
            base: The indexing category C
            fibers: F(x) for every object x
            modules: M^f for every non-identity morphism f
            mult: Either (f, g) -> {(φ, ψ): m^{f,g}(φ, ψ)} for every composable
                pair of non-identity morphisms, or a function (f, g, φ, ψ) -> value
                evaluated once per pair

        Raises:
            StructuralError: On missing or mistyped modules or table entries
        """
        if len(fibers) != base.object_count:
            raise StructuralError(f"bundle {name}: {len(fibers)} fibers for {base.object_count} objects")
        self.base = base
        self.fibers = list(fibers)
        self.name = name
        self._modules: Dict[int, Profunctor] = {}
        for f in base.morphisms:
            y, x = base.source(f), base.target(f)
            if base.is_identity(f):
                self._modules[f] = hom_profunctor(self.fibers[x])
                continue
            if f not in modules:
                raise StructuralError(f"bundle {name}: no profunctor over {base.morphism_names[f]}")
            M = modules[f]
            if M.source != self.fibers[y] or M.target != self.fibers[x]:
                raise StructuralError(f"bundle {name}: the profunctor over {base.morphism_names[f]} has the wrong fibers")
            self._modules[f] = M

        if callable(mult):
            lookup = mult
        else:
            def lookup(f, g, phi, psi):
                return mult.get((f, g), {}).get((phi, psi))

        self._mult: Dict[Pair, Dict[Tuple[Element, Element], Element]] = {}
        for f, g in self.composable_pairs():
            target = self._modules[base.compose(f, g)]
            stored = {}
            for phi, psi in self.pairs(f, g):
                value = lookup(f, g, phi, psi)
                c = self._modules[g].position(phi)[0]
                a = self._modules[f].position(psi)[1]
                if value is None or not target.contains(value) or target.position(value) != (c, a):
                    raise StructuralError(
                        f"bundle {name}: m^{{{base.morphism_names[f]},{base.morphism_names[g]}}}({phi!r}, {psi!r}) is missing or mistyped"
                    )
                stored[(phi, psi)] = value
            self._mult[(f, g)] = stored
        self._composites: Dict[Pair, Profunctor] = {}

    def module(self, f: int) -> Profunctor:
        return self._modules[f]

    def composable_pairs(self) -> Iterator[Pair]:
        """Pairs (f, g) of non-identity morphisms with f∘g defined."""
        C = self.base
        for g in C.morphisms:
            if C.is_identity(g):
                continue
            for f in C.morphisms_from(C.target(g)):
                if not C.is_identity(f):
                    yield f, g

    def pairs(self, f: int, g: int) -> Iterator[Tuple[Element, Element]]:
        Mf, Mg = self._modules[f], self._modules[g]
        for phi in Mg.elements:
            b = Mg.position(phi)[1]
            for a in self.fibers[self.base.target(f)].objects:
                for psi in Mf.fiber(b, a):
                    yield phi, psi

    def multiply(self, f: int, g: int, phi: Element, psi: Element) -> Element:
        """m^{f,g}(φ, ψ); identities act through the profunctor actions."""
        if self.base.is_identity(f):
            return self._modules[g].act_right(phi, psi)
        if self.base.is_identity(g):
            return self._modules[f].act_left(phi, psi)
        return self._mult[(f, g)][(phi, psi)]

    def table(self, f: int, g: int) -> Dict[Tuple[Element, Element], Element]:
        return dict(self._mult[(f, g)])

    def composite(self, f: int, g: int) -> Profunctor:
        """M^g•M^f, with its quotient."""
        if (f, g) not in self._composites:
            self._composites[(f, g)] = compose(self._modules[g], self._modules[f])
        return self._composites[(f, g)]

    def multiplication(self, f: int, g: int) -> ProfMorphism:
        """m^{f,g} as a 2-cell out of the computed composite, read on class representatives."""
        composite = self.composite(f, g)
        mapping = {rep: self.multiply(f, g, *rep) for rep in composite.elements}
        name = f"m^{{{self.base.morphism_names[f]},{self.base.morphism_names[g]}}}"
        return ProfMorphism(composite, self._modules[self.base.compose(f, g)], mapping, name=name)

    def conflicts(self, f: int, g: int):
        """Pairs on which m^{f,g} differs from the value at their class representative."""
        quotient = self.composite(f, g).quotient
        _, conflicts = quotient.descend(lambda pair: self.multiply(f, g, *pair))
        return conflicts

    def is_strict(self) -> bool:
        """Every m^{f,g} is an isomorphism out of the composite."""
        return all(not self.conflicts(f, g) and is_isomorphism(self.multiplication(f, g)) for f, g in self.composable_pairs())

    def __repr__(self) -> str:
        return f"LaxProfFunctor({self.name or '?'} over {self.base.name or '?'})"


def check_lax_bundle(L: LaxProfFunctor) -> ValidationReport:
    """
    Category and profunctor laws of the data, well-definedness and
    equivariance of every m^{f,g}, and associativity element-wise.
    """
    C = L.base
    report = ValidationReport(f"lax bundle {L.name}".strip())
    report.extend(check_category(C), prefix="base: ")
    for x in C.objects:
        report.extend(check_category(L.fibers[x]), prefix=f"fiber {C.object_names[x]}: ")
    for f in C.morphisms:
        if not C.is_identity(f):
            report.extend(check_profunctor(L.module(f)), prefix=f"M^{C.morphism_names[f]}: ")
    if not report.is_valid:
        return report

    for f, g in L.composable_pairs():
        where = f"m^{{{C.morphism_names[f]},{C.morphism_names[g]}}}"
        conflicts = L.conflicts(f, g)
        for member, rep in conflicts:
            report.add("mult-balanced", f"{where} differs on {member!r} and {rep!r}", kind=ILL_DEFINED)
        if not conflicts:
            report.extend(check_prof_morphism(L.multiplication(f, g)), prefix=f"{where}: ")

    for h in C.morphisms:
        for g in C.morphisms_from(C.target(h)):
            for f in C.morphisms_from(C.target(g)):
                if C.is_identity(f) or C.is_identity(g) or C.is_identity(h):
                    continue
                gh, fg = C.compose(g, h), C.compose(f, g)
                Mh, Mg, Mf = L.module(h), L.module(g), L.module(f)
                for phi in Mh.elements:
                    c = Mh.position(phi)[1]
                    for b in L.fibers[C.target(g)].objects:
                        for chi in Mg.fiber(c, b):
                            for a in L.fibers[C.target(f)].objects:
                                for psi in Mf.fiber(b, a):
                                    left = L.multiply(f, gh, L.multiply(g, h, phi, chi), psi)
                                    right = L.multiply(fg, h, phi, L.multiply(f, g, chi, psi))
                                    if left != right:
                                        report.add(
                                            "associativity",
                                            f"{C.morphism_names[f]},{C.morphism_names[g]},{C.morphism_names[h]} on ({phi!r}, {chi!r}, {psi!r})",
                                        )
    return report


def _representing(base: FinCat, fibers: Sequence[FinCat], functors: Mapping[int, Functor], f: int) -> Functor:
    return identity_functor(fibers[base.target(f)]) if base.is_identity(f) else functors[f]


def _hom_parts(base: FinCat, fibers: Sequence[FinCat], f: int, e: Element) -> Tuple[int, int]:
    """(b, v) for an element of (G_f)_#; over identities elements are bare morphisms."""
    if base.is_identity(f):
        return fibers[base.target(f)].source(e), e
    return e


def lax_from_pseudo(
    base: FinCat,
    fibers: Sequence[FinCat],
    functors: Mapping[int, Functor],
    isos: Mapping[Pair, Sequence[int]],
    name: str = "",
) -> LaxProfFunctor:
    """
    The bundle of representable profunctors M^f = (G_f)_# with
    m^{f,g}((c, v), (b, w)) = (c, w∘G_f(v)∘κ^{f,g}_c).

    Args:
        functors: G_f: F(y) -> F(x) for every non-identity f
        isos: κ^{f,g}: G_{f∘g} => G_f∘G_g by components, for composable pairs
            of non-identity morphisms; absent pairs get identity components

    Raises:
        StructuralError: If a functor or component is mistyped
    """
    modules = {}
    for f in base.morphisms:
        if base.is_identity(f):
            continue
        Gf = functors[f]
        if Gf.source != fibers[base.source(f)] or Gf.target != fibers[base.target(f)]:
            raise StructuralError(f"representing functor over {base.morphism_names[f]} has the wrong fibers")
        modules[f] = representable(Gf)[0]

    def mult(f: int, g: int, phi: Element, psi: Element) -> Element:
        fg = base.compose(f, g)
        Fx = fibers[base.target(f)]
        Gf = _representing(base, fibers, functors, f)
        Gg = _representing(base, fibers, functors, g)
        Gfg = _representing(base, fibers, functors, fg)
        c, v = _hom_parts(base, fibers, g, phi)
        _, w = _hom_parts(base, fibers, f, psi)
        top = Gf.on_object(Gg.on_object(c))
        components = isos.get((f, g))
        kappa = Fx.identity(top) if components is None else components[c]
        if Fx.source(kappa) != Gfg.on_object(c) or Fx.target(kappa) != top:
            raise StructuralError(f"κ^{{{base.morphism_names[f]},{base.morphism_names[g]}}} at {c} is mistyped")
        value = Fx.compose(w, Fx.compose(Gf.on_morphism(v), kappa))
        return value if base.is_identity(fg) else (c, value)

    return LaxProfFunctor(base, fibers, modules, mult, name=name)


def check_pseudo_data(
    base: FinCat,
    fibers: Sequence[FinCat],
    functors: Mapping[int, Functor],
    isos: Mapping[Pair, Sequence[int]],
) -> ValidationReport:
    """Each κ^{f,g} is a natural isomorphism G_{f∘g} => G_f∘G_g."""
    report = ValidationReport("composition comparisons")
    for (f, g), components in sorted(isos.items()):
        where = f"κ^{{{base.morphism_names[f]},{base.morphism_names[g]}}}"
        source = _representing(base, fibers, functors, base.compose(f, g))
        target = compose_functors(_representing(base, fibers, functors, f), _representing(base, fibers, functors, g))
        report.extend(check_nat_trans(NatTrans(source, target, components)), prefix=f"{where}: ")
        Fx = fibers[base.target(f)]
        if any(Fx.inverse(k) is None for k in components):
            report.add("invertibility", f"{where} has a non-invertible component")
    return report


def lax_from_functor(base: FinCat, fibers: Sequence[FinCat], action: Action, name: str = "") -> LaxProfFunctor:
    """
    The strict bundle of a functor C -> Cat.

    Raises:
        CoherenceError: If the action is not functorial
    """
    report = check_action(base, fibers, action)
    if not report.is_valid:
        raise CoherenceError(f"not a functor into Cat:\n{report.format()}")
    functors = {f: action[f] for f in base.morphisms if not base.is_identity(f)}
    return lax_from_pseudo(base, fibers, functors, {}, name=name)


def transport_bundle(L: LaxProfFunctor, equivalences: Sequence[Functor], name: str = "") -> LaxProfFunctor:
    """
    Replace each fiber F(x) by the source of an equivalence E_x: F'(x) -> F(x)
    and pull every M^f back along the equivalences.

    Raises:
        StructuralError: If some E_x does not land in F(x) or is not full and faithful
    """
    C = L.base
    if len(equivalences) != C.object_count:
        raise StructuralError(f"{len(equivalences)} equivalences for {C.object_count} fibers")
    for x in C.objects:
        if equivalences[x].target != L.fibers[x]:
            raise StructuralError(f"equivalence at {C.object_names[x]} does not land in the fiber")
    fibers = [E.source for E in equivalences]

    def lift(x: int, a: int, b: int, v: int) -> int:
        """The unique F'(x)-morphism over v."""
        E = equivalences[x]
        matches = [u for u in fibers[x].hom(a, b) if E.on_morphism(u) == v]
        if len(matches) != 1:
            raise StructuralError(f"equivalence at {C.object_names[x]} is not full and faithful")
        return matches[0]

    modules = {}
    for f in C.morphisms:
        if not C.is_identity(f):
            modules[f] = change_of_base(equivalences[C.source(f)], equivalences[C.target(f)], L.module(f))

    def mult(f: int, g: int, phi: Element, psi: Element) -> Element:
        c, _, r = phi
        _, a, s = psi
        value = L.multiply(f, g, r, s)
        if C.is_identity(C.compose(f, g)):
            return lift(C.target(f), c, a, value)
        return c, a, value

    return LaxProfFunctor(C, fibers, modules, mult, name=name or f"{L.name}'")


def collage(P: Profunctor, name: str = "") -> LaxProfFunctor:
    """The bundle over the walking arrow with M^u = P."""
    return LaxProfFunctor(walking_arrow(), [P.source, P.target], {2: P}, {}, name=name or f"collage({P.name})")
