"""
Representability of lax bundles, and the pseudo-functors they determine.

M^f is representable when every b in F(y) has a universal element
u_b ∈ M^f(b, G_f b): each element of M^f(b, a) is u_b·w for exactly one
w: G_f b -> a. The universal elements assemble into a functor G_f and a
bijection (G_f)_# ≅ M^f. If moreover every m^{f,g} is invertible, the
composition comparisons κ^{f,g}: G_{f∘g} => G_f∘G_g are read off from
m^{f,g}(u^g_c, u^f_{G_g c}) = u^{f∘g}_c·κ^{f,g}_c.
"""
from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Optional, Tuple

from categories.fincat import FinCat, Functor, NatTrans, check_functor, check_nat_trans, compose_functors, identity_functor
from groth.lax_bundle import LaxProfFunctor, Pair
from profunctors.profunctor import Profunctor, ProfMorphism, is_isomorphism, representable
from utils.report import NON_INVERTIBLE, ValidationReport

Element = Hashable


@dataclass
class PseudoProfFunctor:
    """A representable lax bundle with its representing functors and comparisons."""

    lax: LaxProfFunctor
    functors: Dict[int, Functor]
    comparisons: Dict[int, ProfMorphism]
    isos: Dict[Pair, List[int]]
    universal: Dict[int, List[Element]] = field(default_factory=dict)

    def kappa(self, f: int, g: int) -> List[int]:
        """κ^{f,g} by components; identities when f or g is an identity."""
        C = self.lax.base
        if C.is_identity(f) or C.is_identity(g):
            Gfg = self.functors[C.compose(f, g)]
            Fx = self.lax.fibers[C.target(f)]
            return [Fx.identity(Gfg.on_object(c)) for c in self.lax.fibers[C.source(g)].objects]
        return self.isos[(f, g)]


@dataclass
class RepresentabilityResult:
    pseudo: Optional[PseudoProfFunctor]
    witness: str = ""

    @property
    def representable(self) -> bool:
        return self.pseudo is not None


def _factorizations(M: Profunctor, Fx: FinCat, u: Element, e: Element) -> List[int]:
    a = M.position(u)[1]
    target = M.position(e)[1]
    return [w for w in Fx.hom(a, target) if M.act_right(u, w) == e]


def _universal_element(M: Profunctor, Fx: FinCat, b: int) -> Optional[Element]:
    """The least-index element of M(b, -) through which every element of M(b, -) factors uniquely."""
    row = [e for a in Fx.objects for e in M.fiber(b, a)]
    members = set(row)
    for u in (e for e in M.elements if e in members):
        if all(len(_factorizations(M, Fx, u, e)) == 1 for e in row):
            return u
    return None


def representing_functor(L: LaxProfFunctor, f: int) -> Tuple[Optional[Functor], List[Element], str]:
    """
    G_f and its universal elements, or (None, [], reason).
    """
    C = L.base
    y, x = C.source(f), C.target(f)
    Fy, Fx, M = L.fibers[y], L.fibers[x], L.module(f)
    if C.is_identity(f):
        return identity_functor(Fx), [Fx.identity(b) for b in Fx.objects], ""
    universal = []
    for b in Fy.objects:
        u = _universal_element(M, Fx, b)
        if u is None:
            return None, [], f"M^{C.morphism_names[f]} has no universal element at {Fy.object_names[b]}"
        universal.append(u)
    objects = [M.position(u)[1] for u in universal]
    morphisms = []
    for v in Fy.morphisms:
        start, end = Fy.source(v), Fy.target(v)
        shifted = M.act_left(v, universal[end])
        morphisms.append(_factorizations(M, Fx, universal[start], shifted)[0])
    return Functor(Fy, Fx, objects, morphisms, name=f"G_{C.morphism_names[f]}"), universal, ""


def is_representable_lax(L: LaxProfFunctor) -> RepresentabilityResult:
    """
    Decide whether every M^f is representable and every m^{f,g} invertible.

    Returns:
        The pseudo-functor data on success, otherwise an empty result naming
        the first failing morphism or pair
    """
    C = L.base
    functors: Dict[int, Functor] = {}
    comparisons: Dict[int, ProfMorphism] = {}
    universal: Dict[int, List[Element]] = {}
    for f in C.morphisms:
        G, elements, reason = representing_functor(L, f)
        if G is None:
            return RepresentabilityResult(None, reason)
        if not check_functor(G).is_valid:
            return RepresentabilityResult(None, f"G_{C.morphism_names[f]} is not a functor")
        M = L.module(f)
        lower = representable(G)[0]
        mapping = {(b, w): M.act_right(elements[b], w) for b, w in lower.elements}
        theta = ProfMorphism(lower, M, mapping, name=f"θ_{C.morphism_names[f]}")
        if not is_isomorphism(theta):
            return RepresentabilityResult(None, f"(G_{C.morphism_names[f]})_# is not isomorphic to M^{C.morphism_names[f]}")
        functors[f], comparisons[f], universal[f] = G, theta, elements

    isos: Dict[Pair, List[int]] = {}
    for f, g in L.composable_pairs():
        where = f"m^{{{C.morphism_names[f]},{C.morphism_names[g]}}}"
        if L.conflicts(f, g) or not is_isomorphism(L.multiplication(f, g)):
            return RepresentabilityResult(None, f"{where} is not invertible")
        fg = C.compose(f, g)
        Fx, Mfg = L.fibers[C.target(f)], L.module(fg)
        components = []
        for c in L.fibers[C.source(g)].objects:
            ug = universal[g][c]
            uf = universal[f][functors[g].on_object(c)]
            value = L.multiply(f, g, ug, uf)
            components.append(_factorizations(Mfg, Fx, universal[fg][c], value)[0])
        isos[(f, g)] = components
    return RepresentabilityResult(PseudoProfFunctor(L, functors, comparisons, isos, universal))


def check_pseudo_coherence(P: PseudoProfFunctor) -> ValidationReport:
    """
    Representations, normality, naturality and invertibility of every κ,
    agreement of m^{f,g} with w∘G_f(v)∘κ_c, and the cocycle condition
    G_f(κ^{g,h}) ∘ κ^{f,g∘h} = κ^{f,g}_{G_h} ∘ κ^{f∘g,h}.
    """
    L = P.lax
    C = L.base
    report = ValidationReport(f"pseudo-functor {L.name}".strip())
    for f in C.morphisms:
        if not is_isomorphism(P.comparisons[f]):
            report.add("representation", f"θ_{C.morphism_names[f]} is not an isomorphism", kind=NON_INVERTIBLE)
    for x in C.objects:
        if P.functors[C.identity(x)] != identity_functor(L.fibers[x]):
            report.add("normality", f"G at the identity of {C.object_names[x]} is not the identity")

    for (f, g), components in sorted(P.isos.items()):
        where = f"κ^{{{C.morphism_names[f]},{C.morphism_names[g]}}}"
        Fx = L.fibers[C.target(f)]
        kappa = NatTrans(P.functors[C.compose(f, g)], compose_functors(P.functors[f], P.functors[g]), components)
        report.extend(check_nat_trans(kappa), prefix=f"{where}: ")
        if any(Fx.inverse(k) is None for k in components):
            report.add("invertibility", f"{where} has a non-invertible component", kind=NON_INVERTIBLE)
    if not report.is_valid:
        return report

    inverses = {f: P.comparisons[f].inverse() for f in C.morphisms}
    for f, g in L.composable_pairs():
        Fx = L.fibers[C.target(f)]
        fg = C.compose(f, g)
        Gf, kappa = P.functors[f], P.kappa(f, g)
        for phi, psi in L.pairs(f, g):
            c, v = inverses[g](phi)
            _, w = inverses[f](psi)
            expected = P.comparisons[fg]((c, Fx.compose(w, Fx.compose(Gf.on_morphism(v), kappa[c]))))
            if L.multiply(f, g, phi, psi) != expected:
                report.add("multiplication", f"m^{{{C.morphism_names[f]},{C.morphism_names[g]}}} on ({phi!r}, {psi!r})")

    for h in C.morphisms:
        for g in C.morphisms_from(C.target(h)):
            for f in C.morphisms_from(C.target(g)):
                if C.is_identity(f) or C.is_identity(g) or C.is_identity(h):
                    continue
                Fx = L.fibers[C.target(f)]
                gh, fg = C.compose(g, h), C.compose(f, g)
                for c in L.fibers[C.source(h)].objects:
                    left = Fx.compose(P.functors[f].on_morphism(P.kappa(g, h)[c]), P.kappa(f, gh)[c])
                    right = Fx.compose(P.kappa(f, g)[P.functors[h].on_object(c)], P.kappa(fg, h)[c])
                    if left != right:
                        report.add(
                            "cocycle",
                            f"{C.morphism_names[f]},{C.morphism_names[g]},{C.morphism_names[h]} at {L.fibers[C.source(h)].object_names[c]}",
                        )
    return report
