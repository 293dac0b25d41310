"""
Monoids in strict monoidal categories and their classification by Δ.

A monoid (X, e, m) induces a strict monoidal functor out of a truncation of
Δ: n ↦ X^{⊗n}, and a monotone map with fibers (k_1, ..., k_r) ↦ the tensor of
the iterated multiplications μ^{(k_j)}. Precomposing with the generic monoid
of Δ recovers (X, e, m).
"""
from dataclasses import dataclass, field
from typing import Hashable, List, Optional, Tuple

from tqdm import tqdm

from config import SHOW_PROGRESS
from monoidal.delta import delta, delta_morphism
from monoidal.strict import StrictMonCat, StrictMonoidalFunctor, TabulatedStrictMonCat, check_strict_functor
from utils.report import BoundExceededError, StructuralError, ValidationReport


@dataclass(frozen=True)
class MonoidInC:
    carrier: Hashable
    unit: Hashable
    mult: Hashable


def generic_monoid(D: TabulatedStrictMonCat) -> MonoidInC:
    """The object 1 of Δ with its unique maps 0 -> 1 and 2 -> 1."""
    if D.base.object_count < 3:
        raise StructuralError("the generic monoid needs Δ truncated at 2 or more")
    return MonoidInC(1, delta_morphism(D, 0, (0,)), delta_morphism(D, 2, (2,)))


def check_monoid(C: StrictMonCat, monoid: MonoidInC) -> ValidationReport:
    """Typing, both unit laws and associativity in a strict ambient."""
    report = ValidationReport(f"monoid on {C.object_label(monoid.carrier)}")
    X, e, m = monoid.carrier, monoid.unit, monoid.mult
    XX = C.tensor_obj(X, X)
    if XX is None:
        report.add("bound", f"{C.object_label(X)}⊗{C.object_label(X)} is outside the truncation")
        return report
    if C.source(e) != C.unit_object or C.target(e) != X:
        report.add("typing", "the unit is not a morphism I -> X")
    if C.source(m) != XX or C.target(m) != X:
        report.add("typing", "the multiplication is not a morphism X⊗X -> X")
    if not report.is_valid:
        return report
    idx = C.identity(X)
    if C.compose(m, C.tensor_mor(e, idx)) != idx:
        report.add("left-unit", "m∘(e⊗id) ≠ id")
    if C.compose(m, C.tensor_mor(idx, e)) != idx:
        report.add("right-unit", "m∘(id⊗e) ≠ id")
    if C.tensor_obj(XX, X) is None:
        report.add("bound", f"{C.object_label(X)}^⊗3 is outside the truncation")
        return report
    if C.compose(m, C.tensor_mor(m, idx)) != C.compose(m, C.tensor_mor(idx, m)):
        report.add("associativity", "m∘(m⊗id) ≠ m∘(id⊗m)")
    return report


def _power(C: StrictMonCat, monoid: MonoidInC, k: int):
    """μ^{(k)}: X^{⊗k} -> X, with μ^{(0)} = e and μ^{(1)} = id."""
    if k == 0:
        return monoid.unit
    result = C.identity(monoid.carrier)
    for _ in range(k - 1):
        result = C.compose(monoid.mult, C.tensor_mor(result, C.identity(monoid.carrier)))
    return result


def induced_functor(C: StrictMonCat, monoid: MonoidInC, D: TabulatedStrictMonCat) -> StrictMonoidalFunctor:
    """The strict monoidal functor D -> C determined by the generator images."""

    def on_object(n: int):
        value = C.tensor_objects([monoid.carrier] * n)
        if value is None:
            raise BoundExceededError(f"{C.object_label(monoid.carrier)}^⊗{n} is outside the truncation")
        return value

    def on_morphism(f: int):
        _, fibers = D.morphism_labels[f]
        value = C.tensor_morphisms([_power(C, monoid, k) for k in fibers])
        if value is None:
            raise BoundExceededError(f"image of {D.morphism_label(f)} is outside the truncation")
        return value

    return StrictMonoidalFunctor(D, C, on_object, on_morphism, name=f"Δ→{C.name}")


def restrict_to_generic(functor: StrictMonoidalFunctor) -> MonoidInC:
    """Precomposition with the generic monoid."""
    G = generic_monoid(functor.source)
    return MonoidInC(functor.on_object(G.carrier), functor.on_morphism(G.unit), functor.on_morphism(G.mult))


@dataclass
class MonoidClassification:
    monoids: List[MonoidInC] = field(default_factory=list)
    functors: List[Tuple[MonoidInC, StrictMonoidalFunctor]] = field(default_factory=list)
    undecided: List[Hashable] = field(default_factory=list)
    agree: bool = True
    roundtrip: bool = True

    @property
    def certified(self) -> bool:
        return self.agree and self.roundtrip


def classify_monoids(C: StrictMonCat, bound: Optional[int] = None, n_max: int = 3) -> MonoidClassification:
    """
    Enumerate candidate generator images (X, e: I -> X, m: X⊗X -> X) and
    sort them two ways: by the monoid laws, and by whether the induced
    assignment Δ≤n_max -> C is a strict monoidal functor. Carriers whose
    n_max-fold tensor is outside the truncation are listed as undecided.
    """
    D = delta(n_max)
    result = MonoidClassification()
    objects = list(C.iter_objects(bound))
    for X in tqdm(objects, desc="carriers", disable=not SHOW_PROGRESS):
        if C.tensor_objects([X] * max(n_max, 3)) is None:
            result.undecided.append(X)
            continue
        for e in C.hom(C.unit_object, X):
            for m in C.hom(C.tensor_obj(X, X), X):
                candidate = MonoidInC(X, e, m)
                if check_monoid(C, candidate).is_valid:
                    result.monoids.append(candidate)
                functor = induced_functor(C, candidate, D)
                if check_strict_functor(functor).is_valid:
                    result.functors.append((candidate, functor))
    recovered = [restrict_to_generic(functor) for _, functor in result.functors]
    result.agree = len(recovered) == len(result.monoids) and set(recovered) == set(result.monoids)
    result.roundtrip = all(restrict_to_generic(induced_functor(C, monoid, D)) == monoid for monoid in result.monoids)
    return result
