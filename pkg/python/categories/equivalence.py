"""
Equivalence checking for functors and brute-force isomorphism search.

The checks only use the small protocol shared by tabulated and symbolic
categories (``iter_objects``, ``objects_exhausted``, ``hom``, ``compose``,
``identity``, ``inverse``), so a functor into an infinite symbolic category
can be certified up to an object bound.
"""
from dataclasses import dataclass, field
from enum import Enum
from itertools import permutations
from typing import Dict, Hashable, List, Optional, Protocol, Tuple

from categories.fincat import FinCat, Functor, functors_over
from config import ISO_SEARCH_BUDGET


class CategoryLike(Protocol):
    def iter_objects(self, bound: Optional[int] = None): ...

    def objects_exhausted(self, bound: Optional[int] = None) -> bool: ...

    def hom(self, a, b): ...

    def compose(self, g, f): ...

    def identity(self, a): ...

    def inverse(self, f): ...


class FunctorLike(Protocol):
    source: CategoryLike
    target: CategoryLike

    def on_object(self, x): ...

    def on_morphism(self, f): ...


class EquivalenceStatus(str, Enum):
    EQUIVALENT = "equivalent"
    NOT_EQUIVALENT = "not-equivalent"
    INDETERMINATE = "indeterminate"


@dataclass
class EquivalenceResult:
    """
    Outcome of an equivalence check.

    ``witnesses`` maps each target object to (source object, iso F(a) -> y,
    its inverse). ``bound`` records the object bound the certificate covers
    when the target is not exhausted by it.
    """

    status: EquivalenceStatus
    not_faithful: List[str] = field(default_factory=list)
    not_full: List[str] = field(default_factory=list)
    not_surjective: List[str] = field(default_factory=list)
    undecided: List[str] = field(default_factory=list)
    witnesses: Dict[Hashable, Tuple[Hashable, Hashable, Hashable]] = field(default_factory=dict)
    bound: Optional[int] = None
    exhaustive: bool = True

    @property
    def is_equivalence(self) -> bool:
        return self.status is EquivalenceStatus.EQUIVALENT

    def __bool__(self) -> bool:
        return self.is_equivalence

    def summary(self) -> str:
        scope = "all objects" if self.exhaustive else f"objects up to bound {self.bound}"
        lines = [f"equivalence: {self.status.value} ({scope}, {len(self.witnesses)} witnesses)"]
        for title, items in (
            ("not faithful", self.not_faithful),
            ("not full", self.not_full),
            ("not essentially surjective", self.not_surjective),
            ("undecided", self.undecided),
        ):
            for item in items:
                lines.append(f"  ✗ {title}: {item}")
        return "\n".join(lines)


def _name(cat, obj) -> str:
    names = getattr(cat, "object_names", None)
    if names is not None and isinstance(obj, int):
        return names[obj]
    return str(obj)


def equivalence_check(
    functor: FunctorLike,
    bound: Optional[int] = None,
    search_budget: int = ISO_SEARCH_BUDGET,
) -> EquivalenceResult:
    """
    Decide whether a functor is fully faithful and essentially surjective.

    Args:
        functor: Functor whose source is finite under the bound
        bound: Object bound passed to iter_objects on both sides
        search_budget: Maximum number of candidate morphisms examined per
            target object before giving up on it

    Returns:
        EquivalenceResult; a target object whose search ran out of budget
        makes the status INDETERMINATE rather than NOT_EQUIVALENT
    """
    src, tgt = functor.source, functor.target
    source_objects = list(src.iter_objects(bound))
    result = EquivalenceResult(
        EquivalenceStatus.EQUIVALENT,
        bound=bound,
        exhaustive=src.objects_exhausted(bound) and tgt.objects_exhausted(bound),
    )

    for a in source_objects:
        for b in source_objects:
            images = [functor.on_morphism(f) for f in src.hom(a, b)]
            target_hom = set(tgt.hom(functor.on_object(a), functor.on_object(b)))
            where = f"({_name(src, a)}, {_name(src, b)})"
            if len(set(images)) != len(images):
                result.not_faithful.append(f"hom{where} is not mapped injectively")
            missing = target_hom - set(images)
            if missing:
                result.not_full.append(f"hom{where} misses {len(missing)} morphism(s)")

    for y in tgt.iter_objects(bound):
        examined = 0
        found = None
        exhausted = False
        for a in source_objects:
            for iso in tgt.hom(functor.on_object(a), y):
                examined += 1
                if examined > search_budget:
                    exhausted = True
                    break
                inverse = tgt.inverse(iso)
                if inverse is not None:
                    found = (a, iso, inverse)
                    break
            if found is not None or exhausted:
                break
        if found is not None:
            result.witnesses[y] = found
        elif exhausted:
            result.undecided.append(f"object {_name(tgt, y)} after {search_budget} candidates")
        else:
            result.not_surjective.append(f"object {_name(tgt, y)} has no isomorphic image")

    if result.not_faithful or result.not_full or result.not_surjective:
        result.status = EquivalenceStatus.NOT_EQUIVALENT
    elif result.undecided:
        result.status = EquivalenceStatus.INDETERMINATE
    return result


def find_isomorphism(left: FinCat, right: FinCat) -> Optional[Functor]:
    """
    Search for an isomorphism of categories left -> right.

    Object bijections are pruned by hom-set sizes before morphisms are
    assigned injectively by backtracking.
    """
    if left.object_count != right.object_count or left.morphism_count != right.morphism_count:
        return None
    n = left.object_count
    left_sizes = [[len(left.hom(a, b)) for b in range(n)] for a in range(n)]
    for object_map in permutations(range(n)):
        if any(
            left_sizes[a][b] != len(right.hom(object_map[a], object_map[b]))
            for a in range(n)
            for b in range(n)
        ):
            continue
        for functor in functors_over(left, right, object_map, injective=True):
            functor.name = "iso"
            return functor
    return None


def is_isomorphism_functor(functor: Functor) -> bool:
    """True iff the functor is bijective on objects and on morphisms."""
    return (
        sorted(functor.object_map.tolist()) == list(functor.target.objects)
        and sorted(functor.morphism_map.tolist()) == list(functor.target.morphisms)
    )
