"""
Lax morphisms into R(D) against strict monoidal functors out of F(M).

Both sides are enumerated independently: multicategory morphisms
M -> R(D) by backtracking over arrow images, and generator assignments
(object images in D, one D-morphism ⊗F(xs) -> F(y) per arrow) kept when the
functor they generate on F(M) passes the strict functor checks up to the
bound. The forward map reads off the underlying D-morphisms; the backward
map looks them up among the arrows of R(D).
"""
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Iterator, List, Optional, Tuple

from tqdm import tqdm

from config import MAX_CANDIDATES, SHOW_PROGRESS
from monoidal.free import FreeMorphism, FreeStrictMonoidal
from monoidal.strict import StrictMonoidalFunctor, TabulatedStrictMonCat, check_strict_functor
from multicategories.multicategory import Multicategory, MulticatMorphism, check_multicat_morphism
from multicategories.underlying import underlying_multicat
from utils.report import BoundExceededError

# (object images in D, D-morphism per arrow of M)
Assignment = Tuple[Tuple[int, ...], Tuple[int, ...]]


@dataclass
class LaxClassification:
    left: List[MulticatMorphism] = field(default_factory=list)
    right: List[Assignment] = field(default_factory=list)
    partial: bool = False
    forward_roundtrip: bool = True
    backward_roundtrip: bool = True
    images_agree: bool = True

    @property
    def certified(self) -> bool:
        return not self.partial and self.forward_roundtrip and self.backward_roundtrip and self.images_agree


def _arrow_checks(M: Multicategory) -> List[List[Tuple[int, Tuple[int, ...], int]]]:
    checks: List[List[Tuple[int, Tuple[int, ...], int]]] = [[] for _ in M.arrows()]
    for (f, gs), h in M.comp.items():
        checks[max((f, h) + gs)].append((f, gs, h))
    return checks


def multicat_morphisms(M: Multicategory, N: Multicategory, limit: int = MAX_CANDIDATES) -> Iterator[MulticatMorphism]:
    """Every morphism M -> N, by backtracking in arrow order."""
    checks = _arrow_checks(M)
    identity_of = {a: x for x, a in enumerate(M.identities)}
    examined = 0
    for object_map in product(range(N.object_count), repeat=M.object_count):
        images = [-1] * M.arrow_count

        def assign(i: int) -> Iterator[List[int]]:
            nonlocal examined
            if i == M.arrow_count:
                yield list(images)
                return
            if i in identity_of:
                candidates = [N.identities[object_map[identity_of[i]]]]
            else:
                candidates = N.hom(tuple(object_map[x] for x in M.sources[i]), object_map[M.targets[i]])
            for c in candidates:
                examined += 1
                if examined > limit:
                    raise BoundExceededError(f"more than {limit} candidate arrow images")
                images[i] = c
                if all(N.composite(images[f], [images[g] for g in gs]) in (None, images[h]) for f, gs, h in checks[i]):
                    yield from assign(i + 1)
            images[i] = -1

        for arrow_map in assign(0):
            yield MulticatMorphism(M, N, object_map, arrow_map)


def generated_functor(M: Multicategory, D: TabulatedStrictMonCat, assignment: Assignment, bound: int) -> StrictMonoidalFunctor:
    """The strict monoidal functor F(M) -> D a generator assignment determines."""
    F = FreeStrictMonoidal(M, bound)
    objects, arrows = assignment

    def on_object(xs):
        value = D.tensor_objects([objects[x] for x in xs])
        if value is None:
            raise BoundExceededError(f"{F.object_label(xs)} has no image in {D.name}")
        return value

    def on_morphism(f: FreeMorphism):
        value = D.tensor_morphisms([arrows[a] for a in f.arrows])
        if value is None:
            raise BoundExceededError(f"{F.morphism_label(f)} has no image in {D.name}")
        return value

    return StrictMonoidalFunctor(F, D, on_object, on_morphism, name="generated")


def generator_assignments(M: Multicategory, D: TabulatedStrictMonCat) -> Iterator[Assignment]:
    """Object images plus a well-typed D-morphism for every arrow, identities forced."""
    identity_of = {a: x for x, a in enumerate(M.identities)}
    for objects in product(list(D.iter_objects()), repeat=M.object_count):
        choices = []
        for a in M.arrows():
            if a in identity_of:
                choices.append([D.identity(objects[identity_of[a]])])
                continue
            source = D.tensor_objects([objects[x] for x in M.sources[a]])
            choices.append([] if source is None else list(D.hom(source, objects[M.targets[a]])))
        for arrows in product(*choices):
            yield tuple(objects), tuple(arrows)


def classify_lax_morphisms(M: Multicategory, D: TabulatedStrictMonCat, bound: Optional[int] = None) -> LaxClassification:
    """
    Enumerate both sides and certify the forward and backward maps are
    mutually inverse. Searches stopping at MAX_CANDIDATES flag the result
    as partial.
    """
    bound = M.bound if bound is None else bound
    R = underlying_multicat(D, M.bound)
    result = LaxClassification()
    index: Dict[Tuple, int] = {(R.sources[a], R.targets[a], R.arrow_data[a][2]): a for a in R.arrows()}
    r_objects = list(D.iter_objects(M.bound))
    position = {obj: i for i, obj in enumerate(r_objects)}

    def forward(F: MulticatMorphism) -> Assignment:
        return tuple(r_objects[x] for x in F.object_map), tuple(R.arrow_data[a][2] for a in F.arrow_map)

    def backward(assignment: Assignment) -> Optional[MulticatMorphism]:
        objects, arrows = assignment
        object_map = [position[x] for x in objects]
        arrow_map = []
        for a in M.arrows():
            key = (tuple(object_map[x] for x in M.sources[a]), object_map[M.targets[a]], arrows[a])
            if key not in index:
                return None
            arrow_map.append(index[key])
        return MulticatMorphism(M, R, object_map, arrow_map)

    try:
        for F in multicat_morphisms(M, R):
            if check_multicat_morphism(F).is_valid:
                result.left.append(F)
    except BoundExceededError:
        result.partial = True

    examined = 0
    for assignment in tqdm(generator_assignments(M, D), desc="assignments", disable=not SHOW_PROGRESS):
        examined += 1
        if examined > MAX_CANDIDATES:
            result.partial = True
            break
        if check_strict_functor(generated_functor(M, D, assignment, bound), bound).is_valid:
            result.right.append(assignment)

    forwards = [forward(F) for F in result.left]
    result.images_agree = len(set(forwards)) == len(forwards) and set(forwards) == set(result.right)
    result.forward_roundtrip = all(backward(forward(F)) == F for F in result.left)
    for assignment in result.right:
        G = backward(assignment)
        if G is None or forward(G) != assignment:
            result.backward_roundtrip = False
    return result
