"""
The free strict monoidal category F(M) on a multicategory M.

Objects are tuples of M-objects. A morphism xs -> ys splits xs into
len(ys) consecutive, possibly empty, blocks and carries one multiarrow
block_j -> y_j per block. Hom-sets are computed on demand and memoized.
"""
from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from monoidal.strict import StrictMonCat, StrictMonoidalFunctor, TabulatedStrictMonCat
from multicategories.multicategory import Multicategory
from multicategories.underlying import underlying_multicat
from utils.report import BoundExceededError, StructuralError, ValidationReport

Word = Tuple[int, ...]


@dataclass(frozen=True)
class FreeMorphism:
    source: Word
    target: Word
    split: Tuple[int, ...]
    arrows: Tuple[int, ...]

    def blocks(self) -> List[Word]:
        result, start = [], 0
        for size in self.split:
            result.append(self.source[start:start + size])
            start += size
        return result


def compositions(n: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """Ordered ways of writing n as a sum of ``parts`` non-negative integers."""
    if parts == 0:
        if n == 0:
            yield ()
        return
    if parts == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in compositions(n - first, parts - 1):
            yield (first,) + rest


class FreeStrictMonoidal(StrictMonCat):
    """
    F(M), enumerated up to an object-length bound.

    Hom-sets whose splits need a block longer than M's source bound raise
    BoundExceededError, since the truncated M cannot say what lives there.
    """

    def __init__(self, M: Multicategory, bound: Optional[int] = None):
        self.M = M
        self.bound = M.bound if bound is None else bound
        self.name = f"F({M.name})" if M.name else "F"
        self._homs: Dict[Tuple[Word, Word], Tuple[FreeMorphism, ...]] = {}

    def iter_objects(self, bound: Optional[int] = None) -> Iterator[Word]:
        limit = self.bound if bound is None else bound
        for k in range(limit + 1):
            yield from product(range(self.M.object_count), repeat=k)

    def objects_exhausted(self, bound: Optional[int] = None) -> bool:
        return self.M.object_count == 0

    def hom(self, xs: Sequence[int], ys: Sequence[int]) -> Tuple[FreeMorphism, ...]:
        xs, ys = tuple(xs), tuple(ys)
        key = (xs, ys)
        if key not in self._homs:
            morphisms = []
            for split in compositions(len(xs), len(ys)):
                if max(split, default=0) > self.M.bound:
                    raise BoundExceededError(
                        f"hom({self.object_label(xs)}, {self.object_label(ys)}) needs sources longer than {self.M.bound}"
                    )
                start, choices = 0, []
                for size, y in zip(split, ys):
                    choices.append(self.M.hom(xs[start:start + size], y))
                    start += size
                for arrows in product(*choices):
                    morphisms.append(FreeMorphism(xs, ys, split, tuple(arrows)))
            self._homs[key] = tuple(morphisms)
        return self._homs[key]

    def identity(self, xs: Sequence[int]) -> FreeMorphism:
        xs = tuple(xs)
        return FreeMorphism(xs, xs, (1,) * len(xs), tuple(self.M.identities[x] for x in xs))

    def source(self, f: FreeMorphism) -> Word:
        return f.source

    def target(self, f: FreeMorphism) -> Word:
        return f.target

    def compose(self, g: FreeMorphism, f: FreeMorphism) -> FreeMorphism:
        """g∘f: each arrow of g is multicomposed with the block of f's arrows feeding it."""
        if f.target != g.source:
            raise StructuralError(f"{self.morphism_label(g)}∘{self.morphism_label(f)} is not composable")
        split, arrows, start = [], [], 0
        for size, b in zip(g.split, g.arrows):
            inputs = f.arrows[start:start + size]
            h = self.M.composite(b, inputs)
            if h is None:
                raise BoundExceededError(
                    f"{self.M.arrow_names[b]}∘({', '.join(self.M.arrow_names[a] for a in inputs)}) is outside the truncation"
                )
            split.append(sum(f.split[start:start + size]))
            arrows.append(h)
            start += size
        return FreeMorphism(f.source, g.target, tuple(split), tuple(arrows))

    def tensor_obj(self, xs: Sequence[int], ys: Sequence[int]) -> Word:
        return tuple(xs) + tuple(ys)

    def tensor_mor(self, f: FreeMorphism, g: FreeMorphism) -> FreeMorphism:
        return FreeMorphism(f.source + g.source, f.target + g.target, f.split + g.split, f.arrows + g.arrows)

    @property
    def unit_object(self) -> Word:
        return ()

    def object_label(self, xs: Sequence[int]) -> str:
        return "⟨" + ",".join(self.M.objects[x] for x in xs) + "⟩"

    def morphism_label(self, f: FreeMorphism) -> str:
        return "[" + "|".join(self.M.arrow_names[a] for a in f.arrows) + "]"

    def unit_arrow(self, a: int) -> FreeMorphism:
        """ζ on arrows: a: xs -> y becomes the one-block morphism xs -> ⟨y⟩."""
        xs = self.M.sources[a]
        return FreeMorphism(xs, (self.M.targets[a],), (len(xs),), (a,))


def free_strict_monoidal(M: Multicategory, bound: Optional[int] = None) -> FreeStrictMonoidal:
    return FreeStrictMonoidal(M, bound)


def check_free_unit(F: FreeStrictMonoidal) -> ValidationReport:
    """
    ζ: M -> R(F(M)) is full and faithful and preserves composition: for every
    admitted source list and target, the one-block morphisms are exactly the
    hom-set F(xs, ⟨y⟩), and ζ(f∘gs) = ζ(f)∘(ζ(g_1)⊗...⊗ζ(g_n)).
    """
    M = F.M
    report = ValidationReport(f"unit of {F.name}")
    for xs in M.source_lists():
        for y in range(M.object_count):
            images = [F.unit_arrow(a) for a in M.hom(xs, y)]
            hom = F.hom(xs, (y,))
            if len(set(images)) != len(images):
                report.add("unit-faithful", f"ζ is not injective on M({F.object_label(xs)}, {M.objects[y]})")
            if set(images) != set(hom):
                report.add("unit-full", f"ζ misses morphisms {F.object_label(xs)} -> ⟨{M.objects[y]}⟩")
    for (f, gs), h in sorted(M.comp.items()):
        inner = F.identity(())
        for g in gs:
            inner = F.tensor_mor(inner, F.unit_arrow(g))
        try:
            composite = F.compose(F.unit_arrow(f), inner)
        except BoundExceededError as error:
            report.add("bound", str(error))
            continue
        if composite != F.unit_arrow(h):
            report.add("unit-composition", f"ζ does not preserve the composite {M.arrow_names[h]}")
    return report


def counit(D: TabulatedStrictMonCat, bound: int) -> StrictMonoidalFunctor:
    """
    The evaluation F(R(D)) -> D: tensor the object lists, tensor the
    underlying D-morphisms of the blocks.
    """
    R = underlying_multicat(D, bound)
    F = FreeStrictMonoidal(R, bound)
    objects = list(D.iter_objects(bound))

    def on_object(xs):
        value = D.tensor_objects([objects[x] for x in xs])
        if value is None:
            raise BoundExceededError(f"{F.object_label(xs)} has no tensor in {D.name}")
        return value

    def on_morphism(f: FreeMorphism):
        value = D.tensor_morphisms([R.arrow_data[a][2] for a in f.arrows])
        if value is None:
            raise BoundExceededError(f"{F.morphism_label(f)} has no tensor in {D.name}")
        return value

    return StrictMonoidalFunctor(F, D, on_object, on_morphism, name="ε")
