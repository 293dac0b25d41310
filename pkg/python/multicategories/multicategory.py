"""
Finite multicategories truncated by a source-length bound.

Arrows are dense indices with a source tuple of object indices and a target
object. The composition table is keyed by (f, (g_1, ..., g_n)) with the
targets of the g_i matching the source of f; the composite has the
concatenated source and the target of f.
"""
from itertools import product
from typing import Dict, FrozenSet, Hashable, Iterator, List, Mapping, Optional, Sequence, Tuple

from categories.fincat import FinCat
from utils.report import StructuralError, ValidationReport

Source = Tuple[int, ...]
CompKey = Tuple[int, Tuple[int, ...]]


class Multicategory:
    """A planar multicategory with a finite set of arrows."""

    def __init__(
        self,
        objects: Sequence[str],
        arrows: Sequence[Tuple[str, Sequence[int], int]],
        identity: Sequence[int],
        comp: Mapping[CompKey, int],
        bound: int,
        name: str = "",
        allowed_sources: Optional[FrozenSet[Source]] = None,
        arrow_data: Optional[Sequence[Hashable]] = None,
    ):
        """
        Build a multicategory from tables.

        Args:
            objects: Object names
            arrows: (name, source, target) per arrow index
            identity: Identity arrow per object
            comp: (f, gs) -> composite arrow index
            bound: Source-length bound; composites with longer sources are
                not required to exist
            allowed_sources: Optional set of source tuples the truncation
                admits; composites landing outside it are not required either
            arrow_data: Optional construction payload per arrow

        Raises:
            StructuralError: On indices out of range or arity mismatches
        """
        self.objects = tuple(objects)
        self.name = name
        self.bound = bound
        n = len(self.objects)
        self.arrow_names: Tuple[str, ...] = tuple(a[0] for a in arrows)
        self.sources: Tuple[Source, ...] = tuple(tuple(int(x) for x in a[1]) for a in arrows)
        self.targets: Tuple[int, ...] = tuple(int(a[2]) for a in arrows)
        if len(set(self.arrow_names)) != len(self.arrow_names):
            raise StructuralError(f"multicategory {name}: duplicate arrow names")
        for i, (src, tgt) in enumerate(zip(self.sources, self.targets)):
            if not all(0 <= x < n for x in src) or not 0 <= tgt < n:
                raise StructuralError(f"multicategory {name}: arrow {self.arrow_names[i]} has an object out of range")
            if len(src) > bound:
                raise StructuralError(f"multicategory {name}: arrow {self.arrow_names[i]} exceeds the source bound {bound}")
        if len(identity) != n:
            raise StructuralError(f"multicategory {name}: one identity per object is required")
        self.identities = tuple(int(i) for i in identity)

        m = len(self.arrow_names)
        self.comp: Dict[CompKey, int] = {}
        for (f, gs), h in comp.items():
            gs = tuple(gs)
            if not (0 <= f < m and 0 <= h < m and all(0 <= g < m for g in gs)):
                raise StructuralError(f"multicategory {name}: composition entry out of range")
            if len(gs) != len(self.sources[f]):
                raise StructuralError(
                    f"multicategory {name}: {self.arrow_names[f]} has arity {len(self.sources[f])} but is composed with {len(gs)} arrows"
                )
            if tuple(self.targets[g] for g in gs) != self.sources[f]:
                raise StructuralError(f"multicategory {name}: targets of the inputs do not match the source of {self.arrow_names[f]}")
            if self.sources[h] != self.concat_source(gs) or self.targets[h] != self.targets[f]:
                raise StructuralError(f"multicategory {name}: composite {self.arrow_names[h]} has the wrong boundary")
            self.comp[(f, gs)] = h
        self.allowed_sources = allowed_sources
        self.arrow_data = tuple(arrow_data) if arrow_data is not None else self.arrow_names

        self._hom: Dict[Tuple[Source, int], List[int]] = {}
        self._into: Dict[int, List[int]] = {x: [] for x in range(n)}
        for i in range(m):
            self._hom.setdefault((self.sources[i], self.targets[i]), []).append(i)
            self._into[self.targets[i]].append(i)

    @property
    def arrow_count(self) -> int:
        return len(self.arrow_names)

    @property
    def object_count(self) -> int:
        return len(self.objects)

    def arrows(self) -> range:
        return range(self.arrow_count)

    def arity(self, f: int) -> int:
        return len(self.sources[f])

    def hom(self, source: Sequence[int], target: int) -> List[int]:
        return self._hom.get((tuple(source), target), [])

    def arrows_into(self, target: int) -> List[int]:
        return self._into[target]

    def concat_source(self, gs: Sequence[int]) -> Source:
        return tuple(x for g in gs for x in self.sources[g])

    def admits(self, source: Sequence[int]) -> bool:
        """Whether composites with this source are required to exist."""
        if len(source) > self.bound:
            return False
        return self.allowed_sources is None or tuple(source) in self.allowed_sources

    def source_lists(self) -> Iterator[Source]:
        """Every admitted source list, shortest first."""
        for k in range(self.bound + 1):
            for source in product(range(self.object_count), repeat=k):
                if self.admits(source):
                    yield source

    def composite(self, f: int, gs: Sequence[int]) -> Optional[int]:
        return self.comp.get((f, tuple(gs)))

    def compose(self, f: int, gs: Sequence[int]) -> int:
        h = self.composite(f, gs)
        if h is None:
            raise StructuralError(
                f"{self.arrow_names[f]}∘({', '.join(self.arrow_names[g] for g in gs)}) is not in the table"
            )
        return h

    def input_tuples(self, targets: Sequence[int], budget: int) -> Iterator[Tuple[int, ...]]:
        """Tuples of arrows with the given targets and total arity at most budget."""
        if not targets:
            yield ()
            return
        for g in self._into[targets[0]]:
            if self.arity(g) > budget:
                continue
            for rest in self.input_tuples(targets[1:], budget - self.arity(g)):
                yield (g,) + rest

    def slot_identity(self, source: Sequence[int], position: int, arrow: int) -> Tuple[int, ...]:
        """The input tuple (id, ..., arrow, ..., id) with arrow at position."""
        return tuple(arrow if i == position else self.identities[x] for i, x in enumerate(source))

    def __repr__(self) -> str:
        return f"Multicategory({self.name or '?'}: {self.object_count} objects, {self.arrow_count} arrows, bound {self.bound})"


def check_multicategory(M: Multicategory) -> ValidationReport:
    """Identity typing, totality within the truncation, unit and associativity laws."""
    report = ValidationReport(f"multicategory {M.name}".strip())
    names = M.arrow_names
    for x, i in enumerate(M.identities):
        if M.sources[i] != (x,) or M.targets[i] != x:
            report.add("identity-typing", f"identity of {M.objects[x]} is {names[i]}, not an arrow ({M.objects[x]}) -> {M.objects[x]}")
    if not report.is_valid:
        return report

    for f in M.arrows():
        for gs in M.input_tuples(M.sources[f], M.bound):
            if M.admits(M.concat_source(gs)) and M.composite(f, gs) is None:
                report.add("totality", f"{names[f]}∘({', '.join(names[g] for g in gs)}) is missing")

    for f in M.arrows():
        if M.composite(M.identities[M.targets[f]], (f,)) not in (None, f):
            report.add("left-unit", f"id∘{names[f]} ≠ {names[f]}")
        ids = tuple(M.identities[x] for x in M.sources[f])
        if M.composite(f, ids) not in (None, f):
            report.add("right-unit", f"{names[f]}∘(id, ..., id) ≠ {names[f]}")

    for (f, gs), fg in M.comp.items():
        for hs in M.input_tuples(M.sources[fg], M.bound):
            left = M.composite(fg, hs)
            if left is None:
                continue
            blocks = []
            start = 0
            for g in gs:
                blocks.append(hs[start:start + M.arity(g)])
                start += M.arity(g)
            inner = [M.composite(g, block) for g, block in zip(gs, blocks)]
            if any(h is None for h in inner):
                continue
            right = M.composite(f, inner)
            if right is not None and right != left:
                report.add(
                    "associativity",
                    f"({names[f]}∘({', '.join(names[g] for g in gs)}))∘({', '.join(names[h] for h in hs)}) differs from the nested composite",
                )
    return report


class MulticatMorphism:
    """A morphism of multicategories given by object and arrow maps."""

    def __init__(self, source: Multicategory, target: Multicategory, object_map: Sequence[int], arrow_map: Sequence[int], name: str = ""):
        if len(object_map) != source.object_count or len(arrow_map) != source.arrow_count:
            raise StructuralError(f"multicategory morphism {name}: map sizes do not match the source")
        if not all(0 <= x < target.object_count for x in object_map) or not all(0 <= a < target.arrow_count for a in arrow_map):
            raise StructuralError(f"multicategory morphism {name}: image out of range")
        self.source = source
        self.target = target
        self.object_map = tuple(int(x) for x in object_map)
        self.arrow_map = tuple(int(a) for a in arrow_map)
        self.name = name

    def __eq__(self, other) -> bool:
        if not isinstance(other, MulticatMorphism):
            return NotImplemented
        return self.object_map == other.object_map and self.arrow_map == other.arrow_map

    def __hash__(self) -> int:
        return hash((self.object_map, self.arrow_map))


def check_multicat_morphism(F: MulticatMorphism) -> ValidationReport:
    """Boundary, identity and composition preservation."""
    report = ValidationReport(f"multicategory morphism {F.name}".strip())
    M, N = F.source, F.target
    for a in M.arrows():
        image = F.arrow_map[a]
        if N.sources[image] != tuple(F.object_map[x] for x in M.sources[a]) or N.targets[image] != F.object_map[M.targets[a]]:
            report.add("boundary", f"{M.arrow_names[a]} ↦ {N.arrow_names[image]} has the wrong boundary")
    for x, i in enumerate(M.identities):
        if F.arrow_map[i] != N.identities[F.object_map[x]]:
            report.add("identity", f"identity of {M.objects[x]} is not preserved")
    if not report.is_valid:
        return report
    for (f, gs), h in M.comp.items():
        expected = N.composite(F.arrow_map[f], [F.arrow_map[g] for g in gs])
        if expected is not None and expected != F.arrow_map[h]:
            report.add("composition", f"image of {M.arrow_names[h]} is not the composite of the images")
    return report


def is_multicat_isomorphism(F: MulticatMorphism) -> bool:
    return (
        check_multicat_morphism(F).is_valid
        and sorted(F.object_map) == list(range(F.target.object_count))
        and sorted(F.arrow_map) == list(range(F.target.arrow_count))
        and all(
            F.target.composite(F.arrow_map[f], [F.arrow_map[g] for g in gs]) == F.arrow_map[h]
            for (f, gs), h in F.source.comp.items()
        )
        and len(F.source.comp) == len(F.target.comp)
    )


def terminal_multicategory(bound: int) -> Multicategory:
    """One object and exactly one arrow of every arity up to the bound."""
    if bound < 1:
        raise StructuralError("the terminal multicategory needs bound >= 1 for its identity")
    arrows = [(f"m{n}", (0,) * n, 0) for n in range(bound + 1)]
    skeleton = Multicategory(["*"], arrows, [1], {}, bound)
    comp = {}
    for f in range(bound + 1):
        for gs in skeleton.input_tuples((0,) * f, bound):
            comp[(f, gs)] = sum(gs)
    return Multicategory(["*"], arrows, [1], comp, bound, name="1")


def multicategory_from_category(C: FinCat, bound: int = 1) -> Multicategory:
    """The multicategory with only the unary arrows of C."""
    arrows = [(C.morphism_names[f], (C.source(f),), C.target(f)) for f in C.morphisms]
    comp = {}
    for f in C.morphisms:
        for g in C.morphisms:
            h = C.composite(f, g)
            if h is not None:
                comp[(f, (g,))] = h
    return Multicategory(
        C.object_names,
        arrows,
        list(C.identities),
        comp,
        max(bound, 1),
        name=C.name,
        allowed_sources=frozenset((x,) for x in C.objects),
    )


def linear_core(M: Multicategory) -> FinCat:
    """The category of unary arrows, with g∘f = g∘(f)."""
    unary = [a for a in M.arrows() if M.arity(a) == 1]
    index = {a: i for i, a in enumerate(unary)}
    compose = {}
    for f in unary:
        for g in M.arrows_into(M.sources[f][0]):
            if M.arity(g) != 1:
                continue
            h = M.composite(f, (g,))
            if h is None:
                raise StructuralError(f"unary composite {M.arrow_names[f]}∘{M.arrow_names[g]} is missing")
            compose[(index[f], index[g])] = index[h]
    return FinCat(
        M.object_count,
        [(M.sources[a][0], M.targets[a]) for a in unary],
        [index[i] for i in M.identities],
        compose,
        object_names=M.objects,
        morphism_names=[M.arrow_names[a] for a in unary],
        name=f"core({M.name})" if M.name else "core",
    )


def unary_arrows(M: Multicategory) -> List[int]:
    """Arrow indices of linear_core(M)'s morphisms, in order."""
    return [a for a in M.arrows() if M.arity(a) == 1]


def binary_without_unit() -> Multicategory:
    """
    Objects a, b with the identities and one binary arrow π: (a, a) -> b.

    Nothing has an empty source, so no list admits a universal arrow there.
    """
    arrows = [("id_a", (0,), 0), ("id_b", (1,), 1), ("π", (0, 0), 1)]
    comp = {
        (0, (0,)): 0,
        (1, (1,)): 1,
        (1, (2,)): 2,
        (2, (0, 0)): 2,
    }
    return Multicategory(["a", "b"], arrows, [0, 1], comp, 2, name="binary")
