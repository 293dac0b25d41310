"""
Finite categories, functors and natural transformations.

Objects and morphisms are dense integer indices. Composition is stored as an
m x m table where ``table[g, f]`` is the index of ``g∘f`` ("f then g") and -1
marks an undefined entry.
"""
from itertools import product
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from utils.report import StructuralError, ValidationReport

ComposeData = Union[Mapping[Tuple[int, int], int], np.ndarray]


def _frozen(values, dtype=np.int64) -> np.ndarray:
    array = np.array(values, dtype=dtype)
    array.setflags(write=False)
    return array


class FinCat:
    """A finite category given by index tables."""

    def __init__(
        self,
        object_count: int,
        morphisms: Sequence[Tuple[int, int]],
        identity: Sequence[int],
        compose: ComposeData,
        object_names: Optional[Sequence[str]] = None,
        morphism_names: Optional[Sequence[str]] = None,
        name: str = "",
    ):
        """
        Build a finite category from raw tables.

        Args:
            object_count: Number of objects
            morphisms: (dom, cod) pair for every morphism index
            identity: Identity morphism index for every object
            compose: Either a mapping (g, f) -> g∘f or a full m x m table
            object_names: Optional display names for objects
            morphism_names: Optional display names for morphisms
            name: Optional name of the category

        Raises:
            StructuralError: If any index is out of range
        """
        if object_count < 0:
            raise StructuralError(f"negative object count {object_count}")
        m = len(morphisms)
        self.name = name
        self.object_count = int(object_count)

        for i, pair in enumerate(morphisms):
            if len(pair) != 2:
                raise StructuralError(f"morphism {i} must have exactly (dom, cod)")
            for end in pair:
                if not 0 <= int(end) < object_count:
                    raise StructuralError(f"morphism {i} has endpoint {end} out of range")
        self.dom = _frozen([int(d) for d, _ in morphisms])
        self.cod = _frozen([int(c) for _, c in morphisms])

        if len(identity) != object_count:
            raise StructuralError(
                f"identity table has {len(identity)} entries for {object_count} objects"
            )
        for a, i in enumerate(identity):
            if not 0 <= int(i) < m:
                raise StructuralError(f"identity of object {a} is {i}, out of range")
        self.identities = _frozen([int(i) for i in identity])

        if isinstance(compose, np.ndarray):
            if compose.shape != (m, m):
                raise StructuralError(f"composition table has shape {compose.shape}, expected {(m, m)}")
            table = np.array(compose, dtype=np.int64)
            if ((table < -1) | (table >= m)).any():
                raise StructuralError("composition table entry out of range")
        else:
            table = np.full((m, m), -1, dtype=np.int64)
            for (g, f), h in compose.items():
                if not (0 <= g < m and 0 <= f < m and 0 <= h < m):
                    raise StructuralError(f"composition entry ({g}, {f}) -> {h} out of range")
                table[g, f] = h
        table.setflags(write=False)
        self.table = table

        self.object_names = tuple(object_names) if object_names is not None else tuple(
            str(a) for a in range(object_count)
        )
        self.morphism_names = tuple(morphism_names) if morphism_names is not None else tuple(
            f"m{i}" for i in range(m)
        )
        if len(self.object_names) != object_count or len(self.morphism_names) != m:
            raise StructuralError("name list length does not match the tables")

        homs: Dict[Tuple[int, int], List[int]] = {}
        for i in range(m):
            homs.setdefault((int(self.dom[i]), int(self.cod[i])), []).append(i)
        self._homs = {key: tuple(value) for key, value in homs.items()}
        self._out: List[List[int]] = [[] for _ in range(object_count)]
        for i in range(m):
            self._out[int(self.dom[i])].append(i)

    # ------------------------------------------------------------------
    # Basic access
    # ------------------------------------------------------------------
    @property
    def morphism_count(self) -> int:
        return len(self.dom)

    @property
    def objects(self) -> range:
        return range(self.object_count)

    @property
    def morphisms(self) -> range:
        return range(self.morphism_count)

    def hom(self, a: int, b: int) -> Tuple[int, ...]:
        return self._homs.get((a, b), ())

    def morphisms_from(self, a: int) -> List[int]:
        return self._out[a]

    def identity(self, a: int) -> int:
        return int(self.identities[a])

    def source(self, f: int) -> int:
        return int(self.dom[f])

    def target(self, f: int) -> int:
        return int(self.cod[f])

    def composite(self, g: int, f: int) -> Optional[int]:
        """Return g∘f, or None when the table has no entry."""
        h = int(self.table[g, f])
        return None if h < 0 else h

    def compose(self, g: int, f: int) -> int:
        h = int(self.table[g, f])
        if h < 0:
            raise StructuralError(
                f"{self.morphism_names[g]}∘{self.morphism_names[f]} is undefined in {self.name or 'category'}"
            )
        return h

    def is_identity(self, f: int) -> bool:
        return int(self.identities[int(self.dom[f])]) == f

    def inverse(self, f: int) -> Optional[int]:
        """Return the two-sided inverse of f, if one exists."""
        a, b = int(self.dom[f]), int(self.cod[f])
        for g in self.hom(b, a):
            if self.composite(g, f) == self.identity(a) and self.composite(f, g) == self.identity(b):
                return g
        return None

    def is_isomorphism(self, f: int) -> bool:
        return self.inverse(f) is not None

    # Protocol shared with symbolic categories
    def iter_objects(self, bound: Optional[int] = None) -> Iterator[int]:
        return iter(range(self.object_count))

    def objects_exhausted(self, bound: Optional[int] = None) -> bool:
        return True

    def object_index(self, name: str) -> int:
        return self.object_names.index(name)

    def morphism_index(self, name: str) -> int:
        return self.morphism_names.index(name)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinCat):
            return NotImplemented
        return (
            self.object_count == other.object_count
            and np.array_equal(self.dom, other.dom)
            and np.array_equal(self.cod, other.cod)
            and np.array_equal(self.identities, other.identities)
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self) -> int:
        return hash((self.object_count, self.dom.tobytes(), self.cod.tobytes(), self.table.tobytes()))

    def __repr__(self) -> str:
        return f"FinCat({self.name or '?'}: {self.object_count} objects, {self.morphism_count} morphisms)"


def check_category(cat: FinCat) -> ValidationReport:
    """
    Check the category axioms exhaustively.

    Args:
        cat: Structurally valid table data

    Returns:
        Report listing every violated instance of typing, unit and associativity
    """
    report = ValidationReport(f"category {cat.name}".strip())
    names = cat.morphism_names

    for a in cat.objects:
        i = cat.identity(a)
        if cat.source(i) != a or cat.target(i) != a:
            report.add("identity-typing", f"identity {names[i]} of object {cat.object_names[a]} is not an endomorphism of it")

    composable = cat.dom[:, None] == cat.cod[None, :]
    defined = cat.table >= 0
    for g, f in zip(*np.nonzero(composable & ~defined)):
        report.add("totality", f"{names[g]}∘{names[f]} is composable but undefined")
    for g, f in zip(*np.nonzero(~composable & defined)):
        report.add("typing", f"{names[g]}∘{names[f]} is defined but not composable")
    ok = composable & defined
    safe = np.where(ok, cat.table, 0)
    bad_ends = ok & ((cat.dom[safe] != cat.dom[None, :]) | (cat.cod[safe] != cat.cod[:, None]))
    for g, f in zip(*np.nonzero(bad_ends)):
        report.add("typing", f"{names[g]}∘{names[f]} = {names[cat.table[g, f]]} has the wrong endpoints")
    well_typed = ok & ~bad_ends

    for f in cat.morphisms:
        a, b = cat.source(f), cat.target(f)
        if ok[cat.identity(b), f] and cat.table[cat.identity(b), f] != f:
            report.add("left-unit", f"id∘{names[f]} ≠ {names[f]}")
        if ok[f, cat.identity(a)] and cat.table[f, cat.identity(a)] != f:
            report.add("right-unit", f"{names[f]}∘id ≠ {names[f]}")

    for f in cat.morphisms:
        for g in cat.morphisms_from(cat.target(f)):
            if not well_typed[g, f]:
                continue
            gf = int(cat.table[g, f])
            for h in cat.morphisms_from(cat.target(g)):
                if not (well_typed[h, g] and well_typed[h, gf]):
                    continue
                hg = int(cat.table[h, g])
                if not well_typed[hg, f]:
                    continue
                if cat.table[h, gf] != cat.table[hg, f]:
                    report.add("associativity", f"{names[h]}∘({names[g]}∘{names[f]}) ≠ ({names[h]}∘{names[g]})∘{names[f]}")
    return report


class Functor:
    """A functor between finite categories given by object and morphism maps."""

    def __init__(
        self,
        source: FinCat,
        target: FinCat,
        object_map: Sequence[int],
        morphism_map: Sequence[int],
        name: str = "",
    ):
        if len(object_map) != source.object_count:
            raise StructuralError(f"functor {name}: object map has {len(object_map)} entries, expected {source.object_count}")
        if len(morphism_map) != source.morphism_count:
            raise StructuralError(f"functor {name}: morphism map has {len(morphism_map)} entries, expected {source.morphism_count}")
        for x in object_map:
            if not 0 <= int(x) < target.object_count:
                raise StructuralError(f"functor {name}: object image {x} out of range")
        for u in morphism_map:
            if not 0 <= int(u) < target.morphism_count:
                raise StructuralError(f"functor {name}: morphism image {u} out of range")
        self.source = source
        self.target = target
        self.object_map = _frozen([int(x) for x in object_map])
        self.morphism_map = _frozen([int(u) for u in morphism_map])
        self.name = name

    def on_object(self, x: int) -> int:
        return int(self.object_map[x])

    def on_morphism(self, f: int) -> int:
        return int(self.morphism_map[f])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Functor):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and np.array_equal(self.object_map, other.object_map)
            and np.array_equal(self.morphism_map, other.morphism_map)
        )

    def __hash__(self) -> int:
        return hash((self.object_map.tobytes(), self.morphism_map.tobytes()))

    def __repr__(self) -> str:
        return f"Functor({self.name or '?'}: {self.source.name or '?'} -> {self.target.name or '?'})"


def check_functor(functor: Functor) -> ValidationReport:
    """Check that a functor preserves endpoints, identities and composition."""
    report = ValidationReport(f"functor {functor.name}".strip())
    src, tgt = functor.source, functor.target
    for f in src.morphisms:
        image = functor.on_morphism(f)
        if tgt.source(image) != functor.on_object(src.source(f)) or tgt.target(image) != functor.on_object(src.target(f)):
            report.add("endpoints", f"{src.morphism_names[f]} ↦ {tgt.morphism_names[image]} has mismatched endpoints")
    for a in src.objects:
        if functor.on_morphism(src.identity(a)) != tgt.identity(functor.on_object(a)):
            report.add("identity", f"identity of {src.object_names[a]} is not sent to an identity")
    for f in src.morphisms:
        for g in src.morphisms_from(src.target(f)):
            gf = src.composite(g, f)
            if gf is None:
                continue
            expected = tgt.composite(functor.on_morphism(g), functor.on_morphism(f))
            if expected != functor.on_morphism(gf):
                report.add(
                    "composition",
                    f"F({src.morphism_names[g]}∘{src.morphism_names[f]}) ≠ F({src.morphism_names[g]})∘F({src.morphism_names[f]})",
                )
    return report


def identity_functor(cat: FinCat) -> Functor:
    return Functor(cat, cat, list(cat.objects), list(cat.morphisms), name=f"id_{cat.name}")


def constant_functor(source: FinCat, target: FinCat, obj: int) -> Functor:
    """The functor sending everything to obj and its identity."""
    return Functor(
        source,
        target,
        [obj] * source.object_count,
        [target.identity(obj)] * source.morphism_count,
        name=f"const_{target.object_names[obj]}",
    )


def compose_functors(second: Functor, first: Functor) -> Functor:
    """Return second∘first."""
    if first.target != second.source:
        raise StructuralError("functors are not composable")
    return Functor(
        first.source,
        second.target,
        [second.on_object(first.on_object(x)) for x in first.source.objects],
        [second.on_morphism(first.on_morphism(f)) for f in first.source.morphisms],
        name=f"{second.name}∘{first.name}",
    )


class NatTrans:
    """A natural transformation between parallel functors."""

    def __init__(self, source: Functor, target: Functor, components: Sequence[int], name: str = ""):
        if source.source != target.source or source.target != target.target:
            raise StructuralError("natural transformation between non-parallel functors")
        if len(components) != source.source.object_count:
            raise StructuralError("one component per object is required")
        for c in components:
            if not 0 <= int(c) < source.target.morphism_count:
                raise StructuralError(f"component {c} out of range")
        self.source = source
        self.target = target
        self.components = tuple(int(c) for c in components)
        self.name = name

    def component(self, x: int) -> int:
        return self.components[x]


def check_nat_trans(alpha: NatTrans) -> ValidationReport:
    """Check component typing and every naturality square."""
    report = ValidationReport(f"transformation {alpha.name}".strip())
    F, G = alpha.source, alpha.target
    X, Y = F.source, F.target
    for x in X.objects:
        c = alpha.component(x)
        if Y.source(c) != F.on_object(x) or Y.target(c) != G.on_object(x):
            report.add("component-typing", f"component at {X.object_names[x]} has the wrong endpoints")
    if not report.is_valid:
        return report
    for f in X.morphisms:
        a, b = X.source(f), X.target(f)
        left = Y.composite(G.on_morphism(f), alpha.component(a))
        right = Y.composite(alpha.component(b), F.on_morphism(f))
        if left != right:
            report.add("naturality", f"square at {X.morphism_names[f]} does not commute")
    return report


def opposite(cat: FinCat) -> FinCat:
    """Materialize the opposite category on the same indices."""
    return FinCat(
        cat.object_count,
        [(cat.target(f), cat.source(f)) for f in cat.morphisms],
        list(cat.identities),
        np.array(cat.table.T),
        object_names=cat.object_names,
        morphism_names=cat.morphism_names,
        name=f"{cat.name}^op" if cat.name else "",
    )


def opposite_functor(functor: Functor) -> Functor:
    return Functor(
        opposite(functor.source),
        opposite(functor.target),
        list(functor.object_map),
        list(functor.morphism_map),
        name=f"{functor.name}^op",
    )


def product_category(left: FinCat, right: FinCat) -> Tuple[FinCat, Functor, Functor]:
    """
    Product category with its two projections.

    Object (a, b) has index a * |ob right| + b, morphism (f, g) has index
    f * |mor right| + g.
    """
    n, m = right.object_count, right.morphism_count
    morphisms = []
    names = []
    for f in left.morphisms:
        for g in right.morphisms:
            morphisms.append((left.source(f) * n + right.source(g), left.target(f) * n + right.target(g)))
            names.append(f"({left.morphism_names[f]},{right.morphism_names[g]})")
    compose: Dict[Tuple[int, int], int] = {}
    for f1 in left.morphisms:
        for f2 in left.morphisms_from(left.target(f1)):
            h1 = left.composite(f2, f1)
            if h1 is None:
                continue
            for g1 in right.morphisms:
                for g2 in right.morphisms_from(right.target(g1)):
                    h2 = right.composite(g2, g1)
                    if h2 is None:
                        continue
                    compose[(f2 * m + g2, f1 * m + g1)] = h1 * m + h2
    identity = [left.identity(a) * m + right.identity(b) for a in left.objects for b in right.objects]
    object_names = [f"({x},{y})" for x in left.object_names for y in right.object_names]
    total = FinCat(
        left.object_count * n,
        morphisms,
        identity,
        compose,
        object_names=object_names,
        morphism_names=names,
        name=f"{left.name}×{right.name}",
    )
    p = Functor(total, left, [a // n for a in total.objects], [f // m for f in total.morphisms], name="π1")
    q = Functor(total, right, [a % n for a in total.objects], [f % m for f in total.morphisms], name="π2")
    return total, p, q


def _composition_checks(source: FinCat) -> List[List[Tuple[int, int, int]]]:
    checks: List[List[Tuple[int, int, int]]] = [[] for _ in source.morphisms]
    for f in source.morphisms:
        for g in source.morphisms_from(source.target(f)):
            h = source.composite(g, f)
            if h is not None:
                checks[max(f, g, h)].append((g, f, h))
    return checks


def functors_over(
    source: FinCat,
    target: FinCat,
    object_map: Sequence[int],
    injective: bool = False,
    checks: Optional[List[List[Tuple[int, int, int]]]] = None,
) -> Iterator[Functor]:
    """
    Enumerate the functors with a fixed object map by backtracking.

    Morphisms are assigned in index order; a composition instance is checked
    as soon as its three morphisms are assigned.
    """
    m = source.morphism_count
    checks = checks if checks is not None else _composition_checks(source)
    identity_of = {source.identity(a): a for a in source.objects}
    images = [-1] * m
    used = set()

    def assign(i: int) -> Iterator[List[int]]:
        if i == m:
            yield list(images)
            return
        if i in identity_of:
            candidates: Sequence[int] = (target.identity(object_map[identity_of[i]]),)
        else:
            candidates = target.hom(object_map[source.source(i)], object_map[source.target(i)])
        for c in candidates:
            if injective and c in used:
                continue
            images[i] = c
            if all(target.composite(images[g], images[f]) == images[h] for g, f, h in checks[i]):
                used.add(c)
                yield from assign(i + 1)
                used.discard(c)
        images[i] = -1

    for morphism_map in assign(0):
        yield Functor(source, target, list(object_map), morphism_map)


def enumerate_functors(source: FinCat, target: FinCat, limit: Optional[int] = None) -> Iterator[Functor]:
    """
    Enumerate every functor source -> target.

    Args:
        source: Domain category
        target: Codomain category
        limit: Stop after this many functors

    Yields:
        Functors in lexicographic order of (object map, morphism map)
    """
    checks = _composition_checks(source)
    found = 0
    for object_map in product(range(target.object_count), repeat=source.object_count):
        for functor in functors_over(source, target, object_map, checks=checks):
            yield functor
            found += 1
            if limit is not None and found >= limit:
                return
