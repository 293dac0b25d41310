"""
Strict monoidal categories: a shared interface, the tabulated backend, and
strict monoidal functors.

Tabulated categories may be truncated (finitely many objects of an infinite
strict monoidal category); their tensor is then partial and ``tensor_obj``
returns None outside the table.
"""
from itertools import product
from typing import Callable, Hashable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from categories.builders import from_morphism_list
from categories.fincat import FinCat, check_category
from utils.report import BoundExceededError, StructuralError, ValidationReport


class StrictMonCat:
    """
    Interface shared by the tabulated and symbolic backends.

    Subclasses provide the category structure (iter_objects, hom, compose,
    identity, source, target) and the monoidal structure (tensor_obj,
    tensor_mor, unit_object).
    """

    name = ""

    def iter_objects(self, bound: Optional[int] = None) -> Iterator[Hashable]:
        raise NotImplementedError

    def objects_exhausted(self, bound: Optional[int] = None) -> bool:
        raise NotImplementedError

    def hom(self, a, b) -> Sequence[Hashable]:
        raise NotImplementedError

    def compose(self, g, f):
        raise NotImplementedError

    def identity(self, a):
        raise NotImplementedError

    def source(self, f):
        raise NotImplementedError

    def target(self, f):
        raise NotImplementedError

    def tensor_obj(self, a, b):
        raise NotImplementedError

    def tensor_mor(self, f, g):
        raise NotImplementedError

    @property
    def unit_object(self):
        raise NotImplementedError

    def object_label(self, a) -> str:
        return str(a)

    def morphism_label(self, f) -> str:
        return str(f)

    def inverse(self, f):
        a, b = self.source(f), self.target(f)
        for g in self.hom(b, a):
            if self.compose(g, f) == self.identity(a) and self.compose(f, g) == self.identity(b):
                return g
        return None

    def tensor_objects(self, objects: Sequence) -> Optional[Hashable]:
        """The n-fold tensor; None if some partial product is undefined."""
        result = self.unit_object
        for a in objects:
            result = self.tensor_obj(result, a)
            if result is None:
                return None
        return result

    def tensor_morphisms(self, morphisms: Sequence) -> Optional[Hashable]:
        result = self.identity(self.unit_object)
        for f in morphisms:
            result = self.tensor_mor(result, f)
            if result is None:
                return None
        return result

    def morphisms_between(self, objects: Sequence) -> Iterator[Hashable]:
        for a in objects:
            for b in objects:
                yield from self.hom(a, b)

    # Strict categories seen as monoidal categories with identity constraints
    def associator(self, a, b, c):
        return self.identity(self.tensor_obj(self.tensor_obj(a, b), c))

    def left_unitor(self, a):
        return self.identity(a)

    def right_unitor(self, a):
        return self.identity(a)


class TabulatedStrictMonCat(StrictMonCat):
    """A strict monoidal structure on a FinCat given by tensor tables."""

    def __init__(
        self,
        base: FinCat,
        object_tensor: np.ndarray,
        morphism_tensor: np.ndarray,
        unit: int,
        name: str = "",
        morphism_labels: Optional[Sequence[Hashable]] = None,
    ):
        n, m = base.object_count, base.morphism_count
        object_tensor = np.array(object_tensor, dtype=np.int64)
        morphism_tensor = np.array(morphism_tensor, dtype=np.int64)
        if object_tensor.shape != (n, n) or morphism_tensor.shape != (m, m):
            raise StructuralError("tensor tables do not match the category size")
        if ((object_tensor < -1) | (object_tensor >= n)).any() or ((morphism_tensor < -1) | (morphism_tensor >= m)).any():
            raise StructuralError("tensor table entry out of range")
        if not 0 <= unit < n:
            raise StructuralError(f"unit object {unit} out of range")
        object_tensor.setflags(write=False)
        morphism_tensor.setflags(write=False)
        self.base = base
        self.object_tensor = object_tensor
        self.morphism_tensor = morphism_tensor
        self.unit = unit
        self.name = name or base.name
        self.morphism_labels = tuple(morphism_labels) if morphism_labels is not None else tuple(base.morphisms)

    def iter_objects(self, bound: Optional[int] = None) -> Iterator[int]:
        return iter(self.base.objects)

    def objects_exhausted(self, bound: Optional[int] = None) -> bool:
        return True

    def hom(self, a: int, b: int) -> Tuple[int, ...]:
        return self.base.hom(a, b)

    def compose(self, g: int, f: int) -> int:
        return self.base.compose(g, f)

    def identity(self, a: int) -> int:
        return self.base.identity(a)

    def source(self, f: int) -> int:
        return self.base.source(f)

    def target(self, f: int) -> int:
        return self.base.target(f)

    def inverse(self, f: int) -> Optional[int]:
        return self.base.inverse(f)

    def tensor_obj(self, a: int, b: int) -> Optional[int]:
        value = int(self.object_tensor[a, b])
        return None if value < 0 else value

    def tensor_mor(self, f: int, g: int) -> Optional[int]:
        value = int(self.morphism_tensor[f, g])
        return None if value < 0 else value

    @property
    def unit_object(self) -> int:
        return self.unit

    def object_label(self, a: int) -> str:
        return self.base.object_names[a]

    def morphism_label(self, f: int) -> str:
        return self.base.morphism_names[f]

    def __repr__(self) -> str:
        return f"TabulatedStrictMonCat({self.name or '?'}: {self.base.object_count} objects)"


def tabulate_strict(
    object_names: Sequence[str],
    morphisms: Sequence[Tuple[Hashable, int, int]],
    compose: Callable[[Hashable, Hashable], Hashable],
    identity: Callable[[int], Hashable],
    tensor_obj: Callable[[int, int], Optional[int]],
    tensor_mor: Callable[[Hashable, Hashable], Optional[Hashable]],
    unit: int,
    name: str = "",
    morphism_names: Optional[Sequence[str]] = None,
) -> TabulatedStrictMonCat:
    """
    Build a tabulated strict monoidal category from labelled data.

    tensor_obj returns None where the truncation has no object; tensor_mor is
    only consulted where both endpoint tensors exist.
    """
    base = from_morphism_list(object_names, morphisms, compose, identity, name=name, morphism_names=morphism_names)
    n, m = base.object_count, base.morphism_count
    index = {label: i for i, (label, _, _) in enumerate(morphisms)}
    object_table = np.full((n, n), -1, dtype=np.int64)
    for a, b in product(range(n), repeat=2):
        c = tensor_obj(a, b)
        if c is not None:
            object_table[a, b] = c
    morphism_table = np.full((m, m), -1, dtype=np.int64)
    for f, g in product(range(m), repeat=2):
        if object_table[base.source(f), base.source(g)] < 0 or object_table[base.target(f), base.target(g)] < 0:
            continue
        label = tensor_mor(morphisms[f][0], morphisms[g][0])
        if label is not None:
            morphism_table[f, g] = index[label]
    return TabulatedStrictMonCat(
        base, object_table, morphism_table, unit, name=name, morphism_labels=[label for label, _, _ in morphisms]
    )


def terminal_strict() -> TabulatedStrictMonCat:
    return tabulate_strict(
        ["*"],
        [("id", 0, 0)],
        lambda g, f: "id",
        lambda a: "id",
        lambda a, b: 0,
        lambda f, g: "id",
        0,
        name="1",
    )


def discrete_group_strict(n: int) -> TabulatedStrictMonCat:
    """The discrete category on Z/n with tensor given by addition."""
    return tabulate_strict(
        [str(g) for g in range(n)],
        [(g, g, g) for g in range(n)],
        lambda g, f: f,
        lambda a: a,
        lambda a, b: (a + b) % n,
        lambda f, g: (f + g) % n,
        0,
        name=f"Z/{n}",
        morphism_names=[f"id_{g}" for g in range(n)],
    )


def abelian_group_strict(n: int) -> TabulatedStrictMonCat:
    """One object, morphisms Z/n; composition and tensor are both addition."""
    return tabulate_strict(
        ["*"],
        [(g, 0, 0) for g in range(n)],
        lambda g, f: (g + f) % n,
        lambda a: 0,
        lambda a, b: 0,
        lambda f, g: (f + g) % n,
        0,
        name=f"BZ/{n}",
        morphism_names=[str(g) for g in range(n)],
    )


def relabel_strict(C: TabulatedStrictMonCat, permutation: Sequence[int]) -> TabulatedStrictMonCat:
    """
    Isomorphic copy of C in which object a is renumbered permutation[a];
    morphisms keep their relative order within each hom-set.
    """
    n = C.base.object_count
    if sorted(permutation) != list(range(n)):
        raise StructuralError("relabelling must be a permutation of the objects")
    inverse = [0] * n
    for a, b in enumerate(permutation):
        inverse[b] = a
    base = C.base
    labels = [(f, permutation[base.source(f)], permutation[base.target(f)]) for f in base.morphisms]
    labels.sort(key=lambda item: (item[1], item[2], item[0]))

    def tensor(a, b):
        value = C.tensor_obj(inverse[a], inverse[b])
        return None if value is None else permutation[value]

    return tabulate_strict(
        [base.object_names[inverse[a]] for a in range(n)],
        labels,
        lambda g, f: base.compose(g, f),
        lambda a: base.identity(inverse[a]),
        tensor,
        lambda f, g: C.tensor_mor(f, g),
        permutation[C.unit],
        name=f"{C.name}'",
        morphism_names=[base.morphism_names[f] for f, _, _ in labels],
    )


def check_strict_monoidal(C: StrictMonCat, bound: Optional[int] = None) -> ValidationReport:
    """
    Check the strict monoidal laws on every object the bound enumerates.

    Laws: category axioms, unit and associativity of the tensor on objects and
    morphisms, typing and totality of the morphism tensor, preservation of
    identities, and interchange (g⊗g')∘(f⊗f') = (g∘f)⊗(g'∘f').
    """
    report = ValidationReport(f"strict monoidal {C.name}".strip())
    if isinstance(C, TabulatedStrictMonCat):
        report.extend(check_category(C.base))
        if not report.is_valid:
            return report
    objects = list(C.iter_objects(bound))
    I = C.unit_object
    label = C.object_label

    for a in objects:
        if C.tensor_obj(I, a) != a or C.tensor_obj(a, I) != a:
            report.add("unit-object", f"I⊗{label(a)} or {label(a)}⊗I is not {label(a)}")
    for a, b in product(objects, repeat=2):
        ab = C.tensor_obj(a, b)
        if ab is None:
            continue
        if C.tensor_mor(C.identity(a), C.identity(b)) != C.identity(ab):
            report.add("identity-tensor", f"id_{label(a)}⊗id_{label(b)} ≠ id_{label(ab)}")
        for c in objects:
            bc = C.tensor_obj(b, c)
            abc = C.tensor_obj(ab, c)
            if bc is not None and abc is not None and C.tensor_obj(a, bc) != abc:
                report.add("associativity-object", f"({label(a)}⊗{label(b)})⊗{label(c)} ≠ {label(a)}⊗({label(b)}⊗{label(c)})")

    morphisms = list(C.morphisms_between(objects))
    unit_id = C.identity(I)
    for f in morphisms:
        if C.tensor_mor(unit_id, f) != f or C.tensor_mor(f, unit_id) != f:
            report.add("unit-morphism", f"id_I⊗{C.morphism_label(f)} or {C.morphism_label(f)}⊗id_I differs")
    for f, g in product(morphisms, repeat=2):
        src = C.tensor_obj(C.source(f), C.source(g))
        tgt = C.tensor_obj(C.target(f), C.target(g))
        if src is None or tgt is None:
            continue
        fg = C.tensor_mor(f, g)
        if fg is None:
            report.add("tensor-totality", f"{C.morphism_label(f)}⊗{C.morphism_label(g)} is undefined")
            continue
        if C.source(fg) != src or C.target(fg) != tgt:
            report.add("tensor-typing", f"{C.morphism_label(f)}⊗{C.morphism_label(g)} has the wrong endpoints")

    by_source = {}
    for f in morphisms:
        by_source.setdefault(C.source(f), []).append(f)
    composable = [(f, g) for f in morphisms for g in by_source.get(C.target(f), [])]
    for (f, g), (f2, g2) in product(composable, repeat=2):
        if C.tensor_obj(C.source(f), C.source(f2)) is None or C.tensor_obj(C.target(g), C.target(g2)) is None:
            continue
        if C.tensor_obj(C.target(f), C.target(f2)) is None:
            continue
        left = C.compose(C.tensor_mor(g, g2), C.tensor_mor(f, f2))
        right = C.tensor_mor(C.compose(g, f), C.compose(g2, f2))
        if left != right:
            report.add(
                "interchange",
                f"({C.morphism_label(g)}⊗{C.morphism_label(g2)})∘({C.morphism_label(f)}⊗{C.morphism_label(f2)}) ≠ "
                f"({C.morphism_label(g)}∘{C.morphism_label(f)})⊗({C.morphism_label(g2)}∘{C.morphism_label(f2)})",
            )

    for f, g in product(morphisms, repeat=2):
        fg = C.tensor_mor(f, g)
        if fg is None:
            continue
        for h in morphisms:
            gh = C.tensor_mor(g, h)
            left = C.tensor_mor(fg, h)
            if gh is not None and left is not None and C.tensor_mor(f, gh) != left:
                report.add(
                    "associativity-morphism",
                    f"({C.morphism_label(f)}⊗{C.morphism_label(g)})⊗{C.morphism_label(h)} differs from the right bracketing",
                )
    return report


class StrictMonoidalFunctor:
    """A strict monoidal functor given by object and morphism callables."""

    def __init__(self, source: StrictMonCat, target: StrictMonCat, on_object: Callable, on_morphism: Callable, name: str = ""):
        self.source = source
        self.target = target
        self._on_object = on_object
        self._on_morphism = on_morphism
        self.name = name

    def on_object(self, a):
        return self._on_object(a)

    def on_morphism(self, f):
        return self._on_morphism(f)


def check_strict_functor(F: StrictMonoidalFunctor, bound: Optional[int] = None) -> ValidationReport:
    """Functoriality and strict preservation of the tensor and unit on enumerated data."""
    report = ValidationReport(f"strict monoidal functor {F.name}".strip())
    S, T = F.source, F.target
    objects = list(S.iter_objects(bound))
    try:
        if F.on_object(S.unit_object) != T.unit_object:
            report.add("unit", "the unit object is not preserved")
        for a in objects:
            if F.on_morphism(S.identity(a)) != T.identity(F.on_object(a)):
                report.add("identity", f"identity of {S.object_label(a)} is not preserved")
        morphisms = list(S.morphisms_between(objects))
        for f in morphisms:
            image = F.on_morphism(f)
            if T.source(image) != F.on_object(S.source(f)) or T.target(image) != F.on_object(S.target(f)):
                report.add("endpoints", f"image of {S.morphism_label(f)} has the wrong endpoints")
        by_source = {}
        for g in morphisms:
            by_source.setdefault(S.source(g), []).append(g)
        for f in morphisms:
            for g in by_source.get(S.target(f), []):
                if F.on_morphism(S.compose(g, f)) != T.compose(F.on_morphism(g), F.on_morphism(f)):
                    report.add("composition", f"F({S.morphism_label(g)}∘{S.morphism_label(f)}) differs")
        for a, b in product(objects, repeat=2):
            ab = S.tensor_obj(a, b)
            if ab is not None and F.on_object(ab) != T.tensor_obj(F.on_object(a), F.on_object(b)):
                report.add("tensor-object", f"F({S.object_label(a)}⊗{S.object_label(b)}) differs")
        for f, g in product(morphisms, repeat=2):
            fg = S.tensor_mor(f, g)
            if fg is not None and F.on_morphism(fg) != T.tensor_mor(F.on_morphism(f), F.on_morphism(g)):
                report.add("tensor-morphism", f"F({S.morphism_label(f)}⊗{S.morphism_label(g)}) differs")
    except BoundExceededError as error:
        report.add("bound", str(error))
    return report


def hom_size_table(C: StrictMonCat, objects: List) -> np.ndarray:
    """Matrix of hom-set sizes between the given objects."""
    return np.array([[len(C.hom(a, b)) for b in objects] for a in objects], dtype=np.int64)
