"""
Weak monoidal categories in finite presentation and lax monoidal functors.

A MonoidalCategory carries a total binary tensor on a FinCat together with
component tables for the associator α_{x,y,z}: (x⊗y)⊗z -> x⊗(y⊗z), the left
unitor λ_x: I⊗x -> x and the right unitor ρ_x: x⊗I -> x.
"""
from itertools import product
from typing import Callable, Hashable, Iterator, Mapping, Optional, Tuple

import numpy as np

from categories.fincat import FinCat, Functor, check_category, check_functor, product_category
from monoidal.strict import TabulatedStrictMonCat
from utils.report import NON_INVERTIBLE, BoundExceededError, StructuralError, ValidationReport


class MonoidalCategory:
    """A monoidal category on a finite base with tabulated constraints."""

    def __init__(
        self,
        base: FinCat,
        object_tensor,
        morphism_tensor,
        unit: int,
        associator,
        left_unitor,
        right_unitor,
        name: str = "",
    ):
        n, m = base.object_count, base.morphism_count
        object_tensor = np.array(object_tensor, dtype=np.int64)
        morphism_tensor = np.array(morphism_tensor, dtype=np.int64)
        associator = np.array(associator, dtype=np.int64)
        left_unitor = np.array(left_unitor, dtype=np.int64)
        right_unitor = np.array(right_unitor, dtype=np.int64)
        if object_tensor.shape != (n, n) or morphism_tensor.shape != (m, m):
            raise StructuralError(f"monoidal {name}: tensor tables do not match the category size")
        if associator.shape != (n, n, n) or left_unitor.shape != (n,) or right_unitor.shape != (n,):
            raise StructuralError(f"monoidal {name}: constraint tables do not match the object count")
        if ((object_tensor < 0) | (object_tensor >= n)).any() or ((morphism_tensor < 0) | (morphism_tensor >= m)).any():
            raise StructuralError(f"monoidal {name}: the tensor must be total with entries in range")
        for table in (associator, left_unitor, right_unitor):
            if ((table < 0) | (table >= m)).any():
                raise StructuralError(f"monoidal {name}: constraint component out of range")
        if not 0 <= unit < n:
            raise StructuralError(f"monoidal {name}: unit object {unit} out of range")
        for table in (object_tensor, morphism_tensor, associator, left_unitor, right_unitor):
            table.setflags(write=False)
        self.base = base
        self.object_tensor = object_tensor
        self.morphism_tensor = morphism_tensor
        self.unit = int(unit)
        self.alpha = associator
        self.lam = left_unitor
        self.rho = right_unitor
        self.name = name or base.name

    @property
    def object_names(self) -> Tuple[str, ...]:
        return self.base.object_names

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

    def tensor_obj(self, a: int, b: int) -> int:
        return int(self.object_tensor[a, b])

    def tensor_mor(self, f: int, g: int) -> int:
        return int(self.morphism_tensor[f, g])

    @property
    def unit_object(self) -> int:
        return self.unit

    def associator(self, a: int, b: int, c: int) -> int:
        return int(self.alpha[a, b, c])

    def left_unitor(self, a: int) -> int:
        return int(self.lam[a])

    def right_unitor(self, a: int) -> int:
        return int(self.rho[a])

    def object_label(self, a: int) -> str:
        return self.base.object_names[a]

    def morphism_label(self, f: int) -> str:
        return self.base.morphism_names[f]

    def tensor_functor(self) -> Functor:
        """⊗ as a functor base × base -> base."""
        total, _, _ = product_category(self.base, self.base)
        n, m = self.base.object_count, self.base.morphism_count
        return Functor(
            total,
            self.base,
            [self.tensor_obj(p // n, p % n) for p in total.objects],
            [self.tensor_mor(k // m, k % m) for k in total.morphisms],
            name="⊗",
        )

    def __repr__(self) -> str:
        return f"MonoidalCategory({self.name or '?'}: {self.base.object_count} objects)"


def monoidal_from_tables(
    base: FinCat,
    tensor: Mapping[Tuple[int, int], int],
    morphism_tensor: Mapping[Tuple[int, int], int],
    unit: int,
    associator: Mapping[Tuple[int, int, int], int],
    left_unitor: Mapping[int, int],
    right_unitor: Mapping[int, int],
    name: str = "",
) -> MonoidalCategory:
    """Build a MonoidalCategory from dictionaries; missing entries are structural errors."""
    n, m = base.object_count, base.morphism_count
    try:
        objects = [[tensor[(a, b)] for b in range(n)] for a in range(n)]
        morphisms = [[morphism_tensor[(f, g)] for g in range(m)] for f in range(m)]
        alpha = [[[associator[(a, b, c)] for c in range(n)] for b in range(n)] for a in range(n)]
        lam = [left_unitor[a] for a in range(n)]
        rho = [right_unitor[a] for a in range(n)]
    except KeyError as error:
        raise StructuralError(f"monoidal {name}: missing table entry {error.args[0]}") from error
    return MonoidalCategory(base, objects, morphisms, unit, alpha, lam, rho, name=name)


def from_strict(C: TabulatedStrictMonCat) -> MonoidalCategory:
    """A tabulated strict monoidal category with identity constraints."""
    if (C.object_tensor < 0).any() or (C.morphism_tensor < 0).any():
        raise StructuralError(f"{C.name}: a truncated tensor cannot carry a monoidal structure")
    base = C.base
    n = base.object_count
    alpha = [[[base.identity(int(C.object_tensor[C.object_tensor[a, b], c])) for c in range(n)] for b in range(n)] for a in range(n)]
    ids = [base.identity(a) for a in range(n)]
    return MonoidalCategory(base, C.object_tensor, C.morphism_tensor, C.unit, alpha, ids, ids, name=C.name)


def check_monoidal(C: MonoidalCategory) -> ValidationReport:
    """
    Category laws, functoriality of ⊗, constraint typing, invertibility,
    naturality, pentagon and triangle on every object tuple.
    """
    report = ValidationReport(f"monoidal {C.name}".strip())
    report.extend(check_category(C.base))
    if not report.is_valid:
        return report
    report.extend(check_functor(C.tensor_functor()), prefix="tensor ")
    if not report.is_valid:
        return report

    X = C.base
    I = C.unit
    T = C.tensor_obj
    label = C.object_label
    objects = list(X.objects)

    for a, b, c in product(objects, repeat=3):
        f = C.associator(a, b, c)
        if X.source(f) != T(T(a, b), c) or X.target(f) != T(a, T(b, c)):
            report.add("constraint-typing", f"α({label(a)},{label(b)},{label(c)}) has the wrong endpoints")
    for a in objects:
        if X.source(C.left_unitor(a)) != T(I, a) or X.target(C.left_unitor(a)) != a:
            report.add("constraint-typing", f"λ({label(a)}) has the wrong endpoints")
        if X.source(C.right_unitor(a)) != T(a, I) or X.target(C.right_unitor(a)) != a:
            report.add("constraint-typing", f"ρ({label(a)}) has the wrong endpoints")
    if not report.is_valid:
        return report

    for a, b, c in product(objects, repeat=3):
        if X.inverse(C.associator(a, b, c)) is None:
            report.add("invertibility", f"α({label(a)},{label(b)},{label(c)}) is not invertible", NON_INVERTIBLE)
    for a in objects:
        if X.inverse(C.left_unitor(a)) is None:
            report.add("invertibility", f"λ({label(a)}) is not invertible", NON_INVERTIBLE)
        if X.inverse(C.right_unitor(a)) is None:
            report.add("invertibility", f"ρ({label(a)}) is not invertible", NON_INVERTIBLE)

    M = C.tensor_mor
    name = C.morphism_label
    for f, g, h in product(X.morphisms, repeat=3):
        x, y, z = X.source(f), X.source(g), X.source(h)
        x2, y2, z2 = X.target(f), X.target(g), X.target(h)
        left = X.compose(C.associator(x2, y2, z2), M(M(f, g), h))
        right = X.compose(M(f, M(g, h)), C.associator(x, y, z))
        if left != right:
            report.add("naturality", f"α is not natural at ({name(f)}, {name(g)}, {name(h)})")
    unit_id = X.identity(I)
    for f in X.morphisms:
        x, y = X.source(f), X.target(f)
        if X.compose(C.left_unitor(y), M(unit_id, f)) != X.compose(f, C.left_unitor(x)):
            report.add("naturality", f"λ is not natural at {name(f)}")
        if X.compose(C.right_unitor(y), M(f, unit_id)) != X.compose(f, C.right_unitor(x)):
            report.add("naturality", f"ρ is not natural at {name(f)}")

    idm = X.identity
    for w, x, y, z in product(objects, repeat=4):
        left = X.compose(C.associator(w, x, T(y, z)), C.associator(T(w, x), y, z))
        right = X.compose(
            M(idm(w), C.associator(x, y, z)),
            X.compose(C.associator(w, T(x, y), z), M(C.associator(w, x, y), idm(z))),
        )
        if left != right:
            report.add("pentagon", f"fails at ({label(w)}, {label(x)}, {label(y)}, {label(z)})")
    for x, y in product(objects, repeat=2):
        left = X.compose(M(idm(x), C.left_unitor(y)), C.associator(x, I, y))
        right = M(C.right_unitor(x), idm(y))
        if left != right:
            report.add("triangle", f"fails at ({label(x)}, {label(y)})")
    return report


# ----------------------------------------------------------------------
# The Z/2-graded sign category
# ----------------------------------------------------------------------
def trivial_cocycle(g: int, h: int, k: int) -> int:
    return 1


def nontrivial_cocycle(g: int, h: int, k: int) -> int:
    """The normalized 3-cocycle (-1)^{ghk} on Z/2."""
    return -1 if g == h == k == 1 else 1


def non_cocycle(g: int, h: int, k: int) -> int:
    """Normalized but not closed: the pentagon fails at (1, 1, 0, 0)."""
    return -1 if (g, h, k) == (1, 1, 0) else 1


def cocycle_category(omega: Callable[[int, int, int], int] = nontrivial_cocycle, name: str = "") -> MonoidalCategory:
    """
    Objects Z/2, hom(g, g) = {+1, -1} under multiplication and no other
    morphisms; the tensor adds grades and multiplies signs, and the
    associator at (g, h, k) is the sign omega(g, h, k).

    Morphism (g, s) has index 2g + s where s = 1 stands for -1.
    """
    morphisms = [(g, g) for g in range(2) for _ in range(2)]
    compose = {}
    for g in range(2):
        for s, t in product(range(2), repeat=2):
            compose[(2 * g + s, 2 * g + t)] = 2 * g + (s ^ t)
    base = FinCat(
        2,
        morphisms,
        [0, 2],
        compose,
        object_names=["0", "1"],
        morphism_names=["+0", "-0", "+1", "-1"],
        name=name or "Z/2 signs",
    )
    tensor = [[(a + b) % 2 for b in range(2)] for a in range(2)]
    morphism_tensor = [[2 * ((f // 2 + g // 2) % 2) + ((f % 2) ^ (g % 2)) for g in range(4)] for f in range(4)]
    alpha = [
        [[2 * ((a + b + c) % 2) + (1 if omega(a, b, c) == -1 else 0) for c in range(2)] for b in range(2)]
        for a in range(2)
    ]
    return MonoidalCategory(base, tensor, morphism_tensor, 0, alpha, [0, 2], [0, 2], name=name or "Z/2 signs")


# ----------------------------------------------------------------------
# Lax monoidal functors
# ----------------------------------------------------------------------
class LaxMonoidalFunctor:
    """
    A functor with constraints θ_{x,y}: Fx⊗Fy -> F(x⊗y) and θ₀: I -> FI.

    Source and target may be MonoidalCategory values or strict monoidal
    categories (which supply identity constraints).
    """

    def __init__(
        self,
        source,
        target,
        on_object: Callable[[Hashable], Hashable],
        on_morphism: Callable[[Hashable], Hashable],
        binary: Callable[[Hashable, Hashable], Hashable],
        nullary: Hashable,
        name: str = "",
    ):
        self.source = source
        self.target = target
        self._on_object = on_object
        self._on_morphism = on_morphism
        self._binary = binary
        self.nullary = nullary
        self.name = name

    def on_object(self, x):
        return self._on_object(x)

    def on_morphism(self, f):
        return self._on_morphism(f)

    def binary(self, x, y):
        return self._binary(x, y)


def check_lax_functor(F: LaxMonoidalFunctor, bound: Optional[int] = None, strong: bool = False) -> ValidationReport:
    """
    Functoriality, constraint typing, naturality of θ, the associativity
    and unit coherence equations, and invertibility of every constraint when
    ``strong`` is set.
    """
    report = ValidationReport(f"lax monoidal functor {F.name}".strip())
    S, T = F.source, F.target
    try:
        objects = list(S.iter_objects(bound))
        morphisms = [f for a in objects for b in objects for f in S.hom(a, b)]
        for a in objects:
            if F.on_morphism(S.identity(a)) != T.identity(F.on_object(a)):
                report.add("identity", f"identity of {S.object_label(a)} is not preserved")
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
        if not report.is_valid:
            return report

        FI = F.on_object(S.unit_object)
        if T.source(F.nullary) != T.unit_object or T.target(F.nullary) != FI:
            report.add("constraint-typing", "θ₀ is not a morphism I -> F(I)")
        for a, b in product(objects, repeat=2):
            theta = F.binary(a, b)
            if T.source(theta) != T.tensor_obj(F.on_object(a), F.on_object(b)) or T.target(theta) != F.on_object(S.tensor_obj(a, b)):
                report.add("constraint-typing", f"θ({S.object_label(a)},{S.object_label(b)}) has the wrong endpoints")
        if not report.is_valid:
            return report

        if strong:
            if T.inverse(F.nullary) is None:
                report.add("invertibility", "θ₀ is not invertible", NON_INVERTIBLE)
            for a, b in product(objects, repeat=2):
                if T.inverse(F.binary(a, b)) is None:
                    report.add("invertibility", f"θ({S.object_label(a)},{S.object_label(b)}) is not invertible", NON_INVERTIBLE)

        Fo, Fm = F.on_object, F.on_morphism
        for f, g in product(morphisms, repeat=2):
            x, y, x2, y2 = S.source(f), S.source(g), S.target(f), S.target(g)
            left = T.compose(Fm(S.tensor_mor(f, g)), F.binary(x, y))
            right = T.compose(F.binary(x2, y2), T.tensor_mor(Fm(f), Fm(g)))
            if left != right:
                report.add("naturality", f"θ is not natural at ({S.morphism_label(f)}, {S.morphism_label(g)})")

        tid = T.identity
        for x, y, z in product(objects, repeat=3):
            xy, yz = S.tensor_obj(x, y), S.tensor_obj(y, z)
            left = T.compose(
                Fm(S.associator(x, y, z)),
                T.compose(F.binary(xy, z), T.tensor_mor(F.binary(x, y), tid(Fo(z)))),
            )
            right = T.compose(
                F.binary(x, yz),
                T.compose(T.tensor_mor(tid(Fo(x)), F.binary(y, z)), T.associator(Fo(x), Fo(y), Fo(z))),
            )
            if left != right:
                report.add(
                    "associativity",
                    f"constraints disagree at ({S.object_label(x)}, {S.object_label(y)}, {S.object_label(z)})",
                )
        I = S.unit_object
        for x in objects:
            left = T.compose(
                Fm(S.left_unitor(x)),
                T.compose(F.binary(I, x), T.tensor_mor(F.nullary, tid(Fo(x)))),
            )
            if left != T.left_unitor(Fo(x)):
                report.add("left-unit", f"fails at {S.object_label(x)}")
            right = T.compose(
                Fm(S.right_unitor(x)),
                T.compose(F.binary(x, I), T.tensor_mor(tid(Fo(x)), F.nullary)),
            )
            if right != T.right_unitor(Fo(x)):
                report.add("right-unit", f"fails at {S.object_label(x)}")
    except BoundExceededError as error:
        report.add("bound", str(error))
    return report
