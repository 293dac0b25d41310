"""
Profunctors (bimodules) between finite categories.

A profunctor P: X ⇸ Y is stored fiberwise: P(x, y) is a tuple of hashable
element labels, unique across the whole profunctor. For u: x' -> x in X the
left action sends P(x, y) to P(x', y) (precomposition); for v: y -> y' in Y
the right action sends P(x, y) to P(x, y') (postcomposition).
"""
from typing import Callable, Dict, Hashable, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from categories.fincat import FinCat, Functor, opposite
from profunctors.quotient import Quotient
from utils.report import CoherenceError, StructuralError, ValidationReport

Element = Hashable
Fiber = Tuple[int, int]


def _incoming(cat: FinCat) -> List[List[int]]:
    into: List[List[int]] = [[] for _ in cat.objects]
    for f in cat.morphisms:
        into[cat.target(f)].append(f)
    return into


class Profunctor:
    """A bimodule X ⇸ Y with fibers and two actions."""

    def __init__(
        self,
        source: FinCat,
        target: FinCat,
        fibers: Mapping[Fiber, Sequence[Element]],
        left: Mapping[Tuple[int, Element], Element],
        right: Mapping[Tuple[Element, int], Element],
        name: str = "",
    ):
        """
        Build a profunctor and check that its data is well typed.

        Args:
            source: The category X acting on the left
            target: The category Y acting on the right
            fibers: (x, y) -> elements of P(x, y); absent pairs are empty
            left: (u, p) -> u acting on p, for every u: x' -> x and p in P(x, y)
            right: (p, v) -> p acted on by v, for every p in P(x, y) and v: y -> y'

        Raises:
            StructuralError: On unknown fibers, duplicate labels, or missing
                or mistyped action entries
        """
        self.source = source
        self.target = target
        self.name = name
        self.quotient: Optional[Quotient] = None

        for key in fibers:
            x, y = key
            if not (0 <= x < source.object_count and 0 <= y < target.object_count):
                raise StructuralError(f"profunctor {name}: fiber {key} out of range")
        self._fibers: Dict[Fiber, Tuple[Element, ...]] = {}
        self._position: Dict[Element, Fiber] = {}
        ordered: List[Element] = []
        for x in source.objects:
            for y in target.objects:
                elements = tuple(fibers.get((x, y), ()))
                self._fibers[(x, y)] = elements
                for p in elements:
                    if p in self._position:
                        raise StructuralError(f"profunctor {name}: element {p!r} appears twice")
                    self._position[p] = (x, y)
                    ordered.append(p)
        self.elements: Tuple[Element, ...] = tuple(ordered)

        self._left: Dict[Tuple[int, Element], Element] = {}
        self._right: Dict[Tuple[Element, int], Element] = {}
        for p in self.elements:
            x, y = self._position[p]
            for u in source.morphisms:
                if source.target(u) != x:
                    continue
                image = left.get((u, p))
                if image is None or self._position.get(image) != (source.source(u), y):
                    raise StructuralError(
                        f"profunctor {name}: left action of {source.morphism_names[u]} on {p!r} is missing or mistyped"
                    )
                self._left[(u, p)] = image
            for v in target.morphisms_from(y):
                image = right.get((p, v))
                if image is None or self._position.get(image) != (x, target.target(v)):
                    raise StructuralError(
                        f"profunctor {name}: right action of {target.morphism_names[v]} on {p!r} is missing or mistyped"
                    )
                self._right[(p, v)] = image

    def fiber(self, x: int, y: int) -> Tuple[Element, ...]:
        return self._fibers[(x, y)]

    def position(self, p: Element) -> Fiber:
        return self._position[p]

    def act_left(self, u: int, p: Element) -> Element:
        return self._left[(u, p)]

    def act_right(self, p: Element, v: int) -> Element:
        return self._right[(p, v)]

    def contains(self, p: Element) -> bool:
        return p in self._position

    @property
    def element_count(self) -> int:
        return len(self.elements)

    def fiber_sizes(self) -> np.ndarray:
        sizes = np.zeros((self.source.object_count, self.target.object_count), dtype=np.int64)
        for (x, y), elements in self._fibers.items():
            sizes[x, y] = len(elements)
        return sizes

    def left_table(self) -> Dict[Tuple[int, Element], Element]:
        return dict(self._left)

    def right_table(self) -> Dict[Tuple[Element, int], Element]:
        return dict(self._right)

    def fibers(self) -> Iterator[Tuple[Fiber, Tuple[Element, ...]]]:
        return iter(self._fibers.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Profunctor):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self._fibers == other._fibers
            and self._left == other._left
            and self._right == other._right
        )

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        return f"Profunctor({self.name or '?'}: {self.source.name or '?'} ⇸ {self.target.name or '?'}, {self.element_count} elements)"


def check_profunctor(P: Profunctor) -> ValidationReport:
    """Check unit, functoriality and commutation of the two actions."""
    report = ValidationReport(f"profunctor {P.name}".strip())
    X, Y = P.source, P.target
    into = _incoming(X)
    for p in P.elements:
        x, y = P.position(p)
        if P.act_left(X.identity(x), p) != p:
            report.add("left-unit", f"id·{p!r} ≠ {p!r}")
        if P.act_right(p, Y.identity(y)) != p:
            report.add("right-unit", f"{p!r}·id ≠ {p!r}")
        for u in into[x]:
            q = P.act_left(u, p)
            for u2 in into[X.source(u)]:
                if P.act_left(u2, q) != P.act_left(X.compose(u, u2), p):
                    report.add(
                        "left-functoriality",
                        f"{X.morphism_names[u2]}·({X.morphism_names[u]}·{p!r}) ≠ ({X.morphism_names[u]}∘{X.morphism_names[u2]})·{p!r}",
                    )
            for v in Y.morphisms_from(y):
                if P.act_right(q, v) != P.act_left(u, P.act_right(p, v)):
                    report.add(
                        "commutation",
                        f"({X.morphism_names[u]}·{p!r})·{Y.morphism_names[v]} ≠ {X.morphism_names[u]}·({p!r}·{Y.morphism_names[v]})",
                    )
        for v in Y.morphisms_from(y):
            q = P.act_right(p, v)
            for v2 in Y.morphisms_from(Y.target(v)):
                if P.act_right(q, v2) != P.act_right(p, Y.compose(v2, v)):
                    report.add(
                        "right-functoriality",
                        f"({p!r}·{Y.morphism_names[v]})·{Y.morphism_names[v2]} ≠ {p!r}·({Y.morphism_names[v2]}∘{Y.morphism_names[v]})",
                    )
    return report


class ProfMorphism:
    """A 2-cell P => Q between parallel profunctors, given element-wise."""

    def __init__(self, source: Profunctor, target: Profunctor, mapping: Mapping[Element, Element], name: str = ""):
        if source.source != target.source or source.target != target.target:
            raise StructuralError("profunctor morphism between non-parallel profunctors")
        for p in source.elements:
            if p not in mapping:
                raise StructuralError(f"profunctor morphism {name}: no image for {p!r}")
            if not target.contains(mapping[p]):
                raise StructuralError(f"profunctor morphism {name}: image of {p!r} is not an element of the target")
        self.source = source
        self.target = target
        self.mapping = {p: mapping[p] for p in source.elements}
        self.name = name

    def __call__(self, p: Element) -> Element:
        return self.mapping[p]

    def inverse(self) -> "ProfMorphism":
        if not is_isomorphism(self):
            raise CoherenceError(f"profunctor morphism {self.name} is not invertible")
        return ProfMorphism(self.target, self.source, {q: p for p, q in self.mapping.items()}, name=f"{self.name}⁻¹")


def check_prof_morphism(phi: ProfMorphism) -> ValidationReport:
    """Check that phi preserves fibers and commutes with both actions."""
    report = ValidationReport(f"profunctor morphism {phi.name}".strip())
    P, Q = phi.source, phi.target
    X, Y = P.source, P.target
    into = _incoming(X)
    for p in P.elements:
        x, y = P.position(p)
        if Q.position(phi(p)) != (x, y):
            report.add("fiber", f"{p!r} in ({x}, {y}) is sent to fiber {Q.position(phi(p))}")
            continue
        for u in into[x]:
            if phi(P.act_left(u, p)) != Q.act_left(u, phi(p)):
                report.add("left-equivariance", f"at {X.morphism_names[u]}·{p!r}")
        for v in Y.morphisms_from(y):
            if phi(P.act_right(p, v)) != Q.act_right(phi(p), v):
                report.add("right-equivariance", f"at {p!r}·{Y.morphism_names[v]}")
    return report


def is_isomorphism(phi: ProfMorphism) -> bool:
    """True iff phi is a valid 2-cell that is bijective on every fiber."""
    if not check_prof_morphism(phi).is_valid:
        return False
    images = set(phi.mapping.values())
    return len(images) == phi.source.element_count == phi.target.element_count


def relabel(P: Profunctor, rename: Callable[[Element], Element], name: str = "") -> Profunctor:
    """Copy of P with every element p renamed to rename(p)."""
    fibers = {key: [rename(p) for p in elements] for key, elements in P.fibers()}
    left = {(u, rename(p)): rename(q) for (u, p), q in P.left_table().items()}
    right = {(rename(p), v): rename(q) for (p, v), q in P.right_table().items()}
    return Profunctor(P.source, P.target, fibers, left, right, name=name or P.name)


def hom_profunctor(X: FinCat) -> Profunctor:
    """Hom_X: X ⇸ X with P(x, y) = X(x, y); elements are morphism indices."""
    fibers = {(x, y): list(X.hom(x, y)) for x in X.objects for y in X.objects}
    left: Dict[Tuple[int, Element], Element] = {}
    right: Dict[Tuple[Element, int], Element] = {}
    for f in X.morphisms:
        for u in X.morphisms:
            if X.target(u) == X.source(f):
                left[(u, f)] = X.compose(f, u)
        for v in X.morphisms_from(X.target(f)):
            right[(f, v)] = X.compose(v, f)
    return Profunctor(X, X, fibers, left, right, name=f"Hom_{X.name}" if X.name else "Hom")


def compose(P: Profunctor, Q: Profunctor) -> Profunctor:
    """
    Composite P•Q: X ⇸ Z of P: X ⇸ Y and Q: Y ⇸ Z.

    Elements are classes of pairs (p, q) modulo (p·v, q) ~ (p, v·q), labelled
    by their least representative pair. The quotient is kept on the result as
    ``composite.quotient`` so callers can project any pair onto its class.

    Raises:
        StructuralError: If P.target is not Q.source
        CoherenceError: If an induced action is not constant on a class
    """
    if P.target != Q.source:
        raise StructuralError("profunctors are not composable: middle categories differ")
    X, Y, Z = P.source, P.target, Q.target

    pairs = []
    for x in X.objects:
        for z in Z.objects:
            for y in Y.objects:
                for p in P.fiber(x, y):
                    for q in Q.fiber(y, z):
                        pairs.append((p, q))
    quotient: Quotient = Quotient(pairs)
    for p in P.elements:
        _, y = P.position(p)
        for v in Y.morphisms_from(y):
            for z in Z.objects:
                for q in Q.fiber(Y.target(v), z):
                    quotient.merge((P.act_right(p, v), q), (p, Q.act_left(v, q)))

    project = quotient.representative
    fibers: Dict[Fiber, List[Element]] = {}
    for rep in quotient.representatives():
        p, q = rep
        fibers.setdefault((P.position(p)[0], Q.position(q)[1]), []).append(rep)

    into = _incoming(X)
    left: Dict[Tuple[int, Element], Element] = {}
    right: Dict[Tuple[Element, int], Element] = {}
    for members in quotient.classes():
        rep = members[0]
        x, z = P.position(rep[0])[0], Q.position(rep[1])[1]
        for u in into[x]:
            values = {project((P.act_left(u, p), q)) for p, q in members}
            if len(values) != 1:
                raise CoherenceError(f"left action of {X.morphism_names[u]} is not well defined on the class of {rep!r}")
            left[(u, rep)] = values.pop()
        for w in Z.morphisms_from(z):
            values = {project((p, Q.act_right(q, w))) for p, q in members}
            if len(values) != 1:
                raise CoherenceError(f"right action of {Z.morphism_names[w]} is not well defined on the class of {rep!r}")
            right[(rep, w)] = values.pop()

    composite = Profunctor(X, Z, fibers, left, right, name=f"{P.name}•{Q.name}")
    composite.quotient = quotient
    return composite


def left_unitor(P: Profunctor, composite: Optional[Profunctor] = None) -> ProfMorphism:
    """The isomorphism Hom•P => P, [u, p] ↦ u·p."""
    composite = composite if composite is not None else compose(hom_profunctor(P.source), P)
    mapping = {(u, p): P.act_left(u, p) for u, p in composite.elements}
    return ProfMorphism(composite, P, mapping, name="λ")


def right_unitor(P: Profunctor, composite: Optional[Profunctor] = None) -> ProfMorphism:
    """The isomorphism P•Hom => P, [p, v] ↦ p·v."""
    composite = composite if composite is not None else compose(P, hom_profunctor(P.target))
    mapping = {(p, v): P.act_right(p, v) for p, v in composite.elements}
    return ProfMorphism(composite, P, mapping, name="ρ")


def associator(P: Profunctor, Q: Profunctor, R: Profunctor) -> ProfMorphism:
    """The isomorphism (P•Q)•R => P•(Q•R), [[p, q], r] ↦ [p, [q, r]]."""
    PQ = compose(P, Q)
    QR = compose(Q, R)
    left_side = compose(PQ, R)
    right_side = compose(P, QR)
    mapping = {}
    for (p, q), r in left_side.elements:
        inner = QR.quotient.representative((q, r))
        mapping[((p, q), r)] = right_side.quotient.representative((p, inner))
    return ProfMorphism(left_side, right_side, mapping, name="α")


def representable(f: Functor) -> Tuple[Profunctor, Profunctor]:
    """
    The two profunctors of a functor f: X -> Y.

    Returns:
        (f_#: X ⇸ Y with f_#(x, y) = Y(fx, y), labels (x, v);
         f^*: Y ⇸ X with f^*(y, x) = Y(y, fx), labels (v, x))
    """
    X, Y = f.source, f.target
    fibers_lower: Dict[Fiber, List[Element]] = {}
    left_lower, right_lower = {}, {}
    for x in X.objects:
        for y in Y.objects:
            fibers_lower[(x, y)] = [(x, v) for v in Y.hom(f.on_object(x), y)]
    for x in X.objects:
        for y in Y.objects:
            for _, v in fibers_lower[(x, y)]:
                for u in X.morphisms:
                    if X.target(u) == x:
                        left_lower[(u, (x, v))] = (X.source(u), Y.compose(v, f.on_morphism(u)))
                for w in Y.morphisms_from(y):
                    right_lower[((x, v), w)] = (x, Y.compose(w, v))
    lower = Profunctor(X, Y, fibers_lower, left_lower, right_lower, name=f"{f.name}_#")

    fibers_upper: Dict[Fiber, List[Element]] = {}
    left_upper, right_upper = {}, {}
    for y in Y.objects:
        for x in X.objects:
            fibers_upper[(y, x)] = [(v, x) for v in Y.hom(y, f.on_object(x))]
    for y in Y.objects:
        for x in X.objects:
            for v, _ in fibers_upper[(y, x)]:
                for w in Y.morphisms:
                    if Y.target(w) == y:
                        left_upper[(w, (v, x))] = (Y.compose(v, w), x)
                for u in X.morphisms_from(x):
                    right_upper[((v, x), u)] = (Y.compose(f.on_morphism(u), v), X.target(u))
    upper = Profunctor(Y, X, fibers_upper, left_upper, right_upper, name=f"{f.name}^*")
    return lower, upper


def comma_profunctor(f: Functor, g: Functor) -> Profunctor:
    """
    The profunctor X ⇸ Y read off the comma category f↓g: its fiber at (x, y)
    is the set of comma objects (x, u, y), acted on by the comma morphisms
    (a, id) on the left and (id, b) on the right.
    """
    if f.target != g.target:
        raise StructuralError("comma profunctor needs functors with a common target")
    X, Y, Z = f.source, g.source, f.target
    fibers = {
        (x, y): [(x, u, y) for u in Z.hom(f.on_object(x), g.on_object(y))]
        for x in X.objects
        for y in Y.objects
    }
    left, right = {}, {}
    for elements in fibers.values():
        for x, u, y in elements:
            for a in X.morphisms:
                if X.target(a) == x:
                    left[(a, (x, u, y))] = (X.source(a), Z.compose(u, f.on_morphism(a)), y)
            for b in Y.morphisms_from(y):
                right[((x, u, y), b)] = (x, Z.compose(g.on_morphism(b), u), Y.target(b))
    return Profunctor(X, Y, fibers, left, right, name=f"{f.name}↓{g.name}")


def comma_comparison(f: Functor, g: Functor) -> ProfMorphism:
    """The canonical 2-cell f_#•g^* => (f↓g), [(x, v), (w, y)] ↦ (x, w∘v, y)."""
    lower, _ = representable(f)
    _, upper = representable(g)
    composite = compose(lower, upper)
    target = comma_profunctor(f, g)
    Z = f.target
    mapping = {((x, v), (w, y)): (x, Z.compose(w, v), y) for (x, v), (w, y) in composite.elements}
    return ProfMorphism(composite, target, mapping, name="comma-comparison")


def dual(P: Profunctor) -> Profunctor:
    """
    The dual P^o: Y^op ⇸ X^op with P^o(y, x) = P(x, y).

    A morphism of Y^op acts on the left by P's right action and a morphism of
    X^op acts on the right by P's left action. Element labels are unchanged.
    """
    X, Y = P.source, P.target
    fibers = {(y, x): list(P.fiber(x, y)) for x in X.objects for y in Y.objects}
    left = {(v, p): q for (p, v), q in P.right_table().items()}
    right = {(p, u): q for (u, p), q in P.left_table().items()}
    name = f"{P.name}^o" if P.name else ""
    return Profunctor(opposite(Y), opposite(X), fibers, left, right, name=name)


def change_of_base(f: Functor, g: Functor, R: Profunctor) -> Profunctor:
    """
    Reindex R: X ⇸ Y along f: X' -> X and g: Y' -> Y.

    The fiber at (x', y') is R(fx', gy') with elements labelled (x', y', r).
    """
    if f.target != R.source or g.target != R.target:
        raise StructuralError("change of base functors do not land in the profunctor's endpoints")
    X2, Y2 = f.source, g.source
    fibers = {
        (x, y): [(x, y, r) for r in R.fiber(f.on_object(x), g.on_object(y))]
        for x in X2.objects
        for y in Y2.objects
    }
    left, right = {}, {}
    for elements in fibers.values():
        for x, y, r in elements:
            for u in X2.morphisms:
                if X2.target(u) == x:
                    left[(u, (x, y, r))] = (X2.source(u), y, R.act_left(f.on_morphism(u), r))
            for v in Y2.morphisms_from(y):
                right[((x, y, r), v)] = (x, Y2.target(v), R.act_right(r, g.on_morphism(v)))
    return Profunctor(X2, Y2, fibers, left, right, name=f"({f.name},{g.name})*{R.name}")
