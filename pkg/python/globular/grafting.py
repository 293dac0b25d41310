"""
Labelled trees and grafting: the composition of the globular classifier.

A labelling of σ assigns a tree to every cell of ‖σ‖; a k-cell's label is a
tree of height ≤ k whose (k-1)-truncation is the label of both its source
and its target. Grafting evaluates the pasting diagram ‖σ‖ in trees: the
top cells of each suspended part are pasted one dimension up, and the parts
of a wedge are pasted along their shared boundary.
"""
from dataclasses import dataclass
from functools import reduce
from typing import Callable, Dict, List, Mapping, Optional, Set, Tuple

from globular.calculus import compose_k
from globular.realization import cell_dimension, realize
from globular.trees import Tree, chain, format_tree, height, truncate
from utils.report import StructuralError, ValidationReport

# A cell of ‖ρ‖ traced back to (cell of the shape, cell of that cell's label)
Origin = Callable[[str], Tuple[str, str]]


@dataclass(frozen=True)
class LabelledTree:
    """
    A labelling of ‖shape‖. With ``dimension`` set the shape is read as a
    cell of that dimension, so its top cells may carry labels up to that
    height (a leaf shape at dimension n is the identity n-cell).
    """

    shape: Tree
    labels: Mapping[str, Tree]
    dimension: Optional[int] = None

    def label(self, cell: str) -> Tree:
        return self.labels[cell]


def check_labelling(L: LabelledTree) -> ValidationReport:
    """Every cell labelled, label heights bounded by cell dimension, boundaries matching."""
    report = ValidationReport(f"labelling of {format_tree(L.shape)}")
    G = realize(L.shape)
    cells = [x for level in G.cells for x in level]
    for x in cells:
        if x not in L.labels:
            report.add("coverage", f"cell {x} has no label")
    extra = set(L.labels) - set(cells)
    for x in sorted(extra):
        report.add("coverage", f"{x} is not a cell of the shape")
    if not report.is_valid:
        return report
    tops = top_cells(L.shape)
    for k, level in enumerate(G.cells):
        for x in level:
            label = L.labels[x]
            bound = max(k, L.dimension) if L.dimension is not None and x in tops else k
            if height(label) > bound:
                report.add("dimension", f"{x} is a {k}-cell labelled by {format_tree(label)}")
                continue
            if k == 0:
                continue
            below = truncate(label, k - 1)
            for end in (G.source[k][x], G.target[k][x]):
                if L.labels[end] != below:
                    report.add(
                        "boundary",
                        f"{x} labelled {format_tree(label)} but its boundary {end} is {format_tree(L.labels[end])}",
                    )
    return report


def top_cells(shape: Tree, prefix: str = "") -> Set[str]:
    """The cells grafting reads labels from: one per leaf of the shape."""
    if not shape:
        return {prefix + "v0"}
    return set().union(*(top_cells(child, f"{prefix}{i}:") for i, child in enumerate(shape)))


def _fold(parts: List[Tree], k: int, order: str) -> Tree:
    if order == "left":
        return reduce(lambda a, b: compose_k(a, b, k), parts)
    if order == "right":
        return reduce(lambda b, a: compose_k(a, b, k), reversed(parts))
    raise StructuralError(f"unknown evaluation order {order!r}")


def _graft(shape: Tree, labels: Mapping[str, Tree], prefix: str, depth: int, order: str) -> Tree:
    if not shape:
        return labels[prefix + "v0"]
    parts = [_graft(child, labels, f"{prefix}{i}:", depth + 1, order) for i, child in enumerate(shape)]
    return _fold(parts, depth, order)


def graft(L: LabelledTree, order: str = "left") -> Tree:
    """
    Paste the labels of L along its shape.

    Args:
        L: A boundary-compatible labelling
        order: "left" folds each wedge innermost-leftmost, "right" folds from the right

    Raises:
        StructuralError: If the labelling is incompatible
    """
    report = check_labelling(L)
    if not report.is_valid:
        raise StructuralError(f"incompatible labelling:\n{report.format()}")
    return _graft(L.shape, L.labels, "", 0, order)


def graft_order_independent(L: LabelledTree) -> bool:
    return graft(L, "left") == graft(L, "right")


def identity_labelling(shape: Tree) -> LabelledTree:
    """Every k-cell labelled by the k-globe; grafts back to the shape."""
    G = realize(shape)
    return LabelledTree(shape, {x: chain(cell_dimension(x)) for level in G.cells for x in level})


def globe_labelling(tree: Tree, k: int) -> LabelledTree:
    """The k-globe with its top cell labelled by τ; grafts to τ."""
    if height(tree) > k:
        raise StructuralError(f"{format_tree(tree)} does not fit a {k}-globe")
    G = realize(chain(k))
    return LabelledTree(
        chain(k),
        {x: truncate(tree, cell_dimension(x)) for level in G.cells for x in level},
    )


def _paste_origin(a: Tree, b: Tree, k: int, cell: str) -> Tuple[int, str]:
    """Which side of a #_k b a cell of ‖a #_k b‖ comes from, and its name there."""
    head, _, rest = cell.partition(":")
    m = len(a)
    if k == 0:
        if not rest:
            j = int(head[1:])
            return (0, cell) if j <= m else (1, f"v{j - m}")
        i = int(head)
        return (0, cell) if i < m else (1, f"{i - m}:{rest}")
    if not rest:
        return 0, cell
    i = int(head)
    side, inner = _paste_origin(a[i], b[i], k - 1, rest)
    return side, f"{i}:{inner}"


def _graft_traced(shape: Tree, labels: Mapping[str, Tree], prefix: str, depth: int) -> Tuple[Tree, Origin]:
    if not shape:
        top = prefix + "v0"
        return labels[top], lambda cell: (top, cell)
    traced = [_graft_traced(child, labels, f"{prefix}{i}:", depth + 1) for i, child in enumerate(shape)]
    tree, origin = traced[0]
    for part, part_origin in traced[1:]:
        tree, origin = _combine(tree, origin, part, part_origin, depth)
    return tree, origin


def _combine(a: Tree, origin_a: Origin, b: Tree, origin_b: Origin, k: int) -> Tuple[Tree, Origin]:
    def origin(cell: str) -> Tuple[str, str]:
        side, name = _paste_origin(a, b, k, cell)
        return origin_a(name) if side == 0 else origin_b(name)

    return compose_k(a, b, k), origin


def collapse(outer: LabelledTree, inner: Mapping[str, LabelledTree]) -> LabelledTree:
    """
    Flatten a labelling of labellings.

    outer labels the cells of σ by trees τ_x and inner[x] labels ‖τ_x‖. The
    result labels ‖graft(outer)‖, each cell taking its label from the inner
    labelling it was pasted from.

    Raises:
        StructuralError: If an inner labelling's shape is not its outer label
    """
    for x, label in outer.labels.items():
        if x not in inner:
            raise StructuralError(f"no inner labelling for cell {x}")
        if inner[x].shape != label:
            raise StructuralError(
                f"inner labelling at {x} has shape {format_tree(inner[x].shape)}, expected {format_tree(label)}"
            )
    rho, origin = _graft_traced(outer.shape, outer.labels, "", 0)
    labels: Dict[str, Tree] = {}
    for level in realize(rho).cells:
        for y in level:
            x, z = origin(y)
            labels[y] = inner[x].labels[z]
    dimensions = [d for d in [outer.dimension] + [L.dimension for L in inner.values()] if d is not None]
    return LabelledTree(rho, labels, max(dimensions) if dimensions else None)


def check_nested_graft(outer: LabelledTree, inner: Mapping[str, LabelledTree]) -> ValidationReport:
    """Grafting each inner labelling first agrees with grafting the collapsed labelling."""
    report = ValidationReport(f"nested grafting on {format_tree(outer.shape)}")
    for name, L in [("outer", outer)] + sorted(inner.items()):
        sub = check_labelling(L)
        report.extend(sub, prefix=f"{name}: ")
    if not report.is_valid:
        return report
    stepwise = LabelledTree(outer.shape, {x: graft(inner[x]) for x in outer.labels}, outer.dimension)
    sub = check_labelling(stepwise)
    report.extend(sub, prefix="grafted inner labels: ")
    flattened = collapse(outer, inner)
    sub = check_labelling(flattened)
    report.extend(sub, prefix="collapsed: ")
    if not report.is_valid:
        return report
    if graft(stepwise) != graft(flattened):
        report.add(
            "associativity",
            f"{format_tree(graft(stepwise))} ≠ {format_tree(graft(flattened))}",
        )
    return report
