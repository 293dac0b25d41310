"""
Truncated globular sets and the pasting diagram ‖τ‖ of a tree.

realize names cells by their construction path: the 0-cells of
[τ_1, ..., τ_m] are "v0" ... "vm", and a cell named n in ‖τ_i‖ becomes the
cell "i:n" one dimension up. The dimension of a cell is the number of ':' in
its name.
"""
from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Tuple

from globular.trees import Tree, height, level_counts
from utils.report import ValidationReport

Cell = Hashable


@dataclass
class GlobularSet:
    """Cells per dimension with source maps d[k] and target maps c[k] out of dimension k."""

    cells: List[List[Cell]]
    source: Dict[int, Dict[Cell, Cell]] = field(default_factory=dict)
    target: Dict[int, Dict[Cell, Cell]] = field(default_factory=dict)
    name: str = ""

    @property
    def dimension(self) -> int:
        return len(self.cells) - 1

    def cell_counts(self) -> Tuple[int, ...]:
        return tuple(len(level) for level in self.cells)


def check_globular(G: GlobularSet) -> ValidationReport:
    """Typing of every boundary map and the two globularity equations."""
    report = ValidationReport(f"globular set {G.name}".strip())
    for k in range(1, G.dimension + 1):
        lower = set(G.cells[k - 1])
        for x in G.cells[k]:
            for law, maps in (("source-typing", G.source), ("target-typing", G.target)):
                if maps.get(k, {}).get(x) not in lower:
                    report.add(law, f"boundary of {x!r} is not a {k - 1}-cell")
    if not report.is_valid:
        return report
    for k in range(2, G.dimension + 1):
        d, c = G.source, G.target
        for x in G.cells[k]:
            if c[k - 1][c[k][x]] != c[k - 1][d[k][x]]:
                report.add("globularity", f"c∘c ≠ c∘d at {x!r}")
            if d[k - 1][c[k][x]] != d[k - 1][d[k][x]]:
                report.add("globularity", f"d∘c ≠ d∘d at {x!r}")
    return report


def _realize_cells(tree: Tree) -> Tuple[List[List[str]], Dict[str, str], Dict[str, str]]:
    m = len(tree)
    cells: List[List[str]] = [[f"v{j}" for j in range(m + 1)]]
    source: Dict[str, str] = {}
    target: Dict[str, str] = {}
    for i, child in enumerate(tree):
        inner, inner_source, inner_target = _realize_cells(child)
        for k, level in enumerate(inner):
            while len(cells) <= k + 1:
                cells.append([])
            for name in level:
                cells[k + 1].append(f"{i}:{name}")
                if k == 0:
                    source[f"{i}:{name}"] = f"v{i}"
                    target[f"{i}:{name}"] = f"v{i + 1}"
                else:
                    source[f"{i}:{name}"] = f"{i}:{inner_source[name]}"
                    target[f"{i}:{name}"] = f"{i}:{inner_target[name]}"
    return cells, source, target


def realize(tree: Tree, name: str = "") -> GlobularSet:
    """
    ‖τ‖: a leaf is one 0-cell; [τ_1, ..., τ_m] is the wedge of the
    suspensions Σ‖τ_i‖, with the target 0-cell of each part glued to the
    source 0-cell of the next.
    """
    cells, source, target = _realize_cells(tree)
    G = GlobularSet(cells, name=name)
    for k in range(1, len(cells)):
        G.source[k] = {x: source[x] for x in cells[k]}
        G.target[k] = {x: target[x] for x in cells[k]}
    return G


def cell_dimension(name: str) -> int:
    return name.count(":")


def direct_counts(tree: Tree) -> Tuple[int, ...]:
    """k-cells of ‖τ‖ from the level sizes: |C_k| = nodes at level k + nodes at level k + 1."""
    levels = level_counts(tree) + (0,)
    return tuple(levels[k] + levels[k + 1] for k in range(height(tree) + 1))
