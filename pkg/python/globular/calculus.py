"""
Composition of tree-shaped cells.

A tree of height ≤ n is an n-cell of the free strict ω-category on a point;
its k-source and k-target are both truncate(τ, k). compose_k pastes two cells
along a shared k-boundary.
"""
from collections import defaultdict
from typing import Dict, Iterable, List, Optional

from tqdm import tqdm

from config import SHOW_PROGRESS
from globular.trees import Tree, format_tree, node_count, truncate
from utils.report import StructuralError, ValidationReport


def compose_k(tau: Tree, sigma: Tree, k: int) -> Tree:
    """
    τ #_k σ.

    Raises:
        StructuralError: If the k-truncations of τ and σ differ
    """
    if k < 0:
        raise StructuralError(f"composition dimension {k} is negative")
    if truncate(tau, k) != truncate(sigma, k):
        raise StructuralError(
            f"{format_tree(tau)} and {format_tree(sigma)} do not share a {k}-boundary"
        )
    return _paste(tau, sigma, k)


def _paste(tau: Tree, sigma: Tree, k: int) -> Tree:
    if k == 0:
        return tau + sigma
    return tuple(_paste(a, b, k - 1) for a, b in zip(tau, sigma))


def composite_size(a: Tree, b: Tree, k: int) -> int:
    """Nodes of a #_k b without building it."""
    return node_count(a) + node_count(b) - node_count(truncate(a, k))


def _buckets(trees: List[Tree], k: int) -> Dict[Tree, List[Tree]]:
    buckets: Dict[Tree, List[Tree]] = defaultdict(list)
    for t in trees:
        buckets[truncate(t, k)].append(t)
    return buckets


def check_tree_calculus(sample: Iterable[Tree], max_dim: int, max_nodes: Optional[int] = None) -> ValidationReport:
    """
    Identity, boundary, associativity and interchange laws of compose_k for
    k < max_dim over every applicable instance drawn from the sample.

    Args:
        sample: Cells to compose
        max_dim: Dimension the cells are read at
        max_nodes: Skip instances whose composite has more nodes than this

    Returns:
        Report naming each failing instance by its bracket strings
    """
    report = ValidationReport(f"tree calculus up to dimension {max_dim}")
    trees = sorted(set(sample), key=lambda t: (node_count(t), format_tree(t)))
    size = {t: node_count(t) for t in trees}
    limit = float("inf") if max_nodes is None else max_nodes
    by_level = {k: _buckets(trees, k) for k in range(max_dim)}

    for k in tqdm(range(max_dim), desc="associativity", disable=not SHOW_PROGRESS):
        for boundary, members in by_level[k].items():
            shared = node_count(boundary)
            for a in members:
                if compose_k(a, boundary, k) != a or compose_k(boundary, a, k) != a:
                    report.add("identity", f"{format_tree(a)} #{k} its {k}-boundary ≠ {format_tree(a)}")
            for a in members:
                for b in members:
                    if size[a] + size[b] - shared > limit:
                        break
                    ab = compose_k(a, b, k)
                    if truncate(ab, k) != boundary:
                        report.add("boundary", f"{format_tree(a)} #{k} {format_tree(b)} moves the {k}-boundary")
                    for c in members:
                        if size[a] + size[b] + size[c] - 2 * shared > limit:
                            break
                        if compose_k(ab, c, k) != compose_k(a, compose_k(b, c, k), k):
                            report.add(
                                "associativity",
                                f"#{k} on {format_tree(a)}, {format_tree(b)}, {format_tree(c)}",
                            )

    pairs = [(k, j) for j in range(max_dim) for k in range(j)]
    for k, j in tqdm(pairs, desc="interchange", disable=not SHOW_PROGRESS):
        for a in trees:
            ta = node_count(truncate(a, j))
            shared = node_count(truncate(a, k))
            for b in by_level[k][truncate(a, k)]:
                if size[a] + size[b] - shared > limit:
                    break
                tb = node_count(truncate(b, j))
                for c in by_level[j][truncate(a, j)]:
                    if size[a] + size[b] + size[c] - shared - ta > limit:
                        break
                    for d in by_level[j][truncate(b, j)]:
                        if size[a] + size[b] + size[c] + size[d] - shared - ta - tb > limit:
                            break
                        lhs = compose_k(compose_k(a, b, k), compose_k(c, d, k), j)
                        rhs = compose_k(compose_k(a, c, j), compose_k(b, d, j), k)
                        if lhs != rhs:
                            report.add(
                                "interchange",
                                f"#{k}/#{j} on {format_tree(a)}, {format_tree(b)}, {format_tree(c)}, {format_tree(d)}",
                            )
    return report
