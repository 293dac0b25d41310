"""
Planar rooted trees of finite height.

A tree is a tuple of child trees; the leaf is (). Trees print as nested
brackets, so "[[[],[]]]" is a root with one child carrying two leaves.
Equality is syntactic on this canonical form.
"""
from functools import lru_cache
from typing import List, Sequence, Tuple

from utils.report import ParseError, StructuralError

Tree = Tuple["Tree", ...]
LEAF: Tree = ()


def parse_tree(text: str) -> Tree:
    """
    Read a bracket string; whitespace is ignored.

    Raises:
        ParseError: With code ``syntax`` and the 1-based column of the fault
    """
    stack: List[List[Tree]] = []
    result = None
    for column, char in enumerate(text, start=1):
        if char.isspace() or (char == "," and stack):
            continue
        if result is not None:
            raise ParseError("syntax", f"unexpected {char!r} after the tree", column=column)
        if char == "[":
            stack.append([])
        elif char == "]":
            if not stack:
                raise ParseError("syntax", "unbalanced ']'", column=column)
            node = tuple(stack.pop())
            if stack:
                stack[-1].append(node)
            else:
                result = node
        else:
            raise ParseError("syntax", f"unexpected {char!r} in tree literal", column=column)
    if result is None:
        raise ParseError("syntax", "unterminated or empty tree literal", column=len(text) + 1)
    return result


def format_tree(tree: Tree) -> str:
    return "[" + ",".join(format_tree(child) for child in tree) + "]"


def height(tree: Tree) -> int:
    return 1 + max(height(child) for child in tree) if tree else 0


def node_count(tree: Tree) -> int:
    return 1 + sum(node_count(child) for child in tree)


def level_counts(tree: Tree) -> Tuple[int, ...]:
    """Nodes per level, root level first: "[[[],[]]]" gives (1, 1, 2)."""
    counts, level = [], [tree]
    while level:
        counts.append(len(level))
        level = [child for node in level for child in node]
    return tuple(counts)


def truncate(tree: Tree, k: int) -> Tree:
    """Delete every node above height k."""
    if k < 0:
        raise StructuralError(f"truncation level {k} is negative")
    if k == 0:
        return LEAF
    return tuple(truncate(child, k - 1) for child in tree)


def to_levels(tree: Tree) -> Tuple[Tuple[int, ...], Tuple[Tuple[int, ...], ...]]:
    """
    The functor presentation [h]^op -> Δ of a tree.

    Returns:
        (node counts per level, parents) where parents[i][j] is the index at
        level i of the parent of node j at level i + 1; every parent map is
        monotone
    """
    counts = level_counts(tree)
    parents = []
    level = [tree]
    while True:
        children = [(i, child) for i, node in enumerate(level) for child in node]
        if not children:
            break
        parents.append(tuple(i for i, _ in children))
        level = [child for _, child in children]
    return counts, tuple(parents)


def from_levels(counts: Sequence[int], parents: Sequence[Sequence[int]]) -> Tree:
    """
    Rebuild a tree from its functor presentation.

    Raises:
        StructuralError: If level 0 is not a single node or a parent map is
            mistyped or not monotone
    """
    if not counts or counts[0] != 1:
        raise StructuralError("the root level must hold exactly one node")
    if len(parents) != len(counts) - 1:
        raise StructuralError(f"{len(counts)} levels need {len(counts) - 1} parent maps, got {len(parents)}")
    for i, parent in enumerate(parents):
        if len(parent) != counts[i + 1]:
            raise StructuralError(f"parent map {i} has {len(parent)} entries for {counts[i + 1]} nodes")
        if any(not 0 <= p < counts[i] for p in parent):
            raise StructuralError(f"parent map {i} points outside level {i}")
        if any(a > b for a, b in zip(parent, parent[1:])):
            raise StructuralError(f"parent map {i} is not monotone")
    nodes: List[Tree] = [LEAF] * counts[-1]
    for i in range(len(parents) - 1, -1, -1):
        grouped: List[List[Tree]] = [[] for _ in range(counts[i])]
        for node, p in zip(nodes, parents[i]):
            grouped[p].append(node)
        nodes = [tuple(children) for children in grouped]
    return nodes[0]


@lru_cache(maxsize=None)
def _forests(nodes: int, max_height: int) -> Tuple[Tuple[Tree, ...], ...]:
    """Ordered forests with exactly ``nodes`` nodes, every tree of height ≤ max_height."""
    if nodes == 0:
        return ((),)
    result = []
    for first in range(1, nodes + 1):
        for head in _trees(first, max_height):
            for rest in _forests(nodes - first, max_height):
                result.append((head,) + rest)
    return tuple(result)


@lru_cache(maxsize=None)
def _trees(nodes: int, max_height: int) -> Tuple[Tree, ...]:
    if nodes == 1:
        return (LEAF,)
    if max_height == 0:
        return ()
    return _forests(nodes - 1, max_height - 1)


def enumerate_trees(max_nodes: int, max_height: int) -> List[Tree]:
    """Every tree with at most max_nodes nodes and height at most max_height, by size."""
    return [tree for n in range(1, max_nodes + 1) for tree in _trees(n, max_height)]


def path_tree(m: int) -> Tree:
    """The root with m leaf children: m composable arrows."""
    return (LEAF,) * m


def chain(k: int) -> Tree:
    """The linear tree of height k, whose realization is a single k-globe."""
    tree = LEAF
    for _ in range(k):
        tree = (tree,)
    return tree
