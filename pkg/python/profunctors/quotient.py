"""
Set quotients by union-find, with canonical least-index representatives.
"""
from typing import Callable, Dict, Generic, Hashable, List, Sequence, Tuple, TypeVar

from scipy.cluster.hierarchy import DisjointSet

from utils.report import StructuralError

T = TypeVar("T", bound=Hashable)
V = TypeVar("V")


class Quotient(Generic[T]):
    """
    A finite set modulo the equivalence relation generated by merge().

    Items keep their insertion order; the representative of a class is its
    item of least index.
    """

    def __init__(self, items: Sequence[T]):
        self.items: Tuple[T, ...] = tuple(items)
        self.index: Dict[T, int] = {}
        for i, item in enumerate(self.items):
            if item in self.index:
                raise StructuralError(f"duplicate item {item!r} in quotient")
            self.index[item] = i
        self._sets = DisjointSet(range(len(self.items)))
        self._least: Dict[int, int] = {}

    def merge(self, a: T, b: T) -> None:
        self._sets.merge(self.index[a], self.index[b])
        self._least.clear()

    def _refresh(self) -> None:
        if self._least or not self.items:
            return
        for subset in self._sets.subsets():
            least = min(subset)
            for i in subset:
                self._least[i] = least

    def representative(self, item: T) -> T:
        self._refresh()
        return self.items[self._least[self.index[item]]]

    def same_class(self, a: T, b: T) -> bool:
        return self._sets.connected(self.index[a], self.index[b])

    def classes(self) -> List[List[T]]:
        """Classes ordered by representative, members in insertion order."""
        self._refresh()
        grouped: Dict[int, List[T]] = {}
        for i, item in enumerate(self.items):
            grouped.setdefault(self._least[i], []).append(item)
        return [grouped[key] for key in sorted(grouped)]

    def representatives(self) -> List[T]:
        return [members[0] for members in self.classes()]

    def descend(self, function: Callable[[T], V]) -> Tuple[Dict[T, V], List[Tuple[T, T]]]:
        """
        Evaluate function on every member of every class.

        Returns:
            (value per representative, list of (member, representative) pairs
            where the value differs from the representative's value)
        """
        values: Dict[T, V] = {}
        conflicts: List[Tuple[T, T]] = []
        for members in self.classes():
            rep = members[0]
            values[rep] = function(rep)
            for member in members[1:]:
                if function(member) != values[rep]:
                    conflicts.append((member, rep))
        return values, conflicts

    def __len__(self) -> int:
        return len(self.classes())
