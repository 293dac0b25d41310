"""
The free-monoid (list) monad on finite sets, truncated by a length bound.
"""
from collections import Counter
from itertools import product
from typing import Callable, Hashable, Iterator, Mapping, Sequence, Tuple

from utils.report import ValidationReport


class ListMonad:
    """
    T X = finite lists over X, η = singleton, μ = concatenation.

    Every enumeration is capped by ``bound``: lists, lists of lists and lists
    of lists of lists are produced only while their total number of leaves
    and every outer length stay within the bound.
    """

    def __init__(self, bound: int):
        if bound < 0:
            raise ValueError("list bound must be non-negative")
        self.bound = bound

    @staticmethod
    def unit(x: Hashable) -> Tuple:
        return (x,)

    @staticmethod
    def mult(xss: Sequence[Sequence]) -> Tuple:
        return tuple(x for xs in xss for x in xs)

    @staticmethod
    def fmap(f: Callable, xs: Sequence) -> Tuple:
        return tuple(f(x) for x in xs)

    def lists(self, elements: Sequence[Hashable], max_length=None) -> Iterator[Tuple]:
        """Lists over elements ordered by length, then lexicographically."""
        cap = self.bound if max_length is None else max_length
        for n in range(cap + 1):
            yield from product(elements, repeat=n)

    def nested(self, elements: Sequence[Hashable], depth: int, budget=None) -> Iterator[Tuple]:
        """Elements of T^depth X with at most budget leaves (default: the bound)."""
        budget = self.bound if budget is None else budget
        if depth == 0:
            yield from elements
            return
        if depth == 1:
            yield from self.lists(elements, budget)
            return

        def rows(remaining: int, slots: int) -> Iterator[Tuple]:
            yield ()
            if slots == 0:
                return
            for head in self.nested(elements, depth - 1, remaining):
                used = _leaves(head, depth - 1)
                for tail in rows(remaining - used, slots - 1):
                    yield (head,) + tail

        yield from rows(budget, self.bound)


def _leaves(value, depth: int) -> int:
    if depth == 0:
        return 1
    return sum(_leaves(v, depth - 1) for v in value)


def check_list_monad(monad: ListMonad, elements: Sequence[Hashable]) -> ValidationReport:
    """Monad laws of (T, η, μ) on every enumerated list."""
    report = ValidationReport(f"list monad (bound {monad.bound})")
    for xs in monad.lists(elements):
        if monad.mult(monad.unit(xs)) != xs:
            report.add("left-unit", f"μ∘ηT fails on {xs}")
        if monad.mult(monad.fmap(monad.unit, xs)) != xs:
            report.add("right-unit", f"μ∘Tη fails on {xs}")
    for xsss in monad.nested(elements, 3):
        left = monad.mult(monad.mult(xsss))
        right = monad.mult(monad.fmap(monad.mult, xsss))
        if left != right:
            report.add("associativity", f"μ∘μT ≠ μ∘Tμ on {xsss}")
    return report


def check_naturality(monad: ListMonad, f: Mapping, domain: Sequence[Hashable]) -> ValidationReport:
    """Naturality of η and μ along a function f: A -> B."""
    report = ValidationReport("list monad naturality")
    apply = f.__getitem__
    for x in domain:
        if monad.fmap(apply, monad.unit(x)) != monad.unit(apply(x)):
            report.add("unit-naturality", f"at {x!r}")
    for xss in monad.nested(domain, 2):
        if monad.fmap(apply, monad.mult(xss)) != monad.mult(monad.fmap(lambda xs: monad.fmap(apply, xs), xss)):
            report.add("mult-naturality", f"at {xss}")
    return report


def check_cartesian(monad: ListMonad, f: Mapping, domain: Sequence[Hashable], codomain: Sequence[Hashable]) -> ValidationReport:
    """
    Check that the naturality squares of η and μ along f are pullbacks.

    For every pair in the pullback of the bottom and right edges the number of
    elements of the top-left corner mapping to it must be exactly one.
    """
    report = ValidationReport("list monad cartesianness")
    apply = f.__getitem__

    corner = Counter((apply(a), monad.unit(a)) for a in domain)
    for b in codomain:
        for xs in monad.lists(domain):
            if monad.unit(b) == monad.fmap(apply, xs) and corner[(b, xs)] != 1:
                report.add("unit-pullback", f"pair ({b!r}, {xs}) has {corner[(b, xs)]} preimages")

    fmap2 = lambda xss: monad.fmap(lambda xs: monad.fmap(apply, xs), xss)
    corner = Counter((fmap2(xss), monad.mult(xss)) for xss in monad.nested(domain, 2))
    for yss in monad.nested(codomain, 2):
        target = monad.mult(yss)
        for xs in monad.lists(domain, len(target)):
            if monad.fmap(apply, xs) == target and corner[(yss, xs)] != 1:
                report.add("mult-pullback", f"pair ({yss}, {xs}) has {corner[(yss, xs)]} preimages")
    return report
