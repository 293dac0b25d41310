"""
The truncated simplex category Δ_{≤n} of finite ordinals and monotone maps.

A monotone map n -> m is stored by its fiber sizes: a tuple of m
non-negative integers summing to n. Ordinal sum is the tensor; the unit is 0.
"""
from itertools import combinations_with_replacement
from typing import List, Tuple

from scipy.special import comb

from monoidal.free import FreeMorphism, FreeStrictMonoidal, compositions
from monoidal.strict import StrictMonoidalFunctor, TabulatedStrictMonCat, check_strict_functor, tabulate_strict
from multicategories.multicategory import terminal_multicategory
from utils.report import StructuralError, ValidationReport

DeltaMorphism = Tuple[int, Tuple[int, ...]]


def monotone_maps(n: int, m: int) -> List[Tuple[int, ...]]:
    """Every non-decreasing function {0..n-1} -> {0..m-1}, as value tuples."""
    return list(combinations_with_replacement(range(m), n))


def monotone_count(n: int, m: int) -> int:
    """Closed form C(n+m-1, n) for the number of monotone maps n -> m."""
    if m == 0:
        return 1 if n == 0 else 0
    return int(comb(n + m - 1, n, exact=True))


def _compose_fibers(second: Tuple[int, ...], first: Tuple[int, ...]) -> Tuple[int, ...]:
    result, start = [], 0
    for size in second:
        result.append(sum(first[start:start + size]))
        start += size
    return tuple(result)


def delta(n_max: int) -> TabulatedStrictMonCat:
    """Δ truncated at n_max; the ordinal sum is undefined past n_max."""
    if n_max < 0:
        raise StructuralError("the truncation of Δ needs n_max >= 0")
    morphisms = []
    for n in range(n_max + 1):
        for m in range(n_max + 1):
            for fibers in compositions(n, m):
                morphisms.append(((n, fibers), n, m))

    def label(f: DeltaMorphism) -> str:
        return f"{f[0]}→{len(f[1])}:" + ",".join(str(size) for size in f[1])

    return tabulate_strict(
        [str(n) for n in range(n_max + 1)],
        morphisms,
        lambda g, f: (f[0], _compose_fibers(g[1], f[1])),
        lambda n: (n, (1,) * n),
        lambda a, b: a + b if a + b <= n_max else None,
        lambda f, g: (f[0] + g[0], f[1] + g[1]),
        0,
        name=f"Δ≤{n_max}",
        morphism_names=[label(f) for f, _, _ in morphisms],
    )


def delta_morphism(D: TabulatedStrictMonCat, n: int, fibers: Tuple[int, ...]) -> int:
    """Index of the monotone map n -> len(fibers) with the given fibers."""
    return D.morphism_labels.index((n, tuple(fibers)))


def free_on_one(n_max: int) -> FreeStrictMonoidal:
    """F(R(1)) truncated so that every hom-set between ordinals ≤ n_max is available."""
    return FreeStrictMonoidal(terminal_multicategory(max(n_max, 1)), n_max)


def to_free(label: DeltaMorphism) -> FreeMorphism:
    """A monotone map becomes the split by its fibers; block j carries the arity-|fiber| arrow."""
    n, fibers = label
    return FreeMorphism((0,) * n, (0,) * len(fibers), tuple(fibers), tuple(fibers))


def from_free(f: FreeMorphism) -> DeltaMorphism:
    return (len(f.source), f.split)


def delta_iso(n_max: int) -> Tuple[TabulatedStrictMonCat, FreeStrictMonoidal, StrictMonoidalFunctor]:
    """The comparison Δ≤n_max -> F(R(1)) sending a monotone map to its fiber split."""
    D = delta(n_max)
    F = free_on_one(n_max)
    functor = StrictMonoidalFunctor(
        D,
        F,
        lambda n: (0,) * n,
        lambda f: to_free(D.morphism_labels[f]),
        name="fibers",
    )
    return D, F, functor


def check_delta_iso(n_max: int) -> ValidationReport:
    """Strict monoidal functoriality plus bijectivity on every hom-set."""
    D, F, functor = delta_iso(n_max)
    report = ValidationReport(f"Δ≤{n_max} ≅ F(R(1))")
    report.extend(check_strict_functor(functor))
    for n in range(n_max + 1):
        for m in range(n_max + 1):
            images = [functor.on_morphism(f) for f in D.hom(n, m)]
            hom = F.hom((0,) * n, (0,) * m)
            if len(set(images)) != len(images) or set(images) != set(hom):
                report.add("hom-bijection", f"Δ({n},{m}) is not mapped bijectively")
            if any(to_free(from_free(h)) != h for h in hom):
                report.add("inverse", f"fiber reading is not inverse on F(R(1))({n},{m})")
    return report


def count_table(n_max: int) -> List[Tuple[int, int, int, int, int]]:
    """Rows (n, m, |Δ(n,m)|, |F(R(1))(n,m)|, closed form) for 0 ≤ n, m ≤ n_max."""
    F = free_on_one(n_max)
    rows = []
    for n in range(n_max + 1):
        for m in range(n_max + 1):
            rows.append((n, m, len(monotone_maps(n, m)), len(F.hom((0,) * n, (0,) * m)), monotone_count(n, m)))
    return rows

