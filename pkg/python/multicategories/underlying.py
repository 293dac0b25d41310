"""
The underlying multicategory R(C) of a strict monoidal category.
"""
from itertools import product
from typing import Dict, Hashable, List, Tuple

from multicategories.multicategory import Multicategory


def underlying_multicat(C, bound: int) -> Multicategory:
    """
    R(C) truncated at source length ``bound``.

    Objects are the objects C enumerates under the bound; an arrow
    (x_1, ..., x_n) -> y is a morphism h: x_1⊗...⊗x_n -> y of C, labelled
    (xs, y, h). A source list is admitted only when its tensor exists, so
    truncated tabulated categories yield a valid truncated multicategory.
    """
    objects = list(C.iter_objects(bound))
    arrows: List[Tuple[str, Tuple[int, ...], int]] = []
    data: List[Tuple[Tuple[Hashable, ...], Hashable, Hashable]] = []
    index: Dict[Tuple, int] = {}
    tensors: Dict[Tuple[int, ...], Hashable] = {}

    for n in range(bound + 1):
        for source in product(range(len(objects)), repeat=n):
            xs = tuple(objects[i] for i in source)
            t = C.tensor_objects(xs)
            if t is None:
                continue
            tensors[source] = t
            for j, y in enumerate(objects):
                for h in C.hom(t, y):
                    index[(source, j, h)] = len(arrows)
                    label = f"{'(' + ','.join(C.object_label(x) for x in xs) + ')'}→{C.object_label(y)}:{C.morphism_label(h)}"
                    arrows.append((label, source, j))
                    data.append((xs, y, h))

    identity = [index[((i,), i, C.identity(a))] for i, a in enumerate(objects)]
    skeleton = Multicategory([C.object_label(a) for a in objects], arrows, identity, {}, bound)

    comp = {}
    for f, (name, ys, z) in enumerate(arrows):
        h_f = data[f][2]
        for gs in skeleton.input_tuples(ys, bound):
            concat = skeleton.concat_source(gs)
            if concat not in tensors:
                continue
            inner = C.tensor_morphisms([data[g][2] for g in gs])
            if inner is None:
                continue
            h = C.compose(h_f, inner)
            comp[(f, gs)] = index[(concat, z, h)]

    return Multicategory(
        skeleton.objects,
        arrows,
        identity,
        comp,
        bound,
        name=f"R({C.name})" if C.name else "R",
        allowed_sources=frozenset(tensors),
        arrow_data=data,
    )
