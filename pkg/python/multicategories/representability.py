"""
Universal arrows and representability of truncated multicategories.

An arrow π: xs -> t is universal when substituting it into any slot of any
source list is a bijection of hom-sets, within the truncation: for every
context (as, bs) and object y, h ↦ h∘(id, ..., π, ..., id) maps
M(as ++ (t,) ++ bs, y) bijectively onto M(as ++ xs ++ bs, y).
"""
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Tuple

from multicategories.multicategory import Multicategory, linear_core, unary_arrows
from utils.report import CoherenceError

Source = Tuple[int, ...]


def _contexts(M: Multicategory, width: int) -> List[Tuple[Source, Source]]:
    """Pairs (as, bs) that keep both the substituted and the original source admitted."""
    contexts = []
    for total in range(M.bound + 1):
        for split in range(total + 1):
            for before in product(range(M.object_count), repeat=split):
                for after in product(range(M.object_count), repeat=total - split):
                    if split + (total - split) + width <= M.bound:
                        contexts.append((before, after))
    return contexts


def is_universal(M: Multicategory, arrow: int) -> bool:
    """Slot-wise bijection test for one arrow."""
    xs, t = M.sources[arrow], M.targets[arrow]
    width = max(len(xs), 1)
    for before, after in _contexts(M, width):
        wide = before + xs + after
        narrow = before + (t,) + after
        if not (M.admits(wide) and M.admits(narrow)):
            continue
        slot = len(before)
        inputs = M.slot_identity(narrow, slot, arrow)
        for y in range(M.object_count):
            images = []
            for h in M.hom(narrow, y):
                composite = M.composite(h, inputs)
                if composite is None:
                    return False
                images.append(composite)
            if len(set(images)) != len(images) or set(images) != set(M.hom(wide, y)):
                return False
    return True


def universal_arrows(M: Multicategory) -> Dict[Source, List[int]]:
    """Universal arrows grouped by source list, over every admitted source."""
    result: Dict[Source, List[int]] = {}
    for source in M.source_lists():
        result[source] = [a for y in range(M.object_count) for a in M.hom(source, y) if is_universal(M, a)]
        result[source].sort()
    return result


@dataclass
class Representability:
    """Outcome of is_representable."""

    representable: bool
    chosen: Dict[Source, int] = field(default_factory=dict)
    missing: List[Source] = field(default_factory=list)
    closure_failures: List[Tuple[int, Tuple[int, ...]]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.representable


def is_representable(M: Multicategory) -> Representability:
    """
    Every admitted source list needs a universal arrow (the least index is
    chosen), and composites of universal arrows must be universal.
    """
    universals = universal_arrows(M)
    result = Representability(True)
    for source, arrows in universals.items():
        if arrows:
            result.chosen[source] = arrows[0]
        else:
            result.missing.append(source)
    universal_set = {a for arrows in universals.values() for a in arrows}
    for (f, gs), h in sorted(M.comp.items()):
        if f in universal_set and all(g in universal_set for g in gs) and h not in universal_set:
            result.closure_failures.append((f, gs))
    result.representable = not result.missing and not result.closure_failures
    return result


@dataclass
class InducedTensor:
    """
    The monoidal structure a representable multicategory induces on its
    linear core. Morphism values are indices of core morphisms.
    """

    tensor: Dict[Tuple[int, int], int]
    unit: int
    morphism_tensor: Dict[Tuple[int, int], int]
    associator: Dict[Tuple[int, int, int], int]
    left_unitor: Dict[int, int]
    right_unitor: Dict[int, int]


def _factor(M: Multicategory, through: int, target_arrow: int) -> Optional[int]:
    """The unique unary u with u∘(through) = target_arrow, if any."""
    for u in M.hom((M.targets[through],), M.targets[target_arrow]):
        if M.composite(u, (through,)) == target_arrow:
            return u
    return None


def induced_tensor(M: Multicategory, representability: Optional[Representability] = None) -> InducedTensor:
    """
    Tensor, unit, associator and unitors induced by the chosen universal arrows.

    Raises:
        CoherenceError: If M is not representable or its bound is below 3
    """
    result = representability if representability is not None else is_representable(M)
    if not result.representable:
        raise CoherenceError("induced tensor needs a representable multicategory")
    if M.bound < 3:
        raise CoherenceError("induced associators need source lists of length 3")
    core = linear_core(M)
    unary = unary_arrows(M)
    core_index = {a: i for i, a in enumerate(unary)}
    pi = result.chosen
    objects = range(M.object_count)
    tensor = {(x, y): M.targets[pi[(x, y)]] for x in objects for y in objects}
    unit = M.targets[pi[()]]

    def factor(through: int, target_arrow: int) -> int:
        u = _factor(M, through, target_arrow)
        if u is None:
            raise CoherenceError(f"{M.arrow_names[target_arrow]} does not factor through {M.arrow_names[through]}")
        return core_index[u]

    morphism_tensor = {}
    for f in core.morphisms:
        for g in core.morphisms:
            a, b = unary[f], unary[g]
            x, y = M.sources[a][0], M.sources[b][0]
            target_pi = pi[(M.targets[a], M.targets[b])]
            morphism_tensor[(f, g)] = factor(pi[(x, y)], M.compose(target_pi, (a, b)))

    associator = {}
    for x, y, z in product(objects, repeat=3):
        ids = lambda *vs: tuple(M.identities[v] for v in vs)
        left = M.compose(pi[(tensor[(x, y)], z)], (pi[(x, y)],) + ids(z))
        right = M.compose(pi[(x, tensor[(y, z)])], ids(x) + (pi[(y, z)],))
        associator[(x, y, z)] = factor(left, right)

    left_unitor, right_unitor = {}, {}
    for x in objects:
        through = M.compose(pi[(unit, x)], (pi[()], M.identities[x]))
        left_unitor[x] = factor(through, M.identities[x])
        through = M.compose(pi[(x, unit)], (M.identities[x], pi[()]))
        right_unitor[x] = factor(through, M.identities[x])
    return InducedTensor(tensor, unit, morphism_tensor, associator, left_unitor, right_unitor)


def induced_monoidal(M: Multicategory, induced: Optional[InducedTensor] = None):
    """The induced structure packaged as a MonoidalCategory on linear_core(M)."""
    from monoidal.weak import monoidal_from_tables

    induced = induced if induced is not None else induced_tensor(M)
    return monoidal_from_tables(
        linear_core(M),
        induced.tensor,
        induced.morphism_tensor,
        induced.unit,
        induced.associator,
        induced.left_unitor,
        induced.right_unitor,
        name=f"⊗({M.name})" if M.name else "",
    )
