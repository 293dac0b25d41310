"""
Monoids in a truncated monoidal globular ambient.

Level k of an n-truncated ambient carries tensors ⊗_0, ..., ⊗_{k-1}, each a
strict monoidal structure on the same underlying category, with strict
interchange between them. A globular monoid picks an object M_k per level,
compatible with the boundary maps, and for every tensor ⊗_i of level k a
unit ι: I_i -> M_k and a multiplication μ: M_k ⊗_i M_k -> M_k.
"""
from dataclasses import dataclass, field
from typing import Callable, Dict, Hashable, List, Sequence, Tuple

from monoidal.monoids import MonoidInC, check_monoid
from monoidal.strict import StrictMonCat, check_strict_monoidal
from utils.report import StructuralError, ValidationReport


@dataclass
class GlobularAmbient:
    """levels[k] lists the k strict monoidal structures ⊗_0 ... ⊗_{k-1} on level k."""

    levels: List[List[StrictMonCat]]
    source: Dict[int, Callable[[Hashable], Hashable]] = field(default_factory=dict)
    target: Dict[int, Callable[[Hashable], Hashable]] = field(default_factory=dict)
    name: str = ""

    @property
    def dimension(self) -> int:
        return len(self.levels) - 1


@dataclass
class GlobularMonoid:
    carriers: List[Hashable]
    units: Dict[Tuple[int, int], Hashable]
    mults: Dict[Tuple[int, int], Hashable]


def constant_ambient(C: StrictMonCat, n: int) -> GlobularAmbient:
    """Every level is C, every tensor is ⊗, every boundary map is the identity."""
    return GlobularAmbient(
        [[C] * k for k in range(n + 1)],
        {k: (lambda a: a) for k in range(1, n + 1)},
        {k: (lambda a: a) for k in range(1, n + 1)},
        name=f"const({C.name}, {n})",
    )


def constant_monoid(monoid: MonoidInC, n: int) -> GlobularMonoid:
    return GlobularMonoid(
        [monoid.carrier] * (n + 1),
        {(k, i): monoid.unit for k in range(n + 1) for i in range(k)},
        {(k, i): monoid.mult for k in range(n + 1) for i in range(k)},
    )


def check_globular_monoid(ambient: GlobularAmbient, M: GlobularMonoid, bound: int = 2) -> ValidationReport:
    """
    Monoid laws for every (level, tensor) pair, then the two interchange
    equations μ_j∘(μ_i ⊗_j μ_i) = μ_i∘(μ_j ⊗_i μ_j) and
    μ_i∘(ι_j ⊗_i ι_j) = ι_j for i < j.

    Raises:
        StructuralError: On missing data or boundary incompatibility
    """
    n = ambient.dimension
    if len(M.carriers) != n + 1:
        raise StructuralError(f"{len(M.carriers)} carriers for an ambient of dimension {n}")
    for k in range(1, n + 1):
        for ends, maps in (("source", ambient.source), ("target", ambient.target)):
            if maps[k](M.carriers[k]) != M.carriers[k - 1]:
                raise StructuralError(f"the {ends} of the level-{k} carrier is not the level-{k - 1} carrier")
    for k, tensors in enumerate(ambient.levels):
        for i in range(len(tensors)):
            if (k, i) not in M.units or (k, i) not in M.mults:
                raise StructuralError(f"no unit or multiplication for ⊗_{i} at level {k}")

    report = ValidationReport(f"globular monoid in {ambient.name}".strip())
    for k, tensors in enumerate(ambient.levels):
        for i, C in enumerate(tensors):
            report.extend(check_strict_monoidal(C, bound), prefix=f"level {k} ⊗_{i} ambient: ")
            monoid = MonoidInC(M.carriers[k], M.units[(k, i)], M.mults[(k, i)])
            report.extend(check_monoid(C, monoid), prefix=f"level {k} ⊗_{i}: ")
    if not report.is_valid:
        return report

    for k, tensors in enumerate(ambient.levels):
        for j in range(len(tensors)):
            for i in range(j):
                _interchange(report, k, tensors[i], tensors[j], M, i, j)
    return report


def _interchange(report: ValidationReport, k: int, Ti: StrictMonCat, Tj: StrictMonCat, M: GlobularMonoid, i: int, j: int) -> None:
    X = M.carriers[k]
    mu_i, mu_j = M.mults[(k, i)], M.mults[(k, j)]
    iota_j = M.units[(k, j)]
    where = f"level {k}, ⊗_{i}/⊗_{j}"

    XiX, XjX = Ti.tensor_obj(X, X), Tj.tensor_obj(X, X)
    four = Tj.tensor_obj(XiX, XiX)
    if four is None:
        report.add("bound", f"{where}: the four-fold tensor of the carrier is outside the truncation")
    elif four != Ti.tensor_obj(XjX, XjX):
        report.add("interchange-object", f"{where}: (X⊗_iX)⊗_j(X⊗_iX) ≠ (X⊗_jX)⊗_i(X⊗_jX)")
    else:
        lhs = Tj.compose(mu_j, Tj.tensor_mor(mu_i, mu_i))
        rhs = Ti.compose(mu_i, Ti.tensor_mor(mu_j, mu_j))
        if lhs != rhs:
            report.add("interchange", f"{where}: μ_j∘(μ_i⊗_jμ_i) ≠ μ_i∘(μ_j⊗_iμ_j)")

    Ij = Tj.unit_object
    if Ti.tensor_obj(Ij, Ij) != Ij:
        report.add("interchange-object", f"{where}: I_j⊗_iI_j ≠ I_j")
    elif Ti.compose(mu_i, Ti.tensor_mor(iota_j, iota_j)) != iota_j:
        report.add("unit-interchange", f"{where}: μ_i∘(ι_j⊗_iι_j) ≠ ι_j")


def monoids_of_constant_ambient(C: StrictMonCat, candidates: Sequence[MonoidInC], n: int) -> List[MonoidInC]:
    """The candidates whose constant family is a globular monoid in const(C, n)."""
    ambient = constant_ambient(C, n)
    return [m for m in candidates if check_globular_monoid(ambient, constant_monoid(m, n)).is_valid]
