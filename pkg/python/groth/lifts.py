"""
Cocartesian lifts for a functor p: E -> C.

A morphism φ: e -> e' of E is cocartesian when every ψ: e -> e'' with
p(ψ) = h∘p(φ) factors as ψ = χ∘φ for exactly one χ over h. p is a
cofibration when every (f, e) with p(e) = dom f has a cocartesian lift, and
a split cofibration when lifts can be chosen closed under identities and
composition.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from tqdm import tqdm

from categories.fincat import Functor, check_functor
from config import MAX_CANDIDATES, SHOW_PROGRESS
from utils.report import StructuralError, ValidationReport

CONVENTION = "cocartesian lifts: φ over f out of a given object, universal among morphisms under it"

SPLIT = "split cofibration"
COFIBRATION = "cofibration"
NEITHER = "neither"

Lift = Tuple[int, int]


class _Stop(Exception):
    pass


@dataclass
class LiftReport:
    lifts: Dict[Lift, List[int]] = field(default_factory=dict)
    missing: List[Lift] = field(default_factory=list)
    splitting: Optional[Dict[Lift, int]] = None
    split_search_complete: bool = True
    verdict: str = NEITHER
    witnesses: List[str] = field(default_factory=list)
    closure: ValidationReport = field(default_factory=lambda: ValidationReport("cocartesian lifts compose"))

    def format(self) -> str:
        lines = [CONVENTION, f"verdict: {self.verdict}"]
        if not self.split_search_complete:
            lines.append("splitting search stopped at its candidate limit")
        lines.extend(f"  {w}" for w in self.witnesses)
        if not self.closure.is_valid:
            lines.append(self.closure.format())
        return "\n".join(lines)


def is_cocartesian(p: Functor, phi: int) -> bool:
    E, C = p.source, p.target
    e, e1 = E.source(phi), E.target(phi)
    f = p.on_morphism(phi)
    for psi in E.morphisms_from(e):
        e2 = E.target(psi)
        for h in C.hom(C.target(f), p.on_object(e2)):
            if C.compose(h, f) != p.on_morphism(psi):
                continue
            factors = [
                chi for chi in E.hom(e1, e2) if p.on_morphism(chi) == h and E.compose(chi, phi) == psi
            ]
            if len(factors) != 1:
                return False
    return True


def _find_splitting(p: Functor, lifts: Dict[Lift, List[int]], limit: int) -> Tuple[Optional[Dict[Lift, int]], bool]:
    """Backtrack over lift choices; returns (splitting or None, whether the search finished)."""
    E, C = p.source, p.target
    keys = sorted(lifts)
    chosen: Dict[Lift, int] = {}
    for (f, e) in keys:
        if C.is_identity(f):
            chosen[(f, e)] = E.identity(e)
    free = [key for key in keys if key not in chosen]
    examined = [0]

    def consistent() -> bool:
        for (f, e), phi in chosen.items():
            e1 = E.target(phi)
            for g in C.morphisms_from(C.target(f)):
                second = chosen.get((g, e1))
                whole = chosen.get((C.compose(g, f), e))
                if second is not None and whole is not None and E.compose(second, phi) != whole:
                    return False
        return True

    def assign(i: int) -> bool:
        if i == len(free):
            return True
        for phi in lifts[free[i]]:
            examined[0] += 1
            if examined[0] > limit:
                raise _Stop()
            chosen[free[i]] = phi
            if consistent() and assign(i + 1):
                return True
        del chosen[free[i]]
        return False

    try:
        if consistent() and assign(0):
            return dict(chosen), True
        return None, True
    except _Stop:
        return None, False


def check_composite_lifts(p: Functor, lifts: Dict[Lift, List[int]]) -> ValidationReport:
    """
    Check that ψ∘φ is cocartesian over g∘f whenever φ lifts f at e and ψ
    lifts g at the target of φ.
    """
    E, C = p.source, p.target
    report = ValidationReport("cocartesian lifts compose")
    for (f, e), phis in sorted(lifts.items()):
        for phi in phis:
            e1 = E.target(phi)
            for g in C.morphisms_from(C.target(f)):
                for psi in lifts.get((g, e1), []):
                    chi = E.compose(psi, phi)
                    if not is_cocartesian(p, chi):
                        report.add(
                            "composite-lift",
                            f"{E.morphism_names[psi]}∘{E.morphism_names[phi]} over "
                            f"{C.morphism_names[g]}∘{C.morphism_names[f]} is not cocartesian",
                        )
    return report


def cocartesian_lifts(p: Functor, limit: int = MAX_CANDIDATES) -> LiftReport:
    """
    Search every (f, e) for cocartesian lifts and classify p.

    Raises:
        StructuralError: If p is not a functor
    """
    if not check_functor(p).is_valid:
        raise StructuralError(f"{p.name or 'p'} is not a functor")
    E, C = p.source, p.target
    result = LiftReport()
    keys = [(f, e) for f in C.morphisms for e in E.objects if p.on_object(e) == C.source(f)]
    for f, e in tqdm(keys, desc="lifts", disable=not SHOW_PROGRESS):
        candidates = [phi for phi in E.morphisms_from(e) if p.on_morphism(phi) == f]
        found = [phi for phi in candidates if is_cocartesian(p, phi)]
        if found:
            result.lifts[(f, e)] = found
        else:
            result.missing.append((f, e))
    result.closure = check_composite_lifts(p, result.lifts)

    if result.missing:
        result.verdict = NEITHER
        result.witnesses = [
            f"no cocartesian lift of {C.morphism_names[f]} at {E.object_names[e]}" for f, e in result.missing
        ]
        return result

    result.splitting, result.split_search_complete = _find_splitting(p, result.lifts, limit)
    if result.splitting is not None:
        result.verdict = SPLIT
        result.witnesses = [
            f"{C.morphism_names[f]} at {E.object_names[e]} ↦ {E.morphism_names[phi]}"
            for (f, e), phi in sorted(result.splitting.items())
        ]
    else:
        result.verdict = COFIBRATION
        result.witnesses = [f"{len(result.lifts)} lifted pairs, no splitting closed under composition"]
    return result
