"""
Strictification of a monoidal category through its representable multicategory.

Words of objects are interpreted left-bracketed: ⟦⟨⟩⟧ = I, ⟦⟨x⟩⟧ = x and
⟦xs ++ ⟨x⟩⟧ = ⟦xs⟧⊗x. The merge isomorphisms ⟦a⟧⊗⟦b⟧ -> ⟦a ++ b⟧ are built
from α⁻¹, λ and ρ and mediate every composite below.

C^σ has words as objects and C(⟦xs⟧, ⟦ys⟧) as hom-sets; concatenation is a
strict tensor. Its hom-sets into singleton words are the multiarrows of the
multicategory of C, and x ↦ ⟨x⟩ is a strong monoidal equivalence C -> C^σ.
"""
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator, Optional, Sequence, Tuple

from categories.equivalence import EquivalenceResult, equivalence_check
from config import STRICTIFY_BOUND
from monoidal.strict import StrictMonCat, check_strict_monoidal
from monoidal.weak import LaxMonoidalFunctor, MonoidalCategory, check_lax_functor, check_monoidal
from multicategories.multicategory import Multicategory
from utils.report import CoherenceError, StructuralError, ValidationReport

Word = Tuple[int, ...]
SigmaMorphism = Tuple[Word, Word, int]


class Coherence:
    """Bracketing, merge and normalization isomorphisms of a monoidal category."""

    def __init__(self, C: MonoidalCategory):
        self.C = C
        self.bracket = lru_cache(maxsize=None)(self._bracket)
        self.merge = lru_cache(maxsize=None)(self._merge)
        self.inverse = lru_cache(maxsize=None)(self._inverse)

    def _inverse(self, f: int) -> int:
        g = self.C.inverse(f)
        if g is None:
            raise CoherenceError(f"{self.C.morphism_label(f)} is not invertible")
        return g

    def _bracket(self, xs: Word) -> int:
        if not xs:
            return self.C.unit_object
        if len(xs) == 1:
            return xs[0]
        return self.C.tensor_obj(self.bracket(xs[:-1]), xs[-1])

    def _merge(self, a: Word, b: Word) -> int:
        """⟦a⟧⊗⟦b⟧ -> ⟦a ++ b⟧."""
        C = self.C
        if not b:
            return C.right_unitor(self.bracket(a))
        if not a:
            return C.left_unitor(self.bracket(b))
        if len(b) == 1:
            return C.identity(self.bracket(a + b))
        head, y = b[:-1], b[-1]
        reassociate = self.inverse(C.associator(self.bracket(a), self.bracket(head), y))
        return C.compose(C.tensor_mor(self.merge(a, head), C.identity(y)), reassociate)

    def normalize(self, words: Sequence[Word]) -> int:
        """⟦⟨⟦w_1⟧, ..., ⟦w_n⟧⟩⟧ -> ⟦w_1 ++ ... ++ w_n⟧."""
        C = self.C
        words = [tuple(w) for w in words]
        if not words:
            return C.identity(C.unit_object)
        if len(words) == 1:
            return C.identity(self.bracket(words[0]))
        head = words[:-1]
        prefix = tuple(x for w in head for x in w)
        inner = C.tensor_mor(self.normalize(head), C.identity(self.bracket(words[-1])))
        return C.compose(self.merge(prefix, words[-1]), inner)

    def tensor_left(self, morphisms: Sequence[int]) -> int:
        """Left-bracketed tensor of morphisms; the empty tensor is id_I."""
        C = self.C
        if not morphisms:
            return C.identity(C.unit_object)
        result = morphisms[0]
        for f in morphisms[1:]:
            result = C.tensor_mor(result, f)
        return result


def multicategory_of(C: MonoidalCategory, bound: int, coherence: Optional[Coherence] = None) -> Multicategory:
    """
    Arrows xs -> y are C-morphisms ⟦xs⟧ -> y, labelled (xs, y, h); composition
    is h_f ∘ (h_1 ⊗ ... ⊗ h_n) ∘ normalize⁻¹.
    """
    K = coherence or Coherence(C)
    n = C.base.object_count
    arrows, data, index = [], [], {}
    for k in range(bound + 1):
        for xs in product(range(n), repeat=k):
            for y in range(n):
                for h in C.hom(K.bracket(xs), y):
                    index[(xs, y, h)] = len(arrows)
                    label = "(" + ",".join(C.object_label(x) for x in xs) + f")→{C.object_label(y)}:{C.morphism_label(h)}"
                    arrows.append((label, xs, y))
                    data.append((xs, y, h))
    identity = [index[((x,), x, C.identity(x))] for x in range(n)]
    skeleton = Multicategory(C.object_names, arrows, identity, {}, bound)
    comp = {}
    for f, (xs_f, z, h_f) in enumerate(data):
        for gs in skeleton.input_tuples(xs_f, bound):
            words = [data[g][0] for g in gs]
            spread = K.tensor_left([data[g][2] for g in gs])
            h = C.compose(h_f, C.compose(spread, K.inverse(K.normalize(words))))
            comp[(f, gs)] = index[(skeleton.concat_source(gs), z, h)]
    return Multicategory(C.object_names, arrows, identity, comp, bound, name=f"Mult({C.name})", arrow_data=data)


class StrictifiedCategory(StrictMonCat):
    """C^σ: words of objects, C(⟦xs⟧, ⟦ys⟧) as homs, concatenation as tensor."""

    def __init__(self, C: MonoidalCategory, bound: int = STRICTIFY_BOUND, coherence: Optional[Coherence] = None):
        self.C = C
        self.K = coherence or Coherence(C)
        self.bound = bound
        self.name = f"{C.name}^σ"

    def iter_objects(self, bound: Optional[int] = None) -> Iterator[Word]:
        limit = self.bound if bound is None else bound
        for k in range(limit + 1):
            yield from product(range(self.C.base.object_count), repeat=k)

    def objects_exhausted(self, bound: Optional[int] = None) -> bool:
        return self.C.base.object_count == 0

    def hom(self, xs: Sequence[int], ys: Sequence[int]) -> Tuple[SigmaMorphism, ...]:
        xs, ys = tuple(xs), tuple(ys)
        return tuple((xs, ys, h) for h in self.C.hom(self.K.bracket(xs), self.K.bracket(ys)))

    def compose(self, g: SigmaMorphism, f: SigmaMorphism) -> SigmaMorphism:
        if f[1] != g[0]:
            raise StructuralError(f"{self.morphism_label(g)}∘{self.morphism_label(f)} is not composable")
        return (f[0], g[1], self.C.compose(g[2], f[2]))

    def identity(self, xs: Sequence[int]) -> SigmaMorphism:
        xs = tuple(xs)
        return (xs, xs, self.C.identity(self.K.bracket(xs)))

    def source(self, f: SigmaMorphism) -> Word:
        return f[0]

    def target(self, f: SigmaMorphism) -> Word:
        return f[1]

    def inverse(self, f: SigmaMorphism) -> Optional[SigmaMorphism]:
        g = self.C.inverse(f[2])
        return None if g is None else (f[1], f[0], g)

    def tensor_obj(self, xs: Sequence[int], ys: Sequence[int]) -> Word:
        return tuple(xs) + tuple(ys)

    def tensor_mor(self, f: SigmaMorphism, g: SigmaMorphism) -> SigmaMorphism:
        C, K = self.C, self.K
        h = C.compose(K.merge(f[1], g[1]), C.compose(C.tensor_mor(f[2], g[2]), K.inverse(K.merge(f[0], g[0]))))
        return (f[0] + g[0], f[1] + g[1], h)

    @property
    def unit_object(self) -> Word:
        return ()

    def object_label(self, xs: Sequence[int]) -> str:
        return "⟨" + ",".join(self.C.object_label(x) for x in xs) + "⟩"

    def morphism_label(self, f: SigmaMorphism) -> str:
        return f"{self.object_label(f[0])}→{self.object_label(f[1])}:{self.C.morphism_label(f[2])}"


def comparison_functor(C: MonoidalCategory, S: StrictifiedCategory) -> LaxMonoidalFunctor:
    """x ↦ ⟨x⟩ with identity constraints ⟨x, y⟩ -> ⟨x⊗y⟩ and ⟨⟩ -> ⟨I⟩."""
    I = C.unit_object
    return LaxMonoidalFunctor(
        C,
        S,
        lambda x: (x,),
        lambda f: ((C.source(f),), (C.target(f),), f),
        lambda x, y: ((x, y), (C.tensor_obj(x, y),), C.identity(C.tensor_obj(x, y))),
        ((), (I,), C.identity(I)),
        name="⟨-⟩",
    )


def check_multicategory_agreement(S: StrictifiedCategory, M: Multicategory) -> ValidationReport:
    """C^σ(xs, ⟨y⟩) is the multiarrow set M(xs, y), and multicomposition is composition in C^σ."""
    report = ValidationReport(f"{S.name} against {M.name}")
    for xs in M.source_lists():
        for y in range(M.object_count):
            arrows = {M.arrow_data[a][2] for a in M.hom(xs, y)}
            homs = {h for _, _, h in S.hom(xs, (y,))}
            if arrows != homs:
                report.add("hom-agreement", f"{S.object_label(xs)} -> ⟨{M.objects[y]}⟩ differs")

    def single(a: int) -> SigmaMorphism:
        xs, y, h = M.arrow_data[a]
        return (xs, (y,), h)

    for (f, gs), h in sorted(M.comp.items()):
        inner = S.identity(())
        for g in gs:
            inner = S.tensor_mor(inner, single(g))
        if S.compose(single(f), inner) != single(h):
            report.add("composition-agreement", f"composite {M.arrow_names[h]} differs from composition in {S.name}")
    return report


@dataclass
class StrictificationResult:
    strict: StrictifiedCategory
    comparison: LaxMonoidalFunctor
    multicategory: Multicategory
    equivalence: EquivalenceResult
    strict_report: ValidationReport
    comparison_report: ValidationReport
    agreement_report: ValidationReport

    @property
    def certified(self) -> bool:
        return (
            self.equivalence.is_equivalence
            and self.strict_report.is_valid
            and self.comparison_report.is_valid
            and self.agreement_report.is_valid
        )


def strictify(C: MonoidalCategory, bound: int = STRICTIFY_BOUND, check_bound: int = 2, multicategory_bound: int = 3) -> StrictificationResult:
    """
    Build C^σ with its comparison functor and certify it.

    Args:
        C: A coherent monoidal category
        bound: Word-length bound for the equivalence certificate
        check_bound: Word-length bound for the strict monoidal law suite
        multicategory_bound: Source-length bound for the multicategory of C

    Raises:
        CoherenceError: If C fails check_monoidal
    """
    report = check_monoidal(C)
    if not report.is_valid:
        raise CoherenceError(f"{C.name} is not a coherent monoidal category:\n{report.format()}")
    K = Coherence(C)
    S = StrictifiedCategory(C, bound, K)
    M = multicategory_of(C, multicategory_bound, K)
    E = comparison_functor(C, S)
    strict_report = check_strict_monoidal(S, check_bound)
    strict_report.subject += f" laws (words ≤ {check_bound})"
    return StrictificationResult(
        strict=S,
        comparison=E,
        multicategory=M,
        equivalence=equivalence_check(E, bound),
        strict_report=strict_report,
        comparison_report=check_lax_functor(E, strong=True),
        agreement_report=check_multicategory_agreement(S, M),
    )
