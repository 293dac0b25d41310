"""
catkit: batch checks and constructions over catkit documents.

Usage:
    python catkit.py validate arrow.cat [--random N] [--seed S]
    python catkit.py compose-prof FILE P Q
    python catkit.py kleisli [FILE]
    python catkit.py free-monoidal FILE [--bound L]
    python catkit.py classify-lax FILE [--bound L]
    python catkit.py delta [--max N]
    python catkit.py monoids [FILE] [--bound L]
    python catkit.py strictify FILE [--bound L]
    python catkit.py tree realize|compose|graft|check ...
    python catkit.py groth build|representable|lifts [FILE] [--random N] [--seed S]

Exit status: 0 when every check passes, 1 on a law violation, 2 on a
structural, parse or bound error.
"""
import argparse
import os
import sys
from pathlib import Path
from typing import List, Optional, Sequence

sys.path.insert(0, os.path.dirname(__file__))

import pandas as pd

from categories.equivalence import is_isomorphism_functor
from categories.fincat import check_category, check_functor
from config import (
    DEFAULT_BOUND,
    DEFAULT_SEED,
    DELTA_MAX,
    RANDOM_BUNDLE_COUNT,
    RANDOM_FUNCTOR_PAIR_COUNT,
    STRICTIFY_BOUND,
    TREE_MAX_HEIGHT,
    TREE_MAX_NODES,
)
from data_processing.corpus import constant_top_monad, functor_pairs, lax_bundles, monad_corpus, profunctor_triples
from data_processing.document_loader import DocumentLoader, category_section, document_of, profunctor_section
from globular.calculus import check_tree_calculus, compose_k
from globular.grafting import check_labelling, graft, graft_order_independent
from globular.realization import check_globular, direct_counts, realize
from globular.trees import enumerate_trees, format_tree, level_counts, parse_tree
from groth.grothendieck import grothendieck
from groth.lax_bundle import check_lax_bundle
from groth.lifts import cocartesian_lifts
from groth.representable import check_pseudo_coherence, is_representable_lax
from monoidal.classification import classify_lax_morphisms
from monoidal.delta import delta, free_on_one, monotone_count, monotone_maps
from monoidal.free import check_free_unit, free_strict_monoidal
from monoidal.monoids import classify_monoids
from monoidal.strict import check_strict_monoidal, discrete_group_strict, hom_size_table, terminal_strict
from monoidal.strictify import strictify
from monoidal.weak import check_monoidal
from multicategories.bimodules import check_list_prof_monad, roundtrip_is_identity, to_prof_monad
from multicategories.multicategory import check_multicategory
from multicategories.representability import is_representable
from profunctors.monad import check_prof_monad, hom_monad, kleisli, kleisli_agreement, kleisli_reconstruction
from profunctors.profunctor import (
    associator,
    check_profunctor,
    comma_comparison,
    compose,
    is_isomorphism,
    left_unitor,
    right_unitor,
)
from utils.catkit_parser import Section, print_document
from utils.report import BoundExceededError, CoherenceError, ParseError, StructuralError, ValidationReport

EXIT_OK = 0
EXIT_LAW = 1
EXIT_STRUCTURAL = 2


def banner(title: str) -> None:
    print("=" * 70)
    print(title)
    print("=" * 70)


def status(report: ValidationReport) -> bool:
    """Print one ✓/✗ line for a report, plus its violations."""
    if report.is_valid:
        print(f"✓ {report.subject}")
    else:
        print(f"✗ {report.format()}")
    return report.is_valid


def load(file_name: str) -> tuple:
    document = DocumentLoader.load_document(Path(file_name))
    return document, DocumentLoader.build(document)


def section_report(section: Section, value: object, bound: int) -> ValidationReport:
    kind = section.kind
    if kind == "category":
        report = check_category(value)
    elif kind == "functor":
        report = check_functor(value)
    elif kind == "profunctor":
        report = check_profunctor(value)
    elif kind == "multicategory":
        report = check_multicategory(value)
    elif kind == "monoidal":
        report = check_monoidal(value)
    elif kind == "strictmonoidal":
        report = check_strict_monoidal(value, bound)
    elif kind == "laxbundle":
        report = check_lax_bundle(value)
    elif kind == "tree":
        report = check_globular(realize(value))
    else:
        report = check_labelling(value)
    report.subject = f"{kind} {section.name}"
    return report


def random_calculus(count: int, seed: int) -> List[ValidationReport]:
    """Unitors, associators and comma comparisons on the seeded corpora."""
    units = ValidationReport(f"unitors on {count} random profunctors")
    assoc = ValidationReport(f"associators on {count} random triples")
    for i, (P, Q, R) in enumerate(profunctor_triples(count, seed)):
        for side, phi in (("left", left_unitor(P)), ("right", right_unitor(P))):
            if not is_isomorphism(phi):
                units.add(f"{side}-unitor", f"triple {i}")
        if not is_isomorphism(associator(P, Q, R)):
            assoc.add("associator", f"triple {i}")
    pairs = min(count, RANDOM_FUNCTOR_PAIR_COUNT)
    comma = ValidationReport(f"comma comparisons on {pairs} functor pairs")
    for i, (f, g) in enumerate(functor_pairs(pairs, seed)):
        if not is_isomorphism(comma_comparison(f, g)):
            comma.add("comma-comparison", f"pair {i}")
    return [units, assoc, comma]


def finish(reports: Sequence[ValidationReport]) -> int:
    failed = sum(1 for r in reports if not r.is_valid)
    print()
    if failed:
        print(f"✗ {failed} of {len(reports)} checks failed")
        return EXIT_LAW
    print(f"✓ All {len(reports)} checks passed")
    return EXIT_OK


def cmd_validate(args) -> int:
    banner(f"Validating {Path(args.file).name}")
    document, built = load(args.file)
    reports = []
    for section in document.sections:
        report = section_report(section, built[section.name], args.bound)
        status(report)
        reports.append(report)
    if args.random:
        print(f"\nRandom bimodule calculus (seed {args.seed})")
        for report in random_calculus(args.random, args.seed):
            status(report)
            reports.append(report)
    return finish(reports)


def cmd_compose_prof(args) -> int:
    document, built = load(args.file)
    kinds = {s.name: s.kind for s in document.sections}
    if any(kinds.get(name) != "profunctor" for name in (args.left, args.right)):
        raise StructuralError(f"{args.left} and {args.right} must both be profunctors")
    P, Q = built[args.left], built[args.right]
    banner(f"{args.left} • {args.right}")
    composite = compose(P, Q)
    source = document.section(args.left).value("source")
    target = document.section(args.right).value("target")
    name = f"{args.left}-{args.right}"
    print(print_document(document_of([profunctor_section(composite, source, target, name)])))
    reports = [check_profunctor(composite)]
    reports[0].subject = f"profunctor {name}"
    for title, phi in (("left unitor", left_unitor(composite)), ("right unitor", right_unitor(composite))):
        report = ValidationReport(title)
        if not is_isomorphism(phi):
            report.add(title.replace(" ", "-"), "not an isomorphism")
        reports.append(report)
    for report in reports:
        status(report)
    return finish(reports)


def cmd_kleisli(args) -> int:
    if args.file:
        document, built = load(args.file)
        monads = [hom_monad(built[s.name]) for s in document.of_kind("category")]
    else:
        monads = monad_corpus()
    banner("Kleisli categories")
    rows, reports = [], []
    for monad in monads:
        report = check_prof_monad(monad)
        report.subject = f"monad {monad.name}"
        if report.is_valid:
            K, J = kleisli(monad)
            if not is_isomorphism(kleisli_reconstruction(monad, K, J)):
                report.add("reconstruction", "J_#•J^* is not isomorphic to the carrier")
            rows.append({"monad": monad.name, "objects": K.object_count, "morphisms": K.morphism_count,
                         "reconstruction": "✓" if report.is_valid else "✗"})
        reports.append(report)
    if rows:
        print(pd.DataFrame(rows).to_string(index=False))
        print()
    if not args.file:
        agreement = ValidationReport("kleisli of t agrees with kleisli of t^*")
        if not is_isomorphism_functor(kleisli_agreement(*constant_top_monad())):
            agreement.add("kleisli-agreement", "the comparison functor is not an isomorphism")
        reports.append(agreement)
    for report in reports:
        status(report)
    return finish(reports)


def cmd_free_monoidal(args) -> int:
    document, built = load(args.file)
    reports = []
    for section in document.of_kind("multicategory"):
        M = built[section.name]
        bound = args.bound if args.bound is not None else M.bound
        F = free_strict_monoidal(M, bound)
        banner(f"{F.name} up to length {bound}")
        objects = list(F.iter_objects(min(bound, M.bound)))
        labels = [F.object_label(xs) for xs in objects]
        print(pd.DataFrame(hom_size_table(F, objects), index=labels, columns=labels).to_string())
        representability = is_representable(M)
        if representability:
            print(f"{M.name} is representable")
        else:
            print(f"{M.name} is not representable: {len(representability.missing)} source list(s) without a universal arrow")
        print()
        report = check_free_unit(F)
        roundtrip = ValidationReport(f"profunctor-monad roundtrip of {M.name}")
        monad = to_prof_monad(M)
        roundtrip.extend(check_list_prof_monad(monad))
        if roundtrip.is_valid and not roundtrip_is_identity(M):
            roundtrip.add("roundtrip", "from_prof_monad(to_prof_monad(M)) is not M")
        for r in (report, roundtrip):
            status(r)
            reports.append(r)
    return finish(reports)


def cmd_classify_lax(args) -> int:
    document, built = load(args.file)
    reports = []
    for m_section in document.of_kind("multicategory"):
        for d_section in document.of_kind("strictmonoidal"):
            M, D = built[m_section.name], built[d_section.name]
            banner(f"Lax morphisms {m_section.name} -> R({d_section.name})")
            result = classify_lax_morphisms(M, D, args.bound)
            if result.partial:
                raise BoundExceededError(f"classification of {m_section.name} into {d_section.name} stopped at the candidate limit")
            print(f"  multicategory morphisms M -> R(D): {len(result.left)}")
            print(f"  strict monoidal functors F(M) -> D: {len(result.right)}")
            report = ValidationReport(f"classification {m_section.name} / {d_section.name}")
            if not result.images_agree:
                report.add("images", "the two enumerations disagree")
            if not result.forward_roundtrip:
                report.add("forward-roundtrip", "backward∘forward is not the identity")
            if not result.backward_roundtrip:
                report.add("backward-roundtrip", "forward∘backward is not the identity")
            status(report)
            reports.append(report)
    return finish(reports)


def cmd_delta(args) -> int:
    n_max = args.max
    banner(f"Hom-set sizes of F(R(1)) up to {n_max}")
    F = free_on_one(n_max)
    sizes = hom_size_table(F, [(0,) * n for n in range(n_max + 1)])
    print(pd.DataFrame(sizes, index=range(n_max + 1), columns=range(n_max + 1)).to_string())
    print()
    report = ValidationReport("F(R(1)) agrees with monotone maps")
    for n in range(n_max + 1):
        for m in range(n_max + 1):
            counted = len(monotone_maps(n, m))
            if sizes[n, m] != counted or counted != monotone_count(n, m):
                report.add("delta", f"({n},{m}): free {sizes[n, m]}, enumerated {counted}, closed form {monotone_count(n, m)}")
    status(report)
    return finish([report])


def cmd_monoids(args) -> int:
    if args.file:
        document, built = load(args.file)
        categories = [built[s.name] for s in document.of_kind("strictmonoidal")]
    else:
        categories = [terminal_strict(), discrete_group_strict(2), delta(3)]
    reports = []
    for C in categories:
        banner(f"Monoids in {C.name}")
        result = classify_monoids(C, args.bound)
        print(f"  monoids by their laws: {len(result.monoids)}")
        print(f"  strict monoidal functors out of Δ: {len(result.functors)}")
        for monoid in result.monoids:
            print(f"    X={C.object_label(monoid.carrier)} e={C.morphism_label(monoid.unit)} m={C.morphism_label(monoid.mult)}")
        if result.undecided:
            print(f"  undecided carriers: {', '.join(C.object_label(x) for x in result.undecided)}")
        report = ValidationReport(f"monoid classification in {C.name}")
        if not result.agree:
            report.add("classifier", "monoids and functors out of Δ disagree")
        if not result.roundtrip:
            report.add("roundtrip", "restricting the induced functor does not recover the monoid")
        status(report)
        reports.append(report)
    return finish(reports)


def cmd_strictify(args) -> int:
    document, built = load(args.file)
    reports = []
    for section in document.of_kind("monoidal"):
        C = built[section.name]
        banner(f"Strictification of {section.name} (bound {args.bound})")
        coherence = check_monoidal(C)
        coherence.subject = f"monoidal {section.name}"
        if not coherence.is_valid:
            status(coherence)
            reports.append(coherence)
            continue
        result = strictify(C, args.bound)
        S = result.strict
        objects = list(S.iter_objects(2))
        labels = [S.object_label(xs) for xs in objects]
        print(f"Strict model {S.name}, words up to length 2:")
        print(pd.DataFrame(hom_size_table(S, objects), index=labels, columns=labels).to_string())
        print()
        print(result.equivalence.summary())
        for target in sorted(result.equivalence.witnesses):
            a, iso, _ = result.equivalence.witnesses[target]
            print(f"  {S.object_label(target)} ≅ E({C.object_label(a)}) via {S.morphism_label(iso)}")
        print()
        equivalence = ValidationReport("comparison functor is an equivalence")
        if not result.equivalence.is_equivalence:
            equivalence.add("equivalence", result.equivalence.status.value)
        for report in (result.strict_report, result.comparison_report, result.agreement_report, equivalence):
            status(report)
            reports.append(report)
    return finish(reports)


def cmd_tree(args) -> int:
    if args.tree_command == "realize":
        tree = parse_tree(args.tree)
        banner(f"‖{format_tree(tree)}‖")
        G = realize(tree)
        print(f"node counts per level: {level_counts(tree)}")
        print(f"cell counts per dimension: {G.cell_counts()}")
        for k, level in enumerate(G.cells):
            print(f"  {k}-cells: {' '.join(str(x) for x in level)}")
            if k:
                for x in level:
                    print(f"    {x}: {G.source[k][x]} -> {G.target[k][x]}")
        report = check_globular(G)
        if G.cell_counts() != direct_counts(tree):
            report.add("cell-counts", f"realization {G.cell_counts()} but level counts give {direct_counts(tree)}")
        status(report)
        return finish([report])
    if args.tree_command == "compose":
        composite = compose_k(parse_tree(args.first), parse_tree(args.second), args.k)
        print(format_tree(composite))
        return EXIT_OK
    if args.tree_command == "graft":
        document, built = load(args.file)
        reports = []
        for section in document.of_kind("labelledtree"):
            L = built[section.name]
            report = check_labelling(L)
            report.subject = f"labelledtree {section.name}"
            if report.is_valid:
                print(f"{section.name}: {format_tree(graft(L))}")
                if not graft_order_independent(L):
                    report.add("order-independence", "left and right evaluation orders differ")
            status(report)
            reports.append(report)
        return finish(reports)
    banner(f"Tree calculus over trees with ≤ {args.max} nodes and height ≤ {args.height}")
    trees = enumerate_trees(args.max, args.height)
    print(f"{len(trees)} trees")
    report = check_tree_calculus(trees, args.height, args.max)
    status(report)
    return finish([report])


def _bundles(args) -> List[tuple]:
    """(name, bundle) pairs from the file and the seeded corpus."""
    bundles = []
    if args.file:
        document, built = load(args.file)
        bundles += [(s.name, built[s.name]) for s in document.of_kind("laxbundle")]
    if args.random:
        bundles += [(f"random-{i}", L) for i, L in enumerate(lax_bundles(args.random, args.seed))]
    return bundles


def cmd_groth(args) -> int:
    if not args.file and not args.random:
        raise StructuralError("groth needs a file or --random N")
    reports = []
    if args.groth_command == "lifts" and args.file:
        document, built = load(args.file)
        for section in document.of_kind("functor"):
            banner(f"Lifts for {section.name}")
            report = cocartesian_lifts(built[section.name])
            print(report.format())
            reports.append(report.closure)
    for name, L in _bundles(args):
        report = check_lax_bundle(L)
        report.subject = f"laxbundle {name}"
        if not report.is_valid:
            status(report)
            reports.append(report)
            continue
        if args.groth_command == "build":
            total, p = grothendieck(L)
            report = check_category(total)
            report.subject = f"total category of {name}"
            if args.file and not args.random:
                print(print_document(document_of([category_section(total, f"{name}-total")])))
            status(report)
            reports.append(report)
        elif args.groth_command == "representable":
            banner(f"Representability of {name}")
            result = is_representable_lax(L)
            if not result.representable:
                print(f"not representable: {result.witness}")
                continue
            P = result.pseudo
            C = L.base
            for f in C.morphisms:
                G = P.functors[f]
                mapping = ", ".join(f"{G.source.object_names[b]}↦{G.target.object_names[G.on_object(b)]}" for b in G.source.objects)
                print(f"  G_{C.morphism_names[f]}: {mapping}")
            for (f, g), components in sorted(P.isos.items()):
                Fx = L.fibers[C.target(f)]
                shown = ", ".join(Fx.morphism_names[k] for k in components)
                print(f"  κ^{{{C.morphism_names[f]},{C.morphism_names[g]}}}: {shown}")
            report = check_pseudo_coherence(P)
            status(report)
            reports.append(report)
        else:
            banner(f"Lifts for the projection of {name}")
            _, p = grothendieck(L)
            lifts = cocartesian_lifts(p)
            print(lifts.format())
            reports.append(lifts.closure)
    return finish(reports)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="catkit", description="Finite category theory checks and constructions")
    commands = parser.add_subparsers(dest="command", required=True)

    validate = commands.add_parser("validate", help="Check every section of a document")
    validate.add_argument("file")
    validate.add_argument("--bound", type=int, default=DEFAULT_BOUND, help=f"Object bound for symbolic categories (default: {DEFAULT_BOUND})")
    validate.add_argument("--random", type=int, default=0, help="Also run the bimodule calculus on N seeded profunctor triples")
    validate.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"Random seed (default: {DEFAULT_SEED})")
    validate.set_defaults(handler=cmd_validate)

    compose_prof = commands.add_parser("compose-prof", help="Compose two profunctors of a document")
    compose_prof.add_argument("file")
    compose_prof.add_argument("left")
    compose_prof.add_argument("right")
    compose_prof.set_defaults(handler=cmd_compose_prof)

    kleisli_parser = commands.add_parser("kleisli", help="Kleisli categories of the monad corpus or of Hom monads")
    kleisli_parser.add_argument("file", nargs="?")
    kleisli_parser.set_defaults(handler=cmd_kleisli)

    free = commands.add_parser("free-monoidal", help="F(M) for every multicategory of a document")
    free.add_argument("file")
    free.add_argument("--bound", type=int, default=None, help="Object-length bound (default: the multicategory's)")
    free.set_defaults(handler=cmd_free_monoidal)

    classify = commands.add_parser("classify-lax", help="Classify lax morphisms M -> R(D)")
    classify.add_argument("file")
    classify.add_argument("--bound", type=int, default=DEFAULT_BOUND, help=f"Object-length bound (default: {DEFAULT_BOUND})")
    classify.set_defaults(handler=cmd_classify_lax)

    delta_parser = commands.add_parser("delta", help="Compare F(R(1)) with monotone maps")
    delta_parser.add_argument("--max", type=int, default=DELTA_MAX, help=f"Largest ordinal (default: {DELTA_MAX})")
    delta_parser.set_defaults(handler=cmd_delta)

    monoids = commands.add_parser("monoids", help="Classify monoids in strict monoidal categories")
    monoids.add_argument("file", nargs="?")
    monoids.add_argument("--bound", type=int, default=None, help="Object bound for symbolic categories")
    monoids.set_defaults(handler=cmd_monoids)

    strict = commands.add_parser("strictify", help="Strictify every monoidal category of a document")
    strict.add_argument("file")
    strict.add_argument("--bound", type=int, default=STRICTIFY_BOUND, help=f"Word-length bound (default: {STRICTIFY_BOUND})")
    strict.set_defaults(handler=cmd_strictify)

    tree = commands.add_parser("tree", help="Trees, realization and grafting")
    tree_commands = tree.add_subparsers(dest="tree_command", required=True)
    realize_parser = tree_commands.add_parser("realize")
    realize_parser.add_argument("tree")
    compose_parser = tree_commands.add_parser("compose")
    compose_parser.add_argument("k", type=int)
    compose_parser.add_argument("first")
    compose_parser.add_argument("second")
    graft_parser = tree_commands.add_parser("graft")
    graft_parser.add_argument("file")
    check_parser = tree_commands.add_parser("check")
    check_parser.add_argument("--max", type=int, default=TREE_MAX_NODES, help=f"Node bound (default: {TREE_MAX_NODES})")
    check_parser.add_argument("--height", type=int, default=TREE_MAX_HEIGHT, help=f"Height bound (default: {TREE_MAX_HEIGHT})")
    tree.set_defaults(handler=cmd_tree)

    groth = commands.add_parser("groth", help="Grothendieck construction of lax bundles")
    groth.add_argument("groth_command", choices=["build", "representable", "lifts"])
    groth.add_argument("file", nargs="?")
    groth.add_argument("--random", type=int, default=0, help=f"Also run N seeded bundles (acceptance run: {RANDOM_BUNDLE_COUNT})")
    groth.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"Random seed (default: {DEFAULT_SEED})")
    groth.set_defaults(handler=cmd_groth)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, run one subcommand and return its exit status."""
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ParseError as e:
        print(f"✗ parse error {e.describe()}")
    except (StructuralError, CoherenceError, BoundExceededError) as e:
        print(f"✗ {type(e).__name__}: {e}")
    return EXIT_STRUCTURAL


if __name__ == "__main__":
    sys.exit(run())
