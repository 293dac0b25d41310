"""
Load catkit documents and convert between sections and kernel objects.
"""
from pathlib import Path
from typing import Dict, Hashable, List, Optional, Sequence

import numpy as np

from categories.fincat import FinCat, Functor
from globular.grafting import LabelledTree
from globular.trees import Tree, format_tree, parse_tree
from groth.lax_bundle import LaxProfFunctor
from monoidal.strict import TabulatedStrictMonCat
from monoidal.weak import MonoidalCategory, monoidal_from_tables
from multicategories.multicategory import Multicategory
from profunctors.profunctor import Profunctor
from utils.catkit_parser import Document, Section, parse, section_of
from utils.report import StructuralError


def label(value: Hashable) -> str:
    """A whitespace-free token for an element label."""
    if isinstance(value, tuple):
        return "(" + ",".join(label(v) for v in value) + ")"
    return "_".join(str(value).split())


class DocumentLoader:
    """Read catkit files and build the objects their sections describe."""

    @staticmethod
    def load_document(file_path: Path) -> Document:
        """
        Parse one catkit file.

        Args:
            file_path: Path to a UTF-8 catkit document

        Returns:
            The parsed document
        """
        with open(file_path, "r", encoding="utf-8") as f:
            return parse(f.read())

    @staticmethod
    def load_directory(directory: Path) -> Dict[str, Document]:
        """Parse every *.cat, *.mon, *.prof, *.tree and *.lax file in a directory."""
        documents = {}
        for suffix in ("cat", "mon", "prof", "tree", "lax", "multi"):
            for file_path in sorted(directory.glob(f"*.{suffix}")):
                documents[file_path.name] = DocumentLoader.load_document(file_path)
        print(f"Loaded {len(documents)} catkit documents from {directory}")
        return documents

    @staticmethod
    def build(document: Document) -> Dict[str, object]:
        """Build every section in order; later sections may use earlier ones."""
        built: Dict[str, object] = {}
        builders = {
            "category": build_category,
            "functor": build_functor,
            "profunctor": build_profunctor,
            "multicategory": build_multicategory,
            "monoidal": build_monoidal,
            "strictmonoidal": build_strict,
            "laxbundle": build_bundle,
            "tree": build_tree,
            "labelledtree": build_labelled_tree,
        }
        for section in document.sections:
            built[section.name] = builders[section.kind](section, built)
        return built


def _indices(names: Sequence[str]) -> Dict[str, int]:
    return {name: i for i, name in enumerate(names)}


def build_category(section: Section, built: Dict[str, object]) -> FinCat:
    objects = section.declared("object")
    object_index = _indices(objects)
    morphisms = section.all("morphism")
    morphism_index = _indices([r.values[0] for r in morphisms])
    identities = {object_index[r.values[0]]: morphism_index[r.values[1]] for r in section.all("identity")}
    missing = [objects[a] for a in range(len(objects)) if a not in identities]
    if missing:
        raise StructuralError(f"category {section.name}: no identity for {', '.join(missing)}")
    table = {
        (morphism_index[r.values[0]], morphism_index[r.values[1]]): morphism_index[r.values[2]]
        for r in section.all("compose")
    }
    return FinCat(
        len(objects),
        [(object_index[r.values[1]], object_index[r.values[2]]) for r in morphisms],
        [identities[a] for a in range(len(objects))],
        table,
        object_names=objects,
        morphism_names=[r.values[0] for r in morphisms],
        name=section.name,
    )


def _total_map(section: Section, key: str, size: int, source: Dict[str, int], target: Dict[str, int]) -> List[int]:
    mapping = {source[r.values[0]]: target[r.values[1]] for r in section.all(key)}
    if len(mapping) != size:
        raise StructuralError(f"{section.kind} {section.name}: the {key} map is not total")
    return [mapping[i] for i in range(size)]


def build_functor(section: Section, built: Dict[str, object]) -> Functor:
    X, Y = built[section.value("source")], built[section.value("target")]
    objects = _total_map(section, "object", X.object_count, _indices(X.object_names), _indices(Y.object_names))
    morphisms = _total_map(section, "morphism", X.morphism_count, _indices(X.morphism_names), _indices(Y.morphism_names))
    return Functor(X, Y, objects, morphisms, name=section.name)


def build_profunctor(section: Section, built: Dict[str, object]) -> Profunctor:
    X, Y = built[section.value("source")], built[section.value("target")]
    xs, ys = _indices(X.object_names), _indices(Y.object_names)
    us, vs = _indices(X.morphism_names), _indices(Y.morphism_names)
    fibers: Dict = {}
    for r in section.all("element"):
        fibers.setdefault((xs[r.values[1]], ys[r.values[2]]), []).append(r.values[0])
    left = {(us[r.values[0]], r.values[1]): r.values[2] for r in section.all("left")}
    right = {(r.values[0], vs[r.values[1]]): r.values[2] for r in section.all("right")}
    return Profunctor(X, Y, fibers, left, right, name=section.name)


def build_multicategory(section: Section, built: Dict[str, object]) -> Multicategory:
    objects = section.declared("object")
    xs = _indices(objects)
    arrows = section.all("arrow")
    index = _indices([r.values[0] for r in arrows])
    identities = {xs[r.values[0]]: index[r.values[1]] for r in section.all("identity")}
    if len(identities) != len(objects):
        raise StructuralError(f"multicategory {section.name}: one identity per object is required")
    comp = {
        (index[r.values[1]], tuple(index[g] for g in r.values[2:])): index[r.values[0]]
        for r in section.all("compose")
    }
    bound = section.value("bound")
    return Multicategory(
        objects,
        [(r.values[0], [xs[x] for x in r.values[2:]], xs[r.values[1]]) for r in arrows],
        [identities[x] for x in range(len(objects))],
        comp,
        bound=int(bound) if bound is not None else max((len(r.values) - 2 for r in arrows), default=0),
        name=section.name,
    )


def build_monoidal(section: Section, built: Dict[str, object]) -> MonoidalCategory:
    C = built[section.value("category")]
    xs, fs = _indices(C.object_names), _indices(C.morphism_names)
    return monoidal_from_tables(
        C,
        {(xs[a], xs[b]): xs[c] for a, b, c in (r.values for r in section.all("tensor"))},
        {(fs[f], fs[g]): fs[h] for f, g, h in (r.values for r in section.all("tensor-morphism"))},
        xs[section.value("unit")],
        {(xs[a], xs[b], xs[c]): fs[m] for a, b, c, m in (r.values for r in section.all("associator"))},
        {xs[a]: fs[m] for a, m in (r.values for r in section.all("left-unitor"))},
        {xs[a]: fs[m] for a, m in (r.values for r in section.all("right-unitor"))},
        name=section.name,
    )


def build_strict(section: Section, built: Dict[str, object]) -> TabulatedStrictMonCat:
    C = built[section.value("category")]
    xs, fs = _indices(C.object_names), _indices(C.morphism_names)
    objects = np.full((C.object_count, C.object_count), -1, dtype=np.int64)
    for a, b, c in (r.values for r in section.all("tensor")):
        objects[xs[a], xs[b]] = xs[c]
    morphisms = np.full((C.morphism_count, C.morphism_count), -1, dtype=np.int64)
    for f, g, h in (r.values for r in section.all("tensor-morphism")):
        morphisms[fs[f], fs[g]] = fs[h]
    return TabulatedStrictMonCat(C, objects, morphisms, xs[section.value("unit")], name=section.name)


def build_bundle(section: Section, built: Dict[str, object]) -> LaxProfFunctor:
    C = built[section.value("base")]
    xs, fs = _indices(C.object_names), _indices(C.morphism_names)
    fiber_of = {xs[r.values[0]]: built[r.values[1]] for r in section.all("fiber")}
    if len(fiber_of) != C.object_count:
        raise StructuralError(f"laxbundle {section.name}: every object of {C.name} needs a fiber")
    fibers = [fiber_of[x] for x in C.objects]
    modules = {fs[r.values[0]]: built[r.values[1]] for r in section.all("module")}
    mult: Dict = {}
    for f_name, g_name, phi, psi, value in (r.values for r in section.all("mult")):
        f, g = fs[f_name], fs[g_name]
        if C.is_identity(C.compose(f, g)):
            morphisms = _indices(fibers[C.target(f)].morphism_names)
            if value not in morphisms:
                raise StructuralError(f"laxbundle {section.name}: {value!r} is not a morphism of the fiber")
            value = morphisms[value]
        mult.setdefault((f, g), {})[(phi, psi)] = value
    return LaxProfFunctor(C, fibers, modules, mult, name=section.name)


def build_tree(section: Section, built: Dict[str, object]) -> Tree:
    return parse_tree(section.value("shape"))


def build_labelled_tree(section: Section, built: Dict[str, object]) -> LabelledTree:
    dimension = section.value("dimension")
    return LabelledTree(
        parse_tree(section.value("shape")),
        {r.values[0]: parse_tree(r.values[1]) for r in section.all("label")},
        int(dimension) if dimension is not None else None,
    )


def category_section(C: FinCat, name: Optional[str] = None) -> Section:
    on, mn = C.object_names, C.morphism_names
    records = [("object", [label(a)]) for a in on]
    records += [("morphism", [label(mn[f]), label(on[C.source(f)]), label(on[C.target(f)])]) for f in C.morphisms]
    records += [("identity", [label(on[a]), label(mn[C.identity(a)])]) for a in C.objects]
    for g in C.morphisms:
        for f in C.morphisms:
            h = C.composite(g, f)
            if h is not None:
                records.append(("compose", [label(mn[g]), label(mn[f]), label(mn[h])]))
    return section_of("category", name or label(C.name) or "C", records)


def functor_section(F: Functor, source_name: str, target_name: str, name: Optional[str] = None) -> Section:
    X, Y = F.source, F.target
    records = [("source", [source_name]), ("target", [target_name])]
    records += [("object", [label(X.object_names[x]), label(Y.object_names[F.on_object(x)])]) for x in X.objects]
    records += [("morphism", [label(X.morphism_names[f]), label(Y.morphism_names[F.on_morphism(f)])]) for f in X.morphisms]
    return section_of("functor", name or label(F.name) or "F", records)


def profunctor_section(P: Profunctor, source_name: str, target_name: str, name: Optional[str] = None) -> Section:
    X, Y = P.source, P.target
    records = [("source", [source_name]), ("target", [target_name])]
    for p in P.elements:
        x, y = P.position(p)
        records.append(("element", [label(p), label(X.object_names[x]), label(Y.object_names[y])]))
    for (u, p), q in sorted(P.left_table().items(), key=lambda item: (item[0][0], P.elements.index(item[0][1]))):
        records.append(("left", [label(X.morphism_names[u]), label(p), label(q)]))
    for (p, v), q in sorted(P.right_table().items(), key=lambda item: (P.elements.index(item[0][0]), item[0][1])):
        records.append(("right", [label(p), label(Y.morphism_names[v]), label(q)]))
    return section_of("profunctor", name or label(P.name) or "P", records)


def strict_section(C: TabulatedStrictMonCat, category_name: str, name: Optional[str] = None) -> Section:
    base = C.base
    on, mn = base.object_names, base.morphism_names
    records = [("category", [category_name]), ("unit", [label(on[C.unit])])]
    for a in base.objects:
        for b in base.objects:
            c = C.tensor_obj(a, b)
            if c is not None:
                records.append(("tensor", [label(on[a]), label(on[b]), label(on[c])]))
    for f in base.morphisms:
        for g in base.morphisms:
            h = C.tensor_mor(f, g)
            if h is not None:
                records.append(("tensor-morphism", [label(mn[f]), label(mn[g]), label(mn[h])]))
    return section_of("strictmonoidal", name or label(C.name) or "S", records)


def tree_section(tree: Tree, name: str) -> Section:
    return section_of("tree", name, [("shape", [format_tree(tree)])])


def labelled_tree_section(L: LabelledTree, name: str) -> Section:
    records = [("shape", [format_tree(L.shape)])]
    if L.dimension is not None:
        records.append(("dimension", [str(L.dimension)]))
    records += [("label", [cell, format_tree(tree)]) for cell, tree in sorted(L.labels.items())]
    return section_of("labelledtree", name, records)


def bundle_sections(L: LaxProfFunctor, name: Optional[str] = None) -> List[Section]:
    """The base, fibers, modules and multiplication tables of a bundle, in dependency order."""
    C = L.base
    name = name or label(L.name) or "L"
    base_name = f"{name}-base"
    sections = [category_section(C, base_name)]
    fiber_names = []
    for x in C.objects:
        fiber_names.append(f"{name}-fiber-{label(C.object_names[x])}")
        sections.append(category_section(L.fibers[x], fiber_names[-1]))
    records = [("base", [base_name])]
    records += [("fiber", [label(C.object_names[x]), fiber_names[x]]) for x in C.objects]
    for f in C.morphisms:
        if C.is_identity(f):
            continue
        module_name = f"{name}-module-{label(C.morphism_names[f])}"
        sections.append(profunctor_section(L.module(f), fiber_names[C.source(f)], fiber_names[C.target(f)], module_name))
        records.append(("module", [label(C.morphism_names[f]), module_name]))
    for f, g in L.composable_pairs():
        fg = C.compose(f, g)
        Fx = L.fibers[C.target(f)]
        for (phi, psi), value in L.table(f, g).items():
            shown = label(Fx.morphism_names[value]) if C.is_identity(fg) else label(value)
            records.append(("mult", [label(C.morphism_names[f]), label(C.morphism_names[g]), label(phi), label(psi), shown]))
    sections.append(section_of("laxbundle", name, records))
    return sections


def document_of(sections: Sequence[Section]) -> Document:
    return Document(list(sections))
