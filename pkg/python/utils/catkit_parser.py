"""
The catkit text format.

A document is a list of sections

    begin <kind> <name>
      <key> <value> ...
    end

whose body lines are flat records. Lines starting with '#' are comments.
Parsing checks record shapes and resolves every name a record refers to;
building kernel objects from a parsed document is left to
data_processing.document_loader.
"""
import re
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

from config import SECTION_KINDS
from globular.realization import realize
from globular.trees import parse_tree
from utils.report import ParseError

# Field types: "new:<ns>" declares a local name, "<ns>" refers to one,
# "<ns>@<key>" refers to a name of the section named by this section's <key>
# record, "section:<kind>" names an earlier section. A trailing "*" repeats.
SCHEMA: Dict[str, Dict[str, Tuple[str, ...]]] = {
    "category": {
        "object": ("new:object",),
        "morphism": ("new:morphism", "object", "object"),
        "identity": ("object", "morphism"),
        "compose": ("morphism", "morphism", "morphism"),
    },
    "functor": {
        "source": ("section:category",),
        "target": ("section:category",),
        "object": ("object@source", "object@target"),
        "morphism": ("morphism@source", "morphism@target"),
    },
    "profunctor": {
        "source": ("section:category",),
        "target": ("section:category",),
        "element": ("new:element", "object@source", "object@target"),
        "left": ("morphism@source", "element", "element"),
        "right": ("element", "morphism@target", "element"),
    },
    "multicategory": {
        "bound": ("int",),
        "object": ("new:object",),
        "arrow": ("new:arrow", "object", "object*"),
        "identity": ("object", "arrow"),
        "compose": ("arrow", "arrow", "arrow*"),
    },
    "monoidal": {
        "category": ("section:category",),
        "unit": ("object@category",),
        "tensor": ("object@category", "object@category", "object@category"),
        "tensor-morphism": ("morphism@category", "morphism@category", "morphism@category"),
        "associator": ("object@category", "object@category", "object@category", "morphism@category"),
        "left-unitor": ("object@category", "morphism@category"),
        "right-unitor": ("object@category", "morphism@category"),
    },
    "strictmonoidal": {
        "category": ("section:category",),
        "unit": ("object@category",),
        "tensor": ("object@category", "object@category", "object@category"),
        "tensor-morphism": ("morphism@category", "morphism@category", "morphism@category"),
    },
    "laxbundle": {
        "base": ("section:category",),
        "fiber": ("object@base", "section:category"),
        "module": ("morphism@base", "section:profunctor"),
        "mult": ("morphism@base", "morphism@base", "value", "value", "value"),
    },
    "tree": {
        "shape": ("tree",),
    },
    "labelledtree": {
        "shape": ("tree",),
        "dimension": ("int",),
        "label": ("cell", "tree"),
    },
}

# Records that may appear at most once per section
SINGLE = {"source", "target", "category", "base", "bound", "unit", "shape", "dimension"}

_TOKEN = re.compile(r"\S+")


@dataclass(frozen=True)
class Record:
    key: str
    values: Tuple[str, ...]
    line: int = field(default=0, compare=False)
    columns: Tuple[int, ...] = field(default=(), compare=False)

    def column(self, i: int) -> Optional[int]:
        return self.columns[i] if i < len(self.columns) else None


@dataclass
class Section:
    kind: str
    name: str
    records: List[Record] = field(default_factory=list)
    line: int = field(default=0, compare=False)

    def all(self, key: str) -> List[Record]:
        return [r for r in self.records if r.key == key]

    def first(self, key: str) -> Optional[Record]:
        found = self.all(key)
        return found[0] if found else None

    def value(self, key: str) -> Optional[str]:
        record = self.first(key)
        return record.values[0] if record else None

    def declared(self, namespace: str) -> List[str]:
        """Local names declared in a namespace, in order."""
        keys = [k for k, fields in SCHEMA[self.kind].items() if fields and fields[0] == f"new:{namespace}"]
        return [r.values[0] for r in self.records if r.key in keys]


@dataclass
class Document:
    sections: List[Section] = field(default_factory=list)

    def section(self, name: str) -> Section:
        for s in self.sections:
            if s.name == name:
                return s
        raise KeyError(name)

    def of_kind(self, kind: str) -> List[Section]:
        return [s for s in self.sections if s.kind == kind]


def _tokens(line: str) -> List[Tuple[str, int]]:
    return [(m.group(0), m.start() + 1) for m in _TOKEN.finditer(line)]


def parse(text: str) -> Document:
    """
    Parse a document and resolve its references.

    Raises:
        ParseError: ``syntax``, ``unknown-kind``, ``dangling-reference`` or
            ``arity-mismatch``, with line, column and section
    """
    document = Document()
    current: Optional[Section] = None
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = _tokens(raw)
        if not tokens or tokens[0][0].startswith("#"):
            continue
        head, column = tokens[0]
        where = current.name if current else None
        if head == "begin":
            if current is not None:
                raise ParseError("syntax", "'begin' inside an open section", number, column, where)
            if len(tokens) != 3:
                raise ParseError("syntax", "expected 'begin <kind> <name>'", number, column)
            kind, name = tokens[1][0], tokens[2][0]
            if kind not in SECTION_KINDS:
                raise ParseError("unknown-kind", f"unknown section kind {kind!r}", number, tokens[1][1], name)
            if any(s.name == name for s in document.sections):
                raise ParseError("syntax", f"section name {name!r} is used twice", number, tokens[2][1], name)
            current = Section(kind, name, line=number)
        elif head == "end":
            if current is None:
                raise ParseError("syntax", "'end' without an open section", number, column)
            if len(tokens) != 1:
                raise ParseError("syntax", "unexpected text after 'end'", number, tokens[1][1], where)
            _resolve(document, current)
            document.sections.append(current)
            current = None
        else:
            if current is None:
                raise ParseError("syntax", f"record {head!r} outside a section", number, column)
            record = Record(
                head,
                tuple(t for t, _ in tokens[1:]),
                line=number,
                columns=tuple(c for _, c in tokens[1:]),
            )
            _check_shape(current, record, column)
            current.records.append(record)
    if current is not None:
        raise ParseError("syntax", "section is not closed with 'end'", current.line, None, current.name)
    return document


def _check_shape(section: Section, record: Record, column: int) -> None:
    fields = SCHEMA[section.kind].get(record.key)
    if fields is None:
        raise ParseError("syntax", f"unknown record {record.key!r} in a {section.kind}", record.line, column, section.name)
    fixed = [f for f in fields if not f.endswith("*")]
    variadic = len(fixed) != len(fields)
    if len(record.values) < len(fixed) or (not variadic and len(record.values) != len(fixed)):
        raise ParseError(
            "arity-mismatch",
            f"{record.key!r} takes {len(fixed)}{'+' if variadic else ''} fields, got {len(record.values)}",
            record.line,
            column,
            section.name,
        )
    if record.key in SINGLE and section.first(record.key) is not None:
        raise ParseError("syntax", f"{record.key!r} given twice", record.line, column, section.name)


def _field_types(fields: Sequence[str], count: int) -> Iterator[str]:
    for i in range(count):
        yield fields[min(i, len(fields) - 1)].rstrip("*")


def _resolve(document: Document, section: Section) -> None:
    local: Dict[str, Set[str]] = {}
    for record in section.records:
        first = SCHEMA[section.kind][record.key][0]
        if first.startswith("new:"):
            namespace = first[4:]
            names = local.setdefault(namespace, set())
            if record.values[0] in names:
                raise ParseError("syntax", f"{namespace} {record.values[0]!r} declared twice", record.line, record.column(0), section.name)
            names.add(record.values[0])

    for record in section.records:
        fields = SCHEMA[section.kind][record.key]
        for i, (kind, value) in enumerate(zip(_field_types(fields, len(record.values)), record.values)):
            _resolve_field(document, section, local, record, i, kind, value)

    if section.kind == "multicategory":
        _check_multicategory_arities(section)


def _fail(section: Section, record: Record, i: int, message: str, code: str = "dangling-reference") -> None:
    raise ParseError(code, message, record.line, record.column(i), section.name)


def _earlier(document: Document, section: Section, record: Record, i: int, name: str, kind: str) -> Section:
    for s in document.sections:
        if s.name == name:
            if s.kind != kind:
                _fail(section, record, i, f"{name!r} is a {s.kind}, not a {kind}")
            return s
    _fail(section, record, i, f"no earlier {kind} section named {name!r}")


def _resolve_field(document: Document, section: Section, local: Dict[str, Set[str]], record: Record, i: int, kind: str, value: str) -> None:
    if kind.startswith("new:"):
        return
    if kind == "int":
        if not re.fullmatch(r"-?\d+", value):
            _fail(section, record, i, f"expected an integer, got {value!r}", code="syntax")
        return
    if kind == "tree":
        _tree_field(section, record, i, value)
        return
    if kind.startswith("section:"):
        _earlier(document, section, record, i, value, kind[8:])
        return
    if kind == "cell":
        shape = section.value("shape")
        if shape is None:
            _fail(section, record, i, "labels need a 'shape' record")
        cells = {x for level in realize(parse_tree(shape)).cells for x in level}
        if value not in cells:
            _fail(section, record, i, f"{value!r} is not a cell of {shape}")
        return
    if kind == "value":
        if value not in _bundle_values(document, section):
            _fail(section, record, i, f"{value!r} is neither a module element nor a fiber morphism")
        return
    if "@" in kind:
        namespace, key = kind.split("@")
        owner = section.value(key)
        if owner is None:
            _fail(section, record, i, f"{record.key!r} needs a {key!r} record")
        target_kind = SCHEMA[section.kind][key][0][8:]
        other = _earlier(document, section, section.first(key), 0, owner, target_kind)
        if value not in other.declared(namespace):
            _fail(section, record, i, f"{owner} has no {namespace} {value!r}")
        return
    if value not in local.get(kind, set()):
        _fail(section, record, i, f"undeclared {kind} {value!r}")


def _tree_field(section: Section, record: Record, i: int, value: str) -> None:
    try:
        parse_tree(value)
    except ParseError as error:
        column = record.column(i)
        offset = column - 1 + error.column if column is not None and error.column is not None else column
        raise ParseError("syntax", error.message, record.line, offset, section.name) from error


def _bundle_values(document: Document, section: Section) -> Set[str]:
    values: Set[str] = set()
    for record in section.all("module"):
        values.update(document.section(record.values[1]).declared("element"))
    for record in section.all("fiber"):
        values.update(document.section(record.values[1]).declared("morphism"))
    return values


def _check_multicategory_arities(section: Section) -> None:
    arity = {r.values[0]: len(r.values) - 2 for r in section.all("arrow")}
    for record in section.all("compose"):
        f, inputs = record.values[1], record.values[2:]
        if len(inputs) != arity[f]:
            _fail(section, record, 1, f"{f} has arity {arity[f]} but is composed with {len(inputs)} arrows", code="arity-mismatch")


def print_document(document: Document) -> str:
    """Canonical text: two-space indented records, one blank line between sections."""
    blocks = []
    for s in document.sections:
        lines = [f"begin {s.kind} {s.name}"]
        lines.extend(f"  {r.key} {' '.join(r.values)}" for r in s.records)
        lines.append("end")
        blocks.append("\n".join(lines) + "\n")
    return "\n".join(blocks)


def section_of(kind: str, name: str, records: Sequence[Tuple[str, Sequence[str]]]) -> Section:
    return Section(kind, name, [Record(key, tuple(str(v) for v in values)) for key, values in records])
