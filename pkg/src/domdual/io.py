"""JSON documents for structures and maps, and DOT export.

Structure JSON::

    {"kind": "lattice", "name": "DIAMOND", "labels": ["0", "a", "b", "1"],
     "covers": [["0", "a"], ["0", "b"], ["a", "1"], ["b", "1"]]}

Map JSON::

    {"source": <document or name>, "target": <document or name>,
     "assignments": {"0": "0", "a": "0", "b": "1", "1": "1"}}

A name is a built-in fixture (case-insensitive) or a path, resolved relative to
the map file.
"""

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import (CycleDetected, DuplicateLabel, NotALattice, ParseError, Unbounded,
                     ValidationError, Witness)
from .fixtures import FIXTURES, fixture
from .lattice import certify_lattice
from .poset import FinitePoset, close_order

KINDS = ("poset", "lattice", "domain")
KEY_ORDER = ("kind", "name", "comment", "labels", "covers")


@dataclass(frozen=True)
class StructureDocument:
    kind: str
    labels: tuple
    covers: tuple
    name: str | None = None
    comment: str | None = None

    def to_poset(self) -> FinitePoset:
        index = {s: i for i, s in enumerate(self.labels)}
        return close_order(self.labels, [(index[a], index[b]) for a, b in self.covers])

    def canonical(self) -> "StructureDocument":
        return StructureDocument(self.kind, self.labels, tuple(sorted(set(self.covers))),
                                 self.name, self.comment)


@dataclass(frozen=True)
class MapDocument:
    source: StructureDocument
    target: StructureDocument
    assignments: dict

    def table(self) -> tuple:
        index = {s: i for i, s in enumerate(self.target.labels)}
        return tuple(index[self.assignments[s]] for s in self.source.labels)


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}",
                         exc.lineno, exc.colno) from None


def _require(cond, message, witness=None):
    if not cond:
        raise ValidationError(message, witness)


def document_from_obj(obj) -> StructureDocument:
    """Validate a decoded JSON object as a structure document."""
    _require(isinstance(obj, dict), "structure document must be a JSON object")
    unknown = sorted(set(obj) - set(KEY_ORDER))
    _require(not unknown, f"unknown keys: {', '.join(unknown)}")
    kind = obj.get("kind", "poset")
    _require(kind in KINDS, f"kind must be one of {', '.join(KINDS)}, not {kind!r}")
    labels = obj.get("labels")
    _require(isinstance(labels, list) and all(isinstance(s, str) for s in labels),
             "labels must be a list of strings")
    covers = obj.get("covers", [])
    _require(isinstance(covers, list), "covers must be a list of label pairs")
    declared = set(labels)
    pairs = []
    for k, pair in enumerate(covers):
        _require(isinstance(pair, list) and len(pair) == 2
                 and all(isinstance(s, str) for s in pair),
                 f"cover #{k} must be a pair of labels")
        for s in pair:
            _require(s in declared, f"cover #{k} uses undeclared label {s!r}")
        pairs.append(tuple(pair))
    for key in ("name", "comment"):
        _require(obj.get(key) is None or isinstance(obj[key], str), f"{key} must be a string")
    doc = StructureDocument(kind, tuple(labels), tuple(pairs), obj.get("name"), obj.get("comment"))
    try:
        doc.to_poset()
    except DuplicateLabel as exc:
        raise ValidationError(str(exc), exc.witness) from None
    except CycleDetected as exc:
        names = [labels[i] for i in exc.cycle]
        err = ValidationError("cover cycle: " + " < ".join(names),
                              Witness("cycle", tuple(exc.cycle), tuple(names)))
        err.cycle = tuple(names)
        raise err from None
    return doc


def parse_structure(text: str) -> StructureDocument:
    return document_from_obj(_load_json(text))


def serialize_structure(doc: StructureDocument) -> str:
    """Canonical text: fixed key order, covers sorted and deduplicated."""
    doc = doc.canonical()
    lines = ["{"]
    fields = []
    for key in KEY_ORDER:
        value = getattr(doc, key)
        if value is None:
            continue
        if key == "covers":
            value = [list(p) for p in value]
        elif key == "labels":
            value = list(value)
        fields.append(f"  {json.dumps(key)}: {json.dumps(value)}")
    lines.append(",\n".join(fields))
    lines.append("}")
    return "\n".join(lines) + "\n"


def structure_document(P: FinitePoset, kind: str = "poset", name: str | None = None,
                       comment: str | None = None) -> StructureDocument:
    covers = tuple(sorted((P.labels[a], P.labels[b]) for a, b in P.covers()))
    return StructureDocument(kind, tuple(P.labels), covers, name, comment)


def load_structure(ref: str, base: Path | None = None) -> StructureDocument:
    """Read a structure file, or build a named fixture if no such file exists."""
    path = Path(ref) if base is None or Path(ref).is_absolute() else base / ref
    if path.exists():
        doc = parse_structure(path.read_text())
        if doc.name is None:
            doc = StructureDocument(doc.kind, doc.labels, doc.covers, path.stem, doc.comment)
        return doc
    if ref.upper() in FIXTURES:
        P = fixture(ref)
        try:
            certify_lattice(P)
            kind = "lattice"
        except (NotALattice, Unbounded):
            kind = "poset"
        return structure_document(P, kind, ref.upper())
    raise FileNotFoundError(ref)


def parse_map(text: str, base: Path | None = None) -> MapDocument:
    obj = _load_json(text)
    _require(isinstance(obj, dict), "map document must be a JSON object")
    unknown = sorted(set(obj) - {"source", "target", "assignments"})
    _require(not unknown, f"unknown keys: {', '.join(unknown)}")
    ends = []
    for key in ("source", "target"):
        ref = obj.get(key)
        if isinstance(ref, dict):
            ends.append(document_from_obj(ref))
        elif isinstance(ref, str):
            try:
                ends.append(load_structure(ref, base))
            except FileNotFoundError:
                raise ValidationError(f"{key} {ref!r} is neither a file nor a fixture") from None
        else:
            raise ValidationError(f"{key} must be a document or a name")
    src, dst = ends
    assign = obj.get("assignments")
    _require(isinstance(assign, dict), "assignments must be an object")
    missing = [s for s in src.labels if s not in assign]
    _require(not missing, f"assignments not total; missing {', '.join(missing)}")
    extra = sorted(set(assign) - set(src.labels))
    _require(not extra, f"assignments for unknown source labels {', '.join(extra)}")
    bad = sorted(s for s, t in assign.items() if t not in set(dst.labels))
    _require(not bad, f"images of {', '.join(bad)} are not target labels")
    return MapDocument(src, dst, dict(assign))


def load_map(path: str) -> MapDocument:
    p = Path(path)
    return parse_map(p.read_text(), p.parent)


def to_dot(P: FinitePoset, name: str = "P") -> str:
    """Hasse diagram as a DOT digraph, edges bottom to top, everything sorted."""
    q = json.dumps
    lines = [f"digraph {q(name)} {{", "  rankdir=BT;"]
    for s in sorted(P.labels):
        lines.append(f"  {q(s)} [label={q(s)}];")
    for a, b in sorted((P.labels[a], P.labels[b]) for a, b in P.covers()):
        lines.append(f"  {q(a)} -> {q(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
