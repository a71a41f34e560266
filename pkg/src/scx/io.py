"""JSON documents for complexes and simplicial maps.

A complex document::

    {"format": "scx-complex", "version": 1,
     "facets": [["a", "b", "c"], ["c", "d"]],
     "weights": [{"face": ["a", "b"], "weight": "1/3"}],
     "default_weight": "1", "degenerate": false}

``vertices`` may list extra (isolated) vertex names.  Names that are all
non-negative integer strings keep their integer value as vertex id; other
name sets are numbered in sorted order.  Weights are exact rationals written
as ``"p/q"`` strings (integers are accepted too).
"""
from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping, Optional, Union

from .complex import Simplex, WeightedComplex, as_fraction, build_complex
from .errors import ParseError
from .transforms import SimplicialMap

COMPLEX_FORMAT = "scx-complex"
MAP_FORMAT = "scx-map"
VERSION = 1
COMPLEX_FIELDS = {"format", "version", "vertices", "facets", "weights", "default_weight", "degenerate"}
MAP_FIELDS = {"format", "version", "source", "target", "vertex_map"}
_RATIONAL = re.compile(r"^\s*-?\d+\s*(/\s*\d+\s*)?$")

PathLike = Union[str, Path]


@dataclass(frozen=True)
class ComplexDocument:
    """A parsed complex together with its vertex-name table."""

    complex: WeightedComplex
    names: dict[str, int]

    @property
    def labels(self) -> dict[int, str]:
        return {v: k for k, v in self.names.items()}

    def face_names(self, face: Simplex) -> list[str]:
        lab = self.labels
        return [lab[v] for v in face]

    def face_from_names(self, names: list[str]) -> Simplex:
        try:
            return tuple(sorted(self.names[str(x)] for x in names))
        except KeyError as exc:
            raise ParseError(f"unknown vertex name {exc.args[0]!r}") from None


def _locate(text: str, needle: str) -> tuple[int, int]:
    pos = text.find(needle)
    if pos < 0:
        return 0, 0
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def _load(text: str, path: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno, path) from None


def _fail(text: str, path: str, message: str, needle: Optional[str] = None) -> ParseError:
    line, col = _locate(text, needle) if needle else (0, 0)
    return ParseError(message, line, col, path)


def _rational(value: Any, text: str, path: str, what: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise _fail(text, path, f"{what} must be an integer or a 'p/q' string, got {value!r}",
                    json.dumps(value))
    if isinstance(value, str) and not _RATIONAL.match(value):
        raise _fail(text, path, f"{what} {value!r} is not a rational 'p/q'", json.dumps(value))
    try:
        return as_fraction(value.replace(" ", "") if isinstance(value, str) else value)
    except ZeroDivisionError:
        raise _fail(text, path, f"{what} {value!r} has a zero denominator", json.dumps(value)) from None


def name_table(names: set[str]) -> dict[str, int]:
    """Vertex ids: integer names keep their value, otherwise sorted rank."""
    if names and all(n.isdigit() for n in names):
        return {n: int(n) for n in names}
    return {n: i for i, n in enumerate(sorted(names))}


def loads_complex(text: str, path: str = "") -> ComplexDocument:
    doc = _load(text, path)
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", 1, 1, path)
    unknown = sorted(set(doc) - COMPLEX_FIELDS)
    if unknown:
        raise _fail(text, path, f"unknown field {unknown[0]!r}", json.dumps(unknown[0]))
    if doc.get("format", COMPLEX_FORMAT) != COMPLEX_FORMAT:
        raise _fail(text, path, f"format must be {COMPLEX_FORMAT!r}", '"format"')
    if doc.get("version", VERSION) != VERSION:
        raise _fail(text, path, f"unsupported version {doc.get('version')!r}", '"version"')
    facets = doc.get("facets")
    if not isinstance(facets, list):
        raise _fail(text, path, "'facets' must be a list of vertex-name lists", '"facets"')
    for f in facets:
        if not isinstance(f, list) or not f:
            raise _fail(text, path, f"facet {f!r} must be a non-empty list", '"facets"')
    extra = doc.get("vertices", [])
    if not isinstance(extra, list):
        raise _fail(text, path, "'vertices' must be a list", '"vertices"')
    names = {str(v) for f in facets for v in f} | {str(v) for v in extra}
    table = name_table(names)
    tops = [[table[str(v)] for v in f] for f in facets] + [[table[str(v)]] for v in extra]

    weights: dict[tuple[int, ...], Fraction] = {}
    for entry in doc.get("weights", []):
        if not isinstance(entry, dict) or set(entry) != {"face", "weight"}:
            raise _fail(text, path, "each weight entry needs exactly 'face' and 'weight'", '"weights"')
        face = entry["face"]
        if not isinstance(face, list) or any(str(v) not in table for v in face):
            raise _fail(text, path, f"weight given for unknown face {face!r}", '"weights"')
        weights[tuple(sorted(table[str(v)] for v in face))] = _rational(
            entry["weight"], text, path, "weight")
    default = _rational(doc.get("default_weight", 1), text, path, "default_weight")
    degenerate = doc.get("degenerate", False)
    if not isinstance(degenerate, bool):
        raise _fail(text, path, "'degenerate' must be true or false", '"degenerate"')
    K = build_complex(tops, weights, default, degenerate)
    return ComplexDocument(K, table)


def parse_complex_document(path: PathLike) -> ComplexDocument:
    p = Path(path)
    return loads_complex(p.read_text(encoding="utf-8"), str(p))


def parse_complex(path: PathLike) -> WeightedComplex:
    return parse_complex_document(path).complex


def _fraction_text(w: Fraction) -> str:
    return str(w.numerator) if w.denominator == 1 else f"{w.numerator}/{w.denominator}"


def complex_to_dict(K: WeightedComplex, labels: Optional[Mapping[int, str]] = None) -> dict[str, Any]:
    """Canonical document: maximal faces plus weights differing from the most common one."""
    lab = (lambda v: labels[v]) if labels else (lambda v: str(v))
    counts = Counter(K.weights.values())
    default = max(counts, key=lambda w: (counts[w], -abs(w - 1))) if counts else Fraction(1)
    tops = sorted(K.maximal_faces(), key=lambda f: (len(f), f))
    explicit = [{"face": [lab(v) for v in f], "weight": _fraction_text(K.weights[f])}
                for d in range(K.dim + 1) for f in K.n_faces(d) if K.weights[f] != default]
    doc: dict[str, Any] = {
        "format": COMPLEX_FORMAT,
        "version": VERSION,
        "facets": [[lab(v) for v in f] for f in tops],
        "default_weight": _fraction_text(default),
        "degenerate": K.degenerate_allowed,
    }
    if explicit:
        doc["weights"] = explicit
    return doc


def _compact(doc: dict[str, Any]) -> str:
    # one facet / weight entry per line
    lines = ["{"]
    items = list(doc.items())
    for i, (key, value) in enumerate(items):
        tail = "," if i < len(items) - 1 else ""
        if isinstance(value, list):
            inner = [json.dumps(v) for v in value]
            body = ",\n".join(f"    {x}" for x in inner)
            lines.append(f"  {json.dumps(key)}: [\n{body}\n  ]{tail}" if inner else f"  {json.dumps(key)}: []{tail}")
        else:
            lines.append(f"  {json.dumps(key)}: {json.dumps(value)}{tail}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def serialize(K: WeightedComplex, labels: Optional[Mapping[int, str]] = None) -> str:
    return _compact(complex_to_dict(K, labels))


def write_complex(K: WeightedComplex, path: PathLike, labels: Optional[Mapping[int, str]] = None) -> None:
    Path(path).write_text(serialize(K, labels), encoding="utf-8")


@dataclass(frozen=True)
class MapDocument:
    map: SimplicialMap
    source: ComplexDocument
    target: ComplexDocument


def loads_map(text: str, path: str = "", source: Optional[ComplexDocument] = None,
              target: Optional[ComplexDocument] = None) -> MapDocument:
    """Parse a map document; ``source``/``target`` override the referenced files."""
    doc = _load(text, path)
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", 1, 1, path)
    unknown = sorted(set(doc) - MAP_FIELDS)
    if unknown:
        raise _fail(text, path, f"unknown field {unknown[0]!r}", json.dumps(unknown[0]))
    if doc.get("format", MAP_FORMAT) != MAP_FORMAT:
        raise _fail(text, path, f"format must be {MAP_FORMAT!r}", '"format"')
    base = Path(path).parent if path else Path(".")

    def resolve(key: str, given: Optional[ComplexDocument]) -> ComplexDocument:
        if given is not None:
            return given
        ref = doc.get(key)
        if not isinstance(ref, str):
            raise _fail(text, path, f"'{key}' must name a complex file", f'"{key}"')
        return parse_complex_document(base / ref)

    src, tgt = resolve("source", source), resolve("target", target)
    pairs = doc.get("vertex_map")
    if isinstance(pairs, dict):
        pairs = list(pairs.items())
    if not isinstance(pairs, list) or any(not isinstance(p, list) and not isinstance(p, tuple) or len(p) != 2
                                          for p in pairs):
        raise _fail(text, path, "'vertex_map' must be a list of [source, target] name pairs",
                    '"vertex_map"')
    vmap: dict[int, int] = {}
    for a, b in pairs:
        a, b = str(a), str(b)
        if a not in src.names:
            raise _fail(text, path, f"unknown source vertex {a!r}", json.dumps(a))
        if b not in tgt.names:
            raise _fail(text, path, f"unknown target vertex {b!r}", json.dumps(b))
        vmap[src.names[a]] = tgt.names[b]
    unmapped = [src.labels[v] for v in src.complex.vertices if v not in vmap]
    if unmapped:
        raise _fail(text, path, f"source vertices without an image: {unmapped}", '"vertex_map"')
    return MapDocument(SimplicialMap(src.complex, tgt.complex, vmap), src, tgt)


def parse_map(path: PathLike, source: Optional[ComplexDocument] = None,
              target: Optional[ComplexDocument] = None) -> MapDocument:
    p = Path(path)
    return loads_map(p.read_text(encoding="utf-8"), str(p), source, target)


def map_to_dict(doc: MapDocument, source_ref: str, target_ref: str) -> dict[str, Any]:
    sl, tl = doc.source.labels, doc.target.labels
    return {
        "format": MAP_FORMAT,
        "version": VERSION,
        "source": source_ref,
        "target": target_ref,
        "vertex_map": [[sl[v], tl[w]] for v, w in sorted(doc.map.vertex_map.items())],
    }
