"""Cellulation file format (UTF-8 JSON, extension ``.squab.json``).

Top-level object: ``format_version`` (1), ``name``, ``vertices``,
``edges``, ``faces``, and an optional ``dual`` block carrying an explicit
dual cellulation plus the qubit edge bijection.  ``save`` emits a
canonical byte form (sorted ids, sorted keys, compact separators), so
``save . load`` is the identity on canonical payloads and ``load . save``
is the identity on surfaces.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .cellulation import BoundaryClass, DualSurface, Edge, Face, Surface, Vertex

__all__ = ["ParseError", "CellulationDocument", "load", "load_document", "save"]

FORMAT_VERSION = 1

_KNOWN_TOP = {"format_version", "name", "vertices", "edges", "faces", "dual", "layout"}
_KNOWN_DUAL = {"vertices", "edges", "faces", "edge_map"}


class ParseError(ValueError):
    """Malformed payload; ``where`` points at the offending field."""

    def __init__(self, code: str, where: str, detail: str = ""):
        self.code = code
        self.where = where
        msg = f"{code} at {where}" + (f": {detail}" if detail else "")
        super().__init__(msg)


@dataclass(frozen=True)
class CellulationDocument:
    """A loaded file: the surface plus the optional explicit dual."""

    surface: Surface
    dual: DualSurface | None = None


def _require(obj, key, typ, where):
    if not isinstance(obj, dict):
        raise ParseError("wrong-type", where, "expected an object")
    if key not in obj:
        raise ParseError("missing-field", f"{where}.{key}")
    val = obj[key]
    if typ is int and isinstance(val, bool):
        raise ParseError("wrong-type", f"{where}.{key}", "expected an integer")
    if not isinstance(val, typ):
        raise ParseError("wrong-type", f"{where}.{key}", f"expected {typ.__name__}")
    return val


def _parse_id(obj, where) -> int:
    val = _require(obj, "id", int, where)
    if val < 0:
        raise ParseError("negative-id", f"{where}.id")
    return val


def _check_unknown(obj, known, where, strict):
    if strict and isinstance(obj, dict):
        for key in obj:
            if key not in known:
                raise ParseError("unknown-field", f"{where}.{key}")


def _parse_sections(doc, where, strict) -> tuple[tuple[Vertex, ...], tuple[Edge, ...], tuple[Face, ...]]:
    vertices = []
    seen: set[int] = set()
    for i, item in enumerate(_require(doc, "vertices", list, where)):
        at = f"{where}.vertices[{i}]"
        vid = _parse_id(item, at)
        if vid in seen:
            raise ParseError("duplicate-id", at, f"vertex {vid}")
        seen.add(vid)
        is_open = item.get("open", False)
        if not isinstance(is_open, bool):
            raise ParseError("wrong-type", f"{at}.open", "expected a boolean")
        _check_unknown(item, {"id", "open"}, at, strict)
        vertices.append(Vertex(vid, open=is_open))

    edges = []
    seen = set()
    for i, item in enumerate(_require(doc, "edges", list, where)):
        at = f"{where}.edges[{i}]"
        eid = _parse_id(item, at)
        if eid in seen:
            raise ParseError("duplicate-id", at, f"edge {eid}")
        seen.add(eid)
        ends = _require(item, "ends", list, at)
        if len(ends) != 2 or not all(isinstance(x, int) and not isinstance(x, bool) for x in ends):
            raise ParseError("wrong-type", f"{at}.ends", "expected two vertex ids")
        cls_name = _require(item, "class", str, at)
        try:
            cls = BoundaryClass(cls_name)
        except ValueError:
            raise ParseError("unknown-class", f"{at}.class", cls_name) from None
        _check_unknown(item, {"id", "ends", "class"}, at, strict)
        edges.append(Edge(eid, (ends[0], ends[1]), cls))

    faces = []
    seen = set()
    for i, item in enumerate(_require(doc, "faces", list, where)):
        at = f"{where}.faces[{i}]"
        fid = _parse_id(item, at)
        if fid in seen:
            raise ParseError("duplicate-id", at, f"face {fid}")
        seen.add(fid)
        eids = _require(item, "edges", list, at)
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in eids):
            raise ParseError("wrong-type", f"{at}.edges", "expected edge ids")
        faces.append(Face(fid, tuple(eids)))

    return tuple(vertices), tuple(edges), tuple(faces)


def load_document(payload: bytes | str, *, strict: bool = False) -> CellulationDocument:
    """Parse a cellulation file; an explicit dual block, when present,
    overrides dual derivation."""
    if isinstance(payload, bytes):
        try:
            payload = payload.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError("bad-encoding", "payload", str(exc)) from None
    try:
        doc = json.loads(payload)
    except json.JSONDecodeError as exc:
        raise ParseError("bad-json", f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    if not isinstance(doc, dict):
        raise ParseError("wrong-type", "$", "expected a top-level object")

    version = _require(doc, "format_version", int, "$")
    if version != FORMAT_VERSION:
        raise ParseError("unsupported-version", "$.format_version", str(version))
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise ParseError("wrong-type", "$.name", "expected a string")
    _check_unknown(doc, _KNOWN_TOP - ({"layout"} if strict else set()), "$", strict)

    vertices, edges, faces = _parse_sections(doc, "$", strict)
    surface = Surface(vertices, edges, faces, name=name)

    dual = None
    if "dual" in doc:
        dblock = doc["dual"]
        _check_unknown(dblock, _KNOWN_DUAL, "$.dual", strict)
        dvertices, dedges, dfaces = _parse_sections(dblock, "$.dual", strict)
        dual_surface = Surface(dvertices, dedges, dfaces, name=f"{name}*" if name else "dual")
        raw_map = _require(dblock, "edge_map", list, "$.dual")
        pairs = []
        for i, pair in enumerate(raw_map):
            if (
                not isinstance(pair, list)
                or len(pair) != 2
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in pair)
            ):
                raise ParseError("wrong-type", f"$.dual.edge_map[{i}]", "expected [primal, dual]")
            pairs.append((pair[0], pair[1]))
        _check_bijection(surface, dual_surface, pairs)
        dual = DualSurface(dual=dual_surface, edge_map=tuple(pairs))

    return CellulationDocument(surface=surface, dual=dual)


def _check_bijection(surface: Surface, dual_surface: Surface, pairs) -> None:
    primal_side = [p for p, _ in pairs]
    dual_side = [d for _, d in pairs]
    if sorted(primal_side) != sorted(surface.qubit_edge_ids):
        raise ParseError(
            "bad-edge-map", "$.dual.edge_map", "primal side must cover every qubit edge once"
        )
    if sorted(dual_side) != sorted(dual_surface.qubit_edge_ids):
        raise ParseError(
            "bad-edge-map", "$.dual.edge_map", "dual side must cover every dual qubit edge once"
        )


def load(payload: bytes | str, *, strict: bool = False) -> Surface:
    """Parse a cellulation file and return the primal surface."""
    return load_document(payload, strict=strict).surface


def _surface_sections(surface: Surface) -> dict:
    return {
        "vertices": [{"id": v.id, "open": v.open} for v in surface.vertices],
        "edges": [
            {"id": e.id, "ends": [e.ends[0], e.ends[1]], "class": e.cls.value}
            for e in surface.edges
        ],
        "faces": [{"id": f.id, "edges": list(f.edges)} for f in surface.faces],
    }


def save(surface: Surface, dual: DualSurface | None = None, *, name: str | None = None) -> bytes:
    """Serialize to the canonical byte form."""
    doc = {"format_version": FORMAT_VERSION, "name": name if name is not None else surface.name}
    doc.update(_surface_sections(surface))
    if dual is not None:
        dblock = _surface_sections(dual.dual)
        dblock["edge_map"] = [[p, d] for p, d in dual.edge_map]
        doc["dual"] = dblock
    return (json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n").encode("utf-8")
