"""Combinatorial surfaces with open/closed boundaries.

A surface is a cellulation (V, E, F): edges are unordered vertex pairs,
faces are sets of edge ids.  Edges on the boundary (incident to exactly
one face) are classed either open or closed; interior edges touch exactly
two faces.  Qubits live on the non-open edges, ordered by ascending edge
id (the qubit index used by every bit-vector downstream).

Surfaces are immutable after construction and safe to share across
threads.  Derived structure (index maps, packed arrays for the component
kernels) is computed lazily and cached.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

__all__ = [
    "BoundaryClass",
    "Vertex",
    "Edge",
    "Face",
    "Surface",
    "DualSurface",
    "Violation",
    "ValidationReport",
    "InvalidSurfaceError",
    "validate",
    "derive_dual",
    "euler_characteristic",
    "filtered_components",
]


class BoundaryClass(enum.Enum):
    """Edge classification: interior, closed boundary, or open boundary.

    Interior and closed-boundary edges each carry one qubit; open edges
    carry none.
    """

    INTERIOR = "interior"
    CLOSED = "closed"
    OPEN = "open"


@dataclass(frozen=True)
class Vertex:
    id: int
    open: bool = False


@dataclass(frozen=True)
class Edge:
    id: int
    ends: tuple[int, int]
    cls: BoundaryClass = BoundaryClass.INTERIOR

    def __post_init__(self):
        # Edges are unoriented; store endpoints in canonical order.
        u, v = self.ends
        if u > v:
            object.__setattr__(self, "ends", (v, u))


@dataclass(frozen=True)
class Face:
    id: int
    edges: tuple[int, ...]

    def __post_init__(self):
        # Faces are edge sets (no orientation); canonical order, keep
        # multiplicity so validation can flag repeats.
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))


@dataclass(frozen=True)
class Violation:
    rule: str
    element: str

    def __str__(self):
        return f"{self.rule}: {self.element}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        if self.ok:
            return "ok"
        return "; ".join(str(v) for v in self.violations)


class InvalidSurfaceError(ValueError):
    """Raised when an operation requires a valid surface but got violations."""

    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__(f"invalid surface: {report.summary()}")


@dataclass(frozen=True)
class Surface:
    """Immutable cellulation with per-edge boundary classes.

    Vertices carry an explicit open flag; validation checks it is
    consistent with the open edges (a vertex is open iff it is an
    endpoint of at least one open edge).
    """

    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    faces: tuple[Face, ...]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices, key=lambda v: v.id)))
        object.__setattr__(self, "edges", tuple(sorted(self.edges, key=lambda e: e.id)))
        object.__setattr__(self, "faces", tuple(sorted(self.faces, key=lambda f: f.id)))

    # -- basic indexes ----------------------------------------------------

    @cached_property
    def vertex_by_id(self) -> Mapping[int, Vertex]:
        return {v.id: v for v in self.vertices}

    @cached_property
    def edge_by_id(self) -> Mapping[int, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def face_by_id(self) -> Mapping[int, Face]:
        return {f.id: f for f in self.faces}

    @cached_property
    def qubit_edge_ids(self) -> tuple[int, ...]:
        """Non-open edge ids in ascending order: qubit i lives on edge [i]."""
        return tuple(e.id for e in self.edges if e.cls is not BoundaryClass.OPEN)

    @cached_property
    def qubit_position(self) -> Mapping[int, int]:
        """Inverse of qubit_edge_ids: edge id -> qubit index."""
        return {eid: i for i, eid in enumerate(self.qubit_edge_ids)}

    @property
    def n_qubits(self) -> int:
        return len(self.qubit_edge_ids)

    @cached_property
    def edge_faces(self) -> Mapping[int, tuple[int, ...]]:
        """Face ids incident to each edge id (by listed membership)."""
        inc: dict[int, list[int]] = {e.id: [] for e in self.edges}
        for f in self.faces:
            for eid in f.edges:
                if eid in inc:
                    inc[eid].append(f.id)
        return {eid: tuple(fids) for eid, fids in inc.items()}

    @cached_property
    def open_vertex_ids(self) -> frozenset[int]:
        return frozenset(v.id for v in self.vertices if v.open)

    @property
    def n_nonopen_vertices(self) -> int:
        return len(self.vertices) - len(self.open_vertex_ids)

    # -- packed arrays for the component kernels --------------------------

    @cached_property
    def arrays(self) -> "SurfaceArrays":
        vpos = {v.id: i for i, v in enumerate(self.vertices)}
        n = self.n_qubits
        eu = np.empty(n, dtype=np.int32)
        ev = np.empty(n, dtype=np.int32)
        for i, eid in enumerate(self.qubit_edge_ids):
            u, v = self.edge_by_id[eid].ends
            eu[i] = vpos[u]
            ev[i] = vpos[v]
        vopen = np.fromiter((v.open for v in self.vertices), dtype=np.bool_, count=len(self.vertices))
        eu.setflags(write=False)
        ev.setflags(write=False)
        vopen.setflags(write=False)
        return SurfaceArrays(
            n_vertices=len(self.vertices),
            edge_u=eu,
            edge_v=ev,
            vertex_open=vopen,
            n_nonopen_vertices=self.n_nonopen_vertices,
            boundary_free_face_components=_boundary_free_face_components(self),
        )

    @cached_property
    def validation(self) -> ValidationReport:
        return _validate(self)

    def __repr__(self):
        return (
            f"Surface(name={self.name!r}, |V|={len(self.vertices)}, "
            f"|E|={len(self.edges)}, |F|={len(self.faces)}, n={self.n_qubits})"
        )


@dataclass(frozen=True)
class SurfaceArrays:
    """Packed per-surface data consumed by the union-find kernels."""

    n_vertices: int
    edge_u: np.ndarray
    edge_v: np.ndarray
    vertex_open: np.ndarray
    n_nonopen_vertices: int
    # Number of face-glued components free of closed-boundary edges: the
    # erasure-independent term of the homology rank formula.
    boundary_free_face_components: int


@dataclass(frozen=True)
class DualSurface:
    """Generalized dual lattice paired with the qubit bijection.

    ``edge_map`` lists (primal edge id, dual edge id) pairs covering every
    qubit edge of both surfaces exactly once.
    """

    dual: Surface
    edge_map: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "edge_map", tuple(sorted(self.edge_map)))

    @cached_property
    def dual_edge_of(self) -> Mapping[int, int]:
        return dict(self.edge_map)

    @cached_property
    def primal_edge_of(self) -> Mapping[int, int]:
        return {d: p for p, d in self.edge_map}

    def qubit_permutation(self, primal: Surface) -> np.ndarray:
        """perm[i] = dual qubit index of primal qubit i."""
        dual_pos = self.dual.qubit_position
        perm = np.empty(primal.n_qubits, dtype=np.int64)
        for i, eid in enumerate(primal.qubit_edge_ids):
            perm[i] = dual_pos[self.dual_edge_of[eid]]
        perm.setflags(write=False)
        return perm

    def reversed(self, primal: Surface) -> "DualSurface":
        """The same pairing viewed from the dual side (dual of the dual)."""
        return DualSurface(dual=primal, edge_map=tuple((d, p) for p, d in self.edge_map))


# -- validation ------------------------------------------------------------

_REQUIRED_FACE_COUNT = {BoundaryClass.INTERIOR: 2, BoundaryClass.CLOSED: 1, BoundaryClass.OPEN: 1}


def validate(surface: Surface) -> ValidationReport:
    """Check every structural axiom; violations are data, not errors."""
    return surface.validation


def _validate(surface: Surface) -> ValidationReport:
    out: list[Violation] = []

    seen: set[int] = set()
    for v in surface.vertices:
        if v.id in seen:
            out.append(Violation("duplicate-id", f"vertex {v.id}"))
        seen.add(v.id)
    seen = set()
    for e in surface.edges:
        if e.id in seen:
            out.append(Violation("duplicate-id", f"edge {e.id}"))
        seen.add(e.id)
    seen = set()
    for f in surface.faces:
        if f.id in seen:
            out.append(Violation("duplicate-id", f"face {f.id}"))
        seen.add(f.id)

    for e in surface.edges:
        for vid in e.ends:
            if vid not in surface.vertex_by_id:
                out.append(Violation("unknown-vertex", f"edge {e.id} endpoint {vid}"))

    for f in surface.faces:
        if not f.edges:
            out.append(Violation("empty-face", f"face {f.id}"))
        for eid, nxt in zip(f.edges, f.edges[1:]):
            if eid == nxt:
                out.append(Violation("repeated-edge-in-face", f"face {f.id} edge {eid}"))
        for eid in f.edges:
            if eid not in surface.edge_by_id:
                out.append(Violation("unknown-edge", f"face {f.id} edge {eid}"))

    if out:
        # Incidence and flag rules assume resolvable references.
        return ValidationReport(tuple(out))

    for e in surface.edges:
        deg = len(surface.edge_faces[e.id])
        if deg != _REQUIRED_FACE_COUNT[e.cls]:
            out.append(
                Violation("incidence-degree", f"edge {e.id} ({e.cls.value}) lies on {deg} faces")
            )

    # Open flags are determined by the open edges.
    should_be_open: set[int] = set()
    for e in surface.edges:
        if e.cls is BoundaryClass.OPEN:
            should_be_open.update(e.ends)
    for v in surface.vertices:
        if v.open != (v.id in should_be_open):
            expected = "open" if v.id in should_be_open else "non-open"
            out.append(Violation("open-vertex-flag", f"vertex {v.id} should be {expected}"))

    # Every vertex needs at least one qubit-carrying edge; vertices seeing
    # only open edges would contribute degenerate components to the
    # component counts.
    touched: set[int] = set()
    for e in surface.edges:
        if e.cls is not BoundaryClass.OPEN:
            touched.update(e.ends)
    for v in surface.vertices:
        if v.id not in touched:
            out.append(Violation("open-only-vertex", f"vertex {v.id}"))

    # Face boundaries must close up over the non-open vertices, otherwise
    # the boundary maps do not compose to zero and the homology quotient
    # is undefined.
    open_vertices = should_be_open
    for f in surface.faces:
        parity: dict[int, int] = {}
        for eid in f.edges:
            e = surface.edge_by_id[eid]
            if e.cls is BoundaryClass.OPEN:
                continue
            for vid in set(e.ends) if e.ends[0] != e.ends[1] else ():
                parity[vid] = parity.get(vid, 0) ^ 1
        for vid, odd in parity.items():
            if odd and vid not in open_vertices:
                out.append(Violation("face-parity", f"face {f.id} at vertex {vid}"))

    return ValidationReport(tuple(out))


def euler_characteristic(surface: Surface) -> int:
    """|V| - |E| + |F| over the full vertex/edge/face sets."""
    report = validate(surface)
    if not report.ok:
        raise InvalidSurfaceError(report)
    return len(surface.vertices) - len(surface.edges) + len(surface.faces)


# -- generic filtered component count ---------------------------------------


def filtered_components(
    vertices: Iterable,
    edges: Iterable[tuple],
    *,
    forbidden_vertices: Iterable = (),
    forbidden_edges: Iterable[tuple] = (),
) -> int:
    """Count connected components containing no forbidden element.

    Isolated vertices count as components.  A component is excluded when
    it contains a forbidden vertex or any edge listed (as an unordered
    pair) in ``forbidden_edges``.
    """
    idx = {v: i for i, v in enumerate(vertices)}
    parent = list(range(len(idx)))
    poisoned = [False] * len(idx)

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for v in forbidden_vertices:
        poisoned[idx[v]] = True

    bad_edges = {frozenset(pair) for pair in forbidden_edges}
    for u, v in edges:
        ru, rv = find(idx[u]), find(idx[v])
        bad = frozenset((u, v)) in bad_edges
        if ru != rv:
            parent[ru] = rv
            poisoned[rv] = poisoned[rv] or poisoned[ru]
            ru = rv
        if bad:
            poisoned[ru] = True

    count = 0
    for i in range(len(parent)):
        if find(i) == i and not poisoned[find(i)]:
            count += 1
    return count


def _boundary_free_face_components(surface: Surface) -> int:
    """Components of the face-gluing graph containing no closed edge.

    Faces are glued along shared non-open edges.  For a genuine surface
    this counts the connected components of the cellulation that have no
    closed boundary, which is the erasure-independent term of the rank
    formula.
    """
    fids = [f.id for f in surface.faces]
    glue: list[tuple[int, int]] = []
    poisoned: set[int] = set()
    for e in surface.edges:
        if e.cls is BoundaryClass.OPEN:
            continue
        inc = surface.edge_faces[e.id]
        if len(inc) == 2:
            glue.append((inc[0], inc[1]))
        if e.cls is BoundaryClass.CLOSED:
            poisoned.update(inc)
    return filtered_components(fids, glue, forbidden_vertices=poisoned)


# -- generalized dual --------------------------------------------------------


def derive_dual(surface: Surface) -> DualSurface:
    """Construct the generalized dual lattice G* with the qubit bijection.

    Construction: one non-open dual vertex per face; one open dual vertex
    per maximal closed-boundary segment (closed edges glued at vertices
    not incident to any open edge); every qubit edge dualizes, interior
    edges joining their two face-vertices and closed edges joining their
    face-vertex to the segment vertex.  Dual faces are the edge stars of
    the non-open primal vertices.  Dual edge classes follow dual-face
    incidence (two faces: interior, otherwise closed), which swaps the
    open and closed boundary types.  Dual edges reuse the primal edge ids,
    so the qubit bijection is the identity on edge ids.
    """
    report = validate(surface)
    if not report.ok:
        raise InvalidSurfaceError(report)

    face_vertex = {f.id: f.id for f in surface.faces}
    next_id = max((f.id for f in surface.faces), default=-1) + 1

    # Maximal closed-boundary segments: closed edges connected through
    # vertices that no open edge touches.
    closed_edges = [e for e in surface.edges if e.cls is BoundaryClass.CLOSED]
    open_touched = surface.open_vertex_ids
    seg_parent: dict[int, int] = {e.id: e.id for e in closed_edges}

    def seg_find(x: int) -> int:
        while seg_parent[x] != x:
            seg_parent[x] = seg_parent[seg_parent[x]]
            x = seg_parent[x]
        return x

    at_vertex: dict[int, int] = {}
    for e in closed_edges:
        for vid in e.ends:
            if vid in open_touched:
                continue
            if vid in at_vertex:
                seg_parent[seg_find(at_vertex[vid])] = seg_find(e.id)
            else:
                at_vertex[vid] = e.id

    segment_vertex: dict[int, int] = {}
    for root in sorted({seg_find(e.id) for e in closed_edges}):
        segment_vertex[root] = next_id
        next_id += 1

    dual_vertices = [Vertex(fid, open=False) for fid in sorted(face_vertex)]
    dual_vertices += [Vertex(vid, open=True) for vid in sorted(segment_vertex.values())]

    # Dual faces are the stars of non-open primal vertices (same ids).
    star: dict[int, list[int]] = {
        v.id: [] for v in surface.vertices if not v.open
    }
    dual_face_count: dict[int, int] = {e.id: 0 for e in surface.edges}
    for e in surface.edges:
        if e.cls is BoundaryClass.OPEN or e.ends[0] == e.ends[1]:
            continue  # self-loops have even incidence everywhere
        for vid in e.ends:
            if vid in star:
                star[vid].append(e.id)
                dual_face_count[e.id] += 1

    dual_edges = []
    for e in surface.edges:
        inc = surface.edge_faces[e.id]
        if e.cls is BoundaryClass.INTERIOR:
            ends = (face_vertex[inc[0]], face_vertex[inc[1]])
        elif e.cls is BoundaryClass.CLOSED:
            ends = (face_vertex[inc[0]], segment_vertex[seg_find(e.id)])
        else:
            continue  # open edges carry no qubit and have no dual
        cls = BoundaryClass.INTERIOR if dual_face_count[e.id] == 2 else BoundaryClass.CLOSED
        dual_edges.append(Edge(e.id, ends, cls))

    dual_faces = [Face(vid, tuple(eids)) for vid, eids in sorted(star.items())]

    dual = Surface(
        vertices=tuple(dual_vertices),
        edges=tuple(dual_edges),
        faces=tuple(dual_faces),
        name=f"{surface.name}*" if surface.name else "dual",
    )
    edge_map = tuple((eid, eid) for eid in surface.qubit_edge_ids)
    return DualSurface(dual=dual, edge_map=edge_map)
