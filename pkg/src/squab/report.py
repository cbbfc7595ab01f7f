"""Code parameter reports: n, k, stabilizer weights, boundary census."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .cellulation import BoundaryClass, DualSurface, Surface
from .homology import logical_qubit_count

__all__ = ["CodeReport", "build_code_report"]


@dataclass(frozen=True)
class CodeReport:
    """Parameters of the surface code defined by a lattice.

    The X weight histogram covers the vertex operators (one per non-open
    vertex), the Z histogram the face operators; weights count the qubit
    edges each operator acts on.
    """

    name: str
    n: int
    k: int
    x_weights: dict[int, int]
    z_weights: dict[int, int]
    boundary: dict[str, int]
    n_vertices: int
    n_edges: int
    n_faces: int

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "k": self.k,
            "x_weight_histogram": {str(w): c for w, c in sorted(self.x_weights.items())},
            "z_weight_histogram": {str(w): c for w, c in sorted(self.z_weights.items())},
            "boundary": dict(self.boundary),
            "counts": {
                "vertices": self.n_vertices,
                "edges": self.n_edges,
                "faces": self.n_faces,
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":")) + "\n"

    def render_text(self) -> str:
        def hist(h: dict[int, int]) -> str:
            if not h:
                return "(none)"
            return "  ".join(f"w{w}:{c}" for w, c in sorted(h.items()))

        lines = [
            f"code:     {self.name or '(unnamed)'}",
            f"n:        {self.n} physical qubits",
            f"k:        {self.k} logical qubits",
            f"lattice:  {self.n_vertices} vertices, {self.n_edges} edges, {self.n_faces} faces",
            f"boundary: {self.boundary['closed']} closed, {self.boundary['open']} open, "
            f"{self.boundary['interior']} interior",
            f"X weights: {hist(self.x_weights)}",
            f"Z weights: {hist(self.z_weights)}",
        ]
        return "\n".join(lines) + "\n"


def build_code_report(surface: Surface, dual: DualSurface) -> CodeReport:
    degree = {v.id: 0 for v in surface.vertices}
    for e in surface.edges:
        if e.cls is BoundaryClass.OPEN or e.ends[0] == e.ends[1]:
            continue  # self-loops act twice and cancel
        degree[e.ends[0]] += 1
        degree[e.ends[1]] += 1
    x_weights: dict[int, int] = {}
    for v in surface.vertices:
        if not v.open:
            w = degree[v.id]
            x_weights[w] = x_weights.get(w, 0) + 1

    z_weights: dict[int, int] = {}
    qubit_edges = set(surface.qubit_edge_ids)
    for f in surface.faces:
        w = sum(1 for eid in f.edges if eid in qubit_edges)
        z_weights[w] = z_weights.get(w, 0) + 1

    boundary = {"interior": 0, "closed": 0, "open": 0}
    for e in surface.edges:
        boundary[e.cls.value] += 1

    return CodeReport(
        name=surface.name,
        n=surface.n_qubits,
        k=logical_qubit_count(surface, dual),
        x_weights=x_weights,
        z_weights=z_weights,
        boundary=boundary,
        n_vertices=len(surface.vertices),
        n_edges=len(surface.edges),
        n_faces=len(surface.faces),
    )
