"""Parametric benchmark lattices: toric, Bravyi-Kitaev planar, and planar
lattices with rectangular holes of open/closed/mixed perimeter."""

from __future__ import annotations

from dataclasses import dataclass, field

from .cellulation import (
    BoundaryClass,
    DualSurface,
    Edge,
    Face,
    Surface,
    Vertex,
    derive_dual,
    validate,
)

__all__ = ["HoleSpec", "PlanarSpec", "gen_toric", "gen_bravyi_kitaev", "gen_planar"]

_OPEN = BoundaryClass.OPEN
_CLOSED = BoundaryClass.CLOSED
_INTERIOR = BoundaryClass.INTERIOR

_SIDE_NAMES = ("top", "right", "bottom", "left")


def gen_toric(d: int) -> tuple[Surface, DualSurface]:
    """Square lattice on the torus: d^2 vertices, 2d^2 edges, d^2 faces."""
    if d < 2:
        raise ValueError("toric lattice needs d >= 2")

    def vid(r, c):
        return (r % d) * d + (c % d)

    def h(r, c):  # edge (r,c)-(r,c+1)
        return (r % d) * d + (c % d)

    def v(r, c):  # edge (r,c)-(r+1,c)
        return d * d + (r % d) * d + (c % d)

    vertices = [Vertex(vid(r, c)) for r in range(d) for c in range(d)]
    edges = []
    for r in range(d):
        for c in range(d):
            edges.append(Edge(h(r, c), (vid(r, c), vid(r, c + 1))))
            edges.append(Edge(v(r, c), (vid(r, c), vid(r + 1, c))))
    faces = [
        Face(r * d + c, (h(r, c), h(r + 1, c), v(r, c), v(r, c + 1)))
        for r in range(d)
        for c in range(d)
    ]
    surface = Surface(tuple(vertices), tuple(edges), tuple(faces), name=f"toric-d{d}")
    return surface, derive_dual(surface)


def gen_bravyi_kitaev(d: int) -> tuple[Surface, DualSurface]:
    """Planar code on a d x (d+1) vertex grid.

    The leftmost and rightmost columns of vertical edges are open, the
    top and bottom rows of horizontal edges closed: n = d^2 + (d-1)^2,
    one logical qubit, minimum uncorrectable erasure weight d.
    """
    if d < 2:
        raise ValueError("bravyi-kitaev lattice needs d >= 2")
    cols = d + 1

    def vid(r, c):
        return r * cols + c

    def h(r, c):  # edge (r,c)-(r,c+1)
        return r * d + c

    def v(r, c):  # edge (r,c)-(r+1,c)
        return d * d + r * cols + c

    vertices = [
        Vertex(vid(r, c), open=(c == 0 or c == d)) for r in range(d) for c in range(cols)
    ]
    edges = []
    for r in range(d):
        for c in range(d):
            cls = _CLOSED if r in (0, d - 1) else _INTERIOR
            edges.append(Edge(h(r, c), (vid(r, c), vid(r, c + 1)), cls))
    for r in range(d - 1):
        for c in range(cols):
            cls = _OPEN if c in (0, d) else _INTERIOR
            edges.append(Edge(v(r, c), (vid(r, c), vid(r + 1, c)), cls))
    faces = [
        Face(r * d + c, (h(r, c), h(r + 1, c), v(r, c), v(r, c + 1)))
        for r in range(d - 1)
        for c in range(d)
    ]
    surface = Surface(tuple(vertices), tuple(edges), tuple(faces), name=f"bk-d{d}")
    return surface, derive_dual(surface)


@dataclass(frozen=True)
class HoleSpec:
    """Rectangle of faces to remove, with the perimeter edge classes.

    ``perimeter`` is either a uniform class or an explicit cyclic
    sequence, one class per perimeter edge, clockwise from the hole's
    top-left corner (top edges left-to-right first).
    """

    row: int
    col: int
    height: int
    width: int
    perimeter: BoundaryClass | tuple[BoundaryClass, ...] = _CLOSED

    @property
    def perimeter_length(self) -> int:
        return 2 * (self.height + self.width)

    def perimeter_classes(self) -> tuple[BoundaryClass, ...]:
        if isinstance(self.perimeter, BoundaryClass):
            return (self.perimeter,) * self.perimeter_length
        return tuple(self.perimeter)


@dataclass(frozen=True)
class PlanarSpec:
    """Rectangular cell lattice with per-side boundary classes and holes."""

    cell_rows: int
    cell_cols: int
    top: BoundaryClass = _CLOSED
    right: BoundaryClass = _CLOSED
    bottom: BoundaryClass = _CLOSED
    left: BoundaryClass = _CLOSED
    holes: tuple[HoleSpec, ...] = ()

    def side(self, name: str) -> BoundaryClass:
        return getattr(self, name)


def _check_planar_spec(spec: PlanarSpec) -> None:
    if spec.cell_rows < 1 or spec.cell_cols < 1:
        raise ValueError("lattice needs at least one cell in each direction")
    for name in _SIDE_NAMES:
        if spec.side(name) is _INTERIOR:
            raise ValueError(f"outer side {name!r} must be open or closed")
    sides = [spec.side(name) for name in _SIDE_NAMES]
    for i in range(4):
        if sides[i] is _OPEN and sides[(i + 1) % 4] is _OPEN:
            raise ValueError(
                "adjacent open sides would leave a corner vertex with no "
                f"qubit edge ({_SIDE_NAMES[i]}/{_SIDE_NAMES[(i + 1) % 4]})"
            )
    for hole in spec.holes:
        if hole.height < 1 or hole.width < 1:
            raise ValueError("hole dimensions must be positive")
        if not (
            1 <= hole.row
            and hole.row + hole.height <= spec.cell_rows - 1
            and 1 <= hole.col
            and hole.col + hole.width <= spec.cell_cols - 1
        ):
            raise ValueError(f"hole {hole} touches the outer boundary")
        classes = hole.perimeter_classes()
        if len(classes) != hole.perimeter_length:
            raise ValueError(
                f"hole perimeter needs {hole.perimeter_length} classes, got {len(classes)}"
            )
        if any(c is _INTERIOR for c in classes):
            raise ValueError("hole perimeter classes must be open or closed")
    for i, a in enumerate(spec.holes):
        for b in spec.holes[i + 1 :]:
            # one full ring of faces must separate holes
            if (
                a.row - 1 < b.row + b.height
                and b.row < a.row + a.height + 1
                and a.col - 1 < b.col + b.width
                and b.col < a.col + a.width + 1
            ):
                raise ValueError(f"holes {a} and {b} overlap or touch")


def gen_planar(spec: PlanarSpec) -> tuple[Surface, DualSurface]:
    """Build the planar lattice described by ``spec`` plus its dual."""
    _check_planar_spec(spec)
    rows, cols = spec.cell_rows, spec.cell_cols

    def vid(r, c):
        return r * (cols + 1) + c

    def h(r, c):  # edge (r,c)-(r,c+1), r in 0..rows, c in 0..cols-1
        return r * cols + c

    n_h = (rows + 1) * cols

    def v(r, c):  # edge (r,c)-(r+1,c), r in 0..rows-1, c in 0..cols+1-1
        return n_h + r * (cols + 1) + c

    holes = {
        (r, c)
        for hole in spec.holes
        for r in range(hole.row, hole.row + hole.height)
        for c in range(hole.col, hole.col + hole.width)
    }

    face_edges = {}
    for r in range(rows):
        for c in range(cols):
            if (r, c) in holes:
                continue
            face_edges[r * cols + c] = (h(r, c), h(r + 1, c), v(r, c), v(r, c + 1))

    incident: dict[int, int] = {}
    for eids in face_edges.values():
        for eid in eids:
            incident[eid] = incident.get(eid, 0) + 1

    hole_class: dict[int, BoundaryClass] = {}
    for hole in spec.holes:
        classes = hole.perimeter_classes()
        ring = []
        ring += [h(hole.row, c) for c in range(hole.col, hole.col + hole.width)]
        ring += [v(r, hole.col + hole.width) for r in range(hole.row, hole.row + hole.height)]
        ring += [
            h(hole.row + hole.height, c)
            for c in range(hole.col + hole.width - 1, hole.col - 1, -1)
        ]
        ring += [v(r, hole.col) for r in range(hole.row + hole.height - 1, hole.row - 1, -1)]
        hole_class.update(zip(ring, classes))

    def edge_class(eid, r, c, horizontal) -> BoundaryClass:
        if incident[eid] == 2:
            return _INTERIOR
        if eid in hole_class:
            return hole_class[eid]
        if horizontal:
            return spec.side("top") if r == 0 else spec.side("bottom")
        return spec.side("left") if c == 0 else spec.side("right")

    edges = []
    for r in range(rows + 1):
        for c in range(cols):
            eid = h(r, c)
            if eid in incident:
                edges.append(Edge(eid, (vid(r, c), vid(r, c + 1)), edge_class(eid, r, c, True)))
    for r in range(rows):
        for c in range(cols + 1):
            eid = v(r, c)
            if eid in incident:
                edges.append(Edge(eid, (vid(r, c), vid(r + 1, c)), edge_class(eid, r, c, False)))

    used_vertices: set[int] = set()
    open_vertices: set[int] = set()
    for e in edges:
        used_vertices.update(e.ends)
        if e.cls is _OPEN:
            open_vertices.update(e.ends)
    vertices = [Vertex(vidx, open=(vidx in open_vertices)) for vidx in sorted(used_vertices)]

    faces = [Face(fid, eids) for fid, eids in sorted(face_edges.items())]
    name = f"planar-{rows}x{cols}" + (f"-holes{len(spec.holes)}" if spec.holes else "")
    surface = Surface(tuple(vertices), tuple(edges), tuple(faces), name=name)
    report = validate(surface)
    if not report.ok:
        raise ValueError(f"planar spec produced an invalid surface: {report.summary()}")
    return surface, derive_dual(surface)
