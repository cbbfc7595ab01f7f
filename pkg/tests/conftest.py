"""Shared fixtures: hand-built surfaces and the property-test corpus."""

from __future__ import annotations

import numpy as np
import pytest

from squab import (
    BoundaryClass,
    DualSurface,
    Edge,
    ErasurePattern,
    Face,
    HoleSpec,
    PlanarSpec,
    Surface,
    Vertex,
    derive_dual,
    gen_bravyi_kitaev,
    gen_planar,
    gen_toric,
)

OPEN = BoundaryClass.OPEN
CLOSED = BoundaryClass.CLOSED
INTERIOR = BoundaryClass.INTERIOR


def genus2_surface() -> Surface:
    """Two d=3 tori glued along a removed face: closed, chi = -2."""
    a, _ = gen_toric(3)

    vmap = {100: 0, 103: 1, 104: 4, 101: 3}
    emap = {109: 0, 103: 10, 110: 3, 100: 9}

    vertices = list(a.vertices)
    for v in a.vertices:
        nid = v.id + 100
        if nid not in vmap:
            vertices.append(Vertex(nid))

    edges = list(a.edges)
    for e in a.edges:
        nid = e.id + 100
        if nid in emap:
            continue
        ends = tuple(vmap.get(x + 100, x + 100) for x in e.ends)
        edges.append(Edge(nid, ends, INTERIOR))

    faces = [f for f in a.faces if f.id != 0]
    for f in a.faces:
        if f.id == 0:
            continue
        eids = tuple(emap.get(x + 100, x + 100) for x in f.edges)
        faces.append(Face(f.id + 100, eids))

    return Surface(tuple(vertices), tuple(edges), tuple(faces), name="genus2")


def alternating_square() -> Surface:
    """One square face with alternating open/closed boundary (n=2, k=1)."""
    vertices = tuple(Vertex(i, open=True) for i in range(4))
    edges = (
        Edge(0, (0, 1), OPEN),
        Edge(1, (1, 2), CLOSED),
        Edge(2, (2, 3), OPEN),
        Edge(3, (3, 0), CLOSED),
    )
    faces = (Face(0, (0, 1, 2, 3)),)
    return Surface(vertices, edges, faces, name="alternating-square")


def single_square_disk() -> Surface:
    """One face, four closed boundary edges (chi = 1, k = 0)."""
    vertices = tuple(Vertex(i) for i in range(4))
    edges = tuple(Edge(i, (i, (i + 1) % 4), CLOSED) for i in range(4))
    return Surface(vertices, edges, (Face(0, (0, 1, 2, 3)),), name="square-disk")


def corpus_pairs() -> list[tuple[Surface, DualSurface]]:
    """Surfaces exercising every boundary flavor, paired with their duals."""
    pairs = []
    for d in (2, 3, 4):
        pairs.append(gen_toric(d))
    for d in (2, 3, 4):
        pairs.append(gen_bravyi_kitaev(d))
    pairs.append(gen_planar(PlanarSpec(4, 4)))
    pairs.append(gen_planar(PlanarSpec(6, 6, left=OPEN, right=OPEN)))
    pairs.append(gen_planar(PlanarSpec(3, 5, top=OPEN, bottom=OPEN)))
    pairs.append(gen_planar(PlanarSpec(1, 4, top=OPEN, bottom=OPEN)))
    pairs.append(gen_planar(PlanarSpec(6, 6, holes=(HoleSpec(2, 2, 2, 2, OPEN),))))
    pairs.append(gen_planar(PlanarSpec(6, 6, holes=(HoleSpec(2, 2, 2, 2, CLOSED),))))
    pairs.append(
        gen_planar(PlanarSpec(6, 8, holes=(HoleSpec(2, 1, 1, 2, OPEN), HoleSpec(2, 5, 2, 2, CLOSED))))
    )
    pairs.append(
        gen_planar(
            PlanarSpec(
                5,
                5,
                holes=(HoleSpec(2, 2, 1, 1, (OPEN, CLOSED, OPEN, CLOSED)),),
            )
        )
    )
    pairs.append(
        gen_planar(
            PlanarSpec(
                6,
                6,
                top=OPEN,
                bottom=OPEN,
                holes=(HoleSpec(2, 2, 2, 2, (CLOSED, OPEN) * 4),),
            )
        )
    )
    for s in (genus2_surface(), alternating_square(), single_square_disk()):
        pairs.append((s, derive_dual(s)))
    return pairs


def random_pattern(surface: Surface, p: float, rng: np.random.Generator) -> ErasurePattern:
    return ErasurePattern(rng.random(surface.n_qubits) < p)


@pytest.fixture(scope="session")
def corpus():
    return corpus_pairs()


@pytest.fixture()
def genus2():
    return genus2_surface()
