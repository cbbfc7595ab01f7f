"""Erasure correctability via the induced homology rank.

The rank of the homology covered by an erasure pattern is assembled from
five linear-time quantities: the erasure weight, the non-open vertex
count, two filtered component counts (erased subgraph of the lattice,
complement subgraph of the dual), and a constant counting
closed-boundary-free components.  An erasure is correctable exactly when
the primal and dual ranks are both zero.

``oracle_h1`` recomputes the same rank by GF(2) Gaussian elimination on
the boundary matrices of the chain complex.  It shares no code with the
component-count path and is the reference the fast path is tested
against.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import engine
from .cellulation import BoundaryClass, DualSurface, Surface

__all__ = [
    "ErasurePattern",
    "Verdict",
    "BoundaryMaps",
    "induced_h1",
    "is_correctable",
    "logical_qubit_count",
    "boundary_maps",
    "oracle_h1",
    "gf2_rank",
]


@dataclass(frozen=True, eq=False)
class ErasurePattern:
    """Bit vector over the qubit index of a surface (1 = erased)."""

    bits: np.ndarray

    def __post_init__(self):
        arr = np.array(self.bits, dtype=np.bool_, copy=True)
        arr.setflags(write=False)
        object.__setattr__(self, "bits", arr)

    @classmethod
    def none(cls, surface: Surface) -> "ErasurePattern":
        return cls(np.zeros(surface.n_qubits, dtype=np.bool_))

    @classmethod
    def full(cls, surface: Surface) -> "ErasurePattern":
        return cls(np.ones(surface.n_qubits, dtype=np.bool_))

    @classmethod
    def from_edge_ids(cls, surface: Surface, edge_ids: Iterable[int]) -> "ErasurePattern":
        bits = np.zeros(surface.n_qubits, dtype=np.bool_)
        pos = surface.qubit_position
        for eid in edge_ids:
            bits[pos[eid]] = True
        return cls(bits)

    @classmethod
    def from_qubits(cls, n: int, qubits: Iterable[int]) -> "ErasurePattern":
        bits = np.zeros(n, dtype=np.bool_)
        for q in qubits:
            bits[q] = True
        return cls(bits)

    @property
    def weight(self) -> int:
        return int(np.count_nonzero(self.bits))

    def __len__(self) -> int:
        return len(self.bits)

    def __eq__(self, other):
        return isinstance(other, ErasurePattern) and np.array_equal(self.bits, other.bits)

    def __or__(self, other: "ErasurePattern") -> "ErasurePattern":
        return ErasurePattern(self.bits | other.bits)

    def __repr__(self):
        return f"ErasurePattern(n={len(self.bits)}, weight={self.weight})"


@dataclass(frozen=True)
class Verdict:
    """Outcome of the correctability check.

    ``h1_primal`` counts independent covered Z-type logical operators,
    ``h1_dual`` the X-type ones; the erasure is correctable iff both are
    zero.
    """

    correctable: bool
    h1_primal: int
    h1_dual: int


def _check_length(surface: Surface, pattern: ErasurePattern) -> None:
    if len(pattern) != surface.n_qubits:
        raise ValueError(
            f"erasure length {len(pattern)} does not match qubit count {surface.n_qubits}"
        )


def induced_h1(surface: Surface, dual: DualSurface, pattern: ErasurePattern) -> int:
    """Rank of the homology covered by the erased qubits (primal side)."""
    _check_length(surface, pattern)
    pair = engine.build_pair_arrays(surface, dual)
    return engine.h1_from_bits(pair, pattern.bits)


def is_correctable(surface: Surface, dual: DualSurface, pattern: ErasurePattern) -> Verdict:
    """Decide correctability: both homology ranks must vanish."""
    _check_length(surface, pattern)
    pair = engine.build_pair_arrays(surface, dual)
    h1p = engine.h1_from_bits(pair, pattern.bits)
    h1d = engine.h1_from_bits(pair.swapped(), pattern.bits)
    return Verdict(correctable=(h1p + h1d == 0), h1_primal=h1p, h1_dual=h1d)


def logical_qubit_count(surface: Surface, dual: DualSurface) -> int:
    """Number of logical qubits: rank covered by the full edge set."""
    return induced_h1(surface, dual, ErasurePattern.full(surface))


# -- GF(2) oracle -------------------------------------------------------------


def gf2_rank(rows: Sequence[int]) -> int:
    """Rank over GF(2) of a matrix given as per-row bit masks."""
    basis: dict[int, int] = {}
    rank = 0
    for row in rows:
        r = row
        while r:
            msb = r.bit_length() - 1
            if msb in basis:
                r ^= basis[msb]
            else:
                basis[msb] = r
                rank += 1
                break
    return rank


@dataclass(frozen=True)
class BoundaryMaps:
    """Dense GF(2) boundary matrices of the chain complex.

    ``d1`` maps qubit edges to non-open vertices (rows = non-open
    vertices, columns = qubit index); ``d2`` maps faces to qubit edges
    (rows = qubit index, columns = faces).  Their product vanishes on
    every valid surface.
    """

    d1: np.ndarray
    d2: np.ndarray
    vertex_rows: tuple[int, ...]
    face_cols: tuple[int, ...]

    def composition_is_zero(self) -> bool:
        return not ((self.d1.astype(np.uint8) @ self.d2.astype(np.uint8)) % 2).any()


def boundary_maps(surface: Surface) -> BoundaryMaps:
    """Build the boundary matrices of a surface's chain complex."""
    n = surface.n_qubits
    nonopen = [v.id for v in surface.vertices if not v.open]
    vrow = {vid: i for i, vid in enumerate(nonopen)}
    d1 = np.zeros((len(nonopen), n), dtype=np.uint8)
    for i, eid in enumerate(surface.qubit_edge_ids):
        u, v = surface.edge_by_id[eid].ends
        if u in vrow:
            d1[vrow[u], i] ^= 1
        if v in vrow:
            d1[vrow[v], i] ^= 1
    qpos = surface.qubit_position
    d2 = np.zeros((n, len(surface.faces)), dtype=np.uint8)
    for j, f in enumerate(surface.faces):
        for eid in f.edges:
            if eid in qpos:
                d2[qpos[eid], j] ^= 1
    return BoundaryMaps(
        d1=d1, d2=d2, vertex_rows=tuple(nonopen), face_cols=tuple(f.id for f in surface.faces)
    )


def oracle_h1(surface: Surface, pattern: ErasurePattern) -> int:
    """Homology rank from boundary-matrix ranks (test oracle, O(n^3)).

    dim {cycles supported in the erasure} minus dim {boundaries supported
    in the erasure}; independent of the component-count path.  Intended
    for surfaces up to a couple thousand edges.
    """
    _check_length(surface, pattern)
    n = surface.n_qubits
    maps = boundary_maps(surface)

    def _masks(matrix: np.ndarray) -> list[int]:
        return [
            int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")
            for row in matrix
        ]

    # Rows of d1 as bit masks over the qubit columns, restricted to the
    # erased columns: dim Ker d1|_E = |E| - rank(d1[:, E]).
    emask = int.from_bytes(np.packbits(pattern.bits, bitorder="little").tobytes(), "little")
    d1_rows = [row & emask for row in _masks(maps.d1)]
    dim_ker = pattern.weight - gf2_rank(d1_rows)

    # Boundaries supported in the erasure: rank(d2) - rank(d2 restricted
    # to the complement rows).
    d2_rows = _masks(maps.d2)
    rank_full = gf2_rank(d2_rows)
    rank_complement = gf2_rank([d2_rows[i] for i in range(n) if not pattern.bits[i]])
    dim_im = rank_full - rank_complement
    return dim_ker - dim_im
