"""Union-find component kernels and the deterministic trial engine.

The homology rank of an erasure needs two filtered component counts per
side (erased subgraph on the primal lattice, complement subgraph on the
dual).  This module packs both lattices into flat arrays and runs the
counts either through numba-compiled kernels (default) or a pure-Python
twin (set SQUAB_FORCE_PYTHON=1).  Both paths produce identical counts.

RNG contract (fixed; results are part of the output format):

* ``mix64`` is the SplitMix64 finalizer (xor-shift/multiply avalanche).
* The stream seed for trial t of sweep point i under master seed m is
  ``mix64(mix64(mix64(m ^ SALT) ^ (i * POINT_MULT)) ^ (t * TRIAL_MULT))``
  with all arithmetic modulo 2**64.
* A trial stream emits ``mix64(seed + k * GAMMA)`` for k = 1, 2, ...
* Qubit j of a trial is erased iff ``draw_j >> 11 < round(p * 2**53)``.

Trials are therefore independent of worker count, scheduling, and
chunking: every (seed, point, trial) triple owns its own stream.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass

import numpy as np

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
SALT = 0x243F6A8885A308D3
POINT_MULT = 0xA0761D6478BD642F
TRIAL_MULT = 0xE7037ED1A0B428DB

_FORCE_PYTHON = os.environ.get("SQUAB_FORCE_PYTHON", "") not in ("", "0")

try:  # pragma: no cover - exercised implicitly by every kernel call
    if _FORCE_PYTHON:
        raise ImportError("forced python engine")
    import warnings

    import numba
    from numba import njit, prange
    from numba.core.errors import NumbaWarning

    # this environment's TBB is too old; numba falls back to omp/workqueue
    warnings.filterwarnings("ignore", message=".*TBB threading layer.*", category=NumbaWarning)

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False

_KERNEL_LOCK = threading.Lock()  # the workqueue threading layer is not re-entrant

MODE_BOTH = 0
MODE_Z_ONLY = 1
MODE_X_ONLY = 2


# -- reference RNG (python integers) ----------------------------------------


def mix64(z: int) -> int:
    """SplitMix64 finalizer on 64-bit integers."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def stream_seed(master_seed: int, point_index: int, trial_index: int) -> int:
    """Derive the per-trial stream seed; see the module docstring."""
    z = mix64((master_seed & MASK64) ^ SALT)
    z = mix64(z ^ ((point_index * POINT_MULT) & MASK64))
    z = mix64(z ^ ((trial_index * TRIAL_MULT) & MASK64))
    return z


class TrialStream:
    """Counter-based stream of 64-bit draws for a single trial."""

    __slots__ = ("_state",)

    def __init__(self, master_seed: int, point_index: int = 0, trial_index: int = 0):
        self._state = stream_seed(master_seed, point_index, trial_index)

    def next_u64(self) -> int:
        self._state = (self._state + GAMMA) & MASK64
        return mix64(self._state)


def erasure_threshold(p: float) -> int:
    """53-bit acceptance threshold; exact at p = 0 and p = 1."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"erasure probability out of range: {p}")
    return min(1 << 53, max(0, round(p * float(1 << 53))))


def fill_erasure_bits(out: np.ndarray, stream: TrialStream, threshold: int) -> int:
    """Draw one bit per entry of ``out``; returns the number of set bits."""
    w = 0
    for j in range(out.shape[0]):
        b = (stream.next_u64() >> 11) < threshold
        out[j] = b
        w += b
    return w


# -- packed lattice pair ------------------------------------------------------


@dataclass(frozen=True)
class PairArrays:
    """Primal/dual lattice arrays aligned on the primal qubit index.

    ``d_edge_u[i]``/``d_edge_v[i]`` are the dual endpoints of the dual
    edge mapped to primal qubit i, so a single bit vector drives both
    sides.  ``p_kc``/``d_kc`` are the erasure-independent closed-boundary
    component terms.
    """

    n: int
    p_n_vertices: int
    p_edge_u: np.ndarray
    p_edge_v: np.ndarray
    p_vertex_open: np.ndarray
    p_n_nonopen: int
    p_kc: int
    d_n_vertices: int
    d_edge_u: np.ndarray
    d_edge_v: np.ndarray
    d_vertex_open: np.ndarray
    d_n_nonopen: int
    d_kc: int

    def swapped(self) -> "PairArrays":
        return PairArrays(
            n=self.n,
            p_n_vertices=self.d_n_vertices,
            p_edge_u=self.d_edge_u,
            p_edge_v=self.d_edge_v,
            p_vertex_open=self.d_vertex_open,
            p_n_nonopen=self.d_n_nonopen,
            p_kc=self.d_kc,
            d_n_vertices=self.p_n_vertices,
            d_edge_u=self.p_edge_u,
            d_edge_v=self.p_edge_v,
            d_vertex_open=self.p_vertex_open,
            d_n_nonopen=self.p_n_nonopen,
            d_kc=self.p_kc,
        )


def build_pair_arrays(surface, dual) -> PairArrays:
    """Pack a (surface, dual) pair for the kernels.

    Raises ValueError when the qubit counts disagree (inconsistent pair).
    """
    pa = surface.arrays
    da = dual.dual.arrays
    n = surface.n_qubits
    if dual.dual.n_qubits != n:
        raise ValueError(
            f"dual has {dual.dual.n_qubits} qubit edges, surface has {n}"
        )
    perm = dual.qubit_permutation(surface)
    d_eu = np.ascontiguousarray(da.edge_u[perm])
    d_ev = np.ascontiguousarray(da.edge_v[perm])
    d_eu.setflags(write=False)
    d_ev.setflags(write=False)
    return PairArrays(
        n=n,
        p_n_vertices=pa.n_vertices,
        p_edge_u=pa.edge_u,
        p_edge_v=pa.edge_v,
        p_vertex_open=pa.vertex_open,
        p_n_nonopen=pa.n_nonopen_vertices,
        p_kc=pa.boundary_free_face_components,
        d_n_vertices=da.n_vertices,
        d_edge_u=d_eu,
        d_edge_v=d_ev,
        d_vertex_open=da.vertex_open,
        d_n_nonopen=da.n_nonopen_vertices,
        d_kc=da.boundary_free_face_components,
    )


# -- python component kernels -------------------------------------------------


def kappa_filtered(n_vertices, edge_u, edge_v, bits, want, vertex_open) -> int:
    """Components of the subgraph selected by ``bits == want`` that
    contain no open vertex (full vertex set; isolated vertices count)."""
    parent = np.arange(n_vertices, dtype=np.int64)
    rank = np.zeros(n_vertices, dtype=np.int8)
    contam = np.array(vertex_open, dtype=np.bool_, copy=True)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(len(edge_u)):
        if bool(bits[i]) != want:
            continue
        ru, rv = find(edge_u[i]), find(edge_v[i])
        if ru == rv:
            continue
        if rank[ru] < rank[rv]:
            ru, rv = rv, ru
        parent[rv] = ru
        if rank[ru] == rank[rv]:
            rank[ru] += 1
        contam[ru] |= contam[rv]
    count = 0
    for v in range(n_vertices):
        if parent[v] == v and not contam[v]:
            count += 1
    return count


def h1_from_bits(pair: PairArrays, bits: np.ndarray) -> int:
    """Rank of the homology covered by the erasure bits (primal side)."""
    w = int(np.count_nonzero(bits))
    k_erased = kappa_filtered(
        pair.p_n_vertices, pair.p_edge_u, pair.p_edge_v, bits, True, pair.p_vertex_open
    )
    k_complement = kappa_filtered(
        pair.d_n_vertices, pair.d_edge_u, pair.d_edge_v, bits, False, pair.d_vertex_open
    )
    return w - pair.p_n_nonopen + k_erased - k_complement + pair.p_kc


# -- trial loops ---------------------------------------------------------------


@dataclass(frozen=True)
class ChunkCounts:
    trials: int
    fail_any: int
    fail_z: int
    fail_x: int
    weight_sum: int


def _py_sweep_chunk(pair, threshold, master_seed, point_index, trial_start, trials, mode):
    fail_any = fail_z = fail_x = weight = 0
    bits = np.empty(pair.n, dtype=np.uint8)
    for t in range(trials):
        stream = TrialStream(master_seed, point_index, trial_start + t)
        w = fill_erasure_bits(bits, stream, threshold)
        fz = fx = 0
        if mode != MODE_X_ONLY:
            fz = 1 if h1_from_bits(pair, bits) > 0 else 0
        if mode != MODE_Z_ONLY:
            fx = 1 if h1_from_bits(pair.swapped(), bits) > 0 else 0
        fail_z += fz
        fail_x += fx
        fail_any += 1 if (fz or fx) else 0
        weight += w
    return ChunkCounts(trials, fail_any, fail_z, fail_x, weight)


if HAVE_NUMBA:
    _U = np.uint64
    _NB_GAMMA = _U(GAMMA)
    _NB_SALT = _U(SALT)
    _NB_POINT_MULT = _U(POINT_MULT)
    _NB_TRIAL_MULT = _U(TRIAL_MULT)
    _NB_M1 = _U(0xBF58476D1CE4E5B9)
    _NB_M2 = _U(0x94D049BB133111EB)
    _S30, _S27, _S31, _S11 = _U(30), _U(27), _U(31), _U(11)

    @njit(cache=True, inline="always")
    def _nb_mix64(z):
        z = (z ^ (z >> _S30)) * _NB_M1
        z = (z ^ (z >> _S27)) * _NB_M2
        return z ^ (z >> _S31)

    @njit(cache=True, inline="always")
    def _nb_stream_seed(master, point, trial):
        z = _nb_mix64(master ^ _NB_SALT)
        z = _nb_mix64(z ^ (_U(point) * _NB_POINT_MULT))
        z = _nb_mix64(z ^ (_U(trial) * _NB_TRIAL_MULT))
        return z

    @njit(cache=True)
    def _nb_kappa(n_vertices, edge_u, edge_v, bits, want, vertex_open):
        parent = np.arange(n_vertices, dtype=np.int32)
        rank = np.zeros(n_vertices, dtype=np.int8)
        contam = vertex_open.copy()
        for i in range(edge_u.shape[0]):
            if bits[i] != want:
                continue
            x = edge_u[i]
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            ru = x
            x = edge_v[i]
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            rv = x
            if ru == rv:
                continue
            if rank[ru] < rank[rv]:
                ru, rv = rv, ru
            parent[rv] = ru
            if rank[ru] == rank[rv]:
                rank[ru] += 1
            contam[ru] |= contam[rv]
        count = 0
        for v in range(n_vertices):
            if parent[v] == v and not contam[v]:
                count += 1
        return count

    @njit(cache=True, parallel=True, nogil=True)
    def _nb_sweep_chunk(
        n,
        p_nv, p_eu, p_ev, p_open, p_nonopen, p_kc,
        d_nv, d_eu, d_ev, d_open, d_nonopen, d_kc,
        threshold, master, point_index, trial_start, trials, mode,
    ):
        out = np.zeros((trials, 4), dtype=np.int64)
        for t in prange(trials):
            seed = _nb_stream_seed(master, point_index, trial_start + t)
            bits = np.empty(n, dtype=np.uint8)
            state = seed
            w = 0
            for j in range(n):
                state = state + _NB_GAMMA
                u = _nb_mix64(state)
                b = 1 if (u >> _S11) < threshold else 0
                bits[j] = b
                w += b
            fz = 0
            fx = 0
            if mode != MODE_X_ONLY:
                h1p = (
                    w - p_nonopen
                    + _nb_kappa(p_nv, p_eu, p_ev, bits, 1, p_open)
                    - _nb_kappa(d_nv, d_eu, d_ev, bits, 0, d_open)
                    + p_kc
                )
                fz = 1 if h1p > 0 else 0
            if mode != MODE_Z_ONLY:
                h1d = (
                    w - d_nonopen
                    + _nb_kappa(d_nv, d_eu, d_ev, bits, 1, d_open)
                    - _nb_kappa(p_nv, p_eu, p_ev, bits, 0, p_open)
                    + d_kc
                )
                fx = 1 if h1d > 0 else 0
            out[t, 0] = 1 if (fz or fx) else 0
            out[t, 1] = fz
            out[t, 2] = fx
            out[t, 3] = w
        return out


def sweep_chunk(
    pair: PairArrays,
    p: float,
    master_seed: int,
    point_index: int,
    trial_start: int,
    trials: int,
    mode: int = MODE_BOTH,
) -> ChunkCounts:
    """Run ``trials`` consecutive trials; exact counts, order-independent."""
    threshold = erasure_threshold(p)
    if not HAVE_NUMBA:
        return _py_sweep_chunk(
            pair, threshold, master_seed & MASK64, point_index, trial_start, trials, mode
        )
    with _KERNEL_LOCK:
        out = _nb_sweep_chunk(
            pair.n,
            pair.p_n_vertices, pair.p_edge_u, pair.p_edge_v, pair.p_vertex_open,
            pair.p_n_nonopen, pair.p_kc,
            pair.d_n_vertices, pair.d_edge_u, pair.d_edge_v, pair.d_vertex_open,
            pair.d_n_nonopen, pair.d_kc,
            np.uint64(threshold), np.uint64(master_seed & MASK64),
            point_index, trial_start, trials, mode,
        )
    totals = out.sum(axis=0)
    return ChunkCounts(
        trials=trials,
        fail_any=int(totals[0]),
        fail_z=int(totals[1]),
        fail_x=int(totals[2]),
        weight_sum=int(totals[3]),
    )


def set_worker_threads(workers: int | None) -> int:
    """Apply a worker-count hint; returns the effective count.

    Worker count never changes results; it only affects wall time.
    """
    if not HAVE_NUMBA or workers is None:
        return 1 if not HAVE_NUMBA else numba.get_num_threads()
    limit = numba.config.NUMBA_NUM_THREADS
    effective = max(1, min(int(workers), limit))
    numba.set_num_threads(effective)
    return effective
