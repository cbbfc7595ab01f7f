"""Deterministic Monte-Carlo erasure sweeps.

A sweep evaluates the uncorrectable-erasure rate at a list of erasure
probabilities.  Every trial owns a counter-derived RNG stream keyed by
(master seed, point index, trial index) — see ``engine`` — so results
are bit-identical for a fixed seed regardless of worker count,
scheduling, or chunking.

A failure is an uncorrectable erasure (it covers a logical operator);
trials are not weighted by the residual decoder failure probability of
uncorrectable patterns.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from statistics import NormalDist
from typing import Callable, Iterable, Sequence

import numpy as np

from . import engine
from .cellulation import DualSurface, Surface
from .homology import ErasurePattern, logical_qubit_count

__all__ = [
    "SweepConfig",
    "PointResult",
    "SweepResult",
    "SweepCancelled",
    "wilson_interval",
    "sample_erasure",
    "run_point",
    "run_sweep",
    "result_to_dict",
    "canonical_json",
    "write_csv",
    "CSV_HEADER",
]

_MODES = {"both": engine.MODE_BOTH, "z_only": engine.MODE_Z_ONLY, "x_only": engine.MODE_X_ONLY}

_CHUNK_TRIALS = 4096

CSV_HEADER = "code,p,trials,fail_any,fail_z,fail_x,rate_any,ci_lo,ci_hi,rate_z,rate_x,mean_weight"


class SweepCancelled(RuntimeError):
    pass


@dataclass(frozen=True)
class SweepConfig:
    """Sweep parameters; p values ascending, trials fixed per point."""

    p_values: tuple[float, ...]
    trials_per_point: int
    master_seed: int = 0
    mode: str = "both"

    def __post_init__(self):
        object.__setattr__(self, "p_values", tuple(float(p) for p in self.p_values))
        for p in self.p_values:
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"erasure probability out of range: {p}")
        if any(a > b for a, b in zip(self.p_values, self.p_values[1:])):
            raise ValueError("p_values must be sorted ascending")
        if self.trials_per_point < 1:
            raise ValueError("trials_per_point must be >= 1")
        if self.mode not in _MODES:
            raise ValueError(f"mode must be one of {sorted(_MODES)}")


@dataclass(frozen=True)
class PointResult:
    """Counts and rates for a single erasure probability."""

    p: float
    trials: int
    fail_any: int
    fail_z: int
    fail_x: int
    mean_erasure_weight: float
    rate_any: float
    ci_any: tuple[float, float]
    rate_z: float
    ci_z: tuple[float, float]
    rate_x: float
    ci_x: tuple[float, float]


@dataclass(frozen=True)
class SweepResult:
    config: SweepConfig
    surface_name: str
    n: int
    k: int
    points: tuple[PointResult, ...]
    wall_time: float


def wilson_interval(failures: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion, clamped to [0, 1]."""
    if not 0 <= failures <= trials or trials < 1:
        raise ValueError("need 0 <= failures <= trials, trials >= 1")
    z = NormalDist().inv_cdf((1.0 + confidence) / 2.0)
    phat = failures / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (phat + z2 / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1.0 - phat) / trials + z2 / (4 * trials * trials)) / denom
    lo = 0.0 if failures == 0 else max(0.0, center - half)
    hi = 1.0 if failures == trials else min(1.0, center + half)
    return (lo, hi)


def sample_erasure(n: int, p: float, stream: engine.TrialStream) -> ErasurePattern:
    """Draw one erasure pattern: each qubit lost independently with
    probability p.  Consumes exactly n draws from the stream."""
    threshold = engine.erasure_threshold(p)
    bits = np.empty(n, dtype=np.uint8)
    engine.fill_erasure_bits(bits, stream, threshold)
    return ErasurePattern(bits)


def _point_from_counts(p: float, trials: int, counts: engine.ChunkCounts) -> PointResult:
    return PointResult(
        p=p,
        trials=trials,
        fail_any=counts.fail_any,
        fail_z=counts.fail_z,
        fail_x=counts.fail_x,
        mean_erasure_weight=counts.weight_sum / trials,
        rate_any=counts.fail_any / trials,
        ci_any=wilson_interval(counts.fail_any, trials),
        rate_z=counts.fail_z / trials,
        ci_z=wilson_interval(counts.fail_z, trials),
        rate_x=counts.fail_x / trials,
        ci_x=wilson_interval(counts.fail_x, trials),
    )


def run_point(
    surface: Surface,
    dual: DualSurface,
    p: float,
    trials: int,
    master_seed: int,
    point_index: int,
    *,
    mode: str = "both",
    pair: engine.PairArrays | None = None,
    on_progress: Callable[[int], None] | None = None,
    should_cancel: Callable[[], bool] | None = None,
) -> PointResult:
    """Monte-Carlo estimate at a single erasure probability.

    Trial t draws its stream from (master_seed, point_index, t); counts
    are exact sums over per-trial verdicts.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if pair is None:
        pair = engine.build_pair_arrays(surface, dual)
    mode_code = _MODES[mode]
    fail_any = fail_z = fail_x = weight = 0
    done = 0
    while done < trials:
        if should_cancel is not None and should_cancel():
            raise SweepCancelled("benchmark cancelled")
        chunk = min(_CHUNK_TRIALS, trials - done)
        counts = engine.sweep_chunk(pair, p, master_seed, point_index, done, chunk, mode_code)
        fail_any += counts.fail_any
        fail_z += counts.fail_z
        fail_x += counts.fail_x
        weight += counts.weight_sum
        done += chunk
        if on_progress is not None:
            on_progress(done)
    totals = engine.ChunkCounts(trials, fail_any, fail_z, fail_x, weight)
    return _point_from_counts(p, trials, totals)


def run_sweep(
    surface: Surface,
    dual: DualSurface,
    config: SweepConfig,
    *,
    workers: int | None = None,
    on_progress: Callable[[int], None] | None = None,
    should_cancel: Callable[[], bool] | None = None,
) -> SweepResult:
    """Run one point per entry of ``config.p_values``.

    ``workers`` is a wall-time hint only; the result is a pure function
    of (surface, config).
    """
    engine.set_worker_threads(workers)
    start = time.perf_counter()
    pair = engine.build_pair_arrays(surface, dual)
    k = logical_qubit_count(surface, dual)
    points = []
    done_before = 0
    for i, p in enumerate(config.p_values):
        def _progress(done_in_point, base=done_before):
            if on_progress is not None:
                on_progress(base + done_in_point)
        points.append(
            run_point(
                surface,
                dual,
                p,
                config.trials_per_point,
                config.master_seed,
                i,
                mode=config.mode,
                pair=pair,
                on_progress=_progress if on_progress is not None else None,
                should_cancel=should_cancel,
            )
        )
        done_before += config.trials_per_point
    return SweepResult(
        config=config,
        surface_name=surface.name,
        n=surface.n_qubits,
        k=k,
        points=tuple(points),
        wall_time=time.perf_counter() - start,
    )


# -- serialization -----------------------------------------------------------


def result_to_dict(result: SweepResult, *, include_timing: bool = False) -> dict:
    """JSON-ready form; timing is excluded by default so that identical
    sweeps serialize byte-identically."""
    out = {
        "config": {
            "p_values": list(result.config.p_values),
            "trials_per_point": result.config.trials_per_point,
            "master_seed": result.config.master_seed,
            "mode": result.config.mode,
        },
        "surface": {"name": result.surface_name, "n": result.n, "k": result.k},
        "points": [
            {
                "p": pt.p,
                "trials": pt.trials,
                "fail_any": pt.fail_any,
                "fail_z": pt.fail_z,
                "fail_x": pt.fail_x,
                "mean_erasure_weight": pt.mean_erasure_weight,
                "rate_any": pt.rate_any,
                "ci_any": list(pt.ci_any),
                "rate_z": pt.rate_z,
                "ci_z": list(pt.ci_z),
                "rate_x": pt.rate_x,
                "ci_x": list(pt.ci_x),
            }
            for pt in result.points
        ],
    }
    if include_timing:
        out["wall_time"] = result.wall_time
    return out


def canonical_json(result: SweepResult) -> str:
    """Canonical serialization: sorted keys, compact separators, no timing."""
    return json.dumps(result_to_dict(result), sort_keys=True, separators=(",", ":")) + "\n"


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def csv_rows(result: SweepResult, code: str | None = None) -> list[str]:
    name = code if code is not None else result.surface_name
    rows = []
    for pt in result.points:
        rows.append(
            ",".join(
                [
                    name,
                    _fmt(pt.p),
                    str(pt.trials),
                    str(pt.fail_any),
                    str(pt.fail_z),
                    str(pt.fail_x),
                    _fmt(pt.rate_any),
                    _fmt(pt.ci_any[0]),
                    _fmt(pt.ci_any[1]),
                    _fmt(pt.rate_z),
                    _fmt(pt.rate_x),
                    _fmt(pt.mean_erasure_weight),
                ]
            )
        )
    return rows


def write_csv(results: Iterable[SweepResult], codes: Sequence[str] | None = None) -> str:
    """Long-format CSV, one row per (code, p)."""
    lines = [CSV_HEADER]
    for i, result in enumerate(results):
        code = codes[i] if codes is not None else None
        lines.extend(csv_rows(result, code))
    return "\n".join(lines) + "\n"
