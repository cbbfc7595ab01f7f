"""Local HTTP API for the designer UI.

Exposes validation, code reports, generators, and asynchronous benchmark
jobs.  Jobs live in an in-memory store guarded by one lock; benchmark
results are identical to the CLI for the same (lattice, sweep, seed).
"""

from __future__ import annotations

import json
import secrets
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any

from fastapi import FastAPI, Query, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import fileio
from .benchmark import (
    SweepCancelled,
    SweepConfig,
    SweepResult,
    canonical_json,
    run_sweep,
)
from .cellulation import BoundaryClass, derive_dual, validate
from .generators import HoleSpec, PlanarSpec, gen_bravyi_kitaev, gen_planar, gen_toric
from .report import build_code_report

__all__ = ["create_app"]

_CLASS = {"open": BoundaryClass.OPEN, "closed": BoundaryClass.CLOSED}


class SweepBody(BaseModel):
    p_values: list[float]
    trials_per_point: int = Field(ge=1)
    master_seed: int = 0
    mode: str = "both"


class GeneratorRef(BaseModel):
    kind: str
    d: int | None = None
    cell_rows: int | None = None
    cell_cols: int | None = None
    sides: dict[str, str] | None = None
    holes: list[dict] | None = None


class BenchmarkBody(BaseModel):
    lattice: dict | None = None
    generator: GeneratorRef | None = None
    sweep: SweepBody


@dataclass
class Job:
    id: str
    state: str = "queued"  # queued -> running -> done | failed
    total_trials: int = 0
    completed_trials: int = 0
    result: SweepResult | None = None
    error: str = ""
    cancel_requested: bool = False

    def snapshot(self) -> dict:
        return {
            "id": self.id,
            "state": self.state,
            "progress": {
                "completed_trials": self.completed_trials,
                "total_trials": self.total_trials,
            },
            "error": self.error or None,
        }


class JobStore:
    """Single-writer in-memory store; reads and writes share one lock."""

    def __init__(self, max_concurrent: int):
        self._lock = threading.Lock()
        self._jobs: dict[str, Job] = {}
        self._pool = ThreadPoolExecutor(max_workers=max_concurrent, thread_name_prefix="squab-job")

    def submit(self, total_trials: int, work) -> Job:
        job = Job(id=secrets.token_urlsafe(16), total_trials=total_trials)
        with self._lock:
            self._jobs[job.id] = job
        self._pool.submit(self._run, job, work)
        return job

    def _run(self, job: Job, work) -> None:
        with self._lock:
            if job.cancel_requested:
                job.state = "failed"
                job.error = "cancelled"
                return
            job.state = "running"

        def on_progress(done: int) -> None:
            with self._lock:
                job.completed_trials = max(job.completed_trials, done)

        def should_cancel() -> bool:
            with self._lock:
                return job.cancel_requested

        try:
            result = work(on_progress, should_cancel)
        except SweepCancelled:
            with self._lock:
                job.state = "failed"
                job.error = "cancelled"
            return
        except Exception as exc:  # surfaced to the client, never a 500
            with self._lock:
                job.state = "failed"
                job.error = str(exc)
            return
        with self._lock:
            if job.cancel_requested:
                job.state = "failed"
                job.error = "cancelled"
                return
            job.state = "done"
            job.completed_trials = job.total_trials
            job.result = result

    def get(self, job_id: str) -> Job | None:
        with self._lock:
            return self._jobs.get(job_id)

    def cancel_or_delete(self, job_id: str) -> Job | None:
        with self._lock:
            job = self._jobs.get(job_id)
            if job is None:
                return None
            if job.state in ("queued", "running"):
                job.cancel_requested = True
                job.state = "failed"
                job.error = "cancelled"
            else:
                del self._jobs[job_id]
            return job


def _error(status: int, detail: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"detail": detail})


def _parse_lattice(body: dict):
    doc = fileio.load_document(json.dumps(body))
    dual = doc.dual if doc.dual is not None else None
    report = validate(doc.surface)
    return doc.surface, dual, report


def _generate_from_ref(ref: GeneratorRef):
    if ref.kind == "toric":
        if ref.d is None:
            raise ValueError("toric generator needs d")
        return gen_toric(ref.d)
    if ref.kind == "bk":
        if ref.d is None:
            raise ValueError("bk generator needs d")
        return gen_bravyi_kitaev(ref.d)
    if ref.kind == "planar":
        if ref.cell_rows is None or ref.cell_cols is None:
            raise ValueError("planar generator needs cell_rows and cell_cols")
        sides = {}
        for side, cls in (ref.sides or {}).items():
            if side not in ("top", "right", "bottom", "left") or cls not in _CLASS:
                raise ValueError(f"bad side {side}={cls}")
            sides[side] = _CLASS[cls]
        holes = []
        for h in ref.holes or []:
            perimeter = h.get("perimeter", "closed")
            if isinstance(perimeter, str):
                if perimeter not in _CLASS:
                    raise ValueError(f"bad hole perimeter {perimeter!r}")
                perimeter = _CLASS[perimeter]
            else:
                perimeter = tuple(_CLASS[c] for c in perimeter)
            holes.append(
                HoleSpec(int(h["row"]), int(h["col"]), int(h["height"]), int(h["width"]), perimeter)
            )
        return gen_planar(PlanarSpec(ref.cell_rows, ref.cell_cols, holes=tuple(holes), **sides))
    raise ValueError(f"unknown generator kind {ref.kind!r}")


def create_app(trial_cap: int = 1_000_000, body_limit: int = 16 * 1024 * 1024,
               max_concurrent_jobs: int = 8) -> FastAPI:
    app = FastAPI(title="squab", version="0.1.0", openapi_url="/api/openapi.json")
    app.add_middleware(
        CORSMiddleware,
        allow_origin_regex=r"https?://(localhost|127\.0\.0\.1)(:\d+)?",
        allow_methods=["*"],
        allow_headers=["*"],
    )
    jobs = JobStore(max_concurrent_jobs)

    @app.middleware("http")
    async def limit_body(request: Request, call_next):
        length = request.headers.get("content-length")
        if length is not None and int(length) > body_limit:
            return _error(413, f"body exceeds limit of {body_limit} bytes")
        return await call_next(request)

    async def _read_json(request: Request):
        raw = await request.body()
        if len(raw) > body_limit:
            return None, _error(413, f"body exceeds limit of {body_limit} bytes")
        try:
            return json.loads(raw), None
        except json.JSONDecodeError as exc:
            return None, _error(400, f"malformed JSON: {exc.msg} at line {exc.lineno}")

    @app.get("/api/spec")
    async def api_spec():
        return app.openapi()

    @app.post("/api/lattices/validate")
    async def validate_lattice(request: Request):
        body, err = await _read_json(request)
        if err is not None:
            return err
        try:
            _, _, report = _parse_lattice(body)
        except fileio.ParseError as exc:
            return {"ok": False, "violations": [{"rule": exc.code, "element": exc.where}]}
        return {
            "ok": report.ok,
            "violations": [{"rule": v.rule, "element": v.element} for v in report.violations],
        }

    @app.post("/api/lattices/info")
    async def lattice_info(request: Request):
        body, err = await _read_json(request)
        if err is not None:
            return err
        try:
            surface, dual, report = _parse_lattice(body)
        except fileio.ParseError as exc:
            return _error(422, str(exc))
        if not report.ok:
            return JSONResponse(
                status_code=422,
                content={
                    "detail": "invalid surface",
                    "violations": [{"rule": v.rule, "element": v.element} for v in report.violations],
                },
            )
        if dual is None:
            dual = derive_dual(surface)
        return build_code_report(surface, dual).to_dict()

    @app.post("/api/benchmarks", status_code=202)
    async def submit_benchmark(request: Request):
        body, err = await _read_json(request)
        if err is not None:
            return err
        try:
            parsed = BenchmarkBody.model_validate(body)
        except Exception as exc:
            return _error(422, f"invalid benchmark request: {exc}")
        if (parsed.lattice is None) == (parsed.generator is None):
            return _error(422, "provide exactly one of lattice, generator")
        if parsed.sweep.trials_per_point > trial_cap:
            return _error(422, f"trials_per_point exceeds server cap of {trial_cap}")
        try:
            config = SweepConfig(
                p_values=tuple(parsed.sweep.p_values),
                trials_per_point=parsed.sweep.trials_per_point,
                master_seed=parsed.sweep.master_seed,
                mode=parsed.sweep.mode,
            )
            if parsed.lattice is not None:
                surface, dual, report = _parse_lattice(parsed.lattice)
                if not report.ok:
                    return _error(422, f"invalid surface: {report.summary()}")
                if dual is None:
                    dual = derive_dual(surface)
            else:
                surface, dual = _generate_from_ref(parsed.generator)
        except (fileio.ParseError, ValueError) as exc:
            return _error(422, str(exc))

        total = config.trials_per_point * len(config.p_values)

        def work(on_progress, should_cancel):
            return run_sweep(
                surface, dual, config, on_progress=on_progress, should_cancel=should_cancel
            )

        job = jobs.submit(total, work)
        return {"id": job.id}

    @app.get("/api/benchmarks/{job_id}")
    async def job_status(job_id: str):
        job = jobs.get(job_id)
        if job is None:
            return _error(404, "unknown job id")
        return job.snapshot()

    @app.get("/api/benchmarks/{job_id}/result")
    async def job_result(job_id: str):
        job = jobs.get(job_id)
        if job is None:
            return _error(404, "unknown job id")
        if job.state == "failed":
            return _error(409, f"job failed: {job.error}")
        if job.state != "done":
            return _error(409, f"job is {job.state}")
        # canonical bytes: byte-identical to `bench --format json` output
        return Response(content=canonical_json(job.result), media_type="application/json")

    @app.delete("/api/benchmarks/{job_id}")
    async def cancel_job(job_id: str):
        job = jobs.cancel_or_delete(job_id)
        if job is None:
            return _error(404, "unknown job id")
        return job.snapshot()

    @app.get("/api/generators/toric")
    async def generator_toric(d: int):
        return _generator_response(lambda: gen_toric(d))

    @app.get("/api/generators/bk")
    async def generator_bk(d: int):
        return _generator_response(lambda: gen_bravyi_kitaev(d))

    @app.get("/api/generators/planar")
    async def generator_planar(
        cells: str, sides: str = "closed", hole: list[str] = Query(default=[])
    ):
        from .cli import CliError, _parse_cells, _parse_hole, _parse_sides

        def build():
            try:
                rows, cols = _parse_cells(cells)
                side_map = _parse_sides(sides)
                holes = tuple(_parse_hole(h) for h in (hole or []))
            except CliError as exc:
                raise ValueError(str(exc)) from None
            return gen_planar(PlanarSpec(rows, cols, holes=holes, **side_map))

        return _generator_response(build)

    def _generator_response(build):
        try:
            surface, dual = build()
        except ValueError as exc:
            return _error(422, str(exc))
        return Response(
            content=fileio.save(surface, dual),
            media_type="application/json",
        )

    return app
