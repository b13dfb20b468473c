"""FastAPI application wrapping the invariant engine.

Every POST endpoint answers with an Envelope: the command name, the
algebra involved (if any), a JSON payload, wall-clock time, and the
seed when randomness was involved.  Payloads are deterministic for
fixed inputs; only elapsedMs varies between runs.
"""

from __future__ import annotations

import time
from pathlib import Path

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .. import __version__
from ..algebra import (
    AlgebraError,
    check_axioms,
    make_instance,
    to_homflypt,
)
from ..catalog import (
    CatalogError,
    bundled_catalog_path,
    load_catalog,
    verify_catalog,
)
from ..diagram import (
    Diagram,
    DiagramError,
    based,
    from_pd,
    mirror,
    parse_pd_text,
    reverse_component,
)
from ..laurent import LaurentError, render
from ..series import SeriesError, vassiliev_report
from ..skein import EvalOptions, SkeinError, evaluate_based, fuzz_invariance
from .models import (
    AxiomsRequest,
    ComputeRequest,
    DiagramSource,
    Envelope,
    FuzzRequest,
    HomflyptRequest,
    SeriesRequest,
    VerifyRequest,
)

_CORE_ERRORS = (
    AlgebraError,
    CatalogError,
    DiagramError,
    LaurentError,
    SeriesError,
    SkeinError,
)


class ServiceError(Exception):
    """Request cannot be served; carries the HTTP status to use."""

    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status


def _catalog_records(path_text: str | None):
    path = Path(path_text) if path_text else bundled_catalog_path()
    if not path.exists():
        raise ServiceError(404, f"catalog file {path} does not exist")
    return load_catalog(path)


def _resolve_diagram(source: DiagramSource) -> Diagram:
    if (source.pd is None) == (source.name is None):
        raise ServiceError(422, "provide exactly one of 'pd' or 'name'")
    if source.pd is not None:
        entries, loops = parse_pd_text(source.pd)
        return from_pd(entries, free_loops=loops + source.free_loops)
    for record in _catalog_records(source.catalog):
        if record.name == source.name:
            return record.diagram()
    raise ServiceError(404, f"no catalog record named {source.name!r}")


def create_app() -> FastAPI:
    app = FastAPI(title="conwaylink", version=__version__)

    @app.exception_handler(ServiceError)
    async def _service_error(request, exc: ServiceError):
        return JSONResponse(status_code=exc.status, content={"error": str(exc)})

    async def _core_error(request, exc: Exception):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    for exc_class in _CORE_ERRORS:
        app.add_exception_handler(exc_class, _core_error)

    def envelope(command, algebra, payload, started, seed=None) -> Envelope:
        elapsed = (time.perf_counter() - started) * 1000.0
        return Envelope(
            command=command,
            algebra=algebra,
            payload=payload,
            elapsed_ms=round(elapsed, 3),
            seed=seed,
        )

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.get("/catalog")
    def catalog(path: str | None = None):
        records = _catalog_records(path)
        return {
            "records": [
                {
                    "name": r.name,
                    "orientationNote": r.orientation_note,
                    "source": r.source,
                    "expectedAlgebras": sorted(r.expected),
                }
                for r in records
            ]
        }

    @app.post("/compute")
    def compute(req: ComputeRequest) -> Envelope:
        started = time.perf_counter()
        d = _resolve_diagram(req)
        for i in req.reverse:
            if not 0 <= i < len(d.components):
                raise ServiceError(422, f"no component {i} to reverse")
            d = reverse_component(d, i)
        if req.mirror:
            d = mirror(d)
        inst = make_instance(req.algebra)
        opts = EvalOptions(
            memoize=req.memoize,
            parallel=req.parallel,
            trace_depth=req.trace_depth if req.trace_depth is not None else 0,
        )
        value, trace = evaluate_based(based(d), inst, opts)
        payload = {
            "text": render(value.value),
            "latex": render(value.value, "latex"),
            "components": len(d.components),
            "crossings": d.n_crossings,
            "writhe": d.writhe,
        }
        if req.trace_depth is not None:
            payload["trace"] = trace.to_text()
        return envelope("compute", req.algebra, payload, started)

    @app.post("/axioms")
    def axioms(req: AxiomsRequest) -> Envelope:
        started = time.perf_counter()
        inst = make_instance(req.algebra)
        report = check_axioms(inst, n_max=req.n_max)
        payload = {
            "instance": report.instance_kind,
            "allHold": report.all_hold,
            "axioms": {
                name: {"holds": status.holds, "detail": status.detail}
                for name, status in sorted(report.statuses.items())
            },
            "note": report.note,
        }
        return envelope("axioms", req.algebra, payload, started)

    @app.post("/fuzz")
    def fuzz(req: FuzzRequest) -> Envelope:
        started = time.perf_counter()
        d = _resolve_diagram(req)
        inst = make_instance(req.algebra)
        report = fuzz_invariance(d, inst, trials=req.trials, seed=req.seed)
        payload = {
            "trials": report.trials,
            "reference": report.reference_text,
            "allOk": report.all_ok,
            "mismatches": [
                {
                    "trial": m.trial,
                    "pd": m.pd_text,
                    "order": list(m.order),
                    "basePoints": list(m.base_points),
                    "moves": list(m.moves),
                    "value": m.value_text,
                    "reference": m.reference_text,
                }
                for m in report.mismatches
            ],
            "summary": report.summary(),
        }
        return envelope("fuzz", req.algebra, payload, started, seed=req.seed)

    @app.post("/verify")
    def verify(req: VerifyRequest) -> Envelope:
        started = time.perf_counter()
        records = _catalog_records(req.catalog)
        inst = make_instance(req.algebra)
        report = verify_catalog(records, inst, mirror_retry=req.mirror_retry)
        payload = report.to_record()
        payload["summary"] = report.summary_lines()
        return envelope("verify", req.algebra, payload, started)

    @app.post("/series")
    def series(req: SeriesRequest) -> Envelope:
        started = time.perf_counter()
        d = _resolve_diagram(req)
        crossings = (
            list(d.crossing_ids) if req.crossing is None else [req.crossing]
        )
        reports = [vassiliev_report(d, c, cutoff=req.cutoff) for c in crossings]
        payload = {
            "cutoff": req.cutoff,
            "reports": [r.to_record() for r in reports],
            "summary": [line for r in reports for line in r.summary_lines()],
        }
        return envelope("series", "homflypt-style", payload, started)

    @app.post("/homflypt")
    def homflypt(req: HomflyptRequest) -> Envelope:
        started = time.perf_counter()
        d = _resolve_diagram(req)
        generic = make_instance("generic")
        direct = make_instance("homflypt")
        opts = EvalOptions()
        generic_value, _ = evaluate_based(based(d), generic, opts)
        collapsed = to_homflypt(generic_value)
        direct_value, _ = evaluate_based(based(d), direct, opts)
        equal = (collapsed.value - direct_value.value).is_zero()
        payload = {
            "generic": render(generic_value.value),
            "collapsed": render(collapsed.value),
            "direct": render(direct_value.value),
            "factorizes": equal,
        }
        return envelope("homflypt", "homflypt", payload, started)

    return app


app = create_app()
