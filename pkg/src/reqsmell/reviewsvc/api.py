"""HTTP API over a RunStore (all routes under /api/v1, JSON in and out).

Errors carry a machine-readable ``code`` plus a human ``message``:
404 for unknown run/artifact/finding, 400 for malformed query parameters,
422 for invalid request bodies. GET handlers are side-effect-free and
cacheable per run id.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from ..smells import SmellKind
from .store import (
    InvalidReviewError,
    RunStore,
    UnknownFindingError,
    UnknownRunError,
)


class ApiError(Exception):
    def __init__(self, status_code: int, code: str, message: str):
        self.status_code = status_code
        self.code = code
        self.message = message
        super().__init__(message)


class ReviewRequest(BaseModel):
    status: str
    comment: str | None = None
    reviewer: str | None = None


def _parse_smells(raw: str | None) -> set[SmellKind] | None:
    if raw is None or raw == "":
        return None
    kinds: set[SmellKind] = set()
    for name in raw.split(","):
        name = name.strip()
        if not name:
            continue
        try:
            kinds.add(SmellKind(name))
        except ValueError:
            raise ApiError(400, "unknown_smell", f"unknown smell kind: {name}")
    return kinds or None


def create_app(
    store: RunStore,
    ui_dir: str | Path | None = None,
    dev_cors: bool = False,
) -> FastAPI:
    app = FastAPI(title="reqsmell review service", docs_url=None, redoc_url=None)

    if dev_cors:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(
            CORSMiddleware,
            allow_origins=["*"],
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.exception_handler(ApiError)
    async def api_error_handler(_request: Request, exc: ApiError) -> JSONResponse:
        return JSONResponse(
            status_code=exc.status_code,
            content={"code": exc.code, "message": exc.message},
        )

    @app.exception_handler(RequestValidationError)
    async def validation_handler(
        _request: Request, exc: RequestValidationError
    ) -> JSONResponse:
        return JSONResponse(
            status_code=422,
            content={"code": "invalid_body", "message": str(exc.errors()[:3])},
        )

    def get_run(run_id: str) -> str:
        try:
            store.run_header(run_id)
        except UnknownRunError:
            raise ApiError(404, "unknown_run", f"no such run: {run_id}")
        return run_id

    @app.get("/api/v1/runs")
    def list_runs() -> list[dict]:
        return [store.run_header(run_id) for run_id in store.list_runs()]

    @app.get("/api/v1/runs/{run_id}/artifacts")
    def artifacts(run_id: str) -> list[dict]:
        get_run(run_id)
        return [m.to_dict() for m in store.metrics(run_id)]

    @app.get("/api/v1/runs/{run_id}/artifacts/{artifact_id:path}/items")
    def artifact_items(
        run_id: str,
        artifact_id: str,
        include_rejected: bool = False,
        include_suppressed: bool = False,
        smells: str | None = Query(default=None),
    ) -> dict:
        get_run(run_id)
        items = [i for i in store.items(run_id) if i["artifact_id"] == artifact_id]
        if not items:
            raise ApiError(404, "unknown_artifact", f"no such artifact: {artifact_id}")
        kinds = _parse_smells(smells)
        listed = store.listed_findings(
            run_id,
            include_rejected=include_rejected,
            include_suppressed=include_suppressed,
            smells=kinds,
        )
        reviews = store.reviews(run_id)
        by_item: dict[str, list[dict]] = {}
        for finding in listed:
            if finding.artifact_id != artifact_id:
                continue
            payload = finding.to_dict()
            record = reviews.get(finding.finding_id)
            payload["review"] = record.to_dict() if record else None
            by_item.setdefault(finding.item_id, []).append(payload)
        return {
            "artifact_id": artifact_id,
            "items": [
                {**item, "findings": by_item.get(item["item_id"], [])} for item in items
            ],
        }

    @app.get("/api/v1/runs/{run_id}/treemap")
    def treemap(run_id: str, smell: str | None = Query(default=None)) -> dict:
        get_run(run_id)
        kind: SmellKind | None = None
        if smell:
            try:
                kind = SmellKind(smell)
            except ValueError:
                raise ApiError(400, "unknown_smell", f"unknown smell kind: {smell}")
        return store.treemap(run_id).to_dict(kind)

    @app.get("/api/v1/runs/{run_id}/findings/{finding_id}")
    def finding_detail(run_id: str, finding_id: str) -> dict:
        get_run(run_id)
        for finding in store.findings(run_id):
            if finding.finding_id == finding_id:
                record = store.reviews(run_id).get(finding_id)
                return {
                    "finding": finding.to_dict(),
                    "review": record.to_dict() if record else None,
                    "improvement_hint": finding.improvement_hint,
                }
        raise ApiError(404, "unknown_finding", f"no such finding: {finding_id}")

    @app.put("/api/v1/runs/{run_id}/findings/{finding_id}/review")
    def put_review(run_id: str, finding_id: str, body: ReviewRequest) -> dict:
        get_run(run_id)
        try:
            record = store.review(
                run_id,
                finding_id,
                status=body.status,
                comment=body.comment,
                reviewer=body.reviewer,
            )
        except UnknownFindingError:
            raise ApiError(404, "unknown_finding", f"no such finding: {finding_id}")
        except InvalidReviewError as exc:
            raise ApiError(422, "invalid_status", str(exc))
        return record.to_dict()

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
