"""HTTP service: query answering, image delivery, run reports, health."""

from __future__ import annotations

import json
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field, ValidationError as PydanticValidationError

from ..config import AppConfig
from ..errors import ConfigError, MmragError, ValidationError
from ..pipeline import MODE_FULL, Query
from .runtime import load_bundle, pipeline_from_config

_STATUS = {
    "bad_request": 400,
    "not_found": 404,
    "upstream_unavailable": 503,
    "internal": 500,
}


def api_error(code: str, message: str, detail=None) -> JSONResponse:
    body = {"code": code, "message": message}
    if detail is not None:
        body["detail"] = detail
    return JSONResponse(status_code=_STATUS[code], content={"error": body})


class QueryRequest(BaseModel):
    question: str
    top_k: int = Field(default=10, ge=1)
    mode: str = MODE_FULL


def create_app(config: AppConfig) -> FastAPI:
    app = FastAPI(title="mmrag")
    state = {"pipeline": pipeline_from_config(config)}

    @app.exception_handler(Exception)
    async def unhandled(request: Request, exc: Exception):
        return api_error("internal", str(exc))

    @app.get("/api/health")
    async def health():
        bundle = state["pipeline"].bundle
        size = max((len(ix) for ix in bundle.indexes.values()), default=0)
        return {"status": "ok", "index_size": size}

    @app.post("/api/query")
    async def query(request: Request):
        try:
            payload = QueryRequest.model_validate(await request.json())
        except (PydanticValidationError, json.JSONDecodeError, ValueError) as exc:
            return api_error("bad_request", f"invalid query payload: {exc}")
        try:
            answer = state["pipeline"].answer(
                Query(question=payload.question, top_k=payload.top_k, mode=payload.mode))
        except ValidationError as exc:
            return api_error("bad_request", str(exc))
        except ConfigError as exc:
            return api_error("not_found", str(exc))
        except MmragError as exc:
            return api_error("upstream_unavailable", str(exc))
        return answer.to_dict()

    @app.get("/api/images/{image_id}")
    async def image(image_id: str):
        store = state["pipeline"].bundle.object_store
        if image_id not in store.image_map:
            return api_error("not_found", f"no image {image_id!r}")
        return Response(content=store.get_image(image_id), media_type="image/png")

    @app.get("/api/runs")
    async def runs():
        runs_dir = Path(config.get("eval.runs_dir", "runs"))
        if not runs_dir.is_dir():
            return {"runs": []}
        return {"runs": sorted(p.stem for p in runs_dir.glob("*.json"))}

    @app.get("/api/runs/{run_id}")
    async def run_report(run_id: str):
        runs_dir = Path(config.get("eval.runs_dir", "runs"))
        path = runs_dir / f"{run_id}.json"
        if not path.exists() or not path.resolve().is_relative_to(runs_dir.resolve()):
            return api_error("not_found", f"no run {run_id!r}")
        return json.loads(path.read_text(encoding="utf-8"))

    @app.post("/api/admin/reload")
    async def reload():
        # rebuilds the pipeline from disk and swaps it in atomically
        try:
            state["pipeline"] = pipeline_from_config(config)
        except ConfigError as exc:
            return api_error("not_found", str(exc))
        bundle = state["pipeline"].bundle
        return {"status": "reloaded",
                "index_size": max((len(ix) for ix in bundle.indexes.values()), default=0)}

    static_dir = config.get("server.static_dir")
    if static_dir and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
