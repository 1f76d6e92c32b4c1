"""HTTP API: job submission, log streaming, artifact serving, simulation, search.

GET endpoints never trigger mining; they only read the artifact store. The
simulation endpoint answers from the persisted matrix and tree, cached in
memory per published version.
"""

from __future__ import annotations

import json
import threading
from pathlib import Path

from fastapi import FastAPI, Query, Request, Response
from fastapi.responses import HTMLResponse, JSONResponse
from fastapi.staticfiles import StaticFiles

from busfactor import engine, export
from busfactor.errors import (
    InputError,
    NetworkError,
    QueueFullError,
    RateLimitError,
    UnknownAuthorsError,
)
from busfactor.github import Provider
from busfactor.knowledge import matrix_from_json
from busfactor.service.jobs import JobManager
from busfactor.service.store import ArtifactStore

_FALLBACK_PAGE = """<!doctype html>
<html><head><title>busfactor</title></head>
<body><h1>busfactor service</h1>
<p>No UI bundle is installed. The JSON API lives under <code>/api</code>.</p>
</body></html>"""


class _SimulationCache:
    """Per-repo (version, matrix, tree) so simulations skip re-parsing."""

    def __init__(self, store: ArtifactStore):
        self._store = store
        self._lock = threading.Lock()
        self._entries: dict[tuple[str, str], tuple[str, object, object]] = {}

    def get(self, owner: str, name: str):
        published = self._store.current(owner, name)
        if published is None:
            return None
        key = (owner, name)
        with self._lock:
            cached = self._entries.get(key)
            if cached is not None and cached[0] == published.version:
                return cached[1], cached[2]
        matrix = matrix_from_json((published.directory / "matrix.json").read_bytes())
        tree = export.parse_json((published.directory / "tree.json").read_bytes())
        with self._lock:
            self._entries[key] = (published.version, matrix, tree)
        return matrix, tree


def create_app(
    store: ArtifactStore,
    jobs: JobManager,
    provider: Provider,
    ui_dir: Path | str | None = None,
) -> FastAPI:
    app = FastAPI(title="busfactor", docs_url=None, redoc_url=None)
    simulations = _SimulationCache(store)

    @app.post("/api/jobs")
    async def submit_job(request: Request) -> JSONResponse:
        try:
            body = await request.json()
        except Exception:
            return JSONResponse({"detail": "body must be JSON"}, status_code=400)
        owner = body.get("owner") if isinstance(body, dict) else None
        name = body.get("name") if isinstance(body, dict) else None
        if not isinstance(owner, str) or not isinstance(name, str) or not owner or not name:
            return JSONResponse(
                {"detail": "body must carry non-empty owner and name"}, status_code=400
            )
        try:
            job, _created = jobs.submit(owner, name)
        except QueueFullError as exc:
            return JSONResponse({"detail": str(exc)}, status_code=429)
        except InputError as exc:
            return JSONResponse({"detail": str(exc)}, status_code=400)
        return JSONResponse({"jobId": job.job_id}, status_code=202)

    @app.get("/api/jobs")
    def list_jobs() -> list[dict]:
        return [job.to_payload() for job in jobs.list_jobs()]

    @app.get("/api/jobs/{job_id}/log")
    def job_log(job_id: str, start: int = Query(0, alias="from", ge=0)):
        job = jobs.get(job_id)
        if job is None:
            return JSONResponse({"detail": "unknown job"}, status_code=404)
        lines = job.log_lines(start)
        return {"lines": lines, "nextIndex": start + len(lines)}

    @app.get("/api/repos")
    def list_repos() -> list[dict]:
        return [published.meta for published in store.list_repos()]

    @app.get("/api/repos/{owner}/{name}/tree")
    def get_tree(owner: str, name: str) -> Response:
        data = store.read_artifact(owner, name, "tree.json")
        if data is None:
            return JSONResponse({"detail": "repository not analyzed"}, status_code=404)
        return Response(content=data, media_type="application/json")

    @app.get("/api/repos/{owner}/{name}/export.csv")
    def get_csv(owner: str, name: str) -> Response:
        data = store.read_artifact(owner, name, "tree.csv")
        if data is None:
            return JSONResponse({"detail": "repository not analyzed"}, status_code=404)
        return Response(
            content=data,
            media_type="text/csv",
            headers={"Content-Disposition": f'attachment; filename="{owner}__{name}.csv"'},
        )

    @app.post("/api/repos/{owner}/{name}/simulate")
    async def simulate(owner: str, name: str, request: Request):
        try:
            body = await request.json()
        except Exception:
            return JSONResponse({"detail": "body must be JSON"}, status_code=400)
        excluded = body.get("excluded") if isinstance(body, dict) else None
        if not isinstance(excluded, list) or not all(isinstance(x, str) for x in excluded):
            return JSONResponse(
                {"detail": "body must carry excluded: list of author ids"}, status_code=400
            )
        loaded = simulations.get(owner, name)
        if loaded is None:
            return JSONResponse({"detail": "repository not analyzed"}, status_code=404)
        matrix, tree = loaded
        try:
            deltas = engine.simulate(matrix, tree, excluded)
        except UnknownAuthorsError as exc:
            return JSONResponse(
                {"detail": str(exc), "unknownAuthors": list(exc.unknown)}, status_code=422
            )
        # Serialized by hand: 50k-node responses must stay inside the
        # interactive latency budget, which jsonable_encoder would blow.
        payload = json.dumps(
            [
                {
                    "path": d.path,
                    "originalBf": d.original_bf,
                    "simulatedBf": d.simulated_bf,
                    "delta": d.delta,
                }
                for d in deltas
            ],
            separators=(",", ":"),
        )
        return Response(content=payload, media_type="application/json")

    @app.get("/api/search")
    def search(q: str = "", limit: int = 10):
        try:
            results = provider.search_repos(q, limit)
        except InputError as exc:
            return JSONResponse({"detail": str(exc)}, status_code=400)
        except RateLimitError as exc:
            return JSONResponse({"detail": str(exc)}, status_code=429)
        except NetworkError as exc:
            return JSONResponse({"detail": str(exc)}, status_code=502)
        return [
            {
                "owner": c.owner,
                "name": c.name,
                "cloneUrl": c.clone_url,
                "defaultBranch": c.default_branch,
            }
            for c in results
        ]

    ui_path = Path(ui_dir) if ui_dir else None
    if ui_path is not None and ui_path.is_dir():
        app.mount("/", StaticFiles(directory=ui_path, html=True), name="ui")
    else:

        @app.get("/", response_class=HTMLResponse)
        def index() -> str:
            return _FALLBACK_PAGE

    return app
