#!/usr/bin/env python3
"""Run the busfactor web service.

Environment:
    GH_TOKEN    optional hosting-provider token (higher rate limits, private repos)
    BF_WORKDIR  artifact store root (default ./data)
    BF_PORT     listen port (default 8080)
"""

import os
from pathlib import Path

import uvicorn

from busfactor.github import GitHubProvider, auth_token
from busfactor.service.app import create_app
from busfactor.service.jobs import JobManager
from busfactor.service.store import ArtifactStore


def main() -> None:
    workdir = Path(os.environ.get("BF_WORKDIR", "data"))
    port = int(os.environ.get("BF_PORT", "8080"))
    store = ArtifactStore(workdir)
    provider = GitHubProvider(token=auth_token())
    jobs = JobManager(store, provider)
    ui_dir = Path(__file__).resolve().parent.parent / "frontend" / "dist"
    app = create_app(store, jobs, provider, ui_dir=ui_dir if ui_dir.is_dir() else None)
    try:
        uvicorn.run(app, host="0.0.0.0", port=port)
    finally:
        jobs.shutdown()
        provider.close()


if __name__ == "__main__":
    main()
