"""Background analysis jobs: submission, deduplication, execution, log streaming.

Each job runs the full pipeline on a bounded thread pool and publishes its
artifacts atomically through the store. The job record's log is the only
mutable shared state: the worker is its single writer and API handlers read
snapshots under the record's lock.
"""

from __future__ import annotations

import json
import logging
import os
import threading
import time
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone

from busfactor.config import WINDOW_DAYS, AnalysisConfig, DEFAULT_CONFIG
from busfactor.errors import (
    BusFactorError,
    InputError,
    NetworkError,
    QueueFullError,
    RepoNotFoundError,
)
from busfactor.github import Provider, auth_token
from busfactor.gitio import clone_or_open
from busfactor.pipeline import analyze, artifact_bytes
from busfactor.service.store import ArtifactStore

logger = logging.getLogger(__name__)

QUEUED = "QUEUED"
RUNNING = "RUNNING"
DONE = "DONE"
FAILED = "FAILED"

_TRANSITIONS = {QUEUED: {RUNNING}, RUNNING: {DONE, FAILED}, DONE: set(), FAILED: set()}

DEFAULT_QUEUE_CAP = 32


def _timestamp() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


@dataclass
class AnalysisJob:
    job_id: str
    owner: str
    name: str
    state: str = QUEUED
    created_at: float = field(default_factory=time.time)
    finished_at: float | None = None
    error: str | None = None
    _log: list[str] = field(default_factory=list)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def slug(self) -> str:
        return f"{self.owner}/{self.name}"

    def transition(self, new_state: str) -> None:
        with self._lock:
            if new_state not in _TRANSITIONS[self.state]:
                raise InputError(f"illegal job transition {self.state} -> {new_state}")
            self.state = new_state
            if new_state in (DONE, FAILED):
                self.finished_at = time.time()

    def append_log(self, message: str) -> str:
        line = f"{_timestamp()} {message}"
        with self._lock:
            self._log.append(line)
        return line

    def log_lines(self, start: int = 0) -> list[str]:
        with self._lock:
            return self._log[start:]

    def to_payload(self) -> dict:
        with self._lock:
            return {
                "jobId": self.job_id,
                "owner": self.owner,
                "name": self.name,
                "state": self.state,
                "createdAt": self.created_at,
                "finishedAt": self.finished_at,
                "error": self.error,
                "logLength": len(self._log),
            }


class JobManager:
    def __init__(
        self,
        store: ArtifactStore,
        provider: Provider,
        window_days: int = WINDOW_DAYS,
        config: AnalysisConfig = DEFAULT_CONFIG,
        worker_count: int | None = None,
        queue_cap: int = DEFAULT_QUEUE_CAP,
    ):
        self.store = store
        self.provider = provider
        self.window_days = window_days
        self.config = config
        self.queue_cap = queue_cap
        workers = worker_count or min(4, os.cpu_count() or 1)
        self._executor = ThreadPoolExecutor(max_workers=workers, thread_name_prefix="busfactor-job")
        self._jobs: dict[str, AnalysisJob] = {}
        self._lock = threading.Lock()

    def submit(self, owner: str, name: str) -> tuple[AnalysisJob, bool]:
        """Enqueue an analysis; a live job for the same repo is returned instead.

        Returns (job, created). Raises QueueFullError when the queue cap is hit.
        """
        if not owner or not name or "/" in owner or "/" in name:
            raise InputError(f"bad repository coordinates: {owner!r}/{name!r}")
        with self._lock:
            for job in self._jobs.values():
                if job.owner == owner and job.name == name and job.state in (QUEUED, RUNNING):
                    return job, False
            queued = sum(1 for j in self._jobs.values() if j.state == QUEUED)
            if queued >= self.queue_cap:
                raise QueueFullError(f"job queue is full (cap {self.queue_cap})")
            job = AnalysisJob(job_id=uuid.uuid4().hex, owner=owner, name=name)
            self._jobs[job.job_id] = job
        job.append_log(f"job queued for {job.slug}")
        self._executor.submit(self._run, job)
        return job, True

    def get(self, job_id: str) -> AnalysisJob | None:
        with self._lock:
            return self._jobs.get(job_id)

    def list_jobs(self) -> list[AnalysisJob]:
        with self._lock:
            return sorted(self._jobs.values(), key=lambda j: j.created_at)

    def shutdown(self) -> None:
        self._executor.shutdown(wait=True)

    def _log(self, job: AnalysisJob, message: str) -> None:
        line = job.append_log(message)
        try:
            self.store.append_log(job.owner, job.name, line)
        except OSError:
            logger.warning("could not append to job log file for %s", job.slug)

    def _run(self, job: AnalysisJob) -> None:
        job.transition(RUNNING)
        self._log(job, f"job {job.job_id} started")
        try:
            coords = self.provider.coordinates(job.owner, job.name)

            t0 = time.perf_counter()
            handle = clone_or_open(self.store.root, coords.clone_url, token=auth_token())
            self._log(job, f"stage=clone duration_ms={(time.perf_counter() - t0) * 1000:.0f}")

            t0 = time.perf_counter()
            try:
                hints = self.provider.list_bots(coords)
            except (NetworkError, RepoNotFoundError) as exc:
                hints = frozenset()
                self._log(job, f"bot listing unavailable, continuing without exclusion: {exc}")
            self._log(
                job,
                f"stage=bots duration_ms={(time.perf_counter() - t0) * 1000:.0f} hints={len(hints)}",
            )

            t0 = time.perf_counter()
            result = analyze(
                handle, window_days=self.window_days, config=self.config, bot_hints=hints
            )
            for stage, seconds in result.stage_seconds.items():
                self._log(job, f"stage={stage} duration_ms={seconds * 1000:.0f}")
            self._log(
                job,
                "mined commits={} in_window={} events={} files={}".format(
                    result.mining.commit_count_scanned,
                    result.mining.commit_count_in_window,
                    len(result.mining.events),
                    len(result.mining.files),
                ),
            )

            t0 = time.perf_counter()
            artifacts = artifact_bytes(result)
            artifacts["meta.json"] = json.dumps(
                {
                    "owner": job.owner,
                    "name": job.name,
                    "jobId": job.job_id,
                    "analyzedAt": _timestamp(),
                    "referenceTime": result.matrix.reference_time,
                    "rootBusFactor": result.root_bus_factor,
                    "commitCountScanned": result.mining.commit_count_scanned,
                    "commitCountInWindow": result.mining.commit_count_in_window,
                    "excludedBots": sorted(result.bots),
                },
                sort_keys=True,
                separators=(",", ":"),
            ).encode("utf-8")
            version = self.store.publish(job.owner, job.name, artifacts)
            self._log(
                job,
                f"stage=publish duration_ms={(time.perf_counter() - t0) * 1000:.0f} version={version}",
            )
            self._log(job, f"root bus factor: {result.root_bus_factor}")
            job.transition(DONE)
            self._log(job, "job finished")
        except BusFactorError as exc:
            job.error = str(exc)
            job.transition(FAILED)
            self._log(job, f"job failed: {exc}")
        except Exception as exc:  # pragma: no cover - defensive catch-all
            job.error = f"internal error: {exc!r}"
            job.transition(FAILED)
            self._log(job, f"job failed: {exc!r}")
            logger.exception("job %s crashed", job.job_id)
