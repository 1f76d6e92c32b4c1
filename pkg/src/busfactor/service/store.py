"""Filesystem artifact store with atomic, versioned publication.

Layout per repository under the store root:

    {owner}__{name}/
        clone/          working clone (written by the miner)
        job.log         append-only job log
        current         pointer file naming the published version directory
        v-<id>/         tree.json, tree.csv, matrix.json, meta.json

A publish writes a fresh version directory, fsyncs it, then atomically
replaces the pointer. Readers resolve the pointer, so they only ever see a
complete artifact set: a crash mid-publish leaves the previous version (or
nothing) visible, never a partial mix.
"""

from __future__ import annotations

import json
import os
import secrets
import shutil
import time
from dataclasses import dataclass
from pathlib import Path

from busfactor.errors import InputError

ARTIFACT_FILES = ("tree.json", "tree.csv", "matrix.json", "meta.json")
POINTER_NAME = "current"


@dataclass(frozen=True)
class PublishedAnalysis:
    owner: str
    name: str
    version: str
    directory: Path
    meta: dict


def _validate_segment(value: str, what: str) -> str:
    if not value or "/" in value or "\\" in value or value in (".", ".."):
        raise InputError(f"bad {what}: {value!r}")
    return value


def _fsync_dir(path: Path) -> None:
    fd = os.open(path, os.O_RDONLY)
    try:
        os.fsync(fd)
    finally:
        os.close(fd)


class ArtifactStore:
    def __init__(self, root: Path | str):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def repo_dir(self, owner: str, name: str) -> Path:
        _validate_segment(owner, "owner")
        _validate_segment(name, "name")
        return self.root / f"{owner}__{name}"

    def clone_dir(self, owner: str, name: str) -> Path:
        return self.repo_dir(owner, name) / "clone"

    def log_path(self, owner: str, name: str) -> Path:
        return self.repo_dir(owner, name) / "job.log"

    def append_log(self, owner: str, name: str, line: str) -> None:
        path = self.log_path(owner, name)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("a", encoding="utf-8") as fh:
            fh.write(line + "\n")

    def publish(self, owner: str, name: str, artifacts: dict[str, bytes]) -> str:
        """Write a new version directory and atomically repoint ``current``."""
        if set(artifacts) != set(ARTIFACT_FILES):
            raise InputError(
                f"artifact set must be exactly {ARTIFACT_FILES}, got {sorted(artifacts)}"
            )
        repo_dir = self.repo_dir(owner, name)
        repo_dir.mkdir(parents=True, exist_ok=True)
        version = f"v-{time.time_ns():x}-{secrets.token_hex(4)}"
        version_dir = repo_dir / version
        version_dir.mkdir()
        for filename, data in artifacts.items():
            target = version_dir / filename
            with target.open("wb") as fh:
                fh.write(data)
                fh.flush()
                os.fsync(fh.fileno())
        _fsync_dir(version_dir)

        pointer_tmp = repo_dir / f"{POINTER_NAME}.tmp"
        with pointer_tmp.open("w", encoding="utf-8") as fh:
            fh.write(version)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(pointer_tmp, repo_dir / POINTER_NAME)
        _fsync_dir(repo_dir)
        self._collect_garbage(repo_dir, keep=version)
        return version

    def _collect_garbage(self, repo_dir: Path, keep: str) -> None:
        for stale in repo_dir.glob("v-*"):
            if stale.name != keep and stale.is_dir():
                shutil.rmtree(stale, ignore_errors=True)

    def current(self, owner: str, name: str) -> PublishedAnalysis | None:
        """The published analysis, or None if absent or incomplete."""
        repo_dir = self.repo_dir(owner, name)
        pointer = repo_dir / POINTER_NAME
        try:
            version = pointer.read_text(encoding="utf-8").strip()
        except OSError:
            return None
        version_dir = repo_dir / version
        if not all((version_dir / f).is_file() for f in ARTIFACT_FILES):
            return None
        try:
            meta = json.loads((version_dir / "meta.json").read_text(encoding="utf-8"))
        except (OSError, ValueError):
            return None
        return PublishedAnalysis(
            owner=owner, name=name, version=version, directory=version_dir, meta=meta
        )

    def read_artifact(self, owner: str, name: str, filename: str) -> bytes | None:
        if filename not in ARTIFACT_FILES:
            raise InputError(f"unknown artifact: {filename!r}")
        published = self.current(owner, name)
        if published is None:
            return None
        return (published.directory / filename).read_bytes()

    def list_repos(self) -> list[PublishedAnalysis]:
        """Every completely published repository on disk, sorted by slug."""
        found = []
        for entry in sorted(self.root.iterdir()) if self.root.is_dir() else []:
            if not entry.is_dir() or "__" not in entry.name:
                continue
            owner, _, name = entry.name.partition("__")
            if not owner or not name:
                continue
            published = self.current(owner, name)
            if published is not None:
                found.append(published)
        return found
