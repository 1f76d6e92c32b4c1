"""Git history mining: clone management, branch selection, windowed event extraction.

All repository access goes through the system ``git`` binary; a single
``git log`` streams the whole history, which keeps mining linear in the
number of commits. Mining is single-threaded per repository and the
resulting MiningResult is immutable.
"""

from __future__ import annotations

import base64
import os
import re
import subprocess
from dataclasses import dataclass
from pathlib import Path

from busfactor.config import WINDOW_DAYS
from busfactor.errors import (
    AuthError,
    InputError,
    MiningError,
    NetworkError,
    RepoNotFoundError,
)

SECONDS_PER_DAY = 86400

_RECORD_SEP = "\x1e"
_FIELD_SEP = "\x1f"
_LOG_FORMAT = f"{_RECORD_SEP}%H{_FIELD_SEP}%P{_FIELD_SEP}%an{_FIELD_SEP}%ae{_FIELD_SEP}%at"


@dataclass(frozen=True)
class ContributionEvent:
    """One (commit, file, author, timestamp) change record."""

    author_id: str
    path: str
    commit_id: str
    timestamp_utc: int


@dataclass(frozen=True)
class MiningResult:
    events: tuple[ContributionEvent, ...]
    reference_time: int
    files: tuple[tuple[str, int], ...]
    commit_count_scanned: int
    commit_count_in_window: int


@dataclass(frozen=True)
class RepoHandle:
    path: Path


class _GitFailure(Exception):
    def __init__(self, args: list[str], stderr: str):
        self.stderr = stderr
        super().__init__(f"git {' '.join(args)} failed: {stderr.strip()}")


def _run_git(args: list[str], cwd: Path | None = None, check: bool = True) -> str:
    proc = subprocess.run(
        ["git", *args],
        cwd=cwd,
        capture_output=True,
        text=True,
        encoding="utf-8",
        errors="surrogateescape",
    )
    if check and proc.returncode != 0:
        raise _GitFailure(args, proc.stderr)
    return proc.stdout


def canonical_author(name: str, email: str) -> str:
    """Stable author key: trimmed lowercase email, else name, else a sentinel."""
    email = email.strip().lower()
    if email:
        return email
    name = name.strip().lower()
    if name:
        return name
    return "unknown"


_URL_PATTERNS = (
    re.compile(r"^(?:https?|ssh|git)://[^/]+/(?P<owner>[^/]+)/(?P<name>[^/]+?)(?:\.git)?/?$"),
    re.compile(r"^[^@/]+@[^:]+:(?P<owner>[^/]+)/(?P<name>[^/]+?)(?:\.git)?/?$"),
    re.compile(r"^file://.*/(?P<owner>[^/]+)/(?P<name>[^/]+?)(?:\.git)?/?$"),
)


def parse_repo_url(url: str) -> tuple[str, str]:
    """Extract (owner, name) from common HTTPS/SSH/file remote URL shapes."""
    for pattern in _URL_PATTERNS:
        match = pattern.match(url)
        if match:
            owner, name = match.group("owner"), match.group("name")
            if owner and name:
                return owner, name
    raise InputError(f"cannot parse repository url: {url!r}")


def _auth_args(url: str, token: str | None) -> list[str]:
    """Per-invocation auth header; never persisted into the clone's config."""
    if not token or not url.startswith("https://"):
        return []
    basic = base64.b64encode(f"x-access-token:{token}".encode()).decode()
    return ["-c", f"http.extraheader=AUTHORIZATION: basic {basic}"]


def _classify_remote_failure(stderr: str) -> Exception:
    text = stderr.lower()
    auth_markers = (
        "authentication failed",
        "could not read username",
        "could not read password",
        "invalid username or token",
        "terminal prompts disabled",
        "permission denied",
    )
    if any(marker in text for marker in auth_markers):
        return AuthError(f"remote rejected credentials: {stderr.strip()}")
    if "not found" in text or "does not appear to be a git repository" in text:
        return RepoNotFoundError(f"remote repository not found: {stderr.strip()}")
    network_markers = (
        "could not resolve host",
        "unable to access",
        "connection refused",
        "connection timed out",
        "network is unreachable",
        "failed to connect",
        "operation timed out",
        "early eof",
    )
    if any(marker in text for marker in network_markers):
        return NetworkError(f"network failure: {stderr.strip()}", retryable=True)
    return NetworkError(f"git remote operation failed: {stderr.strip()}", retryable=False)


def _is_git_repo(path: Path) -> bool:
    try:
        _run_git(["rev-parse", "--git-dir"], cwd=path)
        return True
    except _GitFailure:
        return False


def clone_or_open(workdir: os.PathLike | str, repo_url: str, token: str | None = None) -> RepoHandle:
    """Clone ``repo_url`` under the workdir, or reuse and refresh a prior clone.

    Local directory paths are opened in place. Clones land at
    ``workdir/{owner}__{name}/clone``; a second call with the same url
    fetches updates instead of re-cloning.
    """
    candidate = Path(repo_url)
    if candidate.exists():
        if candidate.is_dir() and _is_git_repo(candidate):
            return RepoHandle(candidate.resolve())
        raise InputError(f"not a git repository: {repo_url}")
    if not re.match(r"^\w+(@|://)|^https?://", repo_url):
        # Bare paths that do not exist are input mistakes, not remote urls.
        raise InputError(f"no such directory: {repo_url}")

    owner, name = parse_repo_url(repo_url)
    target = Path(workdir) / f"{owner}__{name}" / "clone"
    auth = _auth_args(repo_url, token)
    try:
        if target.exists() and _is_git_repo(target):
            _run_git([*auth, "fetch", "--prune", "origin"], cwd=target)
        else:
            target.parent.mkdir(parents=True, exist_ok=True)
            _run_git([*auth, "clone", repo_url, str(target)])
    except _GitFailure as failure:
        raise _classify_remote_failure(failure.stderr) from failure
    return RepoHandle(target.resolve())


def _select_branch(path: Path) -> str:
    try:
        ref = _run_git(
            ["symbolic-ref", "--quiet", "refs/remotes/origin/HEAD"], cwd=path
        ).strip()
        if ref:
            return ref
    except _GitFailure:
        pass
    candidates = (
        "refs/heads/main",
        "refs/heads/master",
        "refs/remotes/origin/main",
        "refs/remotes/origin/master",
    )
    for ref in candidates:
        try:
            _run_git(["rev-parse", "--verify", "--quiet", f"{ref}^{{commit}}"], cwd=path)
            return ref
        except _GitFailure:
            continue
    listing = _run_git(
        ["for-each-ref", "--format=%(refname:short)", "refs/heads", "refs/remotes"],
        cwd=path,
    ).split()
    if not listing:
        raise MiningError("no commits")
    raise MiningError(
        "cannot determine the main branch; candidates: " + ", ".join(sorted(listing))
    )


_C_ESCAPES = {"n": "\n", "t": "\t", "r": "\r", '"': '"', "\\": "\\", "a": "\a", "b": "\b", "f": "\f", "v": "\v"}


def _unquote_path(raw: str) -> str:
    """Undo git's C-style quoting of paths with control or escaped bytes."""
    if not (raw.startswith('"') and raw.endswith('"')):
        return raw
    body = raw[1:-1]
    out = bytearray()
    i = 0
    while i < len(body):
        ch = body[i]
        if ch != "\\":
            out.extend(ch.encode("utf-8"))
            i += 1
            continue
        nxt = body[i + 1]
        if nxt in _C_ESCAPES:
            out.extend(_C_ESCAPES[nxt].encode("utf-8"))
            i += 2
        elif nxt.isdigit():
            out.append(int(body[i + 1 : i + 4], 8))
            i += 4
        else:
            out.extend(nxt.encode("utf-8"))
            i += 2
    return out.decode("utf-8", errors="surrogateescape")


@dataclass(frozen=True)
class _Change:
    status: str
    path: str
    old_path: str | None = None


@dataclass(frozen=True)
class _CommitRecord:
    commit_id: str
    parent_count: int
    author_id: str
    timestamp: int
    changes: tuple[_Change, ...]


def _parse_change_line(line: str) -> _Change | None:
    parts = line.split("\t")
    status = parts[0]
    if not status:
        return None
    kind = status[0]
    if kind in ("R", "C") and len(parts) >= 3:
        old = _unquote_path(parts[1])
        new = _unquote_path(parts[2])
        return _Change(kind, new, old if kind == "R" else None)
    if len(parts) >= 2:
        return _Change(kind, _unquote_path(parts[1]))
    return None


def _read_log(path: Path, branch: str) -> list[_CommitRecord]:
    out = _run_git(
        [
            "-c",
            "core.quotepath=off",
            "log",
            branch,
            "--topo-order",
            "--reverse",
            "-M",
            "--name-status",
            "--no-color",
            f"--format={_LOG_FORMAT}",
        ],
        cwd=path,
    )
    records: list[_CommitRecord] = []
    for chunk in out.split(_RECORD_SEP):
        if not chunk.strip():
            continue
        lines = chunk.split("\n")
        commit_id, parents, author_name, author_email, timestamp = lines[0].split(_FIELD_SEP)
        changes = []
        for line in lines[1:]:
            if not line:
                continue
            change = _parse_change_line(line)
            if change is not None:
                changes.append(change)
        records.append(
            _CommitRecord(
                commit_id=commit_id,
                parent_count=len(parents.split()),
                author_id=canonical_author(author_name, author_email),
                timestamp=int(timestamp),
                changes=tuple(changes),
            )
        )
    return records


def _list_head_files(path: Path, branch: str) -> list[tuple[str, int]]:
    out = _run_git(
        ["-c", "core.quotepath=off", "ls-tree", "-r", "-l", "--full-tree", branch],
        cwd=path,
    )
    files = []
    for line in out.splitlines():
        if not line:
            continue
        meta, raw_path = line.split("\t", 1)
        fields = meta.split()
        if len(fields) < 4 or fields[1] != "blob":
            continue  # submodules (commit entries) are out of scope
        files.append((_unquote_path(raw_path), int(fields[3])))
    files.sort()
    return files


def mine(handle: RepoHandle, window_days: int = WINDOW_DAYS) -> MiningResult:
    """Extract in-window contribution events and the head file listing.

    Event rules: merge commits contribute nothing; every other commit yields
    one event per file changed against its first parent (root commits diff
    against the empty tree); renames re-key the file's earlier events to the
    name it holds at head. Ordering is stable: commit topological order,
    then path.
    """
    if window_days < 1:
        raise InputError(f"window_days must be positive, got {window_days}")
    branch = _select_branch(handle.path)
    records = _read_log(handle.path, branch)
    if not records:
        raise MiningError("no commits")
    reference_time = max(r.timestamp for r in records)
    cutoff = reference_time - window_days * SECONDS_PER_DAY

    # Raw events keep their commit index; buckets map a path to the indices
    # of events currently keyed to it, so renames re-key whole histories.
    raw: list[tuple[int, str, int, str]] = []  # (commit_idx, author, ts, commit_id)
    buckets: dict[str, list[int]] = {}
    in_window_commits = 0
    for index, record in enumerate(records):
        in_window = record.timestamp >= cutoff
        if in_window:
            in_window_commits += 1
        is_merge = record.parent_count > 1
        for change in record.changes:
            if change.status == "R" and change.old_path is not None:
                moved = buckets.pop(change.old_path, [])
                if moved:
                    buckets.setdefault(change.path, []).extend(moved)
            if is_merge or not in_window:
                continue
            event_index = len(raw)
            raw.append((index, record.author_id, record.timestamp, record.commit_id))
            buckets.setdefault(change.path, []).append(event_index)

    final_path: dict[int, str] = {}
    for bucket_path, indices in buckets.items():
        for event_index in indices:
            final_path[event_index] = bucket_path
    events = _sorted_events(raw, final_path)

    files = tuple(_list_head_files(handle.path, branch))
    return MiningResult(
        events=tuple(events),
        reference_time=reference_time,
        files=files,
        commit_count_scanned=len(records),
        commit_count_in_window=in_window_commits,
    )


def _sorted_events(
    raw: list[tuple[int, str, int, str]], final_path: dict[int, str]
) -> list[ContributionEvent]:
    keyed = [
        (raw[i][0], final_path[i], raw[i][1], raw[i][2], raw[i][3])
        for i in range(len(raw))
    ]
    keyed.sort(key=lambda item: (item[0], item[1]))
    return [
        ContributionEvent(author_id=author, path=path, commit_id=commit, timestamp_utc=ts)
        for _, path, author, ts, commit in keyed
    ]
