"""Deterministic synthetic git repositories for benchmarks.

Histories are streamed through ``git fast-import``, which builds tens of
thousands of commits in seconds. Authors commit round-robin; each update
commit touches files drawn from a Zipf-like rank distribution, so ownership
skews the way real repositories do. Timestamps ascend uniformly across the
active window, ending at a fixed head time, so the same parameters always
produce the same commit hashes.
"""

from __future__ import annotations

import bisect
import random
import subprocess
from pathlib import Path

from busfactor.config import WINDOW_DAYS
from busfactor.errors import InputError, MiningError

#: Fixed head-commit timestamp; history fills the window behind it.
HEAD_TIME = 1_700_000_000

_ZIPF_EXPONENT = 1.1


def _file_path(index: int, total_files: int) -> str:
    folders = max(1, total_files // 50)
    return f"src/pkg{index % folders:03d}/file{index:05d}.py"


def _file_blob(index: int, revision: int, salt: int) -> bytes:
    # Size varies per file (treemap realism) but not per revision, so hot
    # files do not balloon the stream.
    base = f"# module {index}\n" * (1 + index % 9)
    return f"{base}# revision {revision} salt {salt:08x}\n".encode()


def _zipf_cumulative(n: int) -> list[float]:
    weights = [1.0 / (rank + 1) ** _ZIPF_EXPONENT for rank in range(n)]
    cumulative = []
    total = 0.0
    for w in weights:
        total += w
        cumulative.append(total)
    return cumulative


def generate_repository(
    dest: Path,
    commits: int,
    files: int = 2000,
    authors: int = 20,
    seed: int = 0,
    window_days: int = WINDOW_DAYS,
) -> Path:
    """Create a repo with ``commits`` commits over ``files`` files at ``dest``.

    The first commit seeds every file so the head tree always holds the full
    pool; the remaining commits are updates. All timestamps land inside the
    active window, so every file is ACTIVE.
    """
    if commits < 1:
        raise InputError(f"commits must be >= 1, got {commits}")
    if files < 1 or authors < 1:
        raise InputError("files and authors must be >= 1")
    dest = Path(dest)
    dest.mkdir(parents=True, exist_ok=True)
    subprocess.run(
        ["git", "init", "-q", "-b", "main", str(dest)], check=True, capture_output=True
    )

    rng = random.Random(f"busfactor-synthetic:{seed}:{commits}:{files}:{authors}")
    cumulative = _zipf_cumulative(files)
    zipf_total = cumulative[-1]
    span = int(window_days * 86400 * 0.9)
    revisions = [0] * files

    proc = subprocess.Popen(
        ["git", "fast-import", "--quiet", "--done"],
        cwd=dest,
        stdin=subprocess.PIPE,
        stdout=subprocess.DEVNULL,
        stderr=subprocess.PIPE,
    )
    assert proc.stdin is not None

    def emit_commit(index: int, author: int, touched: list[int]) -> None:
        ts = HEAD_TIME - span + round((index + 1) * span / commits)
        ident = f"Author {author:02d} <author{author:02d}@example.com> {ts} +0000"
        message = f"commit {index}\n".encode()
        parts = [
            b"commit refs/heads/main\n",
            f"mark :{index + 1}\n".encode(),
            f"author {ident}\n".encode(),
            f"committer {ident}\n".encode(),
            f"data {len(message)}\n".encode(),
            message,
        ]
        if index > 0:
            parts.append(f"from :{index}\n".encode())
        for file_index in touched:
            blob = _file_blob(file_index, revisions[file_index], rng.getrandbits(32))
            path = _file_path(file_index, files)
            parts.append(f"M 100644 inline {path}\ndata {len(blob)}\n".encode())
            parts.append(blob)
            parts.append(b"\n")
        parts.append(b"\n")
        proc.stdin.write(b"".join(parts))

    try:
        emit_commit(0, 0, list(range(files)))
        for index in range(1, commits):
            author = index % authors
            count = 1 + int(rng.random() * 3)
            touched: set[int] = set()
            while len(touched) < count:
                pick = bisect.bisect_left(cumulative, rng.random() * zipf_total)
                touched.add(min(pick, files - 1))
            for file_index in touched:
                revisions[file_index] += 1
            emit_commit(index, author, sorted(touched))
        proc.stdin.write(b"done\n")
        proc.stdin.close()
        returncode = proc.wait()
    except BrokenPipeError:
        returncode = proc.wait()
    if returncode != 0:
        stderr = proc.stderr.read().decode(errors="replace") if proc.stderr else ""
        raise MiningError(f"fast-import failed: {stderr}")
    return dest
