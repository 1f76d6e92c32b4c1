"""Shared fixtures: scripted git repositories with fixed timestamps.

Every fixture repo pins author/committer identities and dates, so commit
hashes, artifact bytes, and golden files are reproducible across runs and
platforms.
"""

from __future__ import annotations

import os
import subprocess
from pathlib import Path

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None)
settings.load_profile("default")

#: Head timestamp shared by the scripted fixtures (2024-01-01T00:00:00Z).
REF_TS = 1704067200
DAY = 86400

ALICE = ("Alice", "alice@example.com")
BOB = ("Bob", "bob@example.com")
CAROL = ("Carol", "carol@example.com")
DAN = ("Dan", "dan@example.com")
BOT = ("dependabot[bot]", "49699333+dependabot[bot]@users.noreply.github.com")

_HERMETIC_GIT_ENV = {
    "GIT_CONFIG_GLOBAL": "/dev/null",
    "GIT_CONFIG_SYSTEM": "/dev/null",
}


class GitFixture:
    """Minimal scripted-repository builder driving the system git binary."""

    def __init__(self, path: Path, branch: str = "main"):
        self.path = Path(path)
        self.path.mkdir(parents=True, exist_ok=True)
        self.git("init", "-q", "-b", branch, ".")

    def git(self, *args: str, env: dict | None = None) -> str:
        merged = {**os.environ, **_HERMETIC_GIT_ENV, **(env or {})}
        proc = subprocess.run(
            ["git", *args], cwd=self.path, check=True, capture_output=True, text=True, env=merged
        )
        return proc.stdout

    def commit(
        self,
        files: dict[str, str | None],
        author: tuple[str, str] = ALICE,
        ts: int = REF_TS,
        message: str = "change",
    ) -> None:
        """Apply file writes (None deletes) and commit them at a fixed time."""
        for rel, content in files.items():
            target = self.path / rel
            if content is None:
                target.unlink()
            else:
                target.parent.mkdir(parents=True, exist_ok=True)
                target.write_bytes(content.encode("utf-8"))
        self.git("add", "-A")
        stamp = f"{ts} +0000"
        self.git(
            "commit",
            "-q",
            "--no-verify",
            "-m",
            message,
            env={
                "GIT_AUTHOR_NAME": author[0],
                "GIT_AUTHOR_EMAIL": author[1],
                "GIT_COMMITTER_NAME": author[0],
                "GIT_COMMITTER_EMAIL": author[1],
                "GIT_AUTHOR_DATE": stamp,
                "GIT_COMMITTER_DATE": stamp,
            },
        )


def build_four_file_repo(path: Path) -> GitFixture:
    """Two authors, four files: alice solely owns f1/f2, bob f3/f4.

    Alice's total knowledge tops bob's, so the greedy removal takes alice
    first (leaving exactly half the files covered) and bob second: the root
    bus factor is 2.
    """
    repo = GitFixture(path)
    repo.commit(
        {"f1.txt": "alpha one\n", "f2.txt": "alpha two\n"},
        author=ALICE,
        ts=REF_TS - 30 * DAY,
        message="alice seeds f1 f2",
    )
    repo.commit(
        {"f3.txt": "beta three\n", "f4.txt": "beta four\n"},
        author=BOB,
        ts=REF_TS - 20 * DAY,
        message="bob seeds f3 f4",
    )
    repo.commit(
        {"f1.txt": "alpha one v2\n", "f2.txt": "alpha two v2\n"},
        author=ALICE,
        ts=REF_TS,
        message="alice updates f1 f2",
    )
    return repo


def build_nested_repo(path: Path) -> GitFixture:
    """Folders, a rename, a deletion, a stale file, a bot-only file, and a comma path."""
    repo = GitFixture(path)
    repo.commit(
        {
            "docs/legacy.txt": "ancient notes kept for the archive\n",
            "src/core/main.py": "def main():\n    return 0\n",
        },
        author=CAROL,
        ts=REF_TS - 600 * DAY,
        message="initial import",
    )
    repo.commit(
        {
            "src/util/helper.py": "def helper(x):\n    return x * 2\n",
            "notes, old.txt": "comma in the filename, on purpose\n",
        },
        author=DAN,
        ts=REF_TS - 200 * DAY,
        message="dan adds util and notes",
    )
    repo.commit(
        {"src/core/main.py": "def main():\n    return 1\n"},
        author=CAROL,
        ts=REF_TS - 100 * DAY,
        message="carol tweaks main",
    )
    repo.commit(
        {"deps.lock": "locked==1.0\n"},
        author=BOT,
        ts=REF_TS - 100 * DAY,
        message="bump dependencies",
    )
    repo.commit(
        {
            "src/util/helpers.py": "def helper(x):\n    return x * 2\n",
            "src/util/helper.py": None,
            "tmp.txt": "scratch\n",
        },
        author=DAN,
        ts=REF_TS - 50 * DAY,
        message="dan renames helper and adds scratch",
    )
    repo.commit(
        {
            "tmp.txt": None,
            "src/core/main.py": "def main():\n    return 2\n",
        },
        author=DAN,
        ts=REF_TS - 10 * DAY,
        message="dan drops scratch, touches main",
    )
    repo.commit(
        {"notes, old.txt": "comma in the filename, on purpose. updated\n"},
        author=CAROL,
        ts=REF_TS,
        message="carol refreshes notes",
    )
    return repo


def build_stale_repo(path: Path) -> GitFixture:
    """Files last touched 549+ days before head; only one file stays active."""
    repo = GitFixture(path)
    repo.commit(
        {"old.txt": "stale\n", "older/more.txt": "very stale\n"},
        author=ALICE,
        ts=REF_TS - 549 * DAY,
        message="ancient work",
    )
    repo.commit(
        {"current.txt": "fresh\n"},
        author=BOB,
        ts=REF_TS,
        message="recent work",
    )
    return repo


@pytest.fixture
def four_file_repo(tmp_path: Path) -> Path:
    return build_four_file_repo(tmp_path / "four").path


@pytest.fixture
def nested_repo(tmp_path: Path) -> Path:
    return build_nested_repo(tmp_path / "nested").path


@pytest.fixture
def stale_repo(tmp_path: Path) -> Path:
    return build_stale_repo(tmp_path / "stale").path


# --- acceptance criterion reporting -------------------------------------

ACCEPTANCE_RESULTS: dict[str, str] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker and report.when == "call":
        status = "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL")
        ACCEPTANCE_RESULTS[marker.args[0]] = status


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name, status in sorted(ACCEPTANCE_RESULTS.items()):
        terminalreporter.write_line(f"ACCEPTANCE {name}: {status}")
