"""History mining against scripted fixture repositories."""

from pathlib import Path

import pytest

from busfactor.errors import AuthError, InputError, MiningError, NetworkError, RepoNotFoundError
from busfactor.gitio import (
    RepoHandle,
    _classify_remote_failure,
    canonical_author,
    clone_or_open,
    mine,
    parse_repo_url,
)
from conftest import ALICE, BOB, DAY, REF_TS, GitFixture


class TestCanonicalAuthor:
    def test_email_wins_lowercased_trimmed(self):
        assert canonical_author("Ada L", "  Ada@Example.COM ") == "ada@example.com"

    def test_name_fallback(self):
        assert canonical_author("Ada L", "") == "ada l"

    def test_sentinel_when_both_empty(self):
        assert canonical_author("", "  ") == "unknown"


class TestParseRepoUrl:
    @pytest.mark.parametrize(
        "url",
        [
            "https://github.com/octo/widget.git",
            "https://github.com/octo/widget",
            "git@github.com:octo/widget.git",
            "ssh://git@github.com/octo/widget",
        ],
    )
    def test_common_forms(self, url):
        assert parse_repo_url(url) == ("octo", "widget")

    def test_garbage_rejected(self):
        with pytest.raises(InputError):
            parse_repo_url("not a url at all")


class TestCloneOrOpen:
    def test_open_local_repo_in_place(self, four_file_repo):
        handle = clone_or_open(Path("/nonexistent-workdir"), str(four_file_repo))
        assert handle.path == four_file_repo.resolve()

    def test_fresh_clone_then_reuse(self, four_file_repo, tmp_path):
        workdir = tmp_path / "work"
        url = f"file://{four_file_repo}"
        first = clone_or_open(workdir, url)
        assert (first.path / ".git").exists()
        marker = first.path / ".git" / "clone-marker"
        marker.write_text("keep")
        second = clone_or_open(workdir, url)
        assert second.path == first.path
        assert marker.exists()  # reused, not re-cloned

    def test_unreachable_host_is_retryable_network_error(self, tmp_path):
        with pytest.raises(NetworkError) as exc:
            clone_or_open(tmp_path, "http://127.0.0.1:9/owner/repo.git")
        assert exc.value.retryable

    def test_missing_local_path_is_input_error(self, tmp_path):
        with pytest.raises(InputError):
            clone_or_open(tmp_path, str(tmp_path / "nope"))

    def test_non_repo_directory_is_input_error(self, tmp_path):
        plain = tmp_path / "plain"
        plain.mkdir()
        with pytest.raises(InputError):
            clone_or_open(tmp_path, str(plain))


class TestRemoteFailureClassification:
    def test_auth_failures_are_terminal_with_message(self):
        error = _classify_remote_failure("fatal: Authentication failed for 'https://x/'")
        assert isinstance(error, AuthError)
        assert not error.retryable
        assert "Authentication failed" in str(error)

    def test_missing_remote_repo(self):
        error = _classify_remote_failure("fatal: repository 'https://x' not found")
        assert isinstance(error, RepoNotFoundError)

    def test_dns_failure_is_retryable(self):
        error = _classify_remote_failure("fatal: unable to access: Could not resolve host")
        assert isinstance(error, NetworkError)
        assert error.retryable

    def test_unknown_failures_default_to_non_retryable_network(self):
        error = _classify_remote_failure("fatal: the remote end hung up strangely")
        assert isinstance(error, NetworkError)
        assert not error.retryable


class TestMine:
    def test_single_commit_two_files(self, tmp_path):
        repo = GitFixture(tmp_path / "r")
        repo.commit({"a": "1\n", "b": "2\n"}, author=ALICE, ts=REF_TS)
        result = mine(RepoHandle(repo.path))
        assert len(result.events) == 2
        assert {e.path for e in result.events} == {"a", "b"}
        assert result.reference_time == REF_TS
        assert result.commit_count_scanned == 1

    def test_window_excludes_old_commits_but_keeps_files(self, tmp_path):
        repo = GitFixture(tmp_path / "r")
        repo.commit({"old": "x\n"}, author=ALICE, ts=REF_TS - 600 * DAY)
        repo.commit({"new": "y\n"}, author=BOB, ts=REF_TS)
        result = mine(RepoHandle(repo.path))
        assert {e.path for e in result.events} == {"new"}
        assert {p for p, _ in result.files} == {"old", "new"}
        assert result.commit_count_scanned == 2
        assert result.commit_count_in_window == 1

    def test_window_boundary_is_inclusive(self, tmp_path):
        repo = GitFixture(tmp_path / "r")
        repo.commit({"edge": "x\n"}, author=ALICE, ts=REF_TS - 548 * DAY)
        repo.commit({"new": "y\n"}, author=BOB, ts=REF_TS)
        result = mine(RepoHandle(repo.path))
        assert {e.path for e in result.events} == {"edge", "new"}

    def test_merge_commit_contributes_no_events(self, tmp_path):
        repo = GitFixture(tmp_path / "r")
        repo.commit({"base": "0\n"}, author=ALICE, ts=REF_TS - 5 * DAY)
        repo.git("checkout", "-q", "-b", "side")
        repo.commit({"side.txt": "s\n"}, author=BOB, ts=REF_TS - 4 * DAY)
        repo.git("checkout", "-q", "main")
        repo.commit({"main.txt": "m\n"}, author=ALICE, ts=REF_TS - 3 * DAY)
        repo.git(
            "merge",
            "-q",
            "--no-ff",
            "side",
            "-m",
            "merge side",
            env={
                "GIT_AUTHOR_NAME": ALICE[0],
                "GIT_AUTHOR_EMAIL": ALICE[1],
                "GIT_COMMITTER_NAME": ALICE[0],
                "GIT_COMMITTER_EMAIL": ALICE[1],
                "GIT_AUTHOR_DATE": f"{REF_TS} +0000",
                "GIT_COMMITTER_DATE": f"{REF_TS} +0000",
            },
        )
        result = mine(RepoHandle(repo.path))
        # One event per (non-merge commit, changed file): base, side.txt, main.txt.
        assert len(result.events) == 3
        assert result.commit_count_scanned == 4

    def test_rename_rekeys_earlier_events(self, tmp_path):
        repo = GitFixture(tmp_path / "r")
        repo.commit({"f.txt": "payload\n"}, author=ALICE, ts=REF_TS - 10 * DAY)
        repo.commit(
            {"g.txt": "payload\n", "f.txt": None}, author=BOB, ts=REF_TS, message="rename"
        )
        result = mine(RepoHandle(repo.path))
        assert {e.path for e in result.events} == {"g.txt"}
        assert len(result.events) == 2
        assert {p for p, _ in result.files} == {"g.txt"}

    def test_deterministic_between_runs(self, four_file_repo):
        first = mine(RepoHandle(four_file_repo))
        second = mine(RepoHandle(four_file_repo))
        assert first == second

    def test_window_correctness_invariant(self, nested_repo):
        window = 548
        result = mine(RepoHandle(nested_repo), window_days=window)
        for event in result.events:
            assert result.reference_time - event.timestamp_utc <= window * 86400

    def test_ordering_commit_then_path(self, tmp_path):
        repo = GitFixture(tmp_path / "r")
        repo.commit({"b": "1\n", "a": "2\n"}, author=ALICE, ts=REF_TS - DAY)
        repo.commit({"c": "3\n", "b": "4\n"}, author=BOB, ts=REF_TS)
        result = mine(RepoHandle(repo.path))
        assert [(e.path, e.timestamp_utc) for e in result.events] == [
            ("a", REF_TS - DAY),
            ("b", REF_TS - DAY),
            ("b", REF_TS),
            ("c", REF_TS),
        ]

    def test_tiny_window_marks_everything_else_out(self, tmp_path):
        repo = GitFixture(tmp_path / "r")
        repo.commit({"old": "x\n"}, author=ALICE, ts=REF_TS - 10 * DAY)
        repo.commit({"new": "y\n"}, author=BOB, ts=REF_TS)
        result = mine(RepoHandle(repo.path), window_days=1)
        assert {e.path for e in result.events} == {"new"}

    def test_empty_repository_rejected(self, tmp_path):
        repo = GitFixture(tmp_path / "r")
        with pytest.raises(MiningError, match="no commits"):
            mine(RepoHandle(repo.path))

    def test_nonstandard_branch_lists_candidates(self, tmp_path):
        repo = GitFixture(tmp_path / "r", branch="trunk")
        repo.commit({"a": "1\n"}, author=ALICE, ts=REF_TS)
        with pytest.raises(MiningError, match="trunk"):
            mine(RepoHandle(repo.path))

    def test_master_branch_accepted(self, tmp_path):
        repo = GitFixture(tmp_path / "r", branch="master")
        repo.commit({"a": "1\n"}, author=ALICE, ts=REF_TS)
        assert len(mine(RepoHandle(repo.path)).events) == 1

    def test_byte_sizes_match_blob_lengths(self, tmp_path):
        repo = GitFixture(tmp_path / "r")
        repo.commit({"a": "12345\n", "d/b": "1\n"}, author=ALICE, ts=REF_TS)
        result = mine(RepoHandle(repo.path))
        assert dict(result.files) == {"a": 6, "d/b": 2}
