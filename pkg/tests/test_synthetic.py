"""Synthetic history generation and the benchmark harness."""

import subprocess

from busfactor.bench import linear_fit, run_benchmark
from busfactor.gitio import RepoHandle, mine
from busfactor.pipeline import analyze
from busfactor.synthetic import generate_repository


def head_sha(path) -> str:
    return subprocess.run(
        ["git", "rev-parse", "HEAD"], cwd=path, check=True, capture_output=True, text=True
    ).stdout.strip()


class TestGenerator:
    def test_same_seed_same_history(self, tmp_path):
        a = generate_repository(tmp_path / "a", commits=40, files=15, authors=4, seed=7)
        b = generate_repository(tmp_path / "b", commits=40, files=15, authors=4, seed=7)
        assert head_sha(a) == head_sha(b)

    def test_different_seed_different_history(self, tmp_path):
        a = generate_repository(tmp_path / "a", commits=40, files=15, authors=4, seed=1)
        b = generate_repository(tmp_path / "b", commits=40, files=15, authors=4, seed=2)
        assert head_sha(a) != head_sha(b)

    def test_commit_count_and_file_pool(self, tmp_path):
        repo = generate_repository(tmp_path / "r", commits=30, files=12, authors=3, seed=0)
        result = mine(RepoHandle(repo))
        assert result.commit_count_scanned == 30
        assert len(result.files) == 12

    def test_all_files_active_inside_window(self, tmp_path):
        repo = generate_repository(tmp_path / "r", commits=25, files=10, authors=3, seed=0)
        result = analyze(RepoHandle(repo))
        statuses = {
            node.path: node.status for node in result.tree.walk() if node.kind == "FILE"
        }
        assert set(statuses.values()) == {"ACTIVE"}
        assert result.root_bus_factor is not None


class TestBenchHarness:
    def test_report_shape(self, tmp_path):
        report = run_benchmark(
            commits=20, files=8, authors=3, repeat=3, seed=0, repo_dir=tmp_path / "repo"
        )
        assert len(report.samples) == 3
        assert report.median_wall_s > 0
        assert report.peak_rss_mb > 0
        assert report.root_bus_factor is not None

    def test_linear_fit_recovers_exact_line(self):
        xs = [1000.0, 2000.0, 4000.0, 8000.0]
        ys = [0.5 + 0.002 * x for x in xs]
        fit = linear_fit(xs, ys)
        assert abs(fit.slope - 0.002) < 1e-12
        assert abs(fit.intercept - 0.5) < 1e-9
        assert fit.r_squared == 1.0

    def test_linear_fit_flags_noise(self):
        xs = [1.0, 2.0, 3.0, 4.0]
        ys = [1.0, -1.0, 1.0, -1.0]
        assert linear_fit(xs, ys).r_squared < 0.5
