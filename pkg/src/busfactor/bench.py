"""Benchmark harness: timed analysis runs over synthetic histories.

The repository is generated once and analyzed ``repeat`` times without any
cloning, so the numbers isolate history processing. Peak memory is the
process high-water mark (ru_maxrss), which only grows, so the summary value
is the peak across all runs.
"""

from __future__ import annotations

import io
import resource
import statistics
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path

from busfactor.config import WINDOW_DAYS
from busfactor.gitio import RepoHandle
from busfactor.pipeline import analyze
from busfactor.synthetic import generate_repository


@dataclass(frozen=True)
class BenchSample:
    run: int
    wall_s: float
    peak_rss_mb: float


@dataclass(frozen=True)
class BenchReport:
    commits: int
    files: int
    authors: int
    seed: int
    samples: tuple[BenchSample, ...]
    median_wall_s: float
    peak_rss_mb: float
    root_bus_factor: int | None


@dataclass(frozen=True)
class LinearFit:
    slope: float
    intercept: float
    r_squared: float


def peak_rss_mb() -> float:
    return resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024.0


def run_benchmark(
    commits: int,
    files: int = 2000,
    authors: int = 20,
    repeat: int = 10,
    seed: int = 0,
    window_days: int = WINDOW_DAYS,
    repo_dir: Path | None = None,
) -> BenchReport:
    """Generate a synthetic repo and time ``repeat`` full analyses of it."""
    if repeat < 1:
        raise ValueError("repeat must be >= 1")
    tempdir = None
    if repo_dir is None:
        tempdir = tempfile.TemporaryDirectory(prefix="busfactor-bench-")
        repo_dir = Path(tempdir.name) / "repo"
    try:
        generate_repository(
            repo_dir, commits=commits, files=files, authors=authors, seed=seed,
            window_days=window_days,
        )
        handle = RepoHandle(Path(repo_dir))
        samples = []
        root_bf: int | None = None
        for run in range(1, repeat + 1):
            start = time.perf_counter()
            result = analyze(handle, window_days=window_days)
            wall = time.perf_counter() - start
            root_bf = result.root_bus_factor
            samples.append(BenchSample(run=run, wall_s=wall, peak_rss_mb=peak_rss_mb()))
        return BenchReport(
            commits=commits,
            files=files,
            authors=authors,
            seed=seed,
            samples=tuple(samples),
            median_wall_s=statistics.median(s.wall_s for s in samples),
            peak_rss_mb=max(s.peak_rss_mb for s in samples),
            root_bus_factor=root_bf,
        )
    finally:
        if tempdir is not None:
            tempdir.cleanup()


def report_csv(report: BenchReport) -> str:
    out = io.StringIO()
    out.write("run,commits,files,authors,wall_s,peak_rss_mb\n")
    for s in report.samples:
        out.write(
            f"{s.run},{report.commits},{report.files},{report.authors},"
            f"{s.wall_s:.4f},{s.peak_rss_mb:.1f}\n"
        )
    out.write(
        f"median,{report.commits},{report.files},{report.authors},"
        f"{report.median_wall_s:.4f},{report.peak_rss_mb:.1f}\n"
    )
    return out.getvalue()


def linear_fit(xs: list[float], ys: list[float]) -> LinearFit:
    """Least-squares line through (xs, ys) with its coefficient of determination."""
    n = len(xs)
    if n != len(ys) or n < 2:
        raise ValueError("need at least two paired samples")
    mean_x = sum(xs) / n
    mean_y = sum(ys) / n
    sxx = sum((x - mean_x) ** 2 for x in xs)
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    if sxx == 0:
        raise ValueError("x values are all identical")
    slope = sxy / sxx
    intercept = mean_y - slope * mean_x
    ss_res = sum((y - (slope * x + intercept)) ** 2 for x, y in zip(xs, ys))
    ss_tot = sum((y - mean_y) ** 2 for y in ys)
    r_squared = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    return LinearFit(slope=slope, intercept=intercept, r_squared=r_squared)
