"""Command line interface: analyze, bench, simulate.

Exit codes: 0 ok, 2 input error, 3 domain error, 4 network error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from busfactor import engine, export
from busfactor.bench import report_csv, run_benchmark
from busfactor.config import NOT_APPLICABLE_LABEL, WINDOW_DAYS
from busfactor.errors import BusFactorError, InputError, NetworkError, RepoNotFoundError
from busfactor.github import GitHubProvider, auth_token
from busfactor.gitio import clone_or_open, parse_repo_url
from busfactor.knowledge import matrix_from_json
from busfactor.pipeline import analyze, write_artifacts


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="busfactor",
        description="Mine a git repository and compute per-file and per-folder bus factors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="run the full pipeline and export artifacts")
    p_analyze.add_argument("target", help="repository url or local path")
    p_analyze.add_argument("--out", default="busfactor-out", help="artifact output directory")
    p_analyze.add_argument("--window-days", type=int, default=WINDOW_DAYS)
    p_analyze.add_argument("--workdir", default="data", help="directory for clones")

    p_bench = sub.add_parser("bench", help="benchmark analysis over a synthetic history")
    p_bench.add_argument("--commits", type=int, required=True)
    p_bench.add_argument("--files", type=int, default=2000)
    p_bench.add_argument("--authors", type=int, default=20)
    p_bench.add_argument("--repeat", type=int, default=10)
    p_bench.add_argument("--seed", type=int, default=0)

    p_sim = sub.add_parser("simulate", help="recompute bus factors with authors excluded")
    p_sim.add_argument("artifact_dir", help="directory holding tree.json and matrix.json")
    p_sim.add_argument("--exclude", default="", help="comma-separated author ids")

    return parser


def _format_bus_factor(value: int | None) -> str:
    return NOT_APPLICABLE_LABEL if value is None else str(value)


def _cmd_analyze(args: argparse.Namespace) -> int:
    handle = clone_or_open(Path(args.workdir), args.target, token=auth_token())
    hints = ()
    if not Path(args.target).exists():
        owner, name = parse_repo_url(args.target)
        provider = GitHubProvider(token=auth_token())
        try:
            hints = provider.list_bots(provider.coordinates(owner, name))
        except (NetworkError, RepoNotFoundError) as exc:
            print(f"warning: bot listing unavailable ({exc})", file=sys.stderr)
        finally:
            provider.close()
    result = analyze(handle, window_days=args.window_days, bot_hints=hints)
    out_dir = Path(args.out)
    write_artifacts(result, out_dir)
    meta = {
        "referenceTime": result.matrix.reference_time,
        "rootBusFactor": result.root_bus_factor,
        "commitCountScanned": result.mining.commit_count_scanned,
        "commitCountInWindow": result.mining.commit_count_in_window,
        "excludedBots": sorted(result.bots),
    }
    (out_dir / "meta.json").write_bytes(
        json.dumps(meta, sort_keys=True, separators=(",", ":")).encode("utf-8")
    )
    print(f"bus factor: {_format_bus_factor(result.root_bus_factor)}")
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    if args.commits < 1:
        raise InputError(f"--commits must be >= 1, got {args.commits}")
    report = run_benchmark(
        commits=args.commits,
        files=args.files,
        authors=args.authors,
        repeat=args.repeat,
        seed=args.seed,
    )
    sys.stdout.write(report_csv(report))
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    artifact_dir = Path(args.artifact_dir)
    tree_path = artifact_dir / "tree.json"
    matrix_path = artifact_dir / "matrix.json"
    if not tree_path.is_file() or not matrix_path.is_file():
        raise InputError(f"no analysis artifacts in {artifact_dir}")
    tree = export.parse_json(tree_path.read_bytes())
    matrix = matrix_from_json(matrix_path.read_bytes())
    excluded = [item.strip() for item in args.exclude.split(",") if item.strip()]
    deltas = engine.simulate(matrix, tree, excluded)
    print("path\toriginal\tsimulated\tdelta")
    for d in deltas:
        print(
            "{}\t{}\t{}\t{}".format(
                d.path or ".",
                _format_bus_factor(d.original_bf),
                _format_bus_factor(d.simulated_bf),
                d.delta,
            )
        )
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {"analyze": _cmd_analyze, "bench": _cmd_bench, "simulate": _cmd_simulate}
    try:
        return handlers[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NetworkError as exc:
        print(f"network error: {exc}", file=sys.stderr)
        return 4
    except BusFactorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
