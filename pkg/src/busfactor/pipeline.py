"""End-to-end analysis: mine history, build the knowledge matrix, enrich the tree."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from busfactor import export
from busfactor.config import WINDOW_DAYS, AnalysisConfig, DEFAULT_CONFIG
from busfactor.github import BotHint, match_bot_authors
from busfactor.gitio import MiningResult, RepoHandle, mine
from busfactor.knowledge import KnowledgeMatrix, build_matrix, matrix_to_json
from busfactor.tree import TreeNode, build_tree, enrich


@dataclass(frozen=True)
class AnalysisResult:
    mining: MiningResult
    matrix: KnowledgeMatrix
    tree: TreeNode
    bots: frozenset[str]
    stage_seconds: dict[str, float] = field(default_factory=dict)

    @property
    def root_bus_factor(self) -> int | None:
        return self.tree.bus_factor


def analyze(
    handle: RepoHandle,
    window_days: int = WINDOW_DAYS,
    config: AnalysisConfig = DEFAULT_CONFIG,
    bot_hints: Iterable[BotHint] = (),
) -> AnalysisResult:
    """Run mine -> bot matching -> matrix -> tree -> enrich on an open repo."""
    stages: dict[str, float] = {}
    t0 = time.perf_counter()
    mining = mine(handle, window_days=window_days)
    stages["mine"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    author_ids = {event.author_id for event in mining.events}
    bots = frozenset(match_bot_authors(bot_hints, author_ids))
    matrix = build_matrix(mining, bots, half_life_days=config.half_life_days)
    stages["matrix"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    tree = build_tree(mining.files)
    stages["tree"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    enriched = enrich(tree, matrix, major_share=config.major_share)
    stages["enrich"] = time.perf_counter() - t0

    return AnalysisResult(
        mining=mining, matrix=matrix, tree=enriched, bots=bots, stage_seconds=stages
    )


def artifact_bytes(result: AnalysisResult) -> dict[str, bytes]:
    """The serialized artifact set shared by the CLI and the service store."""
    return {
        "tree.json": export.to_json(result.tree),
        "tree.csv": export.to_csv(result.tree),
        "matrix.json": matrix_to_json(result.matrix),
    }


def write_artifacts(result: AnalysisResult, out_dir: Path) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    for filename, data in artifact_bytes(result).items():
        (out_dir / filename).write_bytes(data)
