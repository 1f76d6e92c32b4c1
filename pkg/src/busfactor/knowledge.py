"""Decay-weighted, per-file knowledge model derived from contribution events."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Mapping

from busfactor.config import HALF_LIFE_DAYS, MAJOR_SHARE
from busfactor.errors import ContractViolation

if TYPE_CHECKING:
    from busfactor.gitio import MiningResult

ACTIVE = "ACTIVE"
INACTIVE = "INACTIVE"

SECONDS_PER_DAY = 86400.0


def decay_weight(age_days: float, half_life_days: float = HALF_LIFE_DAYS) -> float:
    """Weight of a contribution ``age_days`` old; halves every half-life."""
    if age_days < 0:
        raise ContractViolation(f"age_days must be non-negative, got {age_days}")
    return 0.5 ** (age_days / half_life_days)


@dataclass(frozen=True)
class KnowledgeMatrix:
    """Per active file, each author's decayed knowledge.

    ``entries`` holds every file present at head; inactive files map to an
    empty author dict. Instances are treated as immutable after construction
    and are safe to share across threads.
    """

    reference_time: int
    entries: dict[str, dict[str, float]]
    file_status: dict[str, str]

    def active_files(self) -> list[str]:
        return sorted(p for p, s in self.file_status.items() if s == ACTIVE)

    def authors(self) -> set[str]:
        known: set[str] = set()
        for author_map in self.entries.values():
            known.update(author_map)
        return known

    def without_authors(self, excluded: Iterable[str]) -> "KnowledgeMatrix":
        """Simulation view: drop the excluded authors' knowledge everywhere.

        File statuses are preserved, so files left without any author stay
        active (and count as uncovered) rather than shrinking the scope.
        """
        gone = set(excluded)
        entries = {
            path: {a: k for a, k in author_map.items() if a not in gone}
            for path, author_map in self.entries.items()
        }
        return KnowledgeMatrix(self.reference_time, entries, dict(self.file_status))


@dataclass(frozen=True)
class MajorAuthorSet:
    """Authors whose joint departure abandons the file."""

    path: str
    majors: tuple[str, ...]


def major_set(author_map: Mapping[str, float], major_share: float = MAJOR_SHARE) -> tuple[str, ...]:
    """Authors holding at least ``major_share`` of the map's top knowledge.

    Ordered by descending knowledge, ties broken by author id. Empty input
    yields an empty tuple (a file nobody knows is never covered).
    """
    if not author_map:
        return ()
    top = max(author_map.values())
    cutoff = major_share * top
    winners = [(a, k) for a, k in author_map.items() if k >= cutoff]
    winners.sort(key=lambda item: (-item[1], item[0]))
    return tuple(a for a, _ in winners)


def major_authors(
    matrix: KnowledgeMatrix, path: str, major_share: float = MAJOR_SHARE
) -> MajorAuthorSet:
    if matrix.file_status.get(path) != ACTIVE:
        raise ContractViolation(f"major_authors requires an ACTIVE path, got {path!r}")
    return MajorAuthorSet(path, major_set(matrix.entries[path], major_share))


def build_matrix(
    mining: "MiningResult",
    bots: Iterable[str] = (),
    half_life_days: float = HALF_LIFE_DAYS,
) -> KnowledgeMatrix:
    """Fold contribution events into the per-file, per-author knowledge matrix.

    Bot authors are discarded before any knowledge is credited; a head file
    whose only in-window contributors were bots therefore ends up INACTIVE.
    Events for paths no longer present at head are dropped.
    """
    bot_ids = set(bots)
    head_files = {path for path, _ in mining.files}
    entries: dict[str, dict[str, float]] = {path: {} for path in head_files}
    ref = mining.reference_time
    for event in mining.events:
        if event.author_id in bot_ids or event.path not in head_files:
            continue
        age_days = (ref - event.timestamp_utc) / SECONDS_PER_DAY
        author_map = entries[event.path]
        author_map[event.author_id] = author_map.get(event.author_id, 0.0) + decay_weight(
            age_days, half_life_days
        )
    file_status = {
        path: ACTIVE if entries[path] else INACTIVE for path in head_files
    }
    return KnowledgeMatrix(ref, entries, file_status)


def matrix_to_json(matrix: KnowledgeMatrix) -> bytes:
    """Serialize with full float precision; byte-deterministic."""
    payload = {
        "referenceTime": matrix.reference_time,
        "entries": matrix.entries,
        "fileStatus": matrix.file_status,
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False).encode(
        "utf-8"
    )


def matrix_from_json(data: bytes) -> KnowledgeMatrix:
    payload = json.loads(data.decode("utf-8"))
    entries = {
        path: {a: float(k) for a, k in author_map.items()}
        for path, author_map in payload["entries"].items()
    }
    return KnowledgeMatrix(
        reference_time=int(payload["referenceTime"]),
        entries=entries,
        file_status=dict(payload["fileStatus"]),
    )
