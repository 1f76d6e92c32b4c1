"""Greedy bus factor computation and contributor-departure simulation.

Pure functions over an immutable KnowledgeMatrix; concurrent callers need no
coordination. A file is *covered* while at least one of its major authors has
not been removed; the bus factor of a scope is the number of top contributors
that must be removed before fewer than half of its files stay covered.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Sequence

from busfactor.config import MAJOR_SHARE
from busfactor.errors import UnknownAuthorsError
from busfactor.knowledge import ACTIVE, KnowledgeMatrix, major_set

if TYPE_CHECKING:
    from busfactor.tree import TreeNode


@dataclass(frozen=True)
class BusFactorResult:
    """Outcome of the greedy removal over one scope.

    ``bus_factor`` is None (not applicable) when the scope has no active
    files. ``removal_trace`` pairs each removed author with the number of
    files still covered after their removal.
    """

    scope: str
    bus_factor: int | None
    removal_trace: tuple[tuple[str, int], ...]
    total_active_files: int


@dataclass(frozen=True)
class SimulationDelta:
    path: str
    original_bf: int | None
    simulated_bf: int | None
    delta: int


def coverage(
    matrix: KnowledgeMatrix,
    scope_files: Iterable[str],
    removed: Iterable[str],
    major_share: float = MAJOR_SHARE,
) -> int:
    """Number of scope files that still have at least one remaining major."""
    gone = set(removed)
    count = 0
    for path in scope_files:
        majors = major_set(matrix.entries.get(path, {}), major_share)
        if any(a not in gone for a in majors):
            count += 1
    return count


def bus_factor(
    matrix: KnowledgeMatrix,
    scope_files: Sequence[str],
    scope: str = "",
    major_share: float = MAJOR_SHARE,
    majors_cache: dict[str, tuple[str, ...]] | None = None,
) -> BusFactorResult:
    """Remove top contributors until coverage drops below half the scope.

    Removal order: descending total knowledge over the scope, ties by author
    id. The half comparison is exact (covered * 2 < total), so no float
    threshold is involved. ``majors_cache`` lets callers that sweep many
    scopes over one matrix reuse per-file major sets.
    """
    files = list(scope_files)
    total = len(files)
    if total == 0:
        return BusFactorResult(scope, None, (), 0)

    majors_by_file: dict[str, tuple[str, ...]] = {}
    for path in files:
        if majors_cache is not None and path in majors_cache:
            majors_by_file[path] = majors_cache[path]
        else:
            majors = major_set(matrix.entries.get(path, {}), major_share)
            majors_by_file[path] = majors
            if majors_cache is not None:
                majors_cache[path] = majors

    totals: dict[str, float] = {}
    for path in files:
        for author, k in matrix.entries.get(path, {}).items():
            totals[author] = totals.get(author, 0.0) + k
    order = sorted((a for a, t in totals.items() if t > 0), key=lambda a: (-totals[a], a))

    major_files: dict[str, list[str]] = {}
    remaining: dict[str, int] = {}
    for path in files:
        majors = majors_by_file[path]
        remaining[path] = len(majors)
        for author in majors:
            major_files.setdefault(author, []).append(path)

    covered = sum(1 for path in files if remaining[path] > 0)
    trace: list[tuple[str, int]] = []
    if covered * 2 < total:
        return BusFactorResult(scope, 0, (), total)
    for author in order:
        for path in major_files.get(author, ()):
            remaining[path] -= 1
            if remaining[path] == 0:
                covered -= 1
        trace.append((author, covered))
        if covered * 2 < total:
            break
    return BusFactorResult(scope, len(trace), tuple(trace), total)


def simulate(
    matrix: KnowledgeMatrix,
    tree: "TreeNode",
    excluded: Iterable[str],
    major_share: float = MAJOR_SHARE,
) -> list[SimulationDelta]:
    """Recompute every node's bus factor with the excluded authors erased.

    Original values are read from the enriched tree; simulated values come
    from a matrix view with the excluded authors' knowledge deleted. Files
    left authorless stay in the denominator as permanently uncovered. Pure:
    neither the matrix nor the tree is mutated.
    """
    gone = set(excluded)
    unknown = sorted(gone - matrix.authors())
    if unknown:
        raise UnknownAuthorsError(unknown)
    view = matrix.without_authors(gone) if gone else matrix
    majors_cache: dict[str, tuple[str, ...]] = {}
    deltas: list[SimulationDelta] = []

    def visit(node: "TreeNode") -> list[str]:
        slot = len(deltas)
        deltas.append(None)  # type: ignore[arg-type]  # placeholder keeps preorder
        if node.kind == "FILE":
            files = [node.path] if matrix.file_status.get(node.path) == ACTIVE else []
        else:
            files = []
            for child in node.children:
                files.extend(visit(child))
        simulated = bus_factor(
            view, files, scope=node.path, major_share=major_share, majors_cache=majors_cache
        ).bus_factor
        original = node.bus_factor
        delta = 0 if original is None or simulated is None else simulated - original
        deltas[slot] = SimulationDelta(node.path, original, simulated, delta)
        return files

    visit(tree)
    return deltas
