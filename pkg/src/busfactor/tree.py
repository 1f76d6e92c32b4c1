"""Hierarchical repository tree enriched with sizes, statuses, and bus factors."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from busfactor import engine
from busfactor.config import (
    DEFAULT_CATEGORIES,
    MAJOR_SHARE,
    NOT_APPLICABLE_LABEL,
    CategoryConfig,
)
from busfactor.errors import ContractViolation, InputError
from busfactor.knowledge import ACTIVE, INACTIVE, KnowledgeMatrix

FILE = "FILE"
FOLDER = "FOLDER"


@dataclass
class AuthorShare:
    author_id: str
    knowledge: float
    share: float
    major: bool


@dataclass
class TreeNode:
    """One file or folder; ids are dense DFS preorder indices from the root.

    Children are kept sorted ascending by byte size (ties by name), matching
    the order in which treemap tiles are laid out.
    """

    name: str
    path: str
    kind: str
    bytes: int
    status: str = INACTIVE
    bus_factor: int | None = None
    authors: list[AuthorShare] = field(default_factory=list)
    children: list["TreeNode"] = field(default_factory=list)
    id: int = 0

    def walk(self) -> Iterator["TreeNode"]:
        yield self
        for child in self.children:
            yield from child.walk()

    def find(self, path: str) -> "TreeNode | None":
        for node in self.walk():
            if node.path == path:
                return node
        return None


def _validate_path(path: str) -> list[str]:
    if not path or path.startswith("/"):
        raise InputError(f"path must be repo-relative: {path!r}")
    segments = path.split("/")
    if any(seg in ("", ".", "..") for seg in segments):
        raise InputError(f"path is not normalized: {path!r}")
    return segments


def build_tree(files: Iterable[tuple[str, int]]) -> TreeNode:
    """Assemble the folder/file hierarchy from head paths and blob sizes.

    Folder bytes are the sum of their children; ids are assigned in preorder
    after children are sorted. Statuses, bus factors, and author shares are
    left empty until ``enrich``.
    """
    root = TreeNode(name="", path="", kind=FOLDER, bytes=0)
    folders: dict[str, TreeNode] = {"": root}
    file_paths: set[str] = set()

    def ensure_folder(path: str, name: str, parent: TreeNode) -> TreeNode:
        node = folders.get(path)
        if node is None:
            if path in file_paths:
                raise InputError(f"path is both a file and a folder: {path!r}")
            node = TreeNode(name=name, path=path, kind=FOLDER, bytes=0)
            folders[path] = node
            parent.children.append(node)
        return node

    for path, size in files:
        segments = _validate_path(path)
        if path in file_paths:
            raise InputError(f"duplicate path: {path!r}")
        if path in folders:
            raise InputError(f"path is both a file and a folder: {path!r}")
        parent = root
        for depth, seg in enumerate(segments[:-1]):
            folder_path = "/".join(segments[: depth + 1])
            parent = ensure_folder(folder_path, seg, parent)
        parent.children.append(
            TreeNode(name=segments[-1], path=path, kind=FILE, bytes=int(size))
        )
        file_paths.add(path)

    _sum_bytes(root)
    _sort_children(root)
    assign_ids(root)
    return root


def _sum_bytes(node: TreeNode) -> int:
    if node.kind == FOLDER:
        node.bytes = sum(_sum_bytes(child) for child in node.children)
    return node.bytes


def _sort_children(node: TreeNode) -> None:
    node.children.sort(key=lambda c: (c.bytes, c.name))
    for child in node.children:
        _sort_children(child)


def assign_ids(root: TreeNode) -> None:
    for index, node in enumerate(root.walk()):
        node.id = index


def enrich(
    tree: TreeNode, matrix: KnowledgeMatrix, major_share: float = MAJOR_SHARE
) -> TreeNode:
    """Attach statuses, per-node bus factors, and author shares; returns a new tree.

    A folder is ACTIVE iff any descendant file is; its author knowledge sums
    aggregate over active descendant files only. Authors are sorted by
    descending knowledge (ties by id) so share lists read top-down, and each
    carries a flag marking whether it clears the node-level major cutoff.
    """
    majors_cache: dict[str, tuple[str, ...]] = {}

    def visit(node: TreeNode) -> tuple[TreeNode, list[str], dict[str, float]]:
        if node.kind == FILE:
            status = matrix.file_status.get(node.path, INACTIVE)
            active = [node.path] if status == ACTIVE else []
            knowledge = dict(matrix.entries.get(node.path, {})) if active else {}
            children: list[TreeNode] = []
        else:
            children = []
            active = []
            knowledge = {}
            status = INACTIVE
            for child in node.children:
                enriched_child, child_active, child_knowledge = visit(child)
                children.append(enriched_child)
                active.extend(child_active)
                for author, k in child_knowledge.items():
                    knowledge[author] = knowledge.get(author, 0.0) + k
            if any(c.status == ACTIVE for c in children):
                status = ACTIVE
        result = engine.bus_factor(
            matrix, active, scope=node.path, major_share=major_share, majors_cache=majors_cache
        )
        enriched = TreeNode(
            name=node.name,
            path=node.path,
            kind=node.kind,
            bytes=node.bytes,
            status=status,
            bus_factor=result.bus_factor,
            authors=_author_shares(knowledge, major_share),
            children=children,
        )
        return enriched, active, knowledge

    new_root, _, _ = visit(tree)
    assign_ids(new_root)
    return new_root


def _author_shares(knowledge: dict[str, float], major_share: float) -> list[AuthorShare]:
    if not knowledge:
        return []
    total = sum(knowledge.values())
    top = max(knowledge.values())
    cutoff = major_share * top
    ordered = sorted(knowledge.items(), key=lambda item: (-item[1], item[0]))
    return [
        AuthorShare(author_id=a, knowledge=k, share=k / total, major=k >= cutoff)
        for a, k in ordered
    ]


def categorize(
    bus_factor: int | None, categories: CategoryConfig = DEFAULT_CATEGORIES
) -> str:
    """Map a bus factor onto its configured category label."""
    if bus_factor is None:
        return NOT_APPLICABLE_LABEL
    for r in sorted(categories.ranges, key=lambda r: r.min_bf):
        if r.min_bf <= bus_factor and (r.max_bf is None or bus_factor <= r.max_bf):
            return r.label
    raise ContractViolation(
        f"bus factor {bus_factor} falls outside the configured category ranges"
    )
