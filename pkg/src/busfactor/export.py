"""Deterministic JSON and CSV serialization of the enriched repository tree.

Both formats are byte-stable across runs and platforms: fixed key order,
LF newlines, floats capped at nine significant digits in JSON and six
fractional digits for CSV shares.
"""

from __future__ import annotations

import csv
import io
import json

from busfactor.tree import FOLDER, AuthorShare, TreeNode, assign_ids

CSV_HEADER = (
    "id,path,name,kind,bytes,status,bus_factor,major_authors,top_author,top_author_share"
)


def format_float(value: float) -> str:
    """Canonical JSON number: at most nine significant digits."""
    return format(value, ".9g")


def _json_str(value: str) -> str:
    return json.dumps(value, ensure_ascii=False)


def _write_node(node: TreeNode, out: list[str]) -> None:
    out.append("{")
    out.append('"name":' + _json_str(node.name))
    out.append(',"path":' + _json_str(node.path))
    out.append(',"kind":' + _json_str(node.kind))
    out.append(',"bytes":' + str(node.bytes))
    out.append(',"status":' + _json_str(node.status))
    out.append(',"busFactor":' + ("null" if node.bus_factor is None else str(node.bus_factor)))
    out.append(',"authors":[')
    for i, author in enumerate(node.authors):
        if i:
            out.append(",")
        out.append(
            '{"id":%s,"knowledge":%s,"share":%s,"major":%s}'
            % (
                _json_str(author.author_id),
                format_float(author.knowledge),
                format_float(author.share),
                "true" if author.major else "false",
            )
        )
    out.append("]")
    if node.kind == FOLDER:
        out.append(',"children":[')
        for i, child in enumerate(node.children):
            if i:
                out.append(",")
            _write_node(child, out)
        out.append("]")
    out.append("}")


def to_json(tree: TreeNode) -> bytes:
    out: list[str] = []
    _write_node(tree, out)
    return "".join(out).encode("utf-8")


def parse_json(data: bytes) -> TreeNode:
    """Inverse of ``to_json``; preorder ids are regenerated."""

    def read_node(obj: dict) -> TreeNode:
        authors = [
            AuthorShare(
                author_id=a["id"],
                knowledge=float(a["knowledge"]),
                share=float(a["share"]),
                major=bool(a["major"]),
            )
            for a in obj["authors"]
        ]
        bus_factor = obj["busFactor"]
        node = TreeNode(
            name=obj["name"],
            path=obj["path"],
            kind=obj["kind"],
            bytes=int(obj["bytes"]),
            status=obj["status"],
            bus_factor=None if bus_factor is None else int(bus_factor),
            authors=authors,
            children=[read_node(c) for c in obj.get("children", [])],
        )
        return node

    root = read_node(json.loads(data.decode("utf-8")))
    assign_ids(root)
    return root


def _csv_row(node: TreeNode) -> list[str]:
    majors = ";".join(a.author_id for a in node.authors if a.major)
    if node.authors:
        top = node.authors[0]
        top_author = top.author_id
        top_share = f"{top.share:.6f}"
    else:
        top_author = ""
        top_share = ""
    return [
        str(node.id),
        node.path,
        node.name,
        node.kind,
        str(node.bytes),
        node.status,
        "" if node.bus_factor is None else str(node.bus_factor),
        majors,
        top_author,
        top_share,
    ]


def to_csv(tree: TreeNode) -> bytes:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER.split(","))
    for node in tree.walk():
        writer.writerow(_csv_row(node))
    return buffer.getvalue().encode("utf-8")
