"""Text formats: edge lists, edit sets, tree JSON and merge-trace JSON.

Edge list::

    # comment lines start with '#'
    4 3
    0 1
    1 2
    2 3

Edit set: one ``+ u v`` (added edge) or ``- u v`` (deleted edge) per line,
sorted by pair.
"""

from __future__ import annotations

import json
import sys
from typing import Iterable, Optional, TextIO

from .editing import EditSet, MergeRecord, SpiderStep, edit_set
from .errors import InputError
from .graph import LEAF, PARALLEL, PRIME, SERIES, Graph, TreeNode


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _content_lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield no, line


def _ints(no: int, line: str, count: int) -> list[int]:
    parts = line.split()
    if len(parts) != count:
        raise InputError(f"expected {count} integers, got {line!r}", no)
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise InputError(f"expected integers, got {line!r}", no) from None


def parse_edge_list(text: str) -> Graph:
    lines = _content_lines(text)
    try:
        no, header = next(lines)
    except StopIteration:
        raise InputError("missing header line 'n m'", 1) from None
    n, m = _ints(no, header, 2)
    if n < 0 or m < 0:
        raise InputError(f"header values must be non-negative, got {header!r}", no)
    seen = set()
    edges = []
    for no, line in lines:
        u, v = _ints(no, line, 2)
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"vertex out of range [0, {n}) in {line!r}", no)
        if u == v:
            raise InputError(f"self-loop at vertex {u}", no)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise InputError(f"duplicate edge {key[0]} {key[1]}", no)
        seen.add(key)
        edges.append(key)
    if len(edges) != m:
        raise InputError(f"header announces {m} edges but {len(edges)} were given")
    return Graph(n, edges)


def read_edge_list(path: str) -> Graph:
    """Parse an edge-list file; ``-`` reads stdin."""
    return parse_edge_list(_read_text(path))


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_edit_set(text: str, g: Optional[Graph] = None) -> EditSet:
    """Parse edit lines. With ``g`` the vertex range and +/- signs are checked."""
    pairs = []
    for no, line in _content_lines(text):
        parts = line.split()
        if len(parts) != 3 or parts[0] not in "+-":
            raise InputError(f"expected '+ u v' or '- u v', got {line!r}", no)
        u, v = _ints(no, " ".join(parts[1:]), 2)
        if u == v or u < 0 or v < 0:
            raise InputError(f"invalid pair {u} {v}", no)
        if g is not None:
            if u >= g.n or v >= g.n:
                raise InputError(f"vertex out of range [0, {g.n}) in {line!r}", no)
            if (parts[0] == "-") != g.has_edge(u, v):
                kind = "an edge" if g.has_edge(u, v) else "a non-edge"
                raise InputError(f"pair {u} {v} is {kind} of the graph; sign {parts[0]} does not match", no)
        pairs.append((u, v))
    try:
        return edit_set(pairs)
    except InputError as exc:
        raise InputError(str(exc)) from None


def read_edit_set(path: str, g: Optional[Graph] = None) -> EditSet:
    return parse_edit_set(_read_text(path), g)


def format_edit_set(g: Graph, f: Iterable[tuple[int, int]]) -> str:
    lines = [f"{'-' if g.has_edge(u, v) else '+'} {u} {v}" for u, v in sorted(f)]
    return "".join(line + "\n" for line in lines)


# --------------------------------------------------------------------------
# tree JSON


def tree_to_obj(t: TreeNode) -> dict:
    if t.is_leaf:
        return {"type": LEAF, "vertex": t.vertex}
    obj = {"type": t.kind, "vertices": sorted(t.vertices), "children": [tree_to_obj(c) for c in t.children]}
    if t.kind == PRIME:
        obj["quotient_edges"] = [list(e) for e in t.quotient.edges()]
    return obj


def tree_from_obj(obj) -> TreeNode:
    if not isinstance(obj, dict) or "type" not in obj:
        raise InputError("tree node must be an object with a 'type' key")
    kind = obj["type"]
    if kind == LEAF:
        v = obj.get("vertex")
        if not isinstance(v, int) or v < 0:
            raise InputError("leaf needs a non-negative integer 'vertex'")
        return TreeNode(LEAF, frozenset((v,)))
    if kind not in (SERIES, PARALLEL, PRIME):
        raise InputError(f"unknown node type {kind!r}")
    children = tuple(tree_from_obj(c) for c in obj.get("children", []))
    if len(children) < 2:
        raise InputError(f"{kind} node needs at least two children")
    vertices = frozenset().union(*(c.vertices for c in children))
    if "vertices" in obj and sorted(obj["vertices"]) != sorted(vertices):
        raise InputError(f"{kind} node 'vertices' does not match its leaves")
    quotient = None
    if kind == PRIME:
        try:
            quotient = Graph(len(children), [tuple(e) for e in obj.get("quotient_edges", [])])
        except (TypeError, ValueError) as exc:
            raise InputError(f"bad quotient_edges: {exc}") from None
    return TreeNode(kind, vertices, children, quotient)


def dump_tree(t: Optional[TreeNode]) -> str:
    """Tree JSON with keys in the order type, vertex/vertices, children, quotient_edges."""
    return json.dumps(None if t is None else tree_to_obj(t)) + "\n"


def load_tree(text: str) -> Optional[TreeNode]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    return None if obj is None else tree_from_obj(obj)


# --------------------------------------------------------------------------
# merge traces


def _pairs(f) -> list:
    return [list(p) for p in sorted(f)]


def record_to_obj(r: MergeRecord) -> dict:
    return {
        "prime": sorted(r.prime),
        "sources": [sorted(s) for s in r.sources],
        "merged": sorted(r.merged),
        "edits": _pairs(r.edits),
    }


def dump_trace(records: Iterable[MergeRecord], spider_steps: Iterable[SpiderStep] = ()) -> str:
    obj = {"records": [record_to_obj(r) for r in records]}
    steps = list(spider_steps)
    if steps:
        obj["spider_steps"] = [
            {"module": sorted(s.module), "kind": s.decomposition.kind, "edits": _pairs(s.edits)} for s in steps
        ]
    return json.dumps(obj) + "\n"


def load_trace(text: str) -> tuple:
    try:
        obj = json.loads(text)
        return tuple(
            MergeRecord(
                frozenset(r["prime"]),
                tuple(frozenset(s) for s in r["sources"]),
                frozenset(r["merged"]),
                frozenset(tuple(p) for p in r["edits"]),
            )
            for r in obj["records"]
        )
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed merge trace: {exc}") from None


def write_text(path: Optional[str], text: str, stream: TextIO = sys.stdout) -> None:
    """Write to ``path``, or to ``stream`` when path is None or ``-``."""
    if path is None or path == "-":
        stream.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
