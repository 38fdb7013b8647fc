"""Undirected simple graphs on vertices ``0..n-1`` plus cograph recognition and cotrees.

Adjacency is stored as one int bitmask per vertex; the public surface speaks
in frozensets and tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Optional

from ._bits import iter_bits, lowest, to_mask, to_set
from .errors import InputError, RecognitionError

LEAF = "leaf"
SERIES = "series"
PARALLEL = "parallel"
PRIME = "prime"


class Graph:
    """Immutable simple undirected graph over the vertex ids ``0..n-1``."""

    __slots__ = ("_n", "_rows")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise InputError(f"vertex count must be non-negative, got {n}")
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        self._n = n
        self._rows = tuple(rows)

    @classmethod
    def from_rows(cls, rows: Iterable[int]) -> "Graph":
        """Build from adjacency bitmasks. Rows are trusted to be symmetric and loop-free."""
        g = cls.__new__(cls)
        g._rows = tuple(rows)
        g._n = len(g._rows)
        return g

    @classmethod
    def from_adjacency(cls, adjacency) -> "Graph":
        """Build from a sequence of neighbor sets, checking symmetry and loops."""
        n = len(adjacency)
        rows = []
        for v, nbrs in enumerate(adjacency):
            for u in nbrs:
                if not 0 <= u < n:
                    raise InputError(f"neighbor {u} of {v} out of range")
                if u == v:
                    raise InputError(f"self-loop at vertex {v}")
                if v not in adjacency[u]:
                    raise InputError(f"asymmetric adjacency between {v} and {u}")
            rows.append(to_mask(nbrs))
        return cls.from_rows(rows)

    @property
    def n(self) -> int:
        return self._n

    @property
    def rows(self) -> tuple[int, ...]:
        return self._rows

    @property
    def m(self) -> int:
        return sum(r.bit_count() for r in self._rows) // 2

    @property
    def vertex_mask(self) -> int:
        return (1 << self._n) - 1

    @property
    def adjacency(self) -> tuple[frozenset, ...]:
        return tuple(to_set(r) for r in self._rows)

    def neighbors(self, v: int) -> frozenset:
        return to_set(self._rows[v])

    def degree(self, v: int) -> int:
        return self._rows[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._rows[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self._n) for v in iter_bits(self._rows[u] >> (u + 1) << (u + 1))]

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        return f"Graph(n={self._n}, edges={self.edges()})"


class P4Witness(NamedTuple):
    """Induced path a-b-c-d, oriented so that ``a < d``."""

    a: int
    b: int
    c: int
    d: int


@dataclass(frozen=True)
class TreeNode:
    """Node of a cotree or modular decomposition tree.

    ``kind`` is one of ``leaf``, ``series``, ``parallel``, ``prime``. Children
    are ordered by their smallest vertex id. Prime nodes carry ``quotient``,
    the graph on their children (child ``i`` is quotient vertex ``i``).
    """

    kind: str
    vertices: frozenset
    children: tuple = ()
    quotient: Optional[Graph] = None

    @property
    def is_leaf(self) -> bool:
        return self.kind == LEAF

    @property
    def vertex(self) -> int:
        if not self.is_leaf:
            raise AttributeError("only leaves carry a single vertex")
        (v,) = self.vertices
        return v

    def walk(self) -> Iterator["TreeNode"]:
        """Pre-order traversal."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))


Cotree = TreeNode


def complement(g: Graph) -> Graph:
    full = g.vertex_mask
    return Graph.from_rows(~r & full & ~(1 << v) for v, r in enumerate(g.rows))


def induced_subgraph(g: Graph, w: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Return ``(h, mapping)`` where vertex ``i`` of ``h`` is ``mapping[i]`` in ``g``."""
    verts = sorted(set(w))
    for v in verts:
        if not 0 <= v < g.n:
            raise InputError(f"vertex {v} out of range for n={g.n}")
    index = {v: i for i, v in enumerate(verts)}
    rows = []
    for v in verts:
        rows.append(to_mask(index[u] for u in iter_bits(g.rows[v]) if u in index))
    return Graph.from_rows(rows), tuple(verts)


def _components(rows, S: int) -> list[int]:
    out = []
    rest = S
    while rest:
        comp = frontier = rest & -rest
        while frontier:
            nb = 0
            for v in iter_bits(frontier):
                nb |= rows[v]
            frontier = nb & rest & ~comp
            comp |= frontier
        out.append(comp)
        rest &= ~comp
    return out


def _co_components(rows, S: int) -> list[int]:
    out = []
    rest = S
    while rest:
        comp = frontier = rest & -rest
        while frontier:
            nb = 0
            for v in iter_bits(frontier):
                nb |= ~rows[v]
            frontier = nb & rest & ~comp
            comp |= frontier
        out.append(comp)
        rest &= ~comp
    return out


def _is_cograph_mask(rows, S: int) -> bool:
    stack = [S]
    while stack:
        X = stack.pop()
        if X & (X - 1) == 0:
            continue
        parts = _components(rows, X)
        if len(parts) == 1:
            parts = _co_components(rows, X)
            if len(parts) == 1:
                return False
        stack.extend(parts)
    return True


def connected_components(g: Graph) -> list[frozenset]:
    return [to_set(c) for c in _components(g.rows, g.vertex_mask)]


def _scan_p4s(rows, n, limit=None) -> set:
    found = set()
    for b in range(n):
        rb = rows[b]
        for c in iter_bits(rb):
            A = rb & ~rows[c] & ~(1 << c)
            if not A:
                continue
            D = rows[c] & ~rb & ~(1 << b)
            if not D:
                continue
            for a in iter_bits(A):
                for d in iter_bits(D & ~rows[a]):
                    found.add(P4Witness(a, b, c, d) if a < d else P4Witness(d, c, b, a))
                    if limit is not None and len(found) >= limit:
                        return found
    return found


def enumerate_p4s(g: Graph, limit: Optional[int] = None) -> list[P4Witness]:
    """Induced P4s of ``g``, each once, sorted lexicographically.

    With ``limit`` the scan stops after that many distinct witnesses; the
    returned ones are sorted but need not be the lexicographically smallest.
    """
    if limit is not None and limit <= 0:
        return []
    return sorted(_scan_p4s(g.rows, g.n, limit))


def count_p4s(g: Graph) -> int:
    rows = g.rows
    total = 0
    for b in range(g.n):
        rb = rows[b]
        for c in iter_bits(rb):
            A = rb & ~rows[c] & ~(1 << c)
            D = rows[c] & ~rb & ~(1 << b)
            if A and D:
                for a in iter_bits(A):
                    total += (D & ~rows[a]).bit_count()
    return total // 2


def find_p4(g: Graph) -> Optional[P4Witness]:
    """One induced P4 of ``g``, or None when ``g`` is a cograph."""
    if _is_cograph_mask(g.rows, g.vertex_mask):
        return None
    return min(_scan_p4s(g.rows, g.n, limit=1))


def is_cograph(g: Graph) -> bool:
    return _is_cograph_mask(g.rows, g.vertex_mask)


def _mask_p4(rows, S: int) -> P4Witness:
    # map a witness found inside G[S] back to original ids
    verts = list(iter_bits(S))
    index = {v: i for i, v in enumerate(verts)}
    sub = [to_mask(index[u] for u in iter_bits(rows[v] & S)) for v in verts]
    w = min(_scan_p4s(sub, len(verts), limit=1))
    a, b, c, d = (verts[i] for i in w)
    return P4Witness(a, b, c, d) if a < d else P4Witness(d, c, b, a)


def _cotree(rows, S: int) -> TreeNode:
    if S & (S - 1) == 0:
        return TreeNode(LEAF, frozenset((lowest(S),)))
    parts = _components(rows, S)
    kind = PARALLEL
    if len(parts) == 1:
        parts = _co_components(rows, S)
        kind = SERIES
        if len(parts) == 1:
            w = _mask_p4(rows, S)
            raise RecognitionError(f"not a cograph: induced P4 {' '.join(map(str, w))}", w)
    parts.sort(key=lowest)
    return TreeNode(kind, to_set(S), tuple(_cotree(rows, p) for p in parts))


def build_cotree(g: Graph) -> Optional[Cotree]:
    """Canonical cotree of a cograph (None for the empty graph)."""
    if g.n == 0:
        return None
    return _cotree(g.rows, g.vertex_mask)


def tree_to_graph(t: Optional[TreeNode]) -> Graph:
    """Rebuild the graph encoded by a cotree or a modular decomposition tree."""
    if t is None:
        return Graph(0)
    leaves = [node.vertex for node in t.walk() if node.is_leaf]
    n = len(leaves)
    if sorted(leaves) != list(range(n)):
        raise InputError("tree leaves must carry the distinct ids 0..n-1")
    rows = [0] * n
    for node in t.walk():
        if node.is_leaf:
            continue
        if len(node.children) < 2:
            raise InputError(f"inner node over {sorted(node.vertices)} has fewer than 2 children")
        masks = [to_mask(c.vertices) for c in node.children]
        if to_mask(node.vertices) != sum(masks) or any(a & b for i, a in enumerate(masks) for b in masks[i + 1 :]):
            raise InputError(f"children of node over {sorted(node.vertices)} do not partition it")
        if node.kind == SERIES:
            adjacent = lambda i, j: True
        elif node.kind == PARALLEL:
            continue
        elif node.kind == PRIME:
            q = node.quotient
            if q is None or q.n != len(masks):
                raise InputError("prime node without a matching quotient graph")
            adjacent = q.has_edge
        else:
            raise InputError(f"unknown node kind {node.kind!r}")
        for i, mi in enumerate(masks):
            for j in range(i + 1, len(masks)):
                if adjacent(i, j):
                    mj = masks[j]
                    for v in iter_bits(mi):
                        rows[v] |= mj
                    for v in iter_bits(mj):
                        rows[v] |= mi
    return Graph.from_rows(rows)


def cotree_to_graph(t: Optional[Cotree]) -> Graph:
    if t is not None and any(node.kind == PRIME for node in t.walk()):
        raise InputError("a cotree has no prime nodes")
    return tree_to_graph(t)
