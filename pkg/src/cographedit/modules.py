"""Modules, maximal modular partitions and the modular decomposition tree.

The decomposition uses a plain polynomial method: components and
co-components for degenerate nodes, and for prime nodes a partition
refinement that finds the maximal modules avoiding a pivot vertex, followed
by one modular closure per part. ``enumerate_all_modules`` is the exponential
reference used to validate it.
"""

from __future__ import annotations

from typing import Iterable, Optional

from ._bits import iter_bits, lowest, to_mask, to_set
from .errors import CapacityError, ContractError, InputError
from .graph import (
    LEAF,
    PARALLEL,
    PRIME,
    SERIES,
    Graph,
    TreeNode,
    _co_components,
    _components,
)

MDTree = TreeNode

ORACLE_MAX_N = 12


def _check_vertices(g: Graph, m) -> int:
    mask = 0
    for v in m:
        if not 0 <= v < g.n:
            raise InputError(f"vertex {v} out of range for n={g.n}")
        mask |= 1 << v
    return mask


def _is_module_mask(rows, S: int, M: int) -> bool:
    for z in iter_bits(S & ~M):
        x = rows[z] & M
        if x and x != M:
            return False
    return True


def is_module(g: Graph, m: Iterable[int]) -> bool:
    """True iff every vertex outside ``m`` sees all of ``m`` or none of it."""
    M = _check_vertices(g, m)
    return _is_module_mask(g.rows, g.vertex_mask, M)


def enumerate_all_modules(g: Graph, max_n: int = ORACLE_MAX_N) -> list[frozenset]:
    """Every non-empty module of ``g``, by exhaustive subset check.

    Sorted by size, then by members.
    """
    if g.n > max_n:
        raise CapacityError(f"module oracle limited to n <= {max_n}, got n={g.n}")
    rows, full = g.rows, g.vertex_mask
    found = [to_set(M) for M in range(1, full + 1) if _is_module_mask(rows, full, M)]
    found.sort(key=lambda s: (len(s), sorted(s)))
    return found


def strong_modules_oracle(g: Graph, max_n: int = ORACLE_MAX_N) -> list[frozenset]:
    """Modules overlapping no other module, filtered from the exhaustive list."""
    mods = [to_mask(m) for m in enumerate_all_modules(g, max_n)]
    strong = []
    for a in mods:
        if all(not (a & b) or a & b == a or a & b == b for b in mods):
            strong.append(to_set(a))
    return strong


def _closure(rows, S: int, M: int) -> int:
    """Smallest module of G[S] containing ``M``."""
    while True:
        add = 0
        for z in iter_bits(S & ~M):
            x = rows[z] & M
            if x and x != M:
                add |= 1 << z
        if not add:
            return M
        M |= add


def _modules_avoiding(rows, S: int, v: int) -> list[int]:
    """Maximal modules of G[S] not containing ``v`` (a partition of S - v)."""
    rest = S & ~(1 << v)
    # a splitter of Y depends only on Y, so one refinement pass is final
    queue = [p for p in (rest & rows[v], rest & ~rows[v]) if p]
    parts = []
    while queue:
        Y = queue.pop()
        for z in iter_bits(S & ~Y):
            inside = rows[z] & Y
            if inside and inside != Y:
                queue.append(inside)
                queue.append(Y & ~inside)
                break
        else:
            parts.append(Y)
    return parts


def _prime_partition(rows, S: int) -> list[int]:
    v = lowest(S)
    block = 1 << v
    others = []
    for X in _modules_avoiding(rows, S, v):
        if _closure(rows, S, X | (1 << v)) == S:
            others.append(X)
        else:
            block |= X
    return [block] + others


def _pmax(rows, S: int) -> tuple[str, list[int]]:
    parts = _components(rows, S)
    if len(parts) > 1:
        return PARALLEL, parts
    parts = _co_components(rows, S)
    if len(parts) > 1:
        return SERIES, parts
    return PRIME, _prime_partition(rows, S)


def _quotient_rows(rows, blocks: list[int]) -> list[int]:
    out = []
    for i, bi in enumerate(blocks):
        rep = lowest(bi)
        out.append(to_mask(j for j, bj in enumerate(blocks) if j != i and rows[rep] & bj))
    return out


def maximal_modular_partition(g: Graph) -> list[frozenset]:
    """The maximal modular partition, blocks ordered by smallest vertex."""
    if g.n <= 1:
        return [frozenset((v,)) for v in range(g.n)]
    _, parts = _pmax(g.rows, g.vertex_mask)
    parts.sort(key=lowest)
    return [to_set(p) for p in parts]


def quotient(g: Graph, partition: Iterable[Iterable[int]]) -> tuple[Graph, list[frozenset]]:
    """Quotient of ``g`` by a modular partition.

    Returns the quotient graph and the blocks in vertex order (sorted by
    smallest original id).
    """
    blocks = [_check_vertices(g, b) for b in partition]
    if any(b == 0 for b in blocks):
        raise ContractError("partition contains an empty block")
    union = 0
    for b in blocks:
        if union & b:
            raise ContractError("partition blocks overlap")
        union |= b
    if union != g.vertex_mask:
        raise ContractError("partition does not cover the vertex set")
    for b in blocks:
        if not _is_module_mask(g.rows, g.vertex_mask, b):
            raise ContractError(f"block {sorted(to_set(b))} is not a module")
    blocks.sort(key=lowest)
    return Graph.from_rows(_quotient_rows(g.rows, blocks)), [to_set(b) for b in blocks]


def _mdt(rows, S: int) -> TreeNode:
    if S & (S - 1) == 0:
        return TreeNode(LEAF, frozenset((lowest(S),)))
    kind, parts = _pmax(rows, S)
    parts.sort(key=lowest)
    q = Graph.from_rows(_quotient_rows(rows, parts)) if kind == PRIME else None
    return TreeNode(kind, to_set(S), tuple(_mdt(rows, p) for p in parts), q)


def build_mdt(g: Graph) -> Optional[MDTree]:
    """Modular decomposition tree; None for the empty graph."""
    if g.n == 0:
        return None
    return _mdt(g.rows, g.vertex_mask)


def strong_modules(g: Graph) -> list[frozenset]:
    t = build_mdt(g)
    if t is None:
        return []
    out = [node.vertices for node in t.walk()]
    out.sort(key=lambda s: (len(s), sorted(s)))
    return out


def prime_nodes(t: Optional[MDTree]) -> list[TreeNode]:
    return [] if t is None else [node for node in t.walk() if node.kind == PRIME]


def lowest_prime_node(t: Optional[MDTree]) -> Optional[TreeNode]:
    """Prime node without prime descendants; ties go to the smallest minimum vertex."""
    best = None
    for node in prime_nodes(t):
        if any(d.kind == PRIME for c in node.children for d in c.walk()):
            continue
        if best is None or min(node.vertices) < min(best.vertices):
            best = node
    return best


def lowest_prime_module(t: Optional[MDTree]) -> Optional[frozenset]:
    node = lowest_prime_node(t)
    return None if node is None else node.vertices
