"""Cograph editing: edit sets, module merges, exact and heuristic editors.

An edit set is a frozenset of ``(u, v)`` pairs with ``u < v``; applying it
flips each pair (symmetric difference with the edge set).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, NamedTuple, Optional

import numpy as np

from ._bits import iter_bits, lowest, to_mask, to_set
from .errors import CapacityError, ContractError, InputError, InvariantViolation, RecognitionError
from .graph import Graph, _is_cograph_mask, _scan_p4s, find_p4, induced_subgraph, is_cograph
from .modules import (
    ORACLE_MAX_N,
    _is_module_mask,
    _quotient_rows,
    build_mdt,
    enumerate_all_modules,
    lowest_prime_node,
    prime_nodes,
)
from .spider import SpiderDecomposition, edit_spider, recognize_spider
from .twins import twin_partition

EditSet = frozenset

ORACLE_MAX_VERTICES = 8
ORACLE_MAX_K = 5
EXACT_MAX_QUOTIENT = 12
PLAN_MAX_BLOCKS = 6


def edit_set(pairs: Iterable[Iterable[int]]) -> EditSet:
    """Normalize pairs to ``(min, max)`` tuples. Rejects loops and repeated pairs."""
    out = set()
    for pair in pairs:
        u, v = pair
        if u == v:
            raise InputError(f"edit pair ({u}, {v}) is a loop")
        p = (u, v) if u < v else (v, u)
        if p in out:
            raise InputError(f"edit pair {p} listed twice")
        out.add(p)
    return frozenset(out)


def apply(g: Graph, f: Iterable[tuple[int, int]]) -> Graph:
    rows = list(g.rows)
    for u, v in f:
        if not (0 <= u < g.n and 0 <= v < g.n) or u == v:
            raise InputError(f"edit pair ({u}, {v}) invalid for n={g.n}")
        rows[u] ^= 1 << v
        rows[v] ^= 1 << u
    return Graph.from_rows(rows)


def _crossing(f, mask: int, within: int = -1):
    """Pairs of ``f`` with exactly one endpoint in ``mask`` (other endpoint in ``within``)."""
    out = []
    for u, v in f:
        iu, iv = mask >> u & 1, mask >> v & 1
        if iu != iv and within >> (v if iu else u) & 1:
            out.append((u, v))
    return frozenset(out)


def merge_edit_subset(f: Iterable[tuple[int, int]], merged: Iterable[int]) -> EditSet:
    """Pairs of ``f`` with exactly one endpoint in ``merged``."""
    return _crossing(f, to_mask(merged))


# --------------------------------------------------------------------------
# brute force reference


def oracle_exact_edit(
    g: Graph,
    max_k: int = 4,
    *,
    max_n: int = ORACLE_MAX_VERTICES,
    k_cap: int = ORACLE_MAX_K,
) -> Optional[EditSet]:
    """Smallest edit set reaching a cograph, by exhaustive search.

    Candidates are tried by increasing size, lexicographically within a
    size; returns None if nothing of size <= ``max_k`` works.
    """
    if g.n > max_n:
        raise CapacityError(f"oracle limited to n <= {max_n}, got n={g.n}")
    if max_k > k_cap:
        raise CapacityError(f"oracle limited to max_k <= {k_cap}, got {max_k}")
    n, rows = g.n, g.rows
    full = g.vertex_mask
    if _is_cograph_mask(rows, full):
        return frozenset()
    pairs = list(combinations(range(n), 2))
    index = {p: i for i, p in enumerate(pairs)}
    # every untouched P4 survives, so a solution must hit each one
    p4_masks = []
    for w in _scan_p4s(rows, n):
        p4_masks.append(sum(1 << index[p] for p in combinations(sorted(w), 2)))
    for k in range(1, max_k + 1):
        for combo in combinations(range(len(pairs)), k):
            cm = 0
            for i in combo:
                cm |= 1 << i
            if any(not cm & pm for pm in p4_masks):
                continue
            trial = list(rows)
            for i in combo:
                u, v = pairs[i]
                trial[u] ^= 1 << v
                trial[v] ^= 1 << u
            if _is_cograph_mask(trial, full):
                return frozenset(pairs[i] for i in combo)
    return None


# --------------------------------------------------------------------------
# exact editing through the modular decomposition


def weighted_cograph_edit(q: Graph, weights) -> tuple[int, list[tuple[int, int]]]:
    """Minimum-weight cograph editing of a small graph.

    ``weights[i][j]`` is the cost of flipping pair ``ij``. Dynamic program
    over vertex subsets: a cograph on two or more vertices splits into two
    sides with no edges across (union) or all edges across (join).
    """
    k = q.n
    if k <= 1:
        return 0, []
    rows = q.rows
    size = 1 << k
    edge_w = [0] * size
    pair_w = [0] * size
    for S in range(1, size):
        v = lowest(S)
        R = S & ~(1 << v)
        wv = weights[v]
        e = p = 0
        for u in iter_bits(R):
            p += wv[u]
            if rows[v] >> u & 1:
                e += wv[u]
        edge_w[S] = edge_w[R] + e
        pair_w[S] = pair_w[R] + p
    cost = [0] * size
    split = [0] * size
    join = [False] * size
    for S in range(1, size):
        if S & (S - 1) == 0:
            continue
        rest = S ^ (S & -S)
        best = None
        B = rest
        eS, pS = edge_w[S], pair_w[S]
        while B:
            A = S ^ B
            cross_e = eS - edge_w[A] - edge_w[B]
            cross_non = pS - pair_w[A] - pair_w[B] - cross_e
            base = cost[A] + cost[B]
            if cross_e <= cross_non:
                c, j = base + cross_e, False
            else:
                c, j = base + cross_non, True
            if best is None or c < best:
                best, split[S], join[S] = c, B, j
            B = (B - 1) & rest
        cost[S] = best
    flips = []
    stack = [size - 1]
    while stack:
        S = stack.pop()
        if S & (S - 1) == 0:
            continue
        B = split[S]
        A = S ^ B
        for i in iter_bits(A):
            for j in iter_bits(B):
                if bool(rows[i] >> j & 1) != join[S]:
                    flips.append((min(i, j), max(i, j)))
        stack.extend((A, B))
    return cost[size - 1], sorted(flips)


def exact_edit(g: Graph, max_quotient: int = EXACT_MAX_QUOTIENT) -> EditSet:
    """Optimal module-preserving edit set.

    Each prime node is solved on its quotient with pair weights
    ``|Mi|*|Mj|`` and each flipped quotient pair is lifted to all vertex
    pairs between the two child modules.
    """
    t = build_mdt(g)
    primes = prime_nodes(t)
    for node in primes:
        if len(node.children) > max_quotient:
            raise CapacityError(
                f"prime quotient with {len(node.children)} vertices exceeds exact cap {max_quotient}; use heuristic mode"
            )
    out = set()
    for node in primes:
        blocks = [sorted(c.vertices) for c in node.children]
        sizes = [len(b) for b in blocks]
        weights = [[si * sj for sj in sizes] for si in sizes]
        _, flips = weighted_cograph_edit(node.quotient, weights)
        for i, j in flips:
            for x in blocks[i]:
                for y in blocks[j]:
                    out.add((x, y) if x < y else (y, x))
    return frozenset(out)


# --------------------------------------------------------------------------
# module merges


def _module_masks(g: Graph, sets) -> list[int]:
    masks = []
    for s in sets:
        m = 0
        for v in s:
            if not 0 <= v < g.n:
                raise InputError(f"vertex {v} out of range for n={g.n}")
            m |= 1 << v
        if not m:
            raise ContractError("merge source is empty")
        if not _is_module_mask(g.rows, g.vertex_mask, m):
            raise ContractError(f"{sorted(s)} is not a module")
        masks.append(m)
    union = 0
    for m in masks:
        if union & m:
            raise ContractError("merge sources overlap")
        union |= m
    if _is_module_mask(g.rows, g.vertex_mask, union):
        raise ContractError(f"{sorted(to_set(union))} is already a module; nothing to merge")
    return masks


def _gamma(rows, Mi: int, Mj: int) -> int:
    union = Mi | Mj
    return (rows[lowest(Mi)] ^ rows[lowest(Mj)]) & ~union


def default_side(mi, mj) -> int:
    """0 to flip outside vertices against ``mi``, 1 against ``mj``.

    Cheaper side first (smaller set). On equal sizes the set holding the
    smaller vertex id keeps its relations and the other one is flipped.
    """
    if len(mi) != len(mj):
        return 0 if len(mi) < len(mj) else 1
    return 1 if min(mi) < min(mj) else 0


def _plan_edits(plan: dict, mi, mj) -> EditSet:
    out = set()
    for y, side in plan.items():
        for x in (mi, mj)[side]:
            out.add((x, y) if x < y else (y, x))
    return frozenset(out)


def merge_pair(g: Graph, mi, mj, plan: Optional[dict] = None) -> tuple[EditSet, Graph]:
    """Edit ``g`` so that the disjoint modules ``mi`` and ``mj`` form one module.

    Every vertex outside both that sees exactly one of them is flipped
    against one side: ``plan`` maps such a vertex to 0 (flip against ``mi``)
    or 1 (against ``mj``); missing entries use :func:`default_side`.
    """
    Mi, Mj = _module_masks(g, [mi, mj])
    mi, mj = to_set(Mi), to_set(Mj)
    fallback = default_side(mi, mj)
    plan = plan or {}
    full_plan = {}
    for y in iter_bits(_gamma(g.rows, Mi, Mj)):
        side = plan.get(y, fallback)
        if side not in (0, 1):
            raise ContractError(f"plan side for vertex {y} must be 0 or 1")
        full_plan[y] = side
    edits = _plan_edits(full_plan, mi, mj)
    return edits, apply(g, edits)


def merge_many(g: Graph, sources) -> tuple[EditSet, Graph]:
    """Merge several disjoint modules into one in a single step.

    Each outside vertex takes the relation to the union held by the larger
    total weight of sources; ties keep the relation to the source holding the
    smallest vertex id, as in the two-source rule. The result depends only on the
    set of sources, not their order. With two sources this equals
    :func:`merge_pair` with the default plan.
    """
    masks = _module_masks(g, sources)
    union = 0
    for m in masks:
        union |= m
    rows = g.rows
    anchor = min(masks, key=lowest)
    out = set()
    for y in iter_bits(g.vertex_mask & ~union):
        seen = [m for m in masks if rows[y] & m]
        if not seen or len(seen) == len(masks):
            continue
        adj_w = sum(m.bit_count() for m in seen)
        non_w = union.bit_count() - adj_w
        if adj_w != non_w:
            connect = adj_w > non_w
        else:
            connect = bool(rows[y] & anchor)
        for m in masks:
            if bool(rows[y] & m) != connect:
                for x in iter_bits(m):
                    out.add((x, y) if x < y else (y, x))
    edits = frozenset(out)
    return edits, apply(g, edits)


def merge_steps(g: Graph, sources) -> list[tuple[frozenset, EditSet]]:
    """Pairwise fold of :func:`merge_many` relative to its target graph.

    Step ``i`` merges the running union with ``sources[i]``; its edits are
    the target's merge edits for the new union minus those already spent.
    Returns ``(running union, step edits)`` per step.
    """
    f, _ = merge_many(g, sources)
    steps = []
    spent = frozenset()
    running = set(sources[0])
    for s in sources[1:]:
        running |= set(s)
        step = merge_edit_subset(f, running) - spent
        steps.append((frozenset(running), step))
        spent |= step
    return steps


# --------------------------------------------------------------------------
# heuristic


def _p4_weight_through(adj, non, w, v) -> float:
    # weighted induced P4s of the quotient that contain v
    av, nv = adj[v] * w, non[v] * w
    # v inside: a - v - c - d
    inner = (((non * av) @ non) * (adj * nv)).sum(axis=1)
    interior = av @ inner
    # v at an end: v - b - c - d
    r = (non * nv) @ adj
    end = av @ ((adj * r) @ nv)
    return w[v] * (interior + end)


def _p4_weight_both(adj, w, i, j) -> float:
    # weighted induced P4s containing i and j: check every {i, j, x, y}
    ai, aj, aij = adj[i], adj[j], adj[i, j]
    ax, ay = ai[:, None], ai[None, :]
    bx, by = aj[:, None], aj[None, :]
    ok = aij + ax + ay + bx + by + adj == 3
    for deg in (aij + ax + ay, aij + bx + by, ax + bx + adj, ay + by + adj):
        ok &= (deg >= 1) & (deg <= 2)
    keep = np.ones(len(w), dtype=bool)
    keep[[i, j]] = False
    ok &= keep[:, None] & keep[None, :]
    np.fill_diagonal(ok, False)
    return w[i] * w[j] * (ok * np.outer(w, w)).sum() / 2


def _p4_weight_touching(adj, w, i, j) -> int:
    """Weighted count of quotient P4s meeting ``{i, j}``.

    A quotient P4 on blocks of sizes ``s1..s4`` stands for ``s1*s2*s3*s4``
    induced P4s of the graph.
    """
    non = 1.0 - adj - np.eye(len(w))
    t = _p4_weight_through(adj, non, w, i) + _p4_weight_through(adj, non, w, j) - _p4_weight_both(adj, w, i, j)
    return int(round(t))


def merge_cost(g: Graph, mi, mj) -> int:
    """Number of edits of a pairwise merge: ``|Gamma| * min(|mi|, |mj|)``."""
    Mi, Mj = to_mask(mi), to_mask(mj)
    return _gamma(g.rows, Mi, Mj).bit_count() * min(len(mi), len(mj))


def select_merge_pair(g: Graph, children, max_plan_blocks: int = PLAN_MAX_BLOCKS):
    """Pick the pair of sibling modules to merge next, and how.

    Pairs with the fewest edits are kept; among them (and among the
    equal-cost ways of flipping each outside block when both sides have the
    same size) the plan leaving the fewest induced P4s in the prime module
    wins. Remaining ties go to the smallest ``(min mi, min mj)`` and then to
    the default plan. Returns ``(mi, mj, plan)``.
    """
    blocks = sorted((to_mask(c) for c in children), key=lowest)
    k = len(blocks)
    rows = g.rows
    sizes = [b.bit_count() for b in blocks]
    qrows = _quotient_rows(rows, blocks)

    adj = np.zeros((k, k))
    for a, r in enumerate(qrows):
        adj[a, list(iter_bits(r))] = 1.0
    w = np.array(sizes, dtype=float)

    # weight of the blocks seen by exactly one of i, j (other than i and j)
    non = 1.0 - adj
    split = (adj * w) @ non.T + (non * w) @ adj.T - adj * (w[:, None] + w[None, :])
    cost = np.rint(split * np.minimum(w[:, None], w[None, :])).astype(np.int64)
    upper = np.triu(np.ones((k, k), dtype=bool), 1)
    best_cost = cost[upper].min()
    scored = []
    for i, j in zip(*np.nonzero(upper & (cost == best_cost))):
        i, j = int(i), int(j)
        scored.append((i, j, (qrows[i] ^ qrows[j]) & ~(1 << i) & ~(1 << j)))

    # plans only flip quotient pairs at i or j, so P4s avoiding both are
    # common to all of them and the touching count ranks plans and pairs alike
    best = None
    for i, j, gamma in scored:
        mi, mj = to_set(blocks[i]), to_set(blocks[j])
        base = default_side(mi, mj)
        before = _p4_weight_touching(adj, w, i, j)
        gblocks = list(iter_bits(gamma))
        if sizes[i] != sizes[j]:
            assignments = [0]
        elif len(gblocks) <= max_plan_blocks:
            assignments = range(1 << len(gblocks))
        else:
            assignments = [0, (1 << len(gblocks)) - 1]
        for bits in assignments:
            trial = adj.copy()
            sides = {}
            for pos, c in enumerate(gblocks):
                side = base ^ (bits >> pos & 1)
                sides[c] = side
                t = (i, j)[side]
                trial[c, t] = trial[t, c] = 1.0 - trial[c, t]
            change = _p4_weight_touching(trial, w, i, j) - before
            key = (change, min(mi), min(mj), bits)
            if best is None or key < best[0]:
                best = (key, mi, mj, sides)
    _, mi, mj, sides = best
    plan = {y: side for c, side in sides.items() for y in iter_bits(blocks[c])}
    return mi, mj, plan


@dataclass(frozen=True)
class MergeRecord:
    """One merge: ``sources`` (children of ``prime``) became the module ``merged``."""

    prime: frozenset
    sources: tuple
    merged: frozenset
    edits: EditSet


MergeTrace = tuple


@dataclass(frozen=True)
class SpiderStep:
    module: frozenset
    decomposition: SpiderDecomposition
    edits: EditSet


class HeuristicResult(NamedTuple):
    edits: EditSet
    trace: MergeTrace
    graph: Graph
    spider_steps: tuple = ()


def _remap_spider(d: SpiderDecomposition, mapping) -> SpiderDecomposition:
    m = lambda s: frozenset(mapping[v] for v in s)
    return SpiderDecomposition(
        m(d.body), m(d.legs), m(d.head), tuple(sorted((mapping[a], mapping[b]) for a, b in d.matching)), d.kind
    )


def heuristic_edit(g: Graph, max_plan_blocks: int = PLAN_MAX_BLOCKS) -> HeuristicResult:
    """Resolve lowest prime modules one at a time until a cograph remains.

    Spider modules get their legs edited; other prime modules merge the pair
    of children chosen by :func:`select_merge_pair`.
    """
    cur = g
    total = set()
    records, spiders = [], []
    cap = max(1, g.n * g.n)
    rounds = 0
    while True:
        node = lowest_prime_node(build_mdt(cur))
        if node is None:
            break
        rounds += 1
        if rounds > cap:
            raise InvariantViolation(f"heuristic did not finish within {cap} rounds")
        module = node.vertices
        sub, mapping = induced_subgraph(cur, module)
        d = recognize_spider(sub)
        if d is not None:
            local = edit_spider(sub, d)
            step = frozenset((mapping[u], mapping[v]) for u, v in local)
            spiders.append(SpiderStep(module, _remap_spider(d, mapping), step))
            cur = apply(cur, step)
        else:
            mi, mj, plan = select_merge_pair(cur, [c.vertices for c in node.children], max_plan_blocks)
            step, cur = merge_pair(cur, mi, mj, plan)
            records.append(MergeRecord(module, (mi, mj), mi | mj, step))
        total.symmetric_difference_update(step)
    if not is_cograph(cur):
        raise InvariantViolation("heuristic output is not a cograph")
    return HeuristicResult(frozenset(total), tuple(records), cur, tuple(spiders))


# --------------------------------------------------------------------------
# merge-trace replay


def _structural_violation(g: Graph, h: Graph) -> Optional[frozenset]:
    t = build_mdt(g)
    if t is None:
        return None
    full = g.vertex_mask
    for node in t.walk():
        m = to_mask(node.vertices)
        if not _is_module_mask(h.rows, full, m):
            return node.vertices
    for node in t.walk():
        if node.is_leaf or node.kind == "prime" or len(node.children) < 3:
            continue
        masks = [to_mask(c.vertices) for c in node.children]
        reps = [lowest(c) for c in masks]
        for a in range(len(masks)):
            for b in range(len(masks)):
                for c in range(len(masks)):
                    if len({a, b, c}) < 3:
                        continue
                    if bool(h.rows[reps[a]] & masks[b]) != bool(h.rows[reps[a]] & masks[c]):
                        return to_set(masks[b] | masks[c])
    return None


def module_violation(g: Graph, h: Graph, exhaustive: Optional[bool] = None) -> Optional[frozenset]:
    """A module of ``g`` that is not a module of ``h``, or None.

    Exhaustive for ``n <= 12`` by default; otherwise every strong module and
    every union of children of a series/parallel node is checked through the
    decomposition tree.
    """
    if exhaustive is None:
        exhaustive = g.n <= ORACLE_MAX_N
    if not exhaustive:
        return _structural_violation(g, h)
    full = g.vertex_mask
    for m in enumerate_all_modules(g, max_n=max(ORACLE_MAX_N, g.n)):
        if not _is_module_mask(h.rows, full, to_mask(m)):
            return m
    return None


def decompose_into_merge_trace(g: Graph, f: Iterable[tuple[int, int]]) -> MergeTrace:
    """Replay a module-preserving edit set as merges of prime-module children.

    Repeatedly takes the lowest prime module of the current graph, groups
    its children by the twin classes of the target quotient and assigns
    each remaining edit leaving a merged class to that class's record.
    """
    f = edit_set(f)
    target = apply(g, f)
    w = find_p4(target)
    if w is not None:
        raise RecognitionError(f"edited graph is not a cograph: induced P4 {' '.join(map(str, w))}", w)
    bad = module_violation(g, target)
    if bad is not None:
        raise ContractError(f"edit set is not module-preserving: {sorted(bad)} stops being a module")
    remaining = set(f)
    cur = g
    records = []
    full = g.vertex_mask
    for _ in range(max(1, g.n * g.n)):
        node = lowest_prime_node(build_mdt(cur))
        if node is None:
            break
        module = to_mask(node.vertices)
        children = [to_mask(c.vertices) for c in node.children]
        for c in children:
            if not _is_module_mask(target.rows, full, c):
                raise ContractError(f"child {sorted(to_set(c))} is not a module of the edited graph")
        qrows = _quotient_rows(target.rows, children)
        classes = twin_partition(Graph.from_rows(qrows)).nontrivial()
        if len(classes) == 1 and len(classes[0]) == len(children):
            raise ContractError(f"prime module {sorted(node.vertices)} collapses into a single twin class")
        spent = set()
        for cls in classes:
            merged = 0
            for i in cls:
                merged |= children[i]
            step = _crossing(remaining, merged, module)
            if not step:
                continue
            remaining -= step
            spent |= step
            records.append(
                MergeRecord(
                    node.vertices,
                    tuple(to_set(children[i]) for i in sorted(cls)),
                    to_set(merged),
                    frozenset(step),
                )
            )
        if not spent:
            raise ContractError(f"no edit resolves prime module {sorted(node.vertices)}")
        cur = apply(cur, spent)
    else:
        raise InvariantViolation("merge replay did not terminate")
    if remaining:
        raise ContractError(f"{len(remaining)} edits are not explained by module merges")
    return tuple(records)


def trace_edit_union(trace: MergeTrace) -> EditSet:
    out = set()
    for rec in trace:
        out |= rec.edits
    return frozenset(out)
