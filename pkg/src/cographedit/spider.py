"""Thin and thick spiders, P4-sparse recognition, and leg editing of spiders."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .errors import ContractError
from .graph import Graph, complement, count_p4s, find_p4, induced_subgraph, is_cograph
from .modules import build_mdt, prime_nodes

THIN = "thin"
THICK = "thick"


@dataclass(frozen=True)
class SpiderDecomposition:
    body: frozenset
    legs: frozenset
    head: frozenset
    matching: tuple  # sorted (body vertex, leg vertex) pairs
    kind: str

    def leg_of(self, k: int) -> int:
        return dict(self.matching)[k]


def _thin(g: Graph) -> Optional[SpiderDecomposition]:
    # in a thin spider the legs are exactly the degree-1 vertices:
    # body and head vertices all see at least |K| >= 2 others
    legs = [v for v in range(g.n) if g.degree(v) == 1]
    if len(legs) < 2:
        return None
    matching = []
    for s in legs:
        (k,) = g.neighbors(s)
        matching.append((k, s))
    body = frozenset(k for k, _ in matching)
    if len(body) != len(legs):
        return None
    leg_set = frozenset(legs)
    head = frozenset(range(g.n)) - body - leg_set
    for k in body:
        nbrs = g.neighbors(k)
        if not body - {k} <= nbrs or not head <= nbrs:
            return None
        if len(nbrs & leg_set) != 1:
            return None
    for r in head:
        if g.neighbors(r) & leg_set:
            return None
    return SpiderDecomposition(body, leg_set, head, tuple(sorted(matching)), THIN)


def recognize_spider(g: Graph) -> Optional[SpiderDecomposition]:
    """Spider decomposition of ``g`` or None. P4 is reported as thin."""
    d = _thin(g)
    if d is not None:
        return d
    d = _thin(complement(g))
    if d is not None:
        return SpiderDecomposition(d.body, d.legs, d.head, d.matching, THICK)
    return None


def is_spider(g: Graph) -> bool:
    return recognize_spider(g) is not None


def is_p4_sparse(g: Graph) -> bool:
    """Every prime node of the modular decomposition induces a spider."""
    for node in prime_nodes(build_mdt(g)):
        sub, _ = induced_subgraph(g, node.vertices)
        if recognize_spider(sub) is None:
            return False
    return True


def is_p4_sparse_bruteforce(g: Graph) -> bool:
    """Definition check: every five vertices induce at most one P4."""
    if g.n < 5:
        return True
    for five in combinations(range(g.n), 5):
        sub, _ = induced_subgraph(g, five)
        if count_p4s(sub) > 1:
            return False
    return True


def edit_spider(g: Graph, d: SpiderDecomposition) -> frozenset:
    """Edit set turning a spider into a cograph by flipping all legs but one.

    Thin spiders lose ``|K| - 1`` leg edges; thick spiders gain the
    corresponding non-legs. The kept pair is the one holding the smallest
    vertex id. The head must induce a cograph.
    """
    head_graph, mapping = induced_subgraph(g, d.head)
    if not is_cograph(head_graph):
        w = find_p4(head_graph)
        raise ContractError(f"spider head is not a cograph: induced P4 {' '.join(str(mapping[i]) for i in w)}")
    pairs = sorted((min(k, s), max(k, s)) for k, s in d.matching)
    keep = min(pairs)
    return frozenset(p for p in pairs if p != keep)
