"""Twin classes: vertices that form two-element modules."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph

TRUE = "true"
FALSE = "false"
SINGLETON = "singleton"


@dataclass(frozen=True)
class TwinPartition:
    """Equivalence classes of the twin relation, ordered by smallest vertex.

    ``kinds[i]`` is ``"true"`` (class induces a clique), ``"false"`` (class is
    independent) or ``"singleton"``.
    """

    classes: tuple
    kinds: tuple

    def class_of(self, v: int) -> frozenset:
        for c in self.classes:
            if v in c:
                return c
        raise KeyError(v)

    def nontrivial(self) -> list:
        return [c for c in self.classes if len(c) > 1]


def twin_partition(g: Graph) -> TwinPartition:
    # false twins share N(v), true twins share N[v]; a vertex cannot have both kinds
    by_open, by_closed = {}, {}
    for v, row in enumerate(g.rows):
        by_open.setdefault(row, []).append(v)
        by_closed.setdefault(row | 1 << v, []).append(v)
    seen = set()
    classes = []
    for groups, kind in ((by_open, FALSE), (by_closed, TRUE)):
        for members in groups.values():
            if len(members) > 1:
                classes.append((frozenset(members), kind))
                seen.update(members)
    classes.extend((frozenset((v,)), SINGLETON) for v in range(g.n) if v not in seen)
    classes.sort(key=lambda item: min(item[0]))
    return TwinPartition(tuple(c for c, _ in classes), tuple(k for _, k in classes))


def has_nontrivial_twins(g: Graph) -> bool:
    return any(len(c) > 1 for c in twin_partition(g).classes)
