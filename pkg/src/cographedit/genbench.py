"""Seeded random cographs, perturbation, and a small benchmark harness.

Randomness comes from :class:`random.Random` (Mersenne Twister), seeded per
instance, so every report is reproducible from its seeds.
"""

from __future__ import annotations

import io
import random
import time
from dataclasses import dataclass
from itertools import combinations
from statistics import mean
from typing import Optional, Sequence

from .editing import apply, exact_edit, heuristic_edit, oracle_exact_edit
from .errors import CapacityError, InputError
from .graph import PARALLEL, SERIES, Graph, TreeNode, cotree_to_graph, is_cograph

RNG_NAME = "python-random-mt19937"
METHODS = ("heuristic", "exact", "oracle")
CSV_HEADER = "seed,n,flips,method,edit_size,cograph,optimum,wall_ms"


@dataclass(frozen=True)
class GeneratorConfig:
    n: int
    seed: int = 0
    max_children: int = 3
    flips: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise InputError(f"n must be at least 1, got {self.n}")
        if self.max_children < 2:
            raise InputError(f"max_children must be at least 2, got {self.max_children}")
        if not 0 <= self.flips <= self.n * (self.n - 1) // 2:
            raise InputError(f"flips must lie in [0, n(n-1)/2], got {self.flips}")


def _composition(rng: random.Random, total: int, parts: int) -> list[int]:
    cuts = sorted(rng.sample(range(1, total), parts - 1))
    bounds = [0] + cuts + [total]
    return [b - a for a, b in zip(bounds, bounds[1:])]


def random_cotree(n: int, rng: random.Random, max_children: int = 3) -> TreeNode:
    """Random canonical cotree on the vertex ids ``0..n-1``."""
    order = list(range(n))
    rng.shuffle(order)
    root_kind = rng.choice((SERIES, PARALLEL))

    def build(leaves, kind):
        if len(leaves) == 1:
            return TreeNode("leaf", frozenset(leaves))
        parts = rng.randint(2, min(max_children, len(leaves)))
        sizes = _composition(rng, len(leaves), parts)
        other = PARALLEL if kind == SERIES else SERIES
        children, start = [], 0
        for s in sizes:
            children.append(build(leaves[start : start + s], other))
            start += s
        children.sort(key=lambda c: min(c.vertices))
        return TreeNode(kind, frozenset(leaves), tuple(children))

    return build(order, root_kind)


def random_cograph(cfg: GeneratorConfig) -> Graph:
    rng = random.Random(cfg.seed)
    return cotree_to_graph(random_cotree(cfg.n, rng, cfg.max_children))


def perturb(g: Graph, q: int, seed) -> tuple[Graph, frozenset]:
    """Flip ``q`` distinct pairs chosen uniformly at random."""
    pairs = list(combinations(range(g.n), 2))
    if not 0 <= q <= len(pairs):
        raise InputError(f"cannot flip {q} pairs of a {g.n}-vertex graph")
    flips = frozenset(random.Random(seed).sample(pairs, q))
    return apply(g, flips), flips


def generate(cfg: GeneratorConfig) -> tuple[Graph, frozenset]:
    """Random cograph for ``cfg`` perturbed by ``cfg.flips`` flips."""
    # the perturbation stream is derived from the seed but kept apart from the tree stream
    return perturb(random_cograph(cfg), cfg.flips, f"{cfg.seed}:flips")


@dataclass(frozen=True)
class BenchRow:
    seed: int
    n: int
    flips: int
    method: str
    edit_size: Optional[int]  # None when skipped
    cograph: Optional[bool]
    optimum: Optional[int]
    wall_ms: float

    def csv(self) -> str:
        size = "skipped" if self.edit_size is None else str(self.edit_size)
        cog = "n/a" if self.cograph is None else str(self.cograph).lower()
        opt = "" if self.optimum is None else str(self.optimum)
        return f"{self.seed},{self.n},{self.flips},{self.method},{size},{cog},{opt},{self.wall_ms:.3f}"


@dataclass(frozen=True)
class BenchReport:
    rows: tuple

    def aggregates(self) -> list[tuple]:
        """``(n, flips, method, instances, mean_edit_size, matches_optimum)`` per group."""
        groups = {}
        for r in self.rows:
            groups.setdefault((r.n, r.flips, r.method), []).append(r)
        out = []
        for key in sorted(groups, key=lambda k: (k[0], k[1], METHODS.index(k[2]))):
            done = [r for r in groups[key] if r.edit_size is not None]
            mean_size = mean(r.edit_size for r in done) if done else None
            judged = [r for r in done if r.optimum is not None]
            match = sum(r.edit_size == r.optimum for r in judged) / len(judged) if judged else None
            out.append((*key, len(done), mean_size, match))
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"# rng={RNG_NAME}\n")
        buf.write(CSV_HEADER + "\n")
        for r in self.rows:
            buf.write(r.csv() + "\n")
        buf.write("\n")
        buf.write("n,flips,method,instances,mean_edit_size,matches_optimum\n")
        for n, flips, method, count, size, match in self.aggregates():
            size_s = "" if size is None else f"{size:.4f}"
            match_s = "" if match is None else f"{match:.4f}"
            buf.write(f"{n},{flips},{method},{count},{size_s},{match_s}\n")
        return buf.getvalue()


def _run_method(method: str, g: Graph, oracle_max_k: int):
    if method == "heuristic":
        return heuristic_edit(g).edits
    if method == "exact":
        return exact_edit(g)
    if method == "oracle":
        return oracle_exact_edit(g, oracle_max_k)
    raise InputError(f"unknown method {method!r}")


def run_bench(configs: Sequence[GeneratorConfig], methods=METHODS, oracle_max_k: int = 4) -> BenchReport:
    """Run every method on every configured instance.

    Rows are ordered by seed, then configuration order, then method.
    Methods beyond their capacity produce skipped rows.
    """
    for m in methods:
        if m not in METHODS:
            raise InputError(f"unknown method {m!r}; expected one of {', '.join(METHODS)}")
    ordered = [m for m in METHODS if m in methods]
    rows = []
    for cfg in sorted(configs, key=lambda c: c.seed):
        g, _ = generate(cfg)
        results = {}
        for method in ordered:
            start = time.perf_counter()
            try:
                f = _run_method(method, g, oracle_max_k)
            except CapacityError:
                f = None
            results[method] = (f, (time.perf_counter() - start) * 1000)
        optimum = None
        for ref in ("oracle", "exact"):
            if ref in results and results[ref][0] is not None:
                optimum = len(results[ref][0])
                break
        for method in ordered:
            f, ms = results[method]
            if f is None:
                rows.append(BenchRow(cfg.seed, cfg.n, cfg.flips, method, None, None, optimum, ms))
            else:
                ok = is_cograph(apply(g, f))
                rows.append(BenchRow(cfg.seed, cfg.n, cfg.flips, method, len(f), ok, optimum, ms))
    return BenchReport(tuple(rows))
