import itertools
import random

import numpy as np
import pytest

from cographedit import (
    CapacityError,
    ContractError,
    Graph,
    InputError,
    RecognitionError,
    apply,
    build_mdt,
    decompose_into_merge_trace,
    edit_set,
    enumerate_all_modules,
    exact_edit,
    heuristic_edit,
    induced_subgraph,
    is_cograph,
    is_module,
    maximal_modular_partition,
    merge_edit_subset,
    merge_many,
    merge_pair,
    merge_steps,
    module_violation,
    oracle_exact_edit,
    quotient,
    select_merge_pair,
    trace_edit_union,
    twin_partition,
    weighted_cograph_edit,
)
from cographedit.editing import _p4_weight_touching, merge_cost
from cographedit.genbench import GeneratorConfig, generate

from oracles import C5, P4, blow_up, complete, is_cograph_brute, min_edit_brute, p4s_brute, random_graph

S = lambda *xs: frozenset(xs)
BLOWN_P4 = blow_up(P4, [2, 2, 2, 2])[0]


def _small_graphs(count, lo=4, hi=8):
    for seed in range(count):
        n = lo + seed % (hi - lo + 1)
        if seed % 2:
            yield random_graph(n, 0.5, seed)
        else:
            yield generate(GeneratorConfig(n, seed, 3, 1 + seed % 3))[0]


# --------------------------------------------------------------------------
# edit sets


def test_edit_set_normalizes_and_rejects():
    assert edit_set([(3, 1), (0, 2)]) == {(1, 3), (0, 2)}
    with pytest.raises(InputError):
        edit_set([(1, 1)])
    with pytest.raises(InputError):
        edit_set([(1, 2), (2, 1)])


def test_apply_examples():
    assert apply(P4, []) == P4
    assert apply(P4, {(1, 2)}) == Graph(4, [(0, 1), (2, 3)])
    assert is_cograph(apply(P4, {(1, 2)}))
    with pytest.raises(InputError):
        apply(P4, {(0, 4)})


def test_apply_is_an_involution():
    for seed in range(30):
        g = random_graph(6, 0.5, seed)
        rng = random.Random(seed)
        f = rng.sample(list(itertools.combinations(range(6), 2)), 4)
        assert apply(apply(g, f), f) == g


def test_merge_edit_subset():
    f = {(0, 1), (1, 2), (2, 3), (0, 3)}
    assert merge_edit_subset(f, {0, 1}) == {(1, 2), (0, 3)}


# --------------------------------------------------------------------------
# oracle and exact editing


def test_oracle_examples():
    assert len(oracle_exact_edit(P4)) == 1
    assert oracle_exact_edit(P4) == {(0, 1)}
    f = oracle_exact_edit(C5)
    assert len(f) == 2 and is_cograph(apply(C5, f))
    assert oracle_exact_edit(complete(4)) == frozenset()
    assert oracle_exact_edit(C5, max_k=1) is None


def test_oracle_capacity():
    with pytest.raises(CapacityError):
        oracle_exact_edit(Graph(9))
    with pytest.raises(CapacityError):
        oracle_exact_edit(P4, max_k=6)


def test_oracle_matches_unpruned_search():
    for g in _small_graphs(60, 4, 6):
        f = oracle_exact_edit(g, 3)
        expected = min_edit_brute(g, 3)
        assert (f is None) == (expected is None)
        if f is not None:
            assert len(f) == expected and is_cograph_brute(apply(g, f))


def _weighted_brute(q, w):
    pairs = list(itertools.combinations(range(q.n), 2))
    best = None
    for r in range(len(pairs) + 1):
        for f in itertools.combinations(pairs, r):
            cost = sum(w[i][j] for i, j in f)
            if best is not None and cost >= best:
                continue
            if is_cograph_brute(apply(q, f)):
                best = cost
    return best


def test_weighted_cograph_edit_matches_brute_force():
    for seed in range(40):
        rng = random.Random(seed)
        k = 4 + seed % 2
        q = random_graph(k, 0.5, seed)
        sizes = [rng.randint(1, 3) for _ in range(k)]
        w = [[a * b for b in sizes] for a in sizes]
        cost, flips = weighted_cograph_edit(q, w)
        assert cost == _weighted_brute(q, w)
        assert cost == sum(w[i][j] for i, j in flips)
        assert is_cograph(apply(q, flips))


def test_exact_examples():
    assert len(exact_edit(P4)) == 1
    assert len(exact_edit(C5)) == 2
    assert len(exact_edit(BLOWN_P4)) == 4
    assert len(oracle_exact_edit(BLOWN_P4)) == 4
    assert exact_edit(complete(5)) == frozenset()


def test_exact_capacity_message_mentions_heuristic():
    g = random_graph(14, 0.5, 3)
    assert len(build_mdt(g).children) > 12
    with pytest.raises(CapacityError, match="heuristic"):
        exact_edit(g)


def test_exact_matches_oracle():
    for g in _small_graphs(80):
        ref = oracle_exact_edit(g, 4)
        f = exact_edit(g)
        assert is_cograph(apply(g, f))
        if ref is not None:
            assert len(f) == len(ref)


def test_exact_properties():
    for g in _small_graphs(80, 4, 7):
        f = exact_edit(g)
        h = apply(g, f)
        # every module of g survives
        for m in enumerate_all_modules(g):
            assert is_module(h, m)
        # no edit joins two twins of the result
        tp = twin_partition(h)
        assert not any(tp.class_of(u) == tp.class_of(v) for u, v in f)
        # the edited graph over the top-level partition is a cograph
        blocks = maximal_modular_partition(g)
        if len(blocks) > 1:
            assert is_cograph(quotient(h, blocks)[0])
        # prime inputs never collapse to a single twin class
        if build_mdt(g).kind == "prime":
            assert len(tp.classes) > 1


def test_exchange_of_inside_edits():
    # swapping the edits inside a strong module for an optimal edit of that
    # module alone keeps the total size
    for g in _small_graphs(60, 5, 7):
        f = exact_edit(g)
        for node in build_mdt(g).walk():
            m = node.vertices
            if node.is_leaf or len(m) == g.n:
                continue
            inside = {p for p in f if p[0] in m and p[1] in m}
            sub, mapping = induced_subgraph(g, m)
            local = oracle_exact_edit(sub, 5)
            swapped = (f - inside) | {(mapping[u], mapping[v]) for u, v in local}
            assert len(swapped) == len(f)
            assert is_cograph(apply(g, swapped))


# --------------------------------------------------------------------------
# merges


def test_merge_pair_p4_example():
    edits, h = merge_pair(P4, {0}, {2})
    assert edits == {(2, 3)}
    assert h == Graph(4, [(0, 1), (1, 2)])
    assert is_module(h, {0, 2}) and is_cograph(h)


def test_merge_pair_c5_example():
    edits, h = merge_pair(C5, {0}, {2})
    assert len(edits) == 2 and is_module(h, {0, 2})
    edits, h = merge_pair(C5, {0}, {2}, plan={3: 1, 4: 0})
    assert edits == {(2, 3), (0, 4)}
    assert is_cograph(h)


def test_merge_pair_contract_errors():
    g = Graph(4, [(2, 3)])
    with pytest.raises(ContractError):
        merge_pair(g, {0}, {1})  # already twins
    with pytest.raises(ContractError):
        merge_pair(P4, {0, 1}, {2})  # not a module
    with pytest.raises(ContractError):
        merge_pair(P4, {0}, {0})
    with pytest.raises(ContractError):
        merge_pair(C5, {0}, {2}, plan={3: 2})


def test_merge_pair_flips_the_smaller_side():
    g, groups = blow_up(P4, [1, 1, 3, 1])
    mi, mj = set(groups[0]), set(groups[2])
    edits, h = merge_pair(g, mi, mj)
    # vertex 1 sees both; vertex 5 (old 3) sees only the 3-block, so it is flipped against {0}
    assert edits == {(0, 5)}
    assert is_module(h, mi | mj)


def test_merge_many_two_sources_equals_merge_pair():
    for g in _small_graphs(40, 4, 8):
        t = build_mdt(g)
        node = next((x for x in t.walk() if x.kind == "prime"), None)
        if node is None:
            continue
        kids = [c.vertices for c in node.children]
        for a, b in itertools.combinations(kids, 2):
            if is_module(g, a | b):
                continue
            assert merge_many(g, [a, b]) == merge_pair(g, a, b)


def test_merge_many_order_independent_on_p4():
    sources = [{0}, {1}, {2}]
    results = {merge_many(P4, order) for order in itertools.permutations(sources)}
    assert len(results) == 1
    (edits, h), = results
    assert is_module(h, {0, 1, 2})


def test_merge_many_rejects_a_union_that_is_already_a_module():
    with pytest.raises(ContractError, match="already a module"):
        merge_many(P4, [{0}, {1}, {2}, {3}])
    edits, h = merge_many(P4, [{0}, {1}, {2}])
    assert is_module(h, {0, 1, 2})


def test_merge_steps_recurrence():
    edits, h = merge_many(C5, [{0}, {2}, {3}])
    steps = merge_steps(C5, [{0}, {2}, {3}])
    assert [s[0] for s in steps] == [S(0, 2), S(0, 2, 3)]
    parts = [s[1] for s in steps]
    assert parts[0] | parts[1] == edits and not parts[0] & parts[1]


def test_select_merge_pair_p4_costs():
    cheap = {
        (i, j) for i, j in itertools.combinations(range(4), 2) if merge_cost(P4, {i}, {j}) == 1
    }
    assert cheap == {(0, 1), (0, 2), (1, 3), (2, 3)}
    mi, mj, plan = select_merge_pair(P4, [{0}, {1}, {2}, {3}])
    assert merge_cost(P4, mi, mj) == 1
    edits, h = merge_pair(P4, mi, mj, plan)
    assert is_cograph(h)


def test_select_merge_pair_c5_leaves_cograph():
    kids = [{v} for v in range(5)]
    assert {merge_cost(C5, {i}, {j}) for i, j in itertools.combinations(range(5), 2)} == {2}
    mi, mj, plan = select_merge_pair(C5, kids)
    edits, h = merge_pair(C5, mi, mj, plan)
    assert len(edits) == 2 and is_cograph(h)


def test_select_merge_pair_takes_cheapest_pair():
    for g in _small_graphs(60, 5, 9):
        node = next((x for x in build_mdt(g).walk() if x.kind == "prime"), None)
        if node is None:
            continue
        kids = [c.vertices for c in node.children]
        best = min(merge_cost(g, a, b) for a, b in itertools.combinations(kids, 2))
        mi, mj, plan = select_merge_pair(g, kids)
        assert merge_cost(g, mi, mj) == best
        assert len(merge_pair(g, mi, mj, plan)[0]) == best


def test_touching_weight_counts_blown_up_p4s():
    for seed in range(25):
        rng = random.Random(seed)
        k = 5
        q = random_graph(k, 0.5, seed)
        sizes = [rng.randint(1, 2) for _ in range(k)]
        i, j = rng.sample(range(k), 2)
        g, groups = blow_up(q, sizes)
        hit = set(groups[i]) | set(groups[j])
        expected = sum(1 for w in p4s_brute(g) if hit & set(w))
        adj = np.zeros((k, k))
        for u, v in q.edges():
            adj[u, v] = adj[v, u] = 1.0
        assert _p4_weight_touching(adj, np.array(sizes, dtype=float), i, j) == expected


# --------------------------------------------------------------------------
# heuristic


def test_heuristic_examples():
    r = heuristic_edit(complete(4))
    assert r.edits == frozenset() and r.trace == () and r.graph == complete(4)
    r = heuristic_edit(P4)
    assert len(r.edits) == 1 and len(r.spider_steps) == 1 and r.trace == ()
    r = heuristic_edit(C5)
    assert len(r.edits) == 2 and r.spider_steps == () and len(r.trace) >= 1
    assert len(heuristic_edit(BLOWN_P4).edits) == 4


def test_heuristic_sound_and_never_better_than_exact():
    for g in _small_graphs(80, 4, 9):
        r = heuristic_edit(g)
        assert is_cograph(apply(g, r.edits)) and r.graph == apply(g, r.edits)
        assert len(r.edits) >= len(exact_edit(g))


def test_heuristic_trace_records_are_merges():
    for g in _small_graphs(40, 5, 9):
        r = heuristic_edit(g)
        cur = g
        spider_edits = set()
        for s in r.spider_steps:
            spider_edits |= s.edits
        for rec in r.trace:
            assert len(rec.sources) == 2 and rec.merged == rec.sources[0] | rec.sources[1]
            assert all(len({u, v} & rec.merged) == 1 for u, v in rec.edits)
        union = set()
        for rec in r.trace:
            union ^= rec.edits
        assert union ^ spider_edits == r.edits


def test_heuristic_on_larger_graphs():
    for seed in range(6):
        g = random_graph(30, 0.5, seed)
        r = heuristic_edit(g)
        assert is_cograph(r.graph)


# --------------------------------------------------------------------------
# merge traces


def test_decompose_p4_single_record():
    trace = decompose_into_merge_trace(P4, {(1, 2)})
    assert len(trace) == 1
    rec = trace[0]
    assert rec.prime == S(0, 1, 2, 3) and rec.edits == {(1, 2)}
    assert len(rec.sources) == 2


def test_decompose_trivial_and_errors():
    assert decompose_into_merge_trace(complete(3), set()) == ()
    with pytest.raises(RecognitionError):
        decompose_into_merge_trace(P4, set())
    # a module of g is broken: {0, 1} is a false-twin module in this graph
    g = Graph(4, [(2, 3)])
    with pytest.raises(ContractError):
        decompose_into_merge_trace(g, {(0, 2)})


def test_decompose_exact_solutions():
    for g in _small_graphs(80):
        f = exact_edit(g)
        trace = decompose_into_merge_trace(g, f)
        assert trace_edit_union(trace) == f
        final = apply(g, f)
        for rec in trace:
            assert is_module(final, rec.merged)
            assert not is_module(g, rec.merged)


def test_module_violation():
    g = Graph(4, [(2, 3)])
    assert module_violation(g, apply(g, {(0, 2)})) is not None
    assert module_violation(P4, apply(P4, {(1, 2)})) is None
    big = random_graph(14, 0.5, 1)
    assert module_violation(big, big) is None
