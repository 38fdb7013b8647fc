"""Edit a few small graphs into cographs and show how the edits decompose.

Run with ``python demos/walkthrough.py``.
"""

from cographedit import (
    Graph,
    apply,
    build_mdt,
    decompose_into_merge_trace,
    exact_edit,
    heuristic_edit,
    is_cograph,
    recognize_spider,
)
from cographedit.formats import dump_tree


def show(name, g):
    print(f"== {name}: n={g.n}, m={g.m}")
    print("   tree:", dump_tree(build_mdt(g)).strip())
    d = recognize_spider(g)
    if d is not None:
        print(f"   {d.kind} spider, body {sorted(d.body)}, legs {sorted(d.legs)}")
    f = exact_edit(g)
    print(f"   exact edits ({len(f)}): {sorted(f)}")
    for rec in decompose_into_merge_trace(g, f):
        merged = sorted(rec.merged)
        print(f"     merge inside {sorted(rec.prime)} -> {merged}: {sorted(rec.edits)}")
    h = heuristic_edit(g)
    print(f"   heuristic edits ({len(h.edits)}): {sorted(h.edits)}, cograph: {is_cograph(apply(g, h.edits))}")


if __name__ == "__main__":
    show("P4", Graph(4, [(0, 1), (1, 2), (2, 3)]))
    show("C5", Graph(5, [(i, (i + 1) % 5) for i in range(5)]))
    # each vertex of a P4 replaced by an independent pair
    blown = [(x, y) for a, b in [(0, 1), (1, 2), (2, 3)] for x in (2 * a, 2 * a + 1) for y in (2 * b, 2 * b + 1)]
    show("blown-up P4", Graph(8, blown))
