import pytest

from cographedit import Graph, InputError, apply, heuristic_edit, is_cograph
from cographedit.genbench import CSV_HEADER, RNG_NAME, GeneratorConfig, generate, perturb, random_cograph, run_bench


def test_config_validation():
    with pytest.raises(InputError):
        GeneratorConfig(0)
    with pytest.raises(InputError):
        GeneratorConfig(4, max_children=1)
    with pytest.raises(InputError):
        GeneratorConfig(4, flips=7)
    GeneratorConfig(4, flips=6)


def test_random_cograph_examples():
    assert random_cograph(GeneratorConfig(1)) == Graph(1)
    for seed in range(10):
        assert is_cograph(random_cograph(GeneratorConfig(50, seed)))
    assert random_cograph(GeneratorConfig(20, 7)) == random_cograph(GeneratorConfig(20, 7))
    assert random_cograph(GeneratorConfig(20, 7)) != random_cograph(GeneratorConfig(20, 8))


def test_perturb():
    g = random_cograph(GeneratorConfig(10, 1))
    h, f = perturb(g, 0, 5)
    assert h == g and f == frozenset()
    h, f = perturb(g, 6, 5)
    assert len(f) == 6 and apply(h, f) == g
    with pytest.raises(InputError):
        perturb(g, 46, 5)


def test_single_flip_heuristic():
    for seed in range(40):
        g, f = generate(GeneratorConfig(12, seed, 3, 1))
        size = len(heuristic_edit(g).edits)
        assert size <= 1
        assert (size == 0) == is_cograph(g)


def test_bench_rows_and_optimum():
    cfgs = [GeneratorConfig(8, s, 3, 2) for s in range(50)]
    report = run_bench(cfgs, ("heuristic", "exact", "oracle"))
    by_seed = {}
    for r in report.rows:
        assert r.cograph is True
        by_seed.setdefault(r.seed, {})[r.method] = r.edit_size
    assert len(by_seed) == 50
    for sizes in by_seed.values():
        assert sizes["heuristic"] >= sizes["oracle"] == sizes["exact"]


def test_bench_zero_flips_and_determinism():
    cfgs = [GeneratorConfig(n, s, 3, 0) for n in (5, 9) for s in range(3)]
    report = run_bench(cfgs, ("heuristic", "exact"))
    assert all(r.edit_size == 0 for r in report.rows)
    strip = lambda text: [line.rsplit(",", 1)[0] for line in text.splitlines()]
    again = run_bench(cfgs, ("heuristic", "exact"))
    assert strip(report.to_csv()) == strip(again.to_csv())


def test_bench_capacity_is_a_skipped_row():
    report = run_bench([GeneratorConfig(10, 0, 3, 5)], ("heuristic", "oracle"))
    oracle = [r for r in report.rows if r.method == "oracle"][0]
    assert oracle.edit_size is None and "skipped" in oracle.csv()


def test_bench_csv_layout():
    text = run_bench([GeneratorConfig(6, 0, 3, 1)], ("heuristic",)).to_csv()
    lines = text.splitlines()
    assert lines[0] == f"# rng={RNG_NAME}"
    assert lines[1] == CSV_HEADER
    assert "" in lines and lines[lines.index("") + 1].startswith("n,flips,method,instances")
    assert text.endswith("\n")


def test_bench_rejects_unknown_method():
    with pytest.raises(InputError):
        run_bench([GeneratorConfig(4)], ("magic",))
