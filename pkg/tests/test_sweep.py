import random
import networkx as nx
from admlab.admGraph import serialize, canonical_divisor
from admlab.admSweep import default_options, random_graph, uniform_spanning_tree, pair_valences
from admlab.admSweep import run_tasks, check_task, sweep, replay

SMALL = dict(max_vertices=3, max_edges=4, max_genus=3)


def test_spanning_tree_spans():
    rng = random.Random(3)
    for count in range(1, 8):
        edges = uniform_spanning_tree(rng, count)
        assert len(edges) == count - 1
        tree = nx.Graph(edges)
        tree.add_nodes_from(range(count))
        assert nx.is_tree(tree)


def test_random_graph_bounds():
    rng = random.Random(11)
    for _ in range(50):
        graph = random_graph(rng, max_vertices=5, max_edges=7, max_genus=4)
        assert 2 <= graph.genus() <= 4
        assert len(graph.vertices) <= 5
        assert len(graph.edges) <= 7
        assert all(edge.length.denominator <= 8 for edge in graph.edges)
        assert all(0 < edge.length <= 16 for edge in graph.edges)


def test_random_graph_is_reproducible():
    first = random_graph(random.Random(42))
    second = random_graph(random.Random(42))
    assert serialize(first) == serialize(second)


def test_run_tasks_inline_keeps_order():
    assert run_tasks(abs, [-3, 2, -1], workers=1) == [3, 2, 1]


def test_check_task_outcome():
    outcome = check_task((0, 1234, default_options(**SMALL)))
    assert outcome.index == 0
    assert outcome.passed, outcome.failures
    assert replay(outcome).genus() >= 2
    assert 'cinkir' in outcome.margins


def test_sweep_is_deterministic():
    options = default_options(**SMALL)
    first = sweep(4, seed=7, options=options, workers=1)
    second = sweep(4, seed=7, options=options, workers=1)
    assert first.success
    assert [o.graph for o in first.outcomes] == [o.graph for o in second.outcomes]
    assert first.minimum_margins == second.minimum_margins


def test_sweep_with_workers_matches_inline():
    options = default_options(checks=('epsilon_bound', 'cinkir'), **SMALL)
    inline = sweep(4, seed=5, options=options, workers=1)
    pooled = sweep(4, seed=5, options=options, workers=2)
    assert [o.graph for o in inline.outcomes] == [o.graph for o in pooled.outcomes]
    assert inline.minimum_margins == pooled.minimum_margins
    assert pooled.passed == pooled.count


def test_pair_valences_count_loops_twice():
    assert pair_valences(3, [(0, 1), (1, 1)]) == [1, 3, 0]


def test_random_graphs_have_effective_canonical_divisor():
    rng = random.Random(7)
    for _ in range(200):
        graph = random_graph(rng)
        assert all(k >= 0 for _, k in canonical_divisor(graph).items()), serialize(graph)


def test_default_sweep_passes_every_graph():
    report = sweep(200, seed=7, options=default_options())
    assert report.success, [(o.seed, o.failures) for o in report.failures()]
    assert report.minimum_margins['epsilon_nonnegative'] >= 0
    assert report.minimum_margins['cinkir'] >= 0


def test_oracle_agrees_on_random_graphs():
    report = sweep(50, seed=11, options=default_options(checks=('oracle',)))
    assert report.count == 50
    assert report.success, [(o.seed, o.failures) for o in report.failures()]
