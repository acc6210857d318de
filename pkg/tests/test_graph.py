from itertools import combinations

import pytest
from hypothesis import given, strategies as st

import oracles
from copflip.graph import (
    FamilySpec, Graph, GraphError, SplitMix64, enumerate_labeled_graphs, generate, labeled_corpus,
    mask_of, members, parse_graph, reach_avoiding, serialize_graph, shortest_path_avoiding,
)
from strategies import graphs, vertex_sets


def test_parse_path():
    g = parse_graph("3 2\n0 1\n1 2")
    assert g.edges() == [(0, 1), (1, 2)]


def test_parse_single_vertex():
    g = parse_graph("1 0")
    assert g.n == 1 and g.m == 0


@pytest.mark.parametrize("text", [
    "3 2\n0 1\n0 1",      # duplicate, count mismatch
    "3 1\n0 3",           # id out of range
    "3 1\n1 1",           # self-loop
    "3 1\n0 1 2",         # malformed line
    "3\n0 1",             # malformed header
    "",
    "65 0",
])
def test_parse_rejects(text):
    with pytest.raises(GraphError):
        parse_graph(text)


def test_serialize_sorted():
    g = Graph.from_edges(4, [(3, 2), (1, 0), (0, 3)])
    assert serialize_graph(g) == "4 3\n0 1\n0 3\n2 3\n"


def test_roundtrip_corpus():
    for g in labeled_corpus(4):
        assert parse_graph(serialize_graph(g)) == g


@given(graphs(max_n=8))
def test_roundtrip_property(g):
    assert parse_graph(serialize_graph(g)) == g


def test_graph_validation():
    with pytest.raises(GraphError):
        Graph(2, (0b10, 0))        # asymmetric
    with pytest.raises(GraphError):
        Graph(2, (0b01, 0))        # loop
    with pytest.raises(GraphError):
        Graph.empty(65)


def test_generate_examples():
    assert generate(FamilySpec("complete", n=4)).m == 6
    assert generate(FamilySpec("cycle", n=5)).m == 5
    a = generate(FamilySpec("erdos-renyi", n=6, p=0.5, seed=1))
    b = generate(FamilySpec("erdos-renyi", n=6, p=0.5, seed=1))
    assert a == b
    assert generate(FamilySpec("grid", a=3, b=3)).m == 12
    assert generate(FamilySpec("hypercube", n=3)).m == 12
    assert generate(FamilySpec("complete-bipartite", a=2, b=3)).m == 6


@pytest.mark.parametrize("spec", [
    FamilySpec("grid", a=0, b=3), FamilySpec("cycle", n=2), FamilySpec("apollonian", n=2),
    FamilySpec("erdos-renyi", n=4, p=1.5), FamilySpec("hypercube", n=7), FamilySpec("petersen", n=10),
])
def test_generate_rejects(spec):
    with pytest.raises(GraphError):
        generate(spec)


@pytest.mark.parametrize("n", [3, 4, 7, 9, 12])
def test_apollonian_is_stacked_triangulation(n):
    for seed in range(4):
        g = generate(FamilySpec("apollonian", n=n, seed=seed))
        assert g.m == 3 * n - 6
        if n <= 9:
            # stacking keeps every new vertex at back-degree 3
            assert oracles.degeneracy(g) == min(3, n - 1)


def test_splitmix_reference_vector():
    # published outputs for seed 1234567
    rng = SplitMix64(1234567)
    assert rng.next_u64() == 6457827717110365317
    assert rng.next_u64() == 3203168211198807973
    assert rng.next_u64() == 9817491932198370423


def test_splitmix_ranges():
    rng = SplitMix64(7)
    for _ in range(200):
        assert 0.0 <= rng.random() < 1.0
        assert 0 <= rng.below(5) < 5
    items = list(range(10))
    rng.shuffle(items)
    assert sorted(items) == list(range(10))


@pytest.mark.parametrize("n,count", [(0, 1), (1, 1), (2, 2), (3, 8), (4, 64)])
def test_enumeration_counts(n, count):
    gs = list(enumerate_labeled_graphs(n))
    assert len(gs) == count
    assert len(set(gs)) == count


def test_enumeration_order_and_guard():
    gs = list(enumerate_labeled_graphs(3))
    assert gs[0].m == 0 and gs[-1].m == 3
    assert gs[1].edges() == [(0, 1)]
    assert gs[2].edges() == [(0, 2)]
    assert len(list(enumerate_labeled_graphs(5))) == 1024
    with pytest.raises(GraphError):
        next(enumerate_labeled_graphs(6))


def test_reach_examples(p3):
    assert members(reach_avoiding(p3, 0, 2, 0)) == [0, 1, 2]
    assert members(reach_avoiding(p3, 0, 2, mask_of([1]))) == [0]
    c5 = generate(FamilySpec("cycle", n=5))
    assert members(reach_avoiding(c5, 0, 1, mask_of([4]))) == [0, 1]
    assert oracles.robber_reach(c5, 0, 1, {4}) == {0, 1}
    with pytest.raises(ValueError):
        reach_avoiding(p3, 1, 1, mask_of([1]))


@given(graphs(), st.data())
def test_reach_matches_path_enumeration(g, data):
    x = data.draw(st.integers(0, g.n - 1))
    r = data.draw(st.integers(0, 4))
    blocked = data.draw(vertex_sets(g.n)) & ~(1 << x)
    assert set(members(reach_avoiding(g, x, r, blocked))) == oracles.robber_reach(g, x, r, members(blocked))
    assert set(members(reach_avoiding(g, x, r, 0))) == oracles.bfs_ball(g, x, r)


@given(graphs(), st.data())
def test_reach_monotone(g, data):
    x = data.draw(st.integers(0, g.n - 1))
    r = data.draw(st.integers(0, 4))
    small = data.draw(vertex_sets(g.n)) & ~(1 << x)
    big = small | (data.draw(vertex_sets(g.n)) & ~(1 << x))
    a = reach_avoiding(g, x, r, small)
    assert a & ~reach_avoiding(g, x, r + 1, small) == 0
    assert reach_avoiding(g, x, r, big) & ~a == 0


@given(graphs(), st.data())
def test_shortest_path_is_legal(g, data):
    x = data.draw(st.integers(0, g.n - 1))
    blocked = data.draw(vertex_sets(g.n)) & ~(1 << x)
    for y in range(g.n):
        path = shortest_path_avoiding(g, x, y, blocked)
        reach = reach_avoiding(g, x, g.n, blocked)
        if path is None:
            assert not reach >> y & 1
            continue
        assert path[0] == x and path[-1] == y
        assert all(g.has_edge(a, b) for a, b in zip(path, path[1:]))
        assert not any(blocked >> u & 1 for u in path)
        assert reach_avoiding(g, x, len(path) - 1, blocked) >> y & 1
        if len(path) > 1:
            assert not reach_avoiding(g, x, len(path) - 2, blocked) >> y & 1


def test_complement_and_isolated():
    g = Graph.from_edges(4, [(0, 1)])
    h = g.complement()
    assert h.m == 5 and not h.has_edge(0, 1)
    assert members(g.isolated()) == [2, 3]
    assert set(combinations(range(4), 2)) == set(g.edges()) | set(h.edges())
