import pytest
from hypothesis import given, strategies as st

import oracles
from copflip.graph import FamilySpec, Graph, generate, members
from copflip.ordering import (
    VertexOrder, order_cost_scol, order_cost_wcol, parse_order, reach_M, reach_M_closed, reach_Q,
    reach_R, serialize_order,
)
from strategies import graph_and_order

IDENT3 = VertexOrder.of([0, 1, 2])


def test_vertex_order_validation():
    o = VertexOrder.of([2, 0, 1])
    assert o.pos[2] == 0 and o[2] == 1 and len(o) == 3
    for bad in ([0, 0, 1], [0, 2], [1, 2, 3]):
        with pytest.raises(ValueError):
            VertexOrder.of(bad)
    assert parse_order(serialize_order(o)) == o


def test_reach_R_examples(p3):
    assert set(members(reach_R(p3, IDENT3, 1, 3))) == {0, 1}
    assert oracles.R(p3, [0, 1, 2], 1, 3) == {0, 1}
    k4 = generate(FamilySpec("complete", n=4))
    assert reach_R(k4, VertexOrder.identity(4), 3, 1).bit_count() == 4
    k1 = Graph.empty(1)
    for r in (1, 2, 5):
        assert members(reach_R(k1, VertexOrder.identity(1), 0, r)) == [0]


def test_reach_Q_examples(p3):
    assert set(members(reach_Q(p3, IDENT3, 2, 2))) == {0, 1, 2}
    assert oracles.Q(p3, [0, 1, 2], 2, 2) == {0, 1, 2}
    # R only gets the neighbour: the path through 1 needs 1 after 2
    assert set(members(reach_R(p3, IDENT3, 2, 2))) == {1, 2}
    assert members(reach_Q(Graph.empty(1), VertexOrder.identity(1), 0, 3)) == [0]


def test_reach_M_examples(p3):
    assert members(reach_M(p3, IDENT3, 0, 2, 2)) == [0]
    assert oracles.M(p3, [0, 1, 2], 0, 2, 2) == {0}
    assert reach_M(p3, IDENT3, 1, 2, 0) == 0
    for v in range(3):
        assert reach_M(p3, IDENT3, v, v, 2) == reach_R(p3, IDENT3, v, 2)
    with pytest.raises(ValueError):
        reach_M(p3, IDENT3, 2, 0, 1)
    with pytest.raises(ValueError):
        reach_M(p3, IDENT3, 0, 2, -1)


def test_reach_M_closed_on_path(p3):
    # the walk 2 -> 1 -> 0 passes the threshold vertex 1 itself
    assert members(reach_M(p3, IDENT3, 1, 2, 2)) == [1]
    assert members(reach_M_closed(p3, IDENT3, 1, 2, 2)) == [0, 1]
    assert oracles.M(p3, [0, 1, 2], 1, 2, 2, closed=True) == {0, 1}


def test_order_costs(p3):
    assert order_cost_scol(p3, IDENT3, 1) == 2
    for n in range(1, 6):
        kn = generate(FamilySpec("complete", n=n))
        assert order_cost_scol(kn, VertexOrder.of(reversed(range(n))), 3) == n
        assert order_cost_scol(Graph.empty(n), VertexOrder.identity(n), 2) == 1
    with pytest.raises(ValueError):
        order_cost_scol(p3, IDENT3, 0)


@given(graph_and_order(), st.integers(1, 4))
def test_reach_sets_match_path_enumeration(go, r):
    g, seq = go
    order = VertexOrder.of(seq)
    for v in range(g.n):
        assert set(members(reach_R(g, order, v, r))) == oracles.R(g, seq, v, r)
        assert set(members(reach_Q(g, order, v, r))) == oracles.Q(g, seq, v, r)


@given(graph_and_order(), st.integers(0, 4), st.data())
def test_M_sets_match_path_enumeration(go, s, data):
    g, seq = go
    order = VertexOrder.of(seq)
    i = data.draw(st.integers(0, g.n - 1))
    j = data.draw(st.integers(i, g.n - 1))
    vi, vj = seq[i], seq[j]
    assert set(members(reach_M(g, order, vi, vj, s))) == oracles.M(g, seq, vi, vj, s)
    assert set(members(reach_M_closed(g, order, vi, vj, s))) == oracles.M(g, seq, vi, vj, s, closed=True)


@given(graph_and_order(), st.integers(1, 4))
def test_R_inside_Q_and_monotone(go, r):
    g, seq = go
    order = VertexOrder.of(seq)
    for v in range(g.n):
        a = reach_R(g, order, v, r)
        assert a & ~reach_Q(g, order, v, r) == 0
        assert a & ~reach_R(g, order, v, r + 1) == 0
        assert a >> v & 1
    assert order_cost_scol(g, order, r) <= order_cost_wcol(g, order, r)


@given(graph_and_order(), st.integers(1, 2), st.data())
def test_closed_M_still_bounded_by_strong_cost(go, r, data):
    # cutting the walk at its last visit to the threshold keeps |M| <= cost_4r
    g, seq = go
    order = VertexOrder.of(seq)
    i = data.draw(st.integers(0, g.n - 1))
    j = data.draw(st.integers(i, g.n - 1))
    closed = reach_M_closed(g, order, seq[i], seq[j], 2 * r)
    assert reach_M(g, order, seq[i], seq[j], 2 * r) & ~closed == 0
    assert closed.bit_count() <= order_cost_scol(g, order, 4 * r)
