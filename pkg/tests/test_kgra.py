import pytest
from hypothesis import given, settings, strategies as st

from sfq.graph import GraphError, GraphVector, relabel
from sfq.kgra import (broom, compose, dfgc_differential, gamma_bb, gamma_edge, gamma_ww,
                      insert_black, insert_white, is_black_invariant, shuffles)
from sfq.linalg import enumerate_basis, invariant_basis

from helpers import B, W, graph_vectors, perms, single


def sum_of(nb, nw, *edge_lists, color=None):
    out = GraphVector.zero(nb, nw, color)
    for es in edge_lists:
        out = out + single(nb, nw, es, color=color)
    return out


def test_distinguished_vectors():
    assert len(gamma_edge()) == 2 and gamma_edge().color == "c"
    assert gamma_bb().edge_counts() == {0}
    assert gamma_ww().biarity == (0, 2)
    assert broom(0).biarity == (1, 0)
    (key, c), = broom(3).items()
    assert key == ((B(1), W(1)), (B(1), W(2)), (B(1), W(3))) and c == 1


def test_black_insertion_examples():
    got = insert_black(gamma_edge(), 1, gamma_bb())
    want = sum_of(3, 0, [(B(1), B(3))], [(B(2), B(3))], [(B(3), B(1))], [(B(3), B(2))])
    assert got == want
    for k in range(4):
        assert insert_black(broom(k), 1, broom(0).with_color("c")) == broom(k)
    assert insert_black(gamma_bb(), 1, gamma_bb()) == single(3, 0, [], color="c")


def test_white_insertion_examples():
    assert insert_white(broom(1), 1, broom(0)) == single(2, 0, [(B(1), B(2))], color="o")
    assert insert_white(gamma_ww(), 2, broom(0)) == single(1, 1, [])
    assert insert_white(broom(1), 1, gamma_ww()) == sum_of(1, 2, [(B(1), W(1))], [(B(1), W(2))])


def test_broom0_in_slot_one_shifts_whites_down():
    g = single(1, 3, [(B(1), W(2)), (B(1), W(3))])
    got = insert_white(g, 1, broom(0))
    assert got == single(2, 2, [(B(1), W(1)), (B(1), W(2))])


def test_slot_errors():
    with pytest.raises(GraphError):
        insert_black(gamma_edge(), 3, gamma_bb())
    with pytest.raises(GraphError):
        insert_white(broom(1), 2, broom(0))
    with pytest.raises(GraphError):
        insert_black(broom(1), 1, broom(1))
    with pytest.raises(GraphError):
        compose(broom(1), 1, broom(0), "x")


def test_shuffles():
    assert shuffles(1, 2) == [(1, 2, 3), (2, 1, 3), (3, 1, 2)]
    assert len(shuffles(2, 3)) == 10


def test_dfgc_examples():
    assert not dfgc_differential(gamma_bb())
    assert not dfgc_differential(gamma_edge())
    with pytest.raises(GraphError):
        dfgc_differential(single(2, 0, [(B(1), B(2))], color="c"))


@pytest.mark.parametrize("n,e", [(n, e) for n in (1, 2, 3) for e in range(4)])
def test_dfgc_squares_to_zero(n, e):
    for g in invariant_basis(enumerate_basis(n, 0, e, ("connected",))).vectors():
        d = dfgc_differential(g)
        assert is_black_invariant(d)
        assert not dfgc_differential(d)


small = dict(max_nb=2, max_nw=2, max_terms=2, max_edges=2)


@settings(max_examples=60, deadline=None)
@given(graph_vectors(color="o", **small), graph_vectors(color="o", **small),
       graph_vectors(color="o", **small), st.data())
def test_white_insertion_nested_associativity(a, b, c, data):
    if not a.nw or not b.nw:
        return
    i = data.draw(st.integers(1, a.nw))
    l = data.draw(st.integers(1, b.nw))
    lhs = insert_white(insert_white(a, i, b), i + l - 1, c)
    rhs = insert_white(a, i, insert_white(b, l, c))
    assert lhs == rhs


@settings(max_examples=60, deadline=None)
@given(graph_vectors(**small), graph_vectors(nw=0, color="c", **small),
       graph_vectors(nw=0, color="c", **small), st.data())
def test_black_insertion_nested_associativity(a, b, c, data):
    if not a.nb or not b.nb or not c.nb:
        return
    i = data.draw(st.integers(1, a.nb))
    l = data.draw(st.integers(1, b.nb))
    assert insert_black(insert_black(a, i, b), i + l - 1, c) == insert_black(a, i, insert_black(b, l, c))


@settings(max_examples=60, deadline=None)
@given(graph_vectors(color="o", **small), graph_vectors(color="o", **small),
       graph_vectors(nw=0, color="c", **small), st.data())
def test_mixed_nested_associativity(a, b, c, data):
    if not a.nw or not b.nb or not c.nb:
        return
    i = data.draw(st.integers(1, a.nw))
    l = data.draw(st.integers(1, b.nb))
    lhs = insert_black(insert_white(a, i, b), a.nb + l, c)
    assert lhs == insert_white(a, i, insert_black(b, l, c))


@settings(max_examples=60, deadline=None)
@given(graph_vectors(color="o", **small), graph_vectors(color="o", **small), st.data())
def test_white_insertion_equivariant_in_inner(a, b, data):
    if not a.nw:
        return
    i = data.draw(st.integers(1, a.nw))
    s, t = data.draw(perms(b.nb)), data.draw(perms(b.nw))
    fb = tuple(range(1, a.nb + 1)) + tuple(a.nb + x for x in s)
    fw = tuple(range(1, i)) + tuple(i - 1 + x for x in t) + \
        tuple(range(i + b.nw, a.nw + b.nw))
    assert insert_white(a, i, relabel(b, s, t)) == relabel(insert_white(a, i, b), fb, fw)


@settings(max_examples=60, deadline=None)
@given(graph_vectors(color="o", max_edges=3), graph_vectors(color="o", max_edges=3), st.data())
def test_edge_counts_add(a, b, data):
    if not a.nw:
        return
    i = data.draw(st.integers(1, a.nw))
    out = insert_white(a, i, b)
    allowed = {x + y for x in a.edge_counts() for y in b.edge_counts()}
    assert out.edge_counts() <= allowed
