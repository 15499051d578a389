"""Hypothesis strategies and small fixtures shared by the test modules."""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from hypothesis import strategies as st

from sfq.graph import BLACK, WHITE, Accumulator, GraphVector
from sfq.homology import pi_projection, symmetrize_black
from sfq.kgra import edges_between

B = lambda i: (BLACK, i)  # noqa: E731
W = lambda j: (WHITE, j)  # noqa: E731

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=6).filter(bool)


def perms(n):
    return st.permutations(list(range(1, n + 1))).map(tuple)


@st.composite
def raw_edges(draw, nb, nw, max_edges=5):
    pool = edges_between(nb, nw)
    if not pool:
        return []
    size = draw(st.integers(0, min(max_edges, len(pool))))
    return draw(st.lists(st.sampled_from(pool), min_size=size, max_size=size, unique=True))


@st.composite
def graph_vectors(draw, max_nb=3, max_nw=4, max_terms=4, max_edges=5, nb=None, nw=None,
                  edges=None, color=None):
    nb = draw(st.integers(0 if (nw or max_nw) else 1, max_nb)) if nb is None else nb
    nw = draw(st.integers(0, max_nw)) if nw is None else nw
    pool = edges_between(nb, nw)
    e = draw(st.integers(0, min(max_edges, len(pool)))) if edges is None else edges
    acc = Accumulator(nb, nw, color)
    for _ in range(draw(st.integers(1, max_terms))):
        es = draw(st.lists(st.sampled_from(pool), min_size=e, max_size=e, unique=True)) if e else []
        acc.add_raw(draw(st.permutations(es)) if es else [], draw(coeffs))
    return acc.result()


@st.composite
def invariant_vectors(draw, max_nb=3, max_nw=3, max_edges=5, min_nb=1):
    """S_n-invariant, S_k-antisymmetric, white-univalent vectors."""
    nb = draw(st.integers(min_nb, max_nb))
    nw = draw(st.integers(0 if nb else 1, max_nw))
    e = draw(st.integers(nw, max(nw, min(max_edges, len(edges_between(nb, nw))))))
    v = draw(graph_vectors(nb=nb, nw=nw, edges=e, color="o"))
    return symmetrize_black(pi_projection(v))


def single(nb, nw, edges, coeff=1, color=None):
    return GraphVector.from_raw(nb, nw, edges, Fraction(coeff), color)


def all_perms(n):
    return list(permutations(range(1, n + 1)))
