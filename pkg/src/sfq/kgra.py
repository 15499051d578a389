"""Operadic insertions on KGra and dGra, the distinguished vectors, and the
differential of the directed full graph complex."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .graph import (BLACK, WHITE, Accumulator, Edge, GraphError, GraphVector,
                    act, relabel)


def gamma_edge() -> GraphVector:
    """(1->2) + (2->1) in dGra(2)."""
    return GraphVector(2, 0, {(((0, 1), (0, 2)),): Fraction(1),
                              (((0, 2), (0, 1)),): Fraction(1)}, "c")


def gamma_bb() -> GraphVector:
    return GraphVector(2, 0, {(): Fraction(1)}, "c")


def gamma_ww() -> GraphVector:
    return GraphVector(0, 2, {(): Fraction(1)}, "o")


def broom(k: int) -> GraphVector:
    """One black vertex with edges (1,w1) < ... < (1,wk)."""
    key = tuple(((BLACK, 1), (WHITE, j)) for j in range(1, k + 1))
    return GraphVector(1, k, {key: Fraction(1)}, "o")


def shuffles(p: int, q: int) -> list[tuple[int, ...]]:
    """(p,q)-shuffles as image tuples: 1..p and p+1..p+q both go to increasing labels."""
    n = p + q
    out = []
    for first in combinations(range(1, n + 1), p):
        rest = [j for j in range(1, n + 1) if j not in first]
        out.append(tuple(first) + tuple(rest))
    return out


def _splice(outer: GraphVector, inner: GraphVector, nb: int, nw: int, color: str,
            vmap_outer, slot: tuple[int, int], targets: list, inner_map) -> GraphVector:
    acc = Accumulator(nb, nw, color)
    for okey, oc in outer._terms.items():
        options = []
        for t, h in okey:
            ts = targets if t == slot else [vmap_outer(t)]
            hs = targets if h == slot else [vmap_outer(h)]
            options.append([(a, b) for a in ts for b in hs])
        for ikey, ic in inner._terms.items():
            inner_edges = tuple((inner_map[t], inner_map[h]) for t, h in ikey)
            coeff = oc * ic
            for choice in product(*options):
                acc.add_raw(choice + inner_edges, coeff)
    return acc.result()


def insert_black(outer: GraphVector, i: int, inner: GraphVector) -> GraphVector:
    """outer o_{i,c} inner: replace black vertex i of ``outer`` by ``inner``."""
    if inner.nw or inner.color != "c":
        raise GraphError("black insertion needs an inner vector without white vertices")
    if not 1 <= i <= outer.nb:
        raise GraphError(f"black slot {i} out of range 1..{outer.nb}")
    n, k, m = outer.nb, outer.nw, inner.nb
    shift = m - 1

    def vmap(v):
        return (BLACK, v[1] + shift) if v[0] == BLACK and v[1] > i else v

    targets = [(BLACK, i + j) for j in range(m)]
    inner_map = {(BLACK, j): (BLACK, i + j - 1) for j in range(1, m + 1)}
    return _splice(outer, inner, n + m - 1, k, outer.color, vmap, (BLACK, i), targets, inner_map)


def insert_white(outer: GraphVector, i: int, inner: GraphVector) -> GraphVector:
    """outer o_{i,o} inner: replace white vertex i of ``outer`` by ``inner``.

    Inner blacks are appended after the outer blacks, inner whites occupy the
    labels i..i+k'-1.
    """
    if outer.color != "o" or inner.color != "o":
        raise GraphError("white insertion needs colour-o outer and inner vectors")
    if not 1 <= i <= outer.nw:
        raise GraphError(f"white slot {i} out of range 1..{outer.nw}")
    n, k, n2, k2 = outer.nb, outer.nw, inner.nb, inner.nw

    def vmap(v):
        return (WHITE, v[1] + k2 - 1) if v[0] == WHITE and v[1] > i else v

    inner_map = {(BLACK, j): (BLACK, n + j) for j in range(1, n2 + 1)}
    inner_map.update({(WHITE, j): (WHITE, i + j - 1) for j in range(1, k2 + 1)})
    targets = list(inner_map.values())
    return _splice(outer, inner, n + n2, k + k2 - 1, "o", vmap, (WHITE, i), targets, inner_map)


def compose(outer: GraphVector, i: int, inner: GraphVector, color: str) -> GraphVector:
    if color == "c":
        return insert_black(outer, i, inner)
    if color == "o":
        return insert_white(outer, i, inner)
    raise GraphError(f"unknown slot colour {color!r}")


def is_black_invariant(v: GraphVector) -> bool:
    from itertools import permutations
    ident_w = tuple(range(1, v.nw + 1))
    return all(act(p, ident_w, v) == v for p in permutations(range(1, v.nb + 1)))


def _proper_splits(v: GraphVector) -> GraphVector:
    """Split black vertex 1 into 1 and 2 joined by a new last edge, keeping only
    splittings where both halves keep at least one old edge."""
    n = v.nb
    acc = Accumulator(n + 1, 0, "c")

    def up(x):
        return (BLACK, x[1] + 1) if x[1] > 1 else x

    for key, c in v._terms.items():
        options, at_one = [], []
        for t, h in key:
            ts = [(BLACK, 1), (BLACK, 2)] if t == (BLACK, 1) else [up(t)]
            hs = [(BLACK, 1), (BLACK, 2)] if h == (BLACK, 1) else [up(h)]
            options.append([(a, b) for a in ts for b in hs])
            at_one.append(t == (BLACK, 1) or h == (BLACK, 1))
        for choice in product(*options):
            used = {x for e, hit in zip(choice, at_one) if hit for x in e if x in ((BLACK, 1), (BLACK, 2))}
            if len(used) < 2:
                continue
            for new in (((BLACK, 1), (BLACK, 2)), ((BLACK, 2), (BLACK, 1))):
                acc.add_raw(choice + (new,), c)
    return acc.result()


def dfgc_differential(g: GraphVector, check: bool = True) -> GraphVector:
    """Differential of the directed full graph complex on S_n-invariant vectors.

    This is minus the sum over vertices of the splittings that keep every new
    vertex at least bivalent; antenna terms are left out.
    """
    if g.nw:
        raise GraphError("dfgc_differential acts on purely black vectors")
    if check and not is_black_invariant(g):
        raise GraphError("dfgc_differential needs an S_n-invariant input")
    g = g.with_color("c")
    if not g:
        return GraphVector.zero(g.nb + 1, 0, "c")
    split = _proper_splits(g)
    acc = Accumulator(g.nb + 1, 0, "c")
    for tau in shuffles(2, g.nb - 1):
        acc.add_vector(relabel(split, tau, ()), -1)
    return acc.result()


def edges_between(nb: int, nw: int) -> list[Edge]:
    """All admissible directed edges in sorted order."""
    out = []
    for i in range(1, nb + 1):
        for j in range(1, nb + 1):
            if i != j:
                out.append(((BLACK, i), (BLACK, j)))
        for j in range(1, nw + 1):
            out.append(((BLACK, i), (WHITE, j)))
    return sorted(out)


def sum_vectors(vs: Sequence[GraphVector], nb: int, nw: int, color: str | None = None) -> GraphVector:
    acc = Accumulator(nb, nw, color)
    for v in vs:
        acc.add_vector(v)
    return acc.result()
