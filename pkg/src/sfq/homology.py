"""Hochschild differential, the projection onto its cohomology, and the
pike-creating differential with its homotopy."""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import factorial

from .graph import (BLACK, WHITE, Accumulator, Graph, GraphError, GraphVector,
                    count_pikes, pike_decomposition, relabel, perm_sign, white_univalent)
from .kgra import broom, gamma_ww, insert_white


def _need_open(g: GraphVector) -> GraphVector:
    """Purely black vectors are read as colour o; white ones must already be."""
    if g.color == "o":
        return g
    if g.nw == 0:
        return g.with_color("o")
    raise GraphError("operator acts on colour-o vectors only")


def hoch_differential(g: GraphVector) -> GraphVector:
    g = _need_open(g)
    k = g.nw
    ww = gamma_ww()
    acc = Accumulator(g.nb, k + 1, "o")
    acc.add_vector(insert_white(ww, 2, g))
    for i in range(1, k + 1):
        acc.add_vector(insert_white(g, i, ww), (-1) ** i)
    acc.add_vector(insert_white(ww, 1, g), (-1) ** (k + 1))
    return acc.result()


def symmetrize_black(g: GraphVector) -> GraphVector:
    """Sum over S_n of the black relabelings (not averaged)."""
    ident = tuple(range(1, g.nw + 1))
    acc = Accumulator(g.nb, g.nw, g.color)
    for p in permutations(range(1, g.nb + 1)):
        acc.add_vector(relabel(g, p, ident))
    return acc.result()


def alt_white(g: GraphVector) -> GraphVector:
    k = g.nw
    if k <= 1:
        return g
    ident = tuple(range(1, g.nb + 1))
    acc = Accumulator(g.nb, k, g.color)
    scale = Fraction(1, factorial(k))
    for p in permutations(range(1, k + 1)):
        acc.add_vector(relabel(g, ident, p), scale * perm_sign(p))
    return acc.result()


def pi_one(g: GraphVector) -> GraphVector:
    return g.filter(white_univalent)


def pi_projection(g: GraphVector) -> GraphVector:
    g = _need_open(g)
    return alt_white(pi_one(g))


def is_invariant(g: GraphVector) -> bool:
    """S_n-invariant, S_k-antisymmetric and white-univalent."""
    if not all(white_univalent(x) for x, _ in g.graphs()):
        return False
    wid = tuple(range(1, g.nw + 1))
    bid = tuple(range(1, g.nb + 1))
    if g.nb > 1:
        for p in ([(2, 1) + bid[2:]] + ([bid[1:] + (1,)] if g.nb > 2 else [])):
            if relabel(g, p, wid) != g:
                return False
    if g.nw > 1:
        for p in ([(2, 1) + wid[2:]] + ([wid[1:] + (1,)] if g.nw > 2 else [])):
            if relabel(g, bid, p) != g * perm_sign(p):
                return False
    return True


def cycle_tau(n: int, i: int) -> tuple[int, ...]:
    """tau_{n,i}: n -> i and j -> j+1 for i <= j < n."""
    return tuple(j if j < i else (j + 1 if j < n else i) for j in range(1, n + 1))


def cycle_sigma(k: int, i: int) -> tuple[int, ...]:
    """sigma_{k,i}: 1 -> i and j -> j-1 for 2 <= j <= i."""
    return tuple(i if j == 1 else (j - 1 if j <= i else j) for j in range(1, k + 1))


def pike_differential(g: GraphVector, check: bool = True) -> GraphVector:
    g = _need_open(g)
    n, k = g.nb, g.nw
    if k == 0:
        return GraphVector.zero(n + 1, 0, "o")
    if check and not is_invariant(g):
        raise GraphError("pike_differential needs an invariant antisymmetric white-univalent vector")
    glued = insert_white(g, 1, broom(0))
    acc = Accumulator(n + 1, k - 1, "o")
    wid = tuple(range(1, k))
    for i in range(1, n + 2):
        acc.add_vector(relabel(glued, cycle_tau(n + 1, i), wid), k)
    return acc.result()


def pike_homotopy(g: GraphVector) -> GraphVector:
    g = _need_open(g)
    n, k = g.nb, g.nw
    if n < 1:
        raise GraphError("pike_homotopy needs at least one black vertex")
    # steps 1 and 2: keep black 1 as a pike and turn it into white 1
    acc = Accumulator(n - 1, k + 1, "o")
    for key, c in g._terms.items():
        if 1 not in _pike_labels(Graph(n, k, key)):
            continue
        edges = []
        for t, h in key:
            if h == (BLACK, 1):
                h2 = (WHITE, 1)
            elif h[0] == BLACK:
                h2 = (BLACK, h[1] - 1)
            else:
                h2 = (WHITE, h[1] + 1)
            edges.append(((BLACK, t[1] - 1), h2))
        acc.add_raw(edges, c)
    moved = acc.result()
    # step 3
    out = Accumulator(n - 1, k + 1, "o")
    bid = tuple(range(1, n))
    for i in range(1, k + 2):
        out.add_vector(relabel(moved, bid, cycle_sigma(k + 1, i)),
                       Fraction((-1) ** (i - 1), k + 1))
    return out.result()


def _pike_labels(g: Graph) -> set[int]:
    from .graph import pikes
    return set(pikes(g))


def homotopy_rhs(g: GraphVector) -> GraphVector:
    """k*g + sum_r r*g_r."""
    acc = Accumulator(g.nb, g.nw, g.color)
    acc.add_vector(g, g.nw)
    for r, part in pike_decomposition(g).items():
        if r:
            acc.add_vector(part, r)
    return acc.result()


def homotopy_identity_check(g: GraphVector) -> bool:
    g = _need_open(g)
    lhs = Accumulator(g.nb, g.nw, "o")
    if g.nb >= 1:
        lhs.add_vector(pike_differential(pike_homotopy(g), check=False))
    if g.nw >= 1:
        lhs.add_vector(pike_homotopy(pike_differential(g, check=False)))
    return lhs.result() == homotopy_rhs(g)


def pike_count_vector(g: GraphVector) -> dict[int, int]:
    out: dict[int, int] = {}
    for x, _ in g.graphs():
        r = count_pikes(x)
        out[r] = out.get(r, 0) + 1
    return out
