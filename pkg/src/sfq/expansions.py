"""Hand expansions of the MC map on particular corollas.

Each function writes out one expansion block by block, directly from
insertions of table values.  They are independent of ``oc_differential`` and
serve two purposes: right-hand sides for the induction, and oracles that pin
the sign conventions of ``mc_evaluate``.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial

from .graph import Accumulator, GraphVector, pike_part, relabel
from .homology import cycle_sigma, cycle_tau, hoch_differential
from .kgra import broom, gamma_edge, insert_black, insert_white, shuffles
from .oc import AlphaTable, mixed


def _shuffled(v: GraphVector, p: int, q: int, acc: Accumulator, scale=1) -> None:
    wid = tuple(range(1, v.nw + 1))
    for sh in shuffles(p, q):
        acc.add_vector(relabel(v, sh, wid), scale)


def _sgn(p: int, k: int, q: int) -> int:
    return -1 if (p + (k - q) * (q - p)) % 2 else 1


def level_2_rhs(k: int) -> GraphVector:
    """Right-hand side of the Hochschild equation for the (2, k-1) entry."""
    if k < 1:
        raise ValueError("k >= 1")
    acc = Accumulator(2, k, "o")
    acc.add_vector(insert_black(broom(k), 1, gamma_edge()),
                   Fraction(-(-1) ** k, factorial(k)))
    swap = (2, 1)
    wid = tuple(range(1, k + 1))
    for p in range(k + 1):
        for q in range(p, k + 1):
            a, b = k - q + p + 1, q - p
            c = Fraction(_sgn(p, k, q), factorial(a) * factorial(b))
            comp = insert_white(broom(a), p + 1, broom(b))
            acc.add_vector(comp, c)
            acc.add_vector(relabel(comp, swap, wid), c)
    return acc.result()


def edge_block(alpha: AlphaTable, m: int, k: int) -> GraphVector:
    """sum over Sh(2, m-2) of alpha(m-1, k) o_{1,c} Gamma_edge."""
    acc = Accumulator(m, k, "o")
    _shuffled(insert_black(alpha.value(mixed(m - 1, k)), 1, gamma_edge()), 2, m - 2, acc)
    return acc.result()


def quadratic_block(alpha: AlphaTable, m: int, k: int, rs=None) -> GraphVector:
    """sum_r sum_Sh(r, m-r) sum_{p<=q<=k} sign alpha(r, k-q+p+1) o_{p+1} alpha(m-r, q-p)."""
    acc = Accumulator(m, k, "o")
    for r in (range(1, m) if rs is None else rs):
        for p in range(k + 1):
            for q in range(p, k + 1):
                outer = alpha.value(mixed(r, k - q + p + 1))
                inner = alpha.value(mixed(m - r, q - p))
                if outer and inner:
                    _shuffled(insert_white(outer, p + 1, inner), r, m - r, acc, _sgn(p, k, q))
    return acc.result()


def al_at_m_rhs(alpha: AlphaTable, m: int, k: int) -> GraphVector:
    """Right-hand side of d^Hoch alpha(m, k-1) = ... obtained from MC at t_{m,k}, m >= 3."""
    acc = Accumulator(m, k, "o")
    acc.add_vector(quadratic_block(alpha, m, k))
    acc.add_vector(edge_block(alpha, m, k), -(-1) ** k)
    return acc.result()


def mc_mixed_expansion(alpha: AlphaTable, m: int, k: int) -> GraphVector:
    """MC at t_{m,k} for m >= 3, k >= 1, written as Hochschild, edge and quadratic blocks."""
    acc = Accumulator(m, k, "o")
    acc.add_vector(hoch_differential(alpha.value(mixed(m, k - 1))))
    acc.add_vector(edge_block(alpha, m, k), (-1) ** k)
    acc.add_vector(quadratic_block(alpha, m, k), -1)
    return acc.result()


# the five blocks at t_{3, q-1} ------------------------------------------------

def block_with_pikes(alpha: AlphaTable, q: int) -> GraphVector:
    return edge_block(alpha, 3, q - 1) * (-1) ** (q - 1)


def block_hoch_line(alpha: AlphaTable, q: int) -> GraphVector:
    if q < 2:
        return GraphVector.zero(3, q - 1, "o")
    return hoch_differential(alpha.value(mixed(3, q - 2)))


def block_pike_line(alpha: AlphaTable, q: int) -> GraphVector:
    acc = Accumulator(3, q - 1, "o")
    a = alpha.value(mixed(2, q))
    for p in range(1, q + 1):
        _shuffled(insert_white(a, p, broom(0)), 2, 1, acc, (-1) ** p)
    return acc.result()


def block_the_rest(alpha: AlphaTable, q: int) -> GraphVector:
    acc = Accumulator(3, q - 1, "o")
    for k in range(1, q):
        a = alpha.value(mixed(2, q - k))
        for p in range(1, q - k + 1):
            c = Fraction((-1) ** (p + k * (q - p - k)), factorial(k))
            _shuffled(insert_white(a, p, broom(k)), 2, 1, acc, c)
    return acc.result()


def block_the_rest1(alpha: AlphaTable, q: int) -> GraphVector:
    acc = Accumulator(3, q - 1, "o")
    for k in range(1, q):
        a = alpha.value(mixed(2, k))
        for p in range(1, q - k + 1):
            c = Fraction((-1) ** (p + k * (q - p - k)), factorial(q - k))
            _shuffled(insert_white(broom(q - k), p, a), 1, 2, acc, c)
    return acc.result()


def five_block_expansion(alpha: AlphaTable, q: int) -> GraphVector:
    """MC at t_{3, q-1} when alpha(2, 0) = 0."""
    parts = (block_with_pikes, block_hoch_line, block_pike_line, block_the_rest, block_the_rest1)
    acc = Accumulator(3, q - 1, "o")
    for f in parts:
        acc.add_vector(f(alpha, q))
    return acc.result()


# the four lines at t_{m+1, 0} -------------------------------------------------

def line_edge(g: GraphVector) -> GraphVector:
    """sum over Sh(2, m-1) of g o_{1,c} Gamma_edge, for g in KGra(m, 0)."""
    m = g.nb
    acc = Accumulator(m + 1, 0, "o")
    _shuffled(insert_black(g.with_color("o"), 1, gamma_edge()), 2, m - 1, acc)
    return acc.result()


def line_arrow_in(g: GraphVector) -> GraphVector:
    m = g.nb
    acc = Accumulator(m + 1, 0, "o")
    comp = insert_white(broom(1), 1, g.with_color("o"))
    for i in range(1, m + 2):
        acc.add_vector(relabel(comp, cycle_sigma(m + 1, i), ()), -1)
    return acc.result()


def line_arrow_out(h: GraphVector) -> GraphVector:
    """For h in KGra(m, 1)."""
    m = h.nb
    acc = Accumulator(m + 1, 0, "o")
    comp = insert_white(h, 1, broom(0))
    for i in range(1, m + 2):
        acc.add_vector(relabel(comp, cycle_tau(m + 1, i), ()), -1)
    return acc.result()


def line_rational(alpha: AlphaTable, m: int) -> GraphVector:
    acc = Accumulator(m + 1, 0, "o")
    for r in range(2, m):
        comp = insert_white(alpha.value(mixed(r, 1)), 1, alpha.value(mixed(m + 1 - r, 0)))
        _shuffled(comp, r, m + 1 - r, acc, -1)
    return acc.result()


def four_line_expansion(alpha: AlphaTable, m: int) -> GraphVector:
    """MC at t_{m+1, 0}."""
    acc = Accumulator(m + 1, 0, "o")
    acc.add_vector(line_edge(alpha.value(mixed(m, 0))))
    acc.add_vector(line_arrow_in(alpha.value(mixed(m, 0))))
    acc.add_vector(line_arrow_out(alpha.value(mixed(m, 1))))
    acc.add_vector(line_rational(alpha, m))
    return acc.result()


def pike_free(v: GraphVector) -> GraphVector:
    return pike_part(v, 0)


def dfgc_rhs(alpha: AlphaTable, m: int, beta_m1: GraphVector) -> GraphVector:
    """Right-hand side R of dfgc(x) = R for the purely black (m, 0) entry.

    Uses the pike-free part of the arrow-out line for the (m, 1) value
    ``beta_m1`` together with the quadratic line.
    """
    acc = Accumulator(m + 1, 0, "c")
    acc.add_vector(pike_free(line_arrow_out(beta_m1)).with_color("c"))
    acc.add_vector(pike_free(line_rational(alpha, m)).with_color("c"))
    return acc.result()
