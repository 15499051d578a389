"""Signed two-coloured directed graphs with ordered edges, and their rational combinations.

A vertex is a pair ``(colour, label)`` with colour ``BLACK`` (0) or ``WHITE`` (1)
and labels starting at 1.  Swapping two edges of a graph flips its sign, so a
graph is stored with its edges sorted lexicographically and the sorting parity
is pushed into the coefficient.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

BLACK = 0
WHITE = 1

Vertex = tuple[int, int]
Edge = tuple[Vertex, Vertex]


class GraphError(ValueError):
    """Raised for structurally invalid graphs (loops, white tails, bad labels)."""


def vname(v: Vertex) -> str:
    return ("b" if v[0] == BLACK else "w") + str(v[1])


@dataclass(frozen=True, order=True)
class Graph:
    nb: int
    nw: int
    edges: tuple[Edge, ...]

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def degree(self) -> int:
        return -len(self.edges)

    def __str__(self) -> str:
        body = " ".join(f"{vname(t)}>{vname(h)}" for t, h in self.edges)
        return f"[{self.nb},{self.nw}] {body}".rstrip()


def _validate(nb: int, nw: int, edges: Iterable[Edge]) -> None:
    for t, h in edges:
        if t[0] != BLACK:
            raise GraphError(f"edge {vname(t)}>{vname(h)} starts at a white vertex")
        if t == h:
            raise GraphError(f"loop at {vname(t)}")
        for c, l in (t, h):
            bound = nb if c == BLACK else nw
            if not 1 <= l <= bound:
                raise GraphError(f"vertex {vname((c, l))} out of range for ({nb},{nw})")


def perm_parity(order: Sequence[int]) -> int:
    """Parity (0 or 1) of a permutation of range(len(order))."""
    seen = [False] * len(order)
    parity = 0
    for i in range(len(order)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        parity ^= (length - 1) & 1
    return parity


def sort_edges(edges: Sequence[Edge]) -> tuple[int, tuple[Edge, ...]]:
    """Sort edges and return ``(sign, sorted)``; sign is 0 on a repeated edge."""
    order = sorted(range(len(edges)), key=edges.__getitem__)
    out = tuple(edges[i] for i in order)
    for a, b in zip(out, out[1:]):
        if a == b:
            return 0, out
    return (-1 if perm_parity(order) else 1), out


def uniform_color(nw: int) -> str:
    return "o" if nw else "c"


class GraphVector:
    """Finite rational combination of canonical graphs of one bi-arity.

    Terms are stored as ``{edge tuple: Fraction}``; all keys are sorted edge
    tuples and no coefficient is zero.  Instances are treated as immutable.
    """

    __slots__ = ("nb", "nw", "color", "_terms")

    def __init__(self, nb: int, nw: int, terms: Mapping[tuple[Edge, ...], Fraction] | None = None,
                 color: str | None = None):
        self.nb = nb
        self.nw = nw
        self.color = color if color is not None else uniform_color(nw)
        if self.color not in ("c", "o"):
            raise GraphError(f"unknown colour {self.color!r}")
        if self.color == "c" and nw:
            raise GraphError("colour c vectors have no white vertices")
        self._terms: dict[tuple[Edge, ...], Fraction] = (
            {k: v for k, v in terms.items() if v} if terms else {})

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls, nb: int, nw: int, color: str | None = None) -> GraphVector:
        return cls(nb, nw, None, color)

    @classmethod
    def from_raw(cls, nb: int, nw: int, edges: Sequence[Edge], coeff=1,
                 color: str | None = None) -> GraphVector:
        """Canonicalize one raw graph with its edge order as given."""
        edges = tuple((tuple(t), tuple(h)) for t, h in edges)
        _validate(nb, nw, edges)
        sign, key = sort_edges(edges)
        if sign == 0:
            return cls(nb, nw, None, color)
        return cls(nb, nw, {key: Fraction(coeff) * sign}, color)

    def _new(self, terms: dict) -> GraphVector:
        out = GraphVector.__new__(GraphVector)
        out.nb, out.nw, out.color = self.nb, self.nw, self.color
        out._terms = terms
        return out

    # access -------------------------------------------------------------
    @property
    def biarity(self) -> tuple[int, int]:
        return self.nb, self.nw

    @property
    def terms(self) -> dict[tuple[Edge, ...], Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[tuple[Edge, ...], Fraction]]:
        return iter(sorted(self._terms.items()))

    def graphs(self) -> Iterator[tuple[Graph, Fraction]]:
        for key, c in self.items():
            yield Graph(self.nb, self.nw, key), c

    def coeff(self, key: tuple[Edge, ...] | Graph) -> Fraction:
        if isinstance(key, Graph):
            key = key.edges
        return self._terms.get(key, Fraction(0))

    def edge_counts(self) -> set[int]:
        return {len(k) for k in self._terms}

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    # arithmetic ---------------------------------------------------------
    def _check(self, other: GraphVector) -> None:
        if (self.nb, self.nw, self.color) != (other.nb, other.nw, other.color):
            raise GraphError(
                f"bi-arity mismatch {(self.nb, self.nw, self.color)} vs {(other.nb, other.nw, other.color)}")

    def __add__(self, other: GraphVector) -> GraphVector:
        if not other._terms:
            return self
        if not self._terms:
            return other
        self._check(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return self._new(out)

    def __neg__(self) -> GraphVector:
        return self._new({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: GraphVector) -> GraphVector:
        return self + (-other)

    def __mul__(self, s) -> GraphVector:
        s = Fraction(s)
        if not s:
            return self._new({})
        return self._new({k: c * s for k, c in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, s) -> GraphVector:
        return self * (1 / Fraction(s))

    def __eq__(self, other) -> bool:
        if not isinstance(other, GraphVector):
            return NotImplemented
        if not self._terms and not other._terms:
            return True
        return (self.nb, self.nw, self.color) == (other.nb, other.nw, other.color) \
            and self._terms == other._terms

    def __hash__(self):
        return hash((self.nb, self.nw, self.color, frozenset(self._terms.items())))

    def filter(self, pred) -> GraphVector:
        """Keep the terms whose ``Graph`` satisfies ``pred``."""
        return self._new({k: c for k, c in self._terms.items()
                          if pred(Graph(self.nb, self.nw, k))})

    def with_color(self, color: str) -> GraphVector:
        return GraphVector(self.nb, self.nw, self._terms, color)

    def __repr__(self) -> str:
        if not self._terms:
            return f"GraphVector({self.nb},{self.nw},{self.color}: 0)"
        body = " + ".join(f"({c})[{' '.join(f'{vname(t)}>{vname(h)}' for t, h in k)}]"
                          for k, c in self.items())
        return f"GraphVector({self.nb},{self.nw},{self.color}: {body})"


class Accumulator:
    """Mutable dict-of-coefficients used while building a vector."""

    __slots__ = ("nb", "nw", "color", "terms")

    def __init__(self, nb: int, nw: int, color: str | None = None):
        self.nb, self.nw = nb, nw
        self.color = color if color is not None else uniform_color(nw)
        self.terms: dict[tuple[Edge, ...], Fraction] = {}

    def add_raw(self, edges: Sequence[Edge], coeff) -> None:
        if not coeff:
            return
        sign, key = sort_edges(edges)
        if sign:
            self.add(key, coeff * sign)

    def add(self, key: tuple[Edge, ...], coeff) -> None:
        v = self.terms.get(key, 0) + coeff
        if v:
            self.terms[key] = v
        else:
            self.terms.pop(key, None)

    def add_vector(self, v: GraphVector, scale=1) -> None:
        for k, c in v._terms.items():
            self.add(k, c * scale)

    def result(self) -> GraphVector:
        return GraphVector(self.nb, self.nw, self.terms, self.color)


def canonicalize(g: Graph, coeff=1, color: str | None = None) -> GraphVector:
    """Canonical single-term vector of a raw graph (zero on repeated edges)."""
    return GraphVector.from_raw(g.nb, g.nw, g.edges, coeff, color)


def _check_perm(p: Sequence[int], n: int, what: str) -> None:
    if len(p) != n or sorted(p) != list(range(1, n + 1)):
        raise GraphError(f"{what} permutation {tuple(p)} is not a permutation of 1..{n}")


def relabel(v: GraphVector, fb: Sequence[int], fw: Sequence[int]) -> GraphVector:
    """Send black j to ``fb[j-1]`` and white j to ``fw[j-1]``; no checks."""
    acc = Accumulator(v.nb, v.nw, v.color)
    for key, c in v._terms.items():
        edges = [((BLACK, fb[t[1] - 1]),
                  (h[0], fb[h[1] - 1] if h[0] == BLACK else fw[h[1] - 1])) for t, h in key]
        acc.add_raw(edges, c)
    return acc.result()


def act(perm_black: Sequence[int], perm_white: Sequence[int], v: GraphVector) -> GraphVector:
    """Action of (sigma, tau) in S_n x S_k: relabel black j -> sigma(j), white j -> tau(j)."""
    _check_perm(perm_black, v.nb, "black")
    _check_perm(perm_white, v.nw, "white")
    return relabel(v, perm_black, perm_white)


def compose_perms(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """(p q)(j) = p(q(j))."""
    return tuple(p[q[j] - 1] for j in range(len(q)))


def invert_perm(p: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(p)
    for j, pj in enumerate(p, 1):
        out[pj - 1] = j
    return tuple(out)


def perm_sign(p: Sequence[int]) -> int:
    return -1 if perm_parity([x - 1 for x in p]) else 1


# structural predicates ---------------------------------------------------

def _as_graph(g) -> Graph:
    if isinstance(g, Graph):
        return g
    raise TypeError(f"expected Graph, got {type(g).__name__}")


def is_connected(g: Graph) -> bool:
    g = _as_graph(g)
    verts = [(BLACK, i) for i in range(1, g.nb + 1)] + [(WHITE, j) for j in range(1, g.nw + 1)]
    if not verts:
        return True
    parent = {v: v for v in verts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for t, h in g.edges:
        parent[find(t)] = find(h)
    root = find(verts[0])
    return all(find(v) == root for v in verts)


def valencies(g: Graph) -> dict[Vertex, int]:
    val = {(BLACK, i): 0 for i in range(1, g.nb + 1)}
    val.update({(WHITE, j): 0 for j in range(1, g.nw + 1)})
    for t, h in g.edges:
        val[t] += 1
        val[h] += 1
    return val


def pikes(g: Graph) -> list[int]:
    """Labels of black vertices of valency one whose edge points into them."""
    g = _as_graph(g)
    val = valencies(g)
    heads = {h for _, h in g.edges}
    return [i for i in range(1, g.nb + 1) if val[(BLACK, i)] == 1 and (BLACK, i) in heads]


def count_pikes(g: Graph) -> int:
    return len(pikes(g))


def white_valencies(g: Graph) -> list[int]:
    g = _as_graph(g)
    out = [0] * g.nw
    for _, h in g.edges:
        if h[0] == WHITE:
            out[h[1] - 1] += 1
    return out


def white_univalent(g: Graph) -> bool:
    return all(x == 1 for x in white_valencies(g))


def pike_part(v: GraphVector, r: int) -> GraphVector:
    """Terms of ``v`` with exactly ``r`` pikes."""
    return v.filter(lambda g: count_pikes(g) == r)


def pike_decomposition(v: GraphVector) -> dict[int, GraphVector]:
    parts: dict[int, Accumulator] = {}
    for key, c in v._terms.items():
        r = count_pikes(Graph(v.nb, v.nw, key))
        parts.setdefault(r, Accumulator(v.nb, v.nw, v.color)).add(key, c)
    return {r: acc.result() for r, acc in sorted(parts.items())}


def all_connected(v: GraphVector) -> bool:
    return all(is_connected(g) for g, _ in v.graphs())
