"""Exact sparse linear algebra over the rationals, on graph bases."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Callable, Iterable, Sequence

from .graph import (Edge, Graph, GraphError, GraphVector, count_pikes, is_connected,
                    perm_sign, relabel, sort_edges, white_univalent)
from .kgra import edges_between

FILTERS = {
    "connected": is_connected,
    "no_pikes": lambda g: count_pikes(g) == 0,
    "white_univalent": white_univalent,
}


class Inconsistent(Exception):
    """The linear system has no solution."""

    def __init__(self, message: str = "INCONSISTENT", tag: str = "", shape: tuple[int, int] = (0, 0)):
        super().__init__(message)
        self.tag = tag
        self.shape = shape


class BasisError(GraphError):
    pass


@dataclass(frozen=True)
class GraphBasis:
    nb: int
    nw: int
    e: int | None
    color: str
    filters: tuple[str, ...]
    keys: tuple[tuple[Edge, ...], ...]
    _index: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        self._index.update({k: i for i, k in enumerate(self.keys)})

    def __len__(self) -> int:
        return len(self.keys)

    def graph(self, j: int) -> Graph:
        return Graph(self.nb, self.nw, self.keys[j])

    def vectors(self) -> list[GraphVector]:
        return [GraphVector(self.nb, self.nw, {k: Fraction(1)}, self.color) for k in self.keys]

    def index(self, key) -> int | None:
        return self._index.get(key)

    def coords(self, v: GraphVector) -> dict[int, Fraction]:
        if v and (v.nb, v.nw) != (self.nb, self.nw):
            raise BasisError(f"vector of bi-arity {(v.nb, v.nw)} in basis {(self.nb, self.nw)}")
        out = {}
        for key, c in v._terms.items():
            j = self._index.get(key)
            if j is None:
                raise BasisError(f"term {Graph(v.nb, v.nw, key)} escapes the codomain basis")
            out[j] = c
        return out


def enumerate_basis(n: int, k: int, e: int, filters: Iterable[str] = (),
                    color: str | None = None) -> GraphBasis:
    """All canonical graphs with n black, k white vertices and e edges."""
    filters = tuple(sorted(filters))
    for f in filters:
        if f not in FILTERS:
            raise ValueError(f"unknown filter {f!r}")
    color = color or ("o" if k else "c")
    keys = []
    for sub in combinations(edges_between(n, k), e):
        g = Graph(n, k, sub)
        if all(FILTERS[f](g) for f in filters):
            keys.append(sub)
    return GraphBasis(n, k, e, color, filters, tuple(keys))


def support_basis(vectors: Iterable[GraphVector], nb: int, nw: int, color: str | None = None) -> GraphBasis:
    """Basis of the graphs that occur in ``vectors``, in sorted order."""
    keys = set()
    for v in vectors:
        keys.update(v._terms)
    return GraphBasis(nb, nw, None, color or ("o" if nw else "c"), ("support",), tuple(sorted(keys)))


@dataclass(frozen=True)
class VectorBasis:
    """An ordered list of linearly independent vectors spanning an unknown space."""
    nb: int
    nw: int
    color: str
    items: tuple[GraphVector, ...]
    label: str = ""

    def __len__(self) -> int:
        return len(self.items)

    def vectors(self) -> list[GraphVector]:
        return list(self.items)


def invariant_basis(basis: GraphBasis, white: str = "none") -> VectorBasis:
    """Orbit sums under S_n on blacks, and optionally the sign character of S_k on whites.

    ``white`` is ``"none"`` (whites untouched) or ``"alt"`` (antisymmetrize).
    Orbits whose signed sum vanishes are dropped; each vector is scaled so that
    its smallest graph has coefficient 1.
    """
    if white not in ("none", "alt"):
        raise ValueError(white)
    bperms = list(permutations(range(1, basis.nb + 1)))
    wid = tuple(range(1, basis.nw + 1))
    wperms = list(permutations(wid)) if white == "alt" else [wid]
    seen: set = set()
    out = []
    for key in basis.keys:
        if key in seen:
            continue
        g = GraphVector(basis.nb, basis.nw, {key: Fraction(1)}, basis.color)
        total: dict = {}
        for sb in bperms:
            for sw in wperms:
                img = relabel(g, sb, sw)
                for k2, c in img._terms.items():
                    seen.add(k2)
                    total[k2] = total.get(k2, 0) + c * (perm_sign(sw) if white == "alt" else 1)
        vec = GraphVector(basis.nb, basis.nw, total, basis.color)
        if vec:
            lead = vec.coeff(min(vec._terms))
            out.append(vec / lead)
    return VectorBasis(basis.nb, basis.nw, basis.color, tuple(out),
                       f"inv[{basis.nb},{basis.nw},{basis.e}|{','.join(basis.filters)}|{white}]")


@dataclass
class LinearSystem:
    """Sparse system A x = b; columns indexed by the domain, rows by the codomain."""
    columns: list[dict[int, Fraction]]
    rhs: dict[int, Fraction]
    n_rows: int
    domain: GraphBasis | VectorBasis | None = None
    codomain: GraphBasis | None = None
    tag: str = ""

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_rows, len(self.columns)

    def rows(self) -> list[dict[int, Fraction]]:
        out: list[dict[int, Fraction]] = [dict() for _ in range(self.n_rows)]
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                out[i][j] = v
        return out

    def apply(self, x: Sequence[Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for j, col in enumerate(self.columns):
            if x[j]:
                for i, v in col.items():
                    s = out.get(i, 0) + v * x[j]
                    if s:
                        out[i] = s
                    else:
                        out.pop(i, None)
        return out

    @classmethod
    def from_dense(cls, a: Sequence[Sequence], b: Sequence) -> LinearSystem:
        n_rows = len(a)
        n_cols = len(a[0]) if n_rows else 0
        cols = [{i: Fraction(a[i][j]) for i in range(n_rows) if a[i][j]} for j in range(n_cols)]
        rhs = {i: Fraction(v) for i, v in enumerate(b) if v}
        return cls(cols, rhs, n_rows)


def assemble(operator: Callable[[GraphVector], GraphVector], domain, codomain: GraphBasis | None,
             rhs: GraphVector | None = None, tag: str = "") -> LinearSystem:
    """Matrix of ``operator`` from ``domain`` to ``codomain``.

    With ``codomain=None`` the codomain is the support of the images and the
    right-hand side.  A term outside an explicit codomain raises BasisError.
    """
    images = [operator(v) for v in domain.vectors()]
    if codomain is None:
        ref = images[0] if images else rhs
        if ref is None:
            raise BasisError("cannot infer the codomain of an empty system")
        extra = [rhs] if rhs is not None else []
        codomain = support_basis(images + extra, ref.nb, ref.nw, ref.color)
    cols = [codomain.coords(img) for img in images]
    b = codomain.coords(rhs) if rhs is not None else {}
    return LinearSystem(cols, b, len(codomain), domain, codomain, tag)


def _rref(rows: list[dict[int, Fraction]], rhs: list[Fraction], n_cols: int):
    """Reduced row echelon form in place; returns list of (col, row) pivots."""
    used = [False] * len(rows)
    pivots = []
    col_rows: dict[int, set[int]] = {}
    for i, r in enumerate(rows):
        for j in r:
            col_rows.setdefault(j, set()).add(i)
    for c in range(n_cols):
        cand = [i for i in col_rows.get(c, ()) if not used[i]]
        if not cand:
            continue
        p = min(cand)
        used[p] = True
        prow = rows[p]
        inv = 1 / prow[c]
        if inv != 1:
            for j in prow:
                prow[j] *= inv
            rhs[p] *= inv
        for i in sorted(col_rows.get(c, ())):
            if i == p:
                continue
            row = rows[i]
            f = row.get(c)
            if not f:
                continue
            for j, v in prow.items():
                nv = row.get(j, 0) - f * v
                if nv:
                    if j not in row:
                        col_rows.setdefault(j, set()).add(i)
                    row[j] = nv
                else:
                    row.pop(j, None)
                    col_rows[j].discard(i)
            rhs[i] -= f * rhs[p]
        pivots.append((c, p))
    return pivots


def solve_coords(system: LinearSystem) -> list[Fraction]:
    """One exact solution with free variables zero; raises Inconsistent."""
    rows = system.rows()
    rhs = [system.rhs.get(i, Fraction(0)) for i in range(system.n_rows)]
    n_cols = len(system.columns)
    pivots = _rref(rows, rhs, n_cols)
    for i, r in enumerate(rows):
        if not r and rhs[i]:
            raise Inconsistent(f"INCONSISTENT {system.tag}".strip(), system.tag, system.shape)
    x = [Fraction(0)] * n_cols
    for c, p in pivots:
        x[c] = rhs[p]
    return x


def rank(system: LinearSystem) -> int:
    rows = system.rows()
    return len(_rref(rows, [Fraction(0)] * len(rows), len(system.columns)))


def nullspace(system: LinearSystem) -> list[list[Fraction]]:
    rows = system.rows()
    n_cols = len(system.columns)
    pivots = _rref(rows, [Fraction(0)] * len(rows), n_cols)
    pcols = {c: p for c, p in pivots}
    out = []
    for f in range(n_cols):
        if f in pcols:
            continue
        x = [Fraction(0)] * n_cols
        x[f] = Fraction(1)
        for c, p in pivots:
            v = rows[p].get(f)
            if v:
                x[c] = -v
        out.append(x)
    return out


def combine(domain, x: Sequence[Fraction]) -> GraphVector:
    vecs = domain.vectors()
    acc: dict = {}
    for xi, v in zip(x, vecs):
        if xi:
            for k, c in v._terms.items():
                acc[k] = acc.get(k, 0) + xi * c
    return GraphVector(domain.nb, domain.nw, acc, domain.color)


def solve(system: LinearSystem):
    """Solve exactly; returns a GraphVector when the domain is a graph basis."""
    x = solve_coords(system)
    if system.domain is None:
        return x
    return combine(system.domain, x)


def solve_with_constraint(system: LinearSystem, constraint: Callable[[GraphVector], GraphVector]):
    """Solve with the extra requirement constraint(solution) = 0."""
    images = [constraint(v) for v in system.domain.vectors()]
    nonzero = [im for im in images if im]
    if not nonzero:
        return solve(system)
    cb = support_basis(nonzero, nonzero[0].nb, nonzero[0].nw, nonzero[0].color)
    offset = system.n_rows
    cols = []
    for col, im in zip(system.columns, images):
        new = dict(col)
        for i, v in cb.coords(im).items():
            new[offset + i] = v
        cols.append(new)
    stacked = LinearSystem(cols, dict(system.rhs), offset + len(cb), system.domain,
                           system.codomain, system.tag)
    return solve(stacked)


def format_fraction(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def dump_matrix(system: LinearSystem) -> str:
    """Triplets ``row col p/q``; the right-hand side is column ``ncols``."""
    lines = []
    n_cols = len(system.columns)
    for i, row in enumerate(system.rows()):
        for j in sorted(row):
            lines.append(f"{i} {j} {format_fraction(row[j])}")
        if system.rhs.get(i):
            lines.append(f"{i} {n_cols} {format_fraction(system.rhs[i])}")
    return "\n".join(lines) + ("\n" if lines else "")
