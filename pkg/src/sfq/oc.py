"""Generators of OC, the differential on them, and the Maurer-Cartan map
evaluated on partial MC elements with values in KGra."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, Iterator

from .graph import (Accumulator, GraphVector, all_connected, relabel)
from .kgra import broom, compose, gamma_edge, gamma_ww, shuffles


class MissingEntry(KeyError):
    def __init__(self, corolla: Corolla):
        super().__init__(str(corolla))
        self.corolla = corolla

    def __str__(self) -> str:
        return f"no table entry for {self.corolla}"


class TableError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Corolla:
    """t^c_n (color 'c'), t^o_k (color 'o', n=0) or t^o_{n,k} (color 'o', n>=1)."""
    color: str
    n: int
    k: int

    def __post_init__(self):
        ok = (self.color == "c" and self.n >= 2 and self.k == 0) or \
             (self.color == "o" and ((self.n == 0 and self.k >= 2) or (self.n >= 1 and self.k >= 0)))
        if not ok:
            raise ValueError(f"no generator {self.color}:{self.n},{self.k}")

    @property
    def kind(self) -> str:
        if self.color == "c":
            return "closed"
        return "open" if self.n == 0 else "mixed"

    @property
    def degree(self) -> int:
        return 3 - 2 * self.n if self.color == "c" else 2 - 2 * self.n - self.k

    @property
    def key(self) -> tuple[int, int]:
        return self.n, self.k

    def __str__(self) -> str:
        if self.color == "c":
            return f"c:{self.n}"
        return f"o:{self.n},{self.k}"


def closed(n: int) -> Corolla:
    return Corolla("c", n, 0)


def mixed(n: int, k: int) -> Corolla:
    return Corolla("o", n, k)


def open_(k: int) -> Corolla:
    return Corolla("o", 0, k)


def _valid_o(r: int, j: int) -> bool:
    return (r == 0 and j >= 2) or (r >= 1 and j >= 0)


@dataclass(frozen=True)
class TreeTerm:
    """coeff * (perm, id)(outer o_{slot,color} inner)."""
    coeff: int
    outer: Corolla
    inner: Corolla
    slot: int
    color: str
    perm: tuple[int, ...]

    def involves(self, t: Corolla) -> bool:
        return self.outer == t or self.inner == t


def oc_differential(t: Corolla) -> list[TreeTerm]:
    terms: list[TreeTerm] = []
    n, k = t.n, t.k
    if t.color == "c":
        for p in range(2, n):
            for tau in shuffles(p, n - p):
                terms.append(TreeTerm(-1, closed(n - p + 1), closed(p), 1, "c", tau))
        return terms
    for p in range(2, n + 1):
        if _valid_o(n - p + 1, k):
            for tau in shuffles(p, n - p):
                terms.append(TreeTerm((-1) ** k, mixed(n - p + 1, k) if n - p + 1 else open_(k),
                                      closed(p), 1, "c", tau))
    for r in range(0, n + 1):
        for sig in shuffles(r, n - r):
            for p in range(0, k + 1):
                for q in range(p, k + 1):
                    a, b = k - q + p + 1, q - p
                    if not (_valid_o(r, a) and _valid_o(n - r, b)):
                        continue
                    sign = -((-1) ** (p + (k - q) * (q - p)))
                    terms.append(TreeTerm(sign, Corolla("o", r, a), Corolla("o", n - r, b),
                                          p + 1, "o", sig))
    return terms


def output_shape(t: Corolla) -> tuple[int, int, str]:
    return t.n, t.k, t.color


# values ------------------------------------------------------------------

def boundary_value(t: Corolla) -> GraphVector | None:
    """Fixed value of an SFQ on t, or None if t is not boundary-fixed."""
    if t.color == "c":
        return gamma_edge() if t.n == 2 else GraphVector.zero(t.n, 0, "c")
    if t.n == 0:
        return gamma_ww() if t.k == 2 else GraphVector.zero(0, t.k, "o")
    if t.n == 1:
        return broom(t.k) / factorial(t.k)
    return None


def kcut(nmax: int, kmax: int, n: int) -> int:
    """White cutoff for column n.

    Lower columns get two more whites per step so that every factor of an
    in-cutoff corolla is in-cutoff; below the top column at least one white is
    kept so that the (m, 1) equations of each column can be formed.
    """
    if n >= nmax:
        return kmax
    return max(kmax, 1) + 2 * (nmax - n)


@dataclass
class AlphaTable:
    """Partial MC element: stored values on t^o_{n,k}, n >= 1, inside the cutoff."""
    nmax: int
    kmax: int
    entries: dict[tuple[int, int], GraphVector] = field(default_factory=dict)

    @classmethod
    def boundary(cls, nmax: int, kmax: int) -> AlphaTable:
        tab = cls(nmax, kmax)
        for k in range(0, kcut(nmax, kmax, 1) + 1):
            tab.entries[(1, k)] = boundary_value(mixed(1, k))
        return tab

    def kcut(self, n: int) -> int:
        return kcut(self.nmax, self.kmax, n)

    def in_cutoff(self, n: int, k: int) -> bool:
        return 1 <= n <= self.nmax and 0 <= k <= self.kcut(n)

    def cutoff_corollas(self) -> list[Corolla]:
        return [mixed(n, k) for n in range(1, self.nmax + 1) for k in range(self.kcut(n) + 1)]

    def has(self, t: Corolla) -> bool:
        return t.color == "c" or t.n <= 1 or t.key in self.entries

    def value(self, t: Corolla) -> GraphVector:
        if t.color == "o" and t.n >= 1 and t.key in self.entries:
            return self.entries[t.key]
        b = boundary_value(t)
        if b is None:
            raise MissingEntry(t)
        return b

    def copy(self) -> AlphaTable:
        return AlphaTable(self.nmax, self.kmax, dict(self.entries))

    def with_entry(self, key: tuple[int, int], v: GraphVector) -> AlphaTable:
        out = self.copy()
        out.set(key, v)
        return out

    def set(self, key: tuple[int, int], v: GraphVector) -> None:
        n, k = key
        if not self.in_cutoff(n, k):
            raise TableError(f"entry o:{n},{k} outside cutoff ({self.nmax},{self.kmax})")
        if v and (v.nb, v.nw) != (n, k):
            raise TableError(f"entry o:{n},{k} has bi-arity {(v.nb, v.nw)}")
        self.entries[key] = v if v else GraphVector.zero(n, k, "o")

    def drop(self, key: tuple[int, int]) -> None:
        self.entries.pop(key, None)

    def problems(self) -> list[tuple[Corolla, str]]:
        """Shape and boundary violations of the stored entries."""
        out = []
        for (n, k), v in sorted(self.entries.items()):
            t = mixed(n, k)
            if not self.in_cutoff(n, k):
                out.append((t, "outside cutoff"))
            if v and v.edge_counts() != {2 * n + k - 2}:
                out.append((t, f"edge counts {sorted(v.edge_counts())} != {2 * n + k - 2}"))
            if not all_connected(v):
                out.append((t, "disconnected term"))
            if n == 1 and v != boundary_value(t):
                out.append((t, "boundary value differs from broom/k!"))
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlphaTable):
            return NotImplemented
        keys = set(self.entries) | set(other.entries)
        return (self.nmax, self.kmax) == (other.nmax, other.kmax) and all(
            self.entries.get(x, GraphVector.zero(*x)) == other.entries.get(x, GraphVector.zero(*x))
            for x in keys)


@dataclass
class GaugeVector:
    """Degree zero element supported on finitely many t^o_{n,k} with n >= 2."""
    entries: dict[tuple[int, int], GraphVector] = field(default_factory=dict)

    def __post_init__(self):
        for (n, k), v in self.entries.items():
            if n < 2:
                raise TableError(f"gauge vector must vanish on o:{n},{k}")
            if v and (v.nb, v.nw) != (n, k):
                raise TableError(f"gauge entry o:{n},{k} has bi-arity {(v.nb, v.nw)}")
            if v and v.edge_counts() != {2 * n + k - 1}:
                raise TableError(f"gauge entry o:{n},{k} needs {2 * n + k - 1} edges")
            if not all_connected(v):
                raise TableError(f"gauge entry o:{n},{k} has disconnected terms")

    @classmethod
    def single(cls, n: int, k: int, v: GraphVector) -> GaugeVector:
        return cls({(n, k): v})

    def value(self, t: Corolla) -> GraphVector:
        if t.color == "o" and t.n >= 2 and t.key in self.entries:
            return self.entries[t.key]
        return GraphVector.zero(t.n, t.k, t.color)

    def __bool__(self) -> bool:
        return any(bool(v) for v in self.entries.values())


# evaluation ----------------------------------------------------------------

Lookup = Callable[[Corolla], GraphVector]


def expand(t: Corolla, left: Lookup, right: Lookup,
           weight: Callable[[TreeTerm], int] | None = None,
           keep: Callable[[TreeTerm], bool] | None = None) -> GraphVector:
    """Sum over the terms of D(t) of coeff * (perm,id)(left(outer) o right(inner))."""
    n, k, color = output_shape(t)
    acc = Accumulator(n, k, color)
    wid = tuple(range(1, k + 1))
    for term in oc_differential(t):
        if keep is not None and not keep(term):
            continue
        a = left(term.outer)
        if not a:
            continue
        b = right(term.inner)
        if not b:
            continue
        c = term.coeff * (weight(term) if weight else 1)
        if not c:
            continue
        comp = compose(a, term.slot, b, term.color)
        acc.add_vector(relabel(comp, term.perm, wid), c)
    return acc.result()


def mc_evaluate(alpha: AlphaTable, t: Corolla, omit: Iterable[Corolla] = ()) -> GraphVector:
    """MC(alpha) at t; terms involving a corolla in ``omit`` are left out."""
    omit = frozenset(omit)
    keep = (lambda term: not (term.outer in omit or term.inner in omit)) if omit else None
    return expand(t, alpha.value, alpha.value, keep=keep)


def mc_linear_part(alpha: AlphaTable, t: Corolla, unknown: Corolla, x: GraphVector,
                   omit: Iterable[Corolla] = ()) -> GraphVector:
    """Terms of MC at t that are linear in the value at ``unknown``, with that value set to x."""
    omit = frozenset(omit)
    for term in oc_differential(t):
        if term.outer == unknown and term.inner == unknown:
            raise TableError(f"{unknown} occurs twice in a term of D({t})")

    def left(c: Corolla) -> GraphVector:
        return x if c == unknown else alpha.value(c)

    n, k, color = output_shape(t)
    acc = Accumulator(n, k, color)
    def skip(term: TreeTerm) -> bool:
        return term.outer in omit or term.inner in omit

    acc.add_vector(expand(t, left, alpha.value, keep=lambda term: term.outer == unknown and not skip(term)))
    acc.add_vector(expand(t, alpha.value, left, keep=lambda term: term.inner == unknown and not skip(term)))
    return acc.result()


def bracket(xi: Lookup, beta: Lookup, t: Corolla) -> GraphVector:
    """[xi, beta](t) for a degree zero xi and a degree one beta."""
    n, k, color = output_shape(t)
    acc = Accumulator(n, k, color)
    acc.add_vector(expand(t, xi, beta), -1)
    acc.add_vector(expand(t, beta, xi, weight=lambda term: -1 if (term.outer.degree - 1) % 2 else 1))
    return acc.result()


def gauge_apply(xi: GaugeVector, alpha: AlphaTable) -> AlphaTable:
    """exp(ad xi) alpha on the stored entries of ``alpha``."""
    if not isinstance(xi, GaugeVector):
        raise TableError("gauge_apply needs a GaugeVector")
    out = alpha.copy()
    if not xi:
        return out
    targets = [mixed(n, k) for (n, k) in sorted(alpha.entries) if n >= 2]
    prev: Lookup = alpha.value
    j = 0
    while True:
        j += 1
        cur: dict[Corolla, GraphVector] = {}
        for t in targets:
            v = bracket(xi.value, prev, t)
            if v:
                cur[t] = v / j
        if not cur:
            break
        for t, v in cur.items():
            out.entries[t.key] = out.entries[t.key] + v

        def prev(c: Corolla, _cur=cur, _targets=frozenset(targets)) -> GraphVector:
            if c in _cur:
                return _cur[c]
            if c.color == "o" and c.n >= 2 and c not in _targets:
                raise MissingEntry(c)
            return GraphVector.zero(c.n, c.k, c.color)
    return out


# verification ----------------------------------------------------------------

PASS, FAIL, UNCHECKED = "PASS", "FAIL", "UNCHECKED"


@dataclass(frozen=True)
class Verdict:
    corolla: Corolla
    check: str
    status: str
    detail: str = ""


def verify_corollas(alpha: AlphaTable) -> list[Corolla]:
    top_k = alpha.kcut(1) + 1
    out = [closed(n) for n in range(2, alpha.nmax + 2)]
    out += [open_(k) for k in range(2, top_k + 1)]
    out += [mixed(n, k) for n in range(1, alpha.nmax + 2) for k in range(0, top_k + 1)]
    return out


def mc_verify(alpha: AlphaTable, corollas: Iterable[Corolla] | None = None) -> list[Verdict]:
    """Exact MC check on every corolla whose expansion only uses available values,
    plus shape and boundary checks of the stored entries."""
    report = [Verdict(t, "table", FAIL, why) for t, why in alpha.problems()]
    for t in (verify_corollas(alpha) if corollas is None else corollas):
        try:
            v = mc_evaluate(alpha, t)
        except MissingEntry as exc:
            report.append(Verdict(t, "mc", UNCHECKED, f"needs {exc.corolla}"))
            continue
        if v:
            report.append(Verdict(t, "mc", FAIL, f"{len(v)} nonzero terms"))
        else:
            report.append(Verdict(t, "mc", PASS))
    return report


def report_ok(report: Iterable[Verdict]) -> bool:
    return all(v.status != FAIL for v in report)


def iter_terms_with(t: Corolla, c: Corolla) -> Iterator[TreeTerm]:
    return (term for term in oc_differential(t) if term.involves(c))
