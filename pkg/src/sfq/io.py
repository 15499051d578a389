"""Text formats for graph vectors, alpha tables and stage reports.

Graph files hold one JSON record per line::

    {"nb": 2, "nw": 1, "edges": [["b1", "w1"], ["b2", "b1"]], "coeff": "-1/2"}

Blank lines and lines starting with ``#`` are skipped.  A file that describes
the zero vector is written as the single line ``ZERO nb nw colour``.

Alpha tables are plain text::

    sfq-table 1
    cutoff 2 3
    entry o:2,2 5
      -1/12 b1>w1 b1>w2 b2>b1
      ...

Rationals are always written as ``p/q`` in lowest terms with an explicit sign.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Iterable, TextIO

from .graph import BLACK, WHITE, GraphError, GraphVector, Vertex, vname
from .induction import LogEntry
from .oc import AlphaTable, TableError, Verdict, mixed

TABLE_MAGIC = "sfq-table 1"
_RATIONAL = re.compile(r"[+-]?\d+(/\d+)?")
_VERTEX = re.compile(r"([bw])([1-9]\d*)")


class ParseError(ValueError):
    """Malformed input; carries the line number and the offending token."""

    def __init__(self, line: int, token: str, why: str):
        super().__init__(f"line {line}: {why}: {token!r}")
        self.line, self.token, self.why = line, token, why


# rationals ----------------------------------------------------------------

def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return f"{'-' if q < 0 else '+'}{abs(q.numerator)}/{q.denominator}"


def parse_rational(s: str, line: int = 0) -> Fraction:
    if not isinstance(s, str) or not _RATIONAL.fullmatch(s):
        raise ParseError(line, str(s), "not a rational p/q")
    try:
        return Fraction(s)
    except ZeroDivisionError:
        raise ParseError(line, s, "zero denominator") from None


# vertices and edges ---------------------------------------------------------

def parse_vertex(tok: str, line: int = 0) -> Vertex:
    m = _VERTEX.fullmatch(tok) if isinstance(tok, str) else None
    if not m:
        raise ParseError(line, str(tok), "bad vertex tag (expected b<i> or w<j>)")
    return (BLACK if m.group(1) == "b" else WHITE, int(m.group(2)))


def _edge_text(edges) -> str:
    return " ".join(f"{vname(t)}>{vname(h)}" for t, h in edges)


def _parse_edge_text(tok: str, line: int):
    parts = tok.split(">")
    if len(parts) != 2:
        raise ParseError(line, tok, "bad edge (expected tail>head)")
    return parse_vertex(parts[0], line), parse_vertex(parts[1], line)


# graph files ----------------------------------------------------------------

def graph_record(nb: int, nw: int, edges, coeff: Fraction, color: str | None = None) -> str:
    rec = {"nb": nb, "nw": nw, "edges": [[vname(t), vname(h)] for t, h in edges],
           "coeff": format_rational(coeff)}
    if color is not None:
        rec["color"] = color
    return json.dumps(rec, separators=(", ", ": "))


def format_vector(v: GraphVector) -> str:
    """Canonical text of a vector: one record per term, or ``ZERO``."""
    if not v:
        return f"ZERO {v.nb} {v.nw} {v.color}\n"
    color = v.color if (v.nw == 0 and v.color == "o") else None
    return "".join(graph_record(v.nb, v.nw, key, c, color) + "\n" for key, c in v.items())


def _record(obj, line: int) -> GraphVector:
    if not isinstance(obj, dict):
        raise ParseError(line, json.dumps(obj), "record must be an object")
    extra = set(obj) - {"nb", "nw", "edges", "coeff", "color"}
    if extra:
        raise ParseError(line, sorted(extra)[0], "unknown field")
    try:
        nb, nw, edges = obj["nb"], obj["nw"], obj["edges"]
    except KeyError as exc:
        raise ParseError(line, exc.args[0], "missing field") from None
    for name, val in (("nb", nb), ("nw", nw)):
        if not isinstance(val, int) or isinstance(val, bool) or val < 0:
            raise ParseError(line, str(val), f"{name} must be a non-negative integer")
    if not isinstance(edges, list):
        raise ParseError(line, str(edges), "edges must be a list")
    parsed = []
    for e in edges:
        if not isinstance(e, list) or len(e) != 2:
            raise ParseError(line, json.dumps(e), "edge must be a pair")
        parsed.append((parse_vertex(e[0], line), parse_vertex(e[1], line)))
    coeff = parse_rational(obj.get("coeff", "+1/1"), line)
    color = obj.get("color")
    if color not in (None, "c", "o"):
        raise ParseError(line, str(color), "colour must be c or o")
    try:
        return GraphVector.from_raw(nb, nw, parsed, coeff, color)
    except GraphError as exc:
        raise ParseError(line, json.dumps(edges), str(exc)) from None


def parse_vector(text: str) -> GraphVector:
    """Sum of all records in a graph file."""
    total: GraphVector | None = None
    zero_line = 0
    for no, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        if s.split()[0] == "ZERO":
            if total is not None:
                raise ParseError(no, "ZERO", "ZERO must be the only record")
            zero_line = no
            toks = s.split()
            if len(toks) != 4 or not toks[1].isdigit() or not toks[2].isdigit() \
                    or toks[3] not in ("c", "o"):
                raise ParseError(no, s, "expected ZERO nb nw colour")
            try:
                total = GraphVector.zero(int(toks[1]), int(toks[2]), toks[3])
            except GraphError as exc:
                raise ParseError(no, s, str(exc)) from None
            continue
        try:
            obj = json.loads(s)
        except json.JSONDecodeError:
            raise ParseError(no, s.split()[0], "not a JSON record") from None
        v = _record(obj, no)
        if zero_line:
            raise ParseError(no, s.split()[0], "ZERO must be the only record")
        if total is None:
            total = GraphVector.zero(v.nb, v.nw, v.color)
        elif (total.nb, total.nw, total.color) != (v.nb, v.nw, v.color):
            raise ParseError(no, f"[{v.nb},{v.nw}]", "records of different bi-arity")
        total = total + v if v else total
    if total is None:
        raise ParseError(0, "", "empty graph file")
    return total


def read_vector(path) -> GraphVector:
    with open(path, encoding="utf-8") as fh:
        return parse_vector(fh.read())


# alpha tables ----------------------------------------------------------------

def format_table(table: AlphaTable) -> str:
    out = [TABLE_MAGIC, f"cutoff {table.nmax} {table.kmax}"]
    for (n, k), v in sorted(table.entries.items()):
        out.append(f"entry {mixed(n, k)} {len(v)}")
        for key, c in v.items():
            out.append(f"  {format_rational(c)} {_edge_text(key)}".rstrip())
    return "\n".join(out) + "\n"


def _ints(tok: str, pat: str, line: int) -> tuple[int, ...]:
    m = re.fullmatch(pat, tok)
    if not m:
        raise ParseError(line, tok, "bad field")
    return tuple(int(x) for x in m.groups())


def parse_table(text: str) -> AlphaTable:
    lines = text.splitlines()
    if not lines or lines[0].strip() != TABLE_MAGIC:
        raise ParseError(1, lines[0] if lines else "", "missing table header")
    if len(lines) < 2 or not lines[1].startswith("cutoff "):
        raise ParseError(2, lines[1] if len(lines) > 1 else "", "missing cutoff line")
    parts = lines[1].split()
    if len(parts) != 3:
        raise ParseError(2, lines[1], "cutoff needs two integers")
    nmax, kmax = (_ints(p, r"(\d+)", 2)[0] for p in parts[1:])
    table = AlphaTable(nmax, kmax)
    no = 2
    while no < len(lines):
        head = lines[no]
        no += 1
        if not head.strip():
            continue
        toks = head.split()
        if toks[0] != "entry" or len(toks) != 3:
            raise ParseError(no, toks[0], "expected an entry line")
        n, k = _ints(toks[1], r"o:(\d+),(\d+)", no)
        count = _ints(toks[2], r"(\d+)", no)[0]
        if (n, k) in table.entries:
            raise ParseError(no, toks[1], "duplicate entry")
        terms: dict = {}
        for _ in range(count):
            if no >= len(lines) or not lines[no].startswith("  "):
                raise ParseError(no + 1, lines[no] if no < len(lines) else "<eof>", "expected a term line")
            ttoks = lines[no].split()
            no += 1
            c = parse_rational(ttoks[0], no)
            edges = [_parse_edge_text(t, no) for t in ttoks[1:]]
            try:
                g = GraphVector.from_raw(n, k, edges, c, "o")
            except GraphError as exc:
                raise ParseError(no, " ".join(ttoks[1:]), str(exc)) from None
            if not g:
                raise ParseError(no, " ".join(ttoks[1:]), "repeated edge")
            (key, val), = g.items()
            if key in terms:
                raise ParseError(no, " ".join(ttoks[1:]), "repeated graph")
            terms[key] = val
        try:
            table.set((n, k), GraphVector(n, k, terms, "o"))
        except TableError as exc:
            raise ParseError(no, toks[1], str(exc)) from None
    return table


def read_table(path) -> AlphaTable:
    with open(path, encoding="utf-8") as fh:
        return parse_table(fh.read())


def write_text(path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# reports ---------------------------------------------------------------------

LOG_HEADER = ("stage", "tag", "action", "rows", "cols", "edges", "detail")
VERDICT_HEADER = ("corolla", "check", "status", "detail")


def _tsv(rows: Iterable[Iterable]) -> str:
    return "".join("\t".join(str(x) for x in r) + "\n" for r in rows)


def format_log(log: Iterable[LogEntry]) -> str:
    rows = [LOG_HEADER]
    for e in log:
        rows.append((e.stage, e.tag, e.action, e.rows, e.cols,
                     ",".join(map(str, e.edges)) or "-", e.detail or "-"))
    return _tsv(rows)


def format_verdicts(report: Iterable[Verdict]) -> str:
    rows = [VERDICT_HEADER]
    rows += [(v.corolla, v.check, v.status, v.detail or "-") for v in report]
    return _tsv(rows)


def parse_tsv(text: str) -> list[list[str]]:
    return [line.split("\t") for line in text.splitlines()]


def write_tsv(fh: TextIO, rows: Iterable[Iterable]) -> None:
    fh.write(_tsv(rows))
