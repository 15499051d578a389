"""Acceptance suite.  Each test carries a ``criterion`` marker; conftest.py
prints one PASS/FAIL line per criterion at the end of the run."""
from __future__ import annotations

import random
import time
from fractions import Fraction
from pathlib import Path

import pytest

from sfq import cli
from sfq.expansions import (five_block_expansion, four_line_expansion, level_2_rhs,
                            mc_mixed_expansion)
from sfq.graph import Accumulator, GraphVector, count_pikes, is_connected
from sfq.homology import (homotopy_identity_check, homotopy_rhs, hoch_differential, pi_projection,
                          pike_differential, pike_homotopy, symmetrize_black)
from sfq.induction import entry_basis, run_induction, stage_alpha2
from sfq.io import read_table
from sfq.kgra import broom, edges_between, gamma_edge
from sfq.linalg import (Inconsistent, assemble, enumerate_basis, invariant_basis, solve)
from sfq.oc import PASS, FAIL, AlphaTable, boundary_value, mc_evaluate, mc_verify, mixed
from sfq.weights import estimate_weight

from helpers import B, W, single

crit = pytest.mark.criterion


# corpora -------------------------------------------------------------------------

def exhaustive(nmax=2, kmax=3, emax=4, filters=()):
    for n in range(nmax + 1):
        for k in range(kmax + 1):
            if n == 0 and k < 2:
                continue
            for e in range(min(emax, len(edges_between(n, k))) + 1):
                yield from enumerate_basis(n, k, e, filters, "o").vectors()


def exhaustive_invariant(nmax, kmax, emax):
    for n in range(1, nmax + 1):
        for k in range(kmax + 1):
            for e in range(min(emax, len(edges_between(n, k))) + 1):
                basis = enumerate_basis(n, k, e, ("white_univalent",), "o")
                yield from invariant_basis(basis, "alt").vectors()


def random_vector(rng: random.Random, n: int, k: int, e: int, terms: int = 3) -> GraphVector:
    pool = edges_between(n, k)
    acc = Accumulator(n, k, "o")
    for _ in range(terms):
        es = rng.sample(pool, min(e, len(pool)))
        acc.add_raw(es, Fraction(rng.randint(-6, 6), rng.randint(1, 4)))
    return acc.result()


def random_corpus(count=200, seed=20240611):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n, k = rng.randint(0, 3), rng.randint(0, 4)
        if n == 0 and k < 2:
            continue
        e = rng.randint(0, min(5, len(edges_between(n, k))))
        out.append(random_vector(rng, n, k, e, rng.randint(1, 4)))
    return out


CORPUS = list(exhaustive()) + random_corpus()


# criterion 1 ------------------------------------------------------------------------

@crit(1)
def test_operator_laws_square_to_zero():
    t0 = time.perf_counter()
    for v in CORPUS:
        assert not hoch_differential(hoch_differential(v))
    invariant = list(exhaustive_invariant(2, 3, 4))
    invariant += [symmetrize_black(pi_projection(v)) for v in random_corpus(200, 7) if v.nb >= 1]
    checked = 0
    for v in invariant:
        if not v or v.nw == 0:
            continue
        d = pike_differential(v)
        if d.nw:
            assert not pike_differential(d)
            checked += 1
    assert checked >= 30
    assert time.perf_counter() - t0 < 60


# criterion 2 ------------------------------------------------------------------------

@crit(2)
def test_projection_laws():
    for v in CORPUS:
        p = pi_projection(v)
        assert pi_projection(p) == p
        assert not hoch_differential(p)
        assert not pi_projection(hoch_differential(v))


def closed_samples(count=50, seed=99):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n, k = rng.randint(1, 2), rng.randint(1, 3)
        hi = min(4, len(edges_between(n, k - 1)))
        e = rng.randint(min(k, hi), hi)
        y = random_vector(rng, n, k - 1, e)
        w = pi_projection(random_vector(rng, n, k, e))
        c = hoch_differential(y) + w
        if c:
            out.append((c, e))
    return out


@crit(2)
def test_constructive_image_membership():
    inconsistent = 0
    for c, e in closed_samples():
        assert not hoch_differential(c)
        domain = enumerate_basis(c.nb, c.nw - 1, e, (), "o")
        target = c - pi_projection(c)
        x = solve(assemble(hoch_differential, domain, None, target))
        assert hoch_differential(x) == target
        if pi_projection(c):
            with pytest.raises(Inconsistent):
                solve(assemble(hoch_differential, domain, None, pi_projection(c)))
            inconsistent += 1
    assert inconsistent >= 10


# criterion 3 ------------------------------------------------------------------------

@crit(3)
def test_homotopy_identity_on_invariant_bases():
    count = 0
    for v in exhaustive_invariant(3, 3, 5):
        assert homotopy_identity_check(v)
        count += 1
    assert count > 50


@crit(3)
def test_homotopy_identity_on_edge():
    g = gamma_edge().with_color("o")
    lhs = pike_differential(pike_homotopy(g)) + pike_homotopy(pike_differential(g))
    assert lhs == g == homotopy_rhs(g)


# criterion 4 ------------------------------------------------------------------------

@pytest.fixture(scope="module")
def table31():
    return run_induction(3, 1).table


def combo(basis, rng: random.Random):
    out = GraphVector.zero(basis.nb, basis.nw, basis.color)
    for v in basis.vectors():
        out = out + v * Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return out


@crit(4)
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_level_two_expansion(k):
    rng = random.Random(k)
    tab = AlphaTable.boundary(2, 3)
    for j in range(tab.kcut(2) + 1):
        tab.set((2, j), GraphVector.zero(2, j, "o"))
    x = combo(entry_basis(2, k - 1), rng)
    tab.set((2, k - 1), x)
    assert mc_evaluate(tab, mixed(2, k)) == hoch_differential(x) - level_2_rhs(k)


@crit(4)
@pytest.mark.parametrize("q", [1, 2, 3])
def test_five_block_expansion(table31, q):
    assert five_block_expansion(table31, q) == mc_evaluate(table31, mixed(3, q - 1))


@crit(4)
@pytest.mark.parametrize("trial", range(3))
def test_four_line_expansion(table31, trial):
    rng = random.Random(trial)
    tab = table31.copy()
    if trial:
        tab.set((3, 0), combo(entry_basis(3, 0), rng))
        tab.set((3, 1), combo(entry_basis(3, 1), rng))
    assert four_line_expansion(tab, 3) == mc_evaluate(tab, mixed(4, 0))


@crit(4)
@pytest.mark.parametrize("k", [1, 2])
@pytest.mark.parametrize("trial", range(2))
def test_mixed_expansion(table31, k, trial):
    tab = table31.copy()
    if trial:
        tab.set((3, k - 1), combo(entry_basis(3, k - 1), random.Random(k)))
    assert mc_mixed_expansion(tab, 3, k) == mc_evaluate(tab, mixed(3, k))


# criteria 5 and 8: the command line runs --------------------------------------------------

def cli_run(out: Path, *args: str) -> tuple[int, float]:
    t0 = time.perf_counter()
    code = cli.main(["run", *args, "--out", str(out)])
    return code, time.perf_counter() - t0


@pytest.fixture(scope="module")
def run23(tmp_path_factory):
    out = tmp_path_factory.mktemp("run23")
    code, secs = cli_run(out, "--nmax", "2", "--kmax", "3")
    return out, code, secs


@pytest.fixture(scope="module")
def run31(tmp_path_factory):
    out = tmp_path_factory.mktemp("run31")
    code, secs = cli_run(out, "--nmax", "3", "--kmax", "1")
    return out, code, secs


def rational(v: GraphVector) -> bool:
    return all(isinstance(c, Fraction) for _, c in v.items())


@crit(5)
def test_run_2_3(run23):
    out, code, secs = run23
    assert code == cli.EXIT_OK
    assert secs < 300
    table = read_table(out / "table.txt")
    for k in range(4):
        v = table.entries[(2, k)]
        assert rational(v)
        assert not pi_projection(v)
    report = mc_verify(table)
    assert not [r for r in report if r.status == FAIL]
    passed = {r.corolla for r in report if r.status == PASS and r.check == "mc"}
    assert {mixed(2, k) for k in range(4)} <= passed


@crit(5)
def test_run_3_1(run31):
    out, code, secs = run31
    assert code == cli.EXIT_OK
    assert secs < 1800
    table = read_table(out / "table.txt")
    v30, v31 = table.entries[(3, 0)], table.entries[(3, 1)]
    assert v30 and v31
    assert rational(v30) and rational(v31)
    assert all(count_pikes(g) == 0 for g, _ in v30.graphs())
    assert not [r for r in mc_verify(table) if r.status == FAIL]


@crit(8)
def test_repeated_runs_are_byte_identical(tmp_path):
    args = ("--nmax", "2", "--kmax", "3", "--samples", "5000", "--seed", "11")
    a, b = tmp_path / "a", tmp_path / "b"
    assert cli_run(a, *args)[0] == cli.EXIT_OK
    assert cli_run(b, *args)[0] == cli.EXIT_OK
    names = sorted(p.name for p in a.iterdir())
    assert names == sorted(p.name for p in b.iterdir())
    assert {"table.txt", "report.tsv", "mc.tsv", "weights.tsv", "report.png"} <= set(names)
    for name in names:
        assert (a / name).read_bytes() == (b / name).read_bytes(), name


# criterion 6 ------------------------------------------------------------------------

@crit(6)
def test_boundary_conditions_in_emitted_tables(run23, run31):
    for out, _, _ in (run23, run31):
        table = read_table(out / "table.txt")
        for k in range(table.kcut(1) + 1):
            assert table.entries[(1, k)] == boundary_value(mixed(1, k))
            assert table.entries[(1, k)] == broom(k) * Fraction(1, _fact(k))
        assert not table.problems()


def _fact(k):
    out = 1
    for j in range(2, k + 1):
        out *= j
    return out


@crit(6)
def test_filtration_containment():
    lower = stage_alpha2(3, 1).table.entries
    final = run_induction(3, 1).table.entries
    for key, v in lower.items():
        assert key[0] <= 2
        assert final[key] == v
    assert {key for key in final if key[0] <= 2} == set(lower)


@crit(6)
def test_entries_are_rational(run31):
    table = read_table(run31[0] / "table.txt")
    assert all(rational(v) for v in table.entries.values())
    assert all(v.edge_counts() <= {2 * n + k - 2} for (n, k), v in table.entries.items())


# criterion 7 ------------------------------------------------------------------------

@crit(7)
@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_broom_weights(k):
    (g, _), = broom(k).graphs()
    t0 = time.perf_counter()
    est = estimate_weight(g, 1_000_000, seed=2024 + k)
    assert time.perf_counter() - t0 < 300
    exact = 1 / _fact(k)
    assert abs(est.mean - exact) <= 3 * est.stderr + 1e-12
    assert abs(est.mean - exact) <= 0.02 * exact


ZERO_GRAPHS = [
    # disconnected, right edge count
    single(4, 0, [(B(1), B(2)), (B(2), B(1)), (B(1), B(3)), (B(3), B(1)), (B(2), B(3)), (B(3), B(2))]),
    single(4, 1, [(B(1), B(2)), (B(2), B(1)), (B(1), B(3)), (B(3), B(1)), (B(2), B(3)), (B(3), B(2)),
                  (B(4), W(1))]),
    single(3, 2, [(B(1), B(2)), (B(2), B(1)), (B(1), W(1)), (B(1), W(2)), (B(2), W(1)), (B(2), W(2))]),
    # wrong edge count
    single(1, 2, [(B(1), W(1))]),
    single(2, 0, [(B(1), B(2))]),
    single(2, 1, [(B(1), W(1)), (B(1), B(2)), (B(2), B(1)), (B(2), W(1))]),
    single(1, 3, [(B(1), W(1))]),
]


@crit(7)
@pytest.mark.parametrize("idx", range(len(ZERO_GRAPHS)))
def test_structural_zero_weights(idx):
    v = ZERO_GRAPHS[idx]
    (g, _), = v.graphs()
    assert not is_connected(g) or len(g.edges) != 2 * g.nb + g.nw - 2
    est = estimate_weight(g, 1000, seed=1)
    assert est.mean == 0.0 and est.stderr == 0.0
