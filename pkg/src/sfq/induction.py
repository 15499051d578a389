"""Column-by-column construction of a rational MC element up to a cutoff.

Column 2 is solved from the Hochschild equations with the projection Pi set
to zero.  Each later column m goes through three stages: removing pikes from
the purely black entry, fixing that entry by the directed graph complex
equation, and rationalizing the entries (m, k) for k >= 1.  When a column
entry is already present (a seed table) the stages reach the new value by
gauge moves, so the old and new tables are gauge equivalent; otherwise the
value is solved for directly.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .expansions import al_at_m_rhs, dfgc_rhs, level_2_rhs
from .graph import GraphVector, count_pikes, pike_decomposition
from .homology import hoch_differential, pi_projection, pike_differential, pike_homotopy
from .kgra import dfgc_differential
from .linalg import (Inconsistent, LinearSystem, VectorBasis, assemble, enumerate_basis,
                     invariant_basis, solve, solve_with_constraint)
from .oc import (AlphaTable, Corolla, GaugeVector, TableError, Verdict, gauge_apply,
                 mc_evaluate, mc_linear_part, mc_verify, mixed)

log = logging.getLogger(__name__)


class InductionError(RuntimeError):
    pass


@dataclass(frozen=True)
class LogEntry:
    stage: int
    tag: str
    action: str
    rows: int = 0
    cols: int = 0
    edges: tuple[int, ...] = ()
    detail: str = ""


@dataclass
class StageState:
    table: AlphaTable
    stage: int = 1
    log: list[LogEntry] = field(default_factory=list)
    betas: dict = field(default_factory=dict, repr=False)

    def note(self, tag: str, action: str, system: LinearSystem | None = None,
             value: GraphVector | None = None, detail: str = "") -> None:
        rows, cols = system.shape if system is not None else (0, 0)
        edges = tuple(sorted(value.edge_counts())) if value else ()
        self.log.append(LogEntry(self.stage, tag, action, rows, cols, edges, detail))
        log.info("stage %d %s %s %dx%d %s", self.stage, tag, action, rows, cols, detail)


# bases -----------------------------------------------------------------------

def entry_basis(n: int, k: int, extra: Iterable[str] = (), e: int | None = None) -> VectorBasis:
    """S_n-invariant connected vectors of bi-arity (n, k) with 2n+k-2 edges."""
    e = 2 * n + k - 2 if e is None else e
    return invariant_basis(enumerate_basis(n, k, e, ("connected",) + tuple(extra), "o"))


def pi_basis(n: int, k: int, e: int | None = None) -> VectorBasis:
    """Invariant basis of the image of Pi: white-univalent, antisymmetric in whites."""
    e = 2 * n + k - 2 if e is None else e
    return invariant_basis(enumerate_basis(n, k, e, ("connected", "white_univalent"), "o"), "alt")


def gauge_basis(n: int, k: int) -> VectorBasis:
    return entry_basis(n, k, e=2 * n + k - 1)


# generic solver ----------------------------------------------------------------

def solve_entry(alpha: AlphaTable, unknown: Corolla, equation: Corolla, domain: VectorBasis,
                project: Callable[[GraphVector], GraphVector] | None = None,
                constraint: Callable[[GraphVector], GraphVector] | None = None,
                omit: Iterable[Corolla] = (), base: GraphVector | None = None,
                tag: str = "") -> tuple[GraphVector, LinearSystem]:
    """Find x in ``domain`` with project(MC(alpha')(equation)) = 0, where alpha'
    takes the value base + x at ``unknown`` and terms through ``omit`` are dropped."""
    proj = project or (lambda v: v)
    omit = frozenset(omit)
    work = alpha.copy()
    if base is None:
        work.drop(unknown.key)
        const = mc_evaluate(work, equation, omit=omit | {unknown})
    else:
        work.set(unknown.key, base)
        const = mc_evaluate(work, equation, omit=omit)
    system = assemble(lambda x: proj(mc_linear_part(work, equation, unknown, x, omit)),
                      domain, None, -proj(const), tag)
    x = solve_with_constraint(system, constraint) if constraint else solve(system)
    return x, system


def _solve_hoch(rhs: GraphVector, domain: VectorBasis, tag: str, with_pi: bool = True):
    system = assemble(hoch_differential, domain, None, rhs, tag)
    x = solve_with_constraint(system, pi_projection) if with_pi else solve(system)
    return x, system


# column 2 ----------------------------------------------------------------------

def solve_beta2(k: int) -> tuple[GraphVector, LinearSystem]:
    """beta_{2,k-1} with d^Hoch beta = level_2_rhs(k) and Pi(beta) = 0."""
    return _solve_hoch(level_2_rhs(k), entry_basis(2, k - 1), f"hoch-2@k={k}")


def stage_alpha2(nmax: int, kmax: int, seed: AlphaTable | None = None) -> StageState:
    table = seed.copy() if seed is not None else AlphaTable.boundary(nmax, kmax)
    state = StageState(table, 2)
    for k in range(1, table.kcut(2) + 2):
        beta, system = solve_beta2(k)
        tag = f"hoch-2@k={k}"
        state.note(tag, "solve", system, beta)
        key = (2, k - 1)
        if key in table.entries:
            diff = table.entries[key] - beta
            if pi_projection(diff):
                raise InductionError(f"{tag}: seed entry o:2,{k - 1} has Pi(alpha - beta) != 0")
            if diff:
                xi, sys2 = _solve_hoch(diff, gauge_basis(2, k - 2), f"xi@o:2,{k - 2}", False) \
                    if k >= 2 else (None, None)
                if xi is None:
                    raise InductionError(f"{tag}: seed differs by a non-exact cocycle")
                state.table = table = gauge_apply(GaugeVector.single(2, k - 2, xi), table)
                state.note(f"xi@o:2,{k - 2}", "gauge", sys2, xi)
        else:
            table.set(key, beta)
            state.note(tag, "store", None, beta)
        if table.entries[key] != beta:
            raise InductionError(f"{tag}: entry differs from beta after the gauge move")
        if mc_evaluate(table, mixed(2, k)):
            raise InductionError(f"{tag}: MC at o:2,{k} does not vanish")
    return state


# column m >= 3 -----------------------------------------------------------------

def kill_pikes_gauge(entry: GraphVector) -> GraphVector:
    """chi = -sum_r (1/r) d*(entry_r) over the r-pike parts, r >= 1."""
    acc = GraphVector.zero(entry.nb - 1, 1, "o")
    for r, part in pike_decomposition(entry).items():
        if r:
            acc = acc - pike_homotopy(part) * Fraction(1, r)
    return acc


def stage_kill_pikes(state: StageState, m: int) -> StageState:
    state.stage = m
    key = (m, 0)
    tag = f"kill-pikes@m={m}"
    cur = state.table.entries.get(key)
    if cur is None or not any(count_pikes(g) for g, _ in cur.graphs()):
        state.note(tag, "identity")
        return state
    chi = kill_pikes_gauge(cur)
    if hoch_differential(chi):
        raise InductionError(f"{tag}: d^Hoch chi != 0")
    state.table = gauge_apply(GaugeVector.single(m - 1, 1, chi), state.table)
    state.note(f"chi@o:{m - 1},1", "gauge", None, chi)
    if any(count_pikes(g) for g, _ in state.table.entries[key].graphs()):
        raise InductionError(f"{tag}: pikes survive the gauge move")
    return state


def solve_beta(alpha: AlphaTable, m: int, k: int) -> tuple[GraphVector, LinearSystem]:
    """beta_{m,k}: d^Hoch beta = rhs from MC at t_{m,k+1}, with Pi(beta) = 0."""
    return _solve_hoch(al_at_m_rhs(alpha, m, k + 1), entry_basis(m, k), f"beta-m-k@m={m},k={k}")


def solve_dfgc_entry(alpha: AlphaTable, m: int, beta_m1: GraphVector):
    rhs = dfgc_rhs(alpha, m, beta_m1)
    basis = invariant_basis(enumerate_basis(m, 0, 2 * m - 2, ("connected", "no_pikes"), "c"))
    system = assemble(lambda x: dfgc_differential(x, check=False), basis, None, rhs, f"dfgc@m={m}")
    return solve(system).with_color("o"), system


def stage_dfgc(state: StageState, m: int) -> StageState:
    state.stage = m
    table = state.table
    beta, system = solve_beta(table, m, 1)
    state.note(f"beta-m-k@m={m},k=1", "solve", system, beta)
    state.betas[(m, 1)] = beta
    work = table.copy()
    for key in [x for x in work.entries if x[0] >= m]:
        work.drop(key)
    new, system = solve_dfgc_entry(work, m, beta)
    state.note(f"dfgc@m={m}", "solve", system, new)
    old = table.entries.get((m, 0))
    if old is not None:
        diff = old - new
        if diff:
            cocycle = not dfgc_differential(diff.with_color("c"), check=False)
            state.note(f"dfgc@m={m}", "cocycle", None, diff,
                       "old - new is a cocycle" if cocycle else "old - new is NOT a cocycle")
            # the graph complex action is not transported to the higher entries;
            # they are rebuilt from the new value instead
            for key in [x for x in table.entries if x[0] > m or (x[0] == m and x[1] >= 1)]:
                table.drop(key)
            state.note(f"dfgc@m={m}", "drop", None, None, "higher entries rebuilt")
    table.set((m, 0), new)
    return state


def stage_rationalize_column(state: StageState, m: int, k: int) -> StageState:
    state.stage = m
    table = state.table
    tag = f"m={m},k={k}"
    beta = state.betas.pop((m, k), None)
    if beta is None:
        beta, system = solve_beta(table, m, k)
        state.note(f"beta-m-k@{tag}", "solve", system, beta)
    cur = table.entries.get((m, k))
    gamma = None
    if cur is not None:
        gamma = pi_projection(cur - beta)
        exact = cur - beta - gamma
        if exact:
            if k < 2:
                raise InductionError(f"{tag}: entry is not beta + cocycle")
            xi, sys2 = _solve_hoch(exact, gauge_basis(m, k - 1), f"xi@o:{m},{k - 1}", False)
            # [xi, alpha](t_{m,k}) = -d^Hoch xi
            state.table = table = gauge_apply(GaugeVector.single(m, k - 1, xi), table)
            state.note(f"xi@o:{m},{k - 1}", "gauge", sys2, xi)
        if table.entries[(m, k)] != beta + gamma:
            raise InductionError(f"{tag}: gauge by xi did not reach beta + gamma")
    omit = [mixed(m + 1, k - 2)] if k >= 2 else []
    gt, system = solve_entry(table, mixed(m, k), mixed(m + 1, k - 1), pi_basis(m, k),
                             project=pi_projection, omit=omit, base=beta,
                             tag=f"pi-gamma@{tag}")
    state.note(f"pi-gamma@{tag}", "solve", system, gt)
    if cur is None:
        table.set((m, k), beta + gt)
        state.note(f"entry@{tag}", "store", None, beta + gt)
        return state
    x = gt - gamma
    if x:
        if pike_differential(x, check=False):
            raise InductionError(f"{tag}: d(gamma~ - gamma) != 0")
        kappa = GraphVector.zero(m - 1, k + 1, "o")
        for r, part in pike_decomposition(x).items():
            kappa = kappa + pike_homotopy(part) * Fraction(1, k + r)
        state.table = table = gauge_apply(GaugeVector.single(m - 1, k + 1, kappa), table)
        state.note(f"psi@o:{m - 1},{k + 1}", "gauge", None, kappa)
    if table.entries[(m, k)] != beta + gt:
        raise InductionError(f"{tag}: gauge by psi did not reach beta + gamma~")
    return state


# driver ------------------------------------------------------------------------

@dataclass
class InductionResult:
    table: AlphaTable
    log: list[LogEntry]
    report: list[Verdict]


def _snapshot(table: AlphaTable, below: int) -> dict:
    return {k: v for k, v in table.entries.items() if k[0] < below}


def run_induction(nmax: int, kmax: int, seed: AlphaTable | None = None,
                  verify: bool = True) -> InductionResult:
    if nmax < 2 or kmax < 0:
        raise ValueError("need nmax >= 2 and kmax >= 0")
    if seed is not None:
        if (seed.nmax, seed.kmax) != (nmax, kmax):
            raise TableError("seed table has a different cutoff")
        bad = seed.problems()
        if bad:
            raise TableError(f"seed table: {bad[0][0]} {bad[0][1]}")
    state = stage_alpha2(nmax, kmax, seed)
    for m in range(3, nmax + 1):
        before = _snapshot(state.table, m)
        stage_kill_pikes(state, m)
        stage_dfgc(state, m)
        for k in range(1, state.table.kcut(m) + 1):
            stage_rationalize_column(state, m, k)
        if _snapshot(state.table, m) != before:
            raise InductionError(f"stage {m} changed entries of lower columns")
    report = mc_verify(state.table) if verify else []
    return InductionResult(state.table, state.log, report)


__all__ = [
    "Inconsistent", "InductionError", "InductionResult", "LogEntry", "StageState",
    "entry_basis", "gauge_basis", "kill_pikes_gauge", "pi_basis", "run_induction",
    "solve_beta", "solve_beta2", "solve_dfgc_entry", "solve_entry", "stage_alpha2",
    "stage_dfgc", "stage_kill_pikes", "stage_rationalize_column",
]
