"""Monte Carlo estimates of configuration space weights of graphs.

The weight of a graph with n black and k white vertices is the integral of the
wedge of its edge angle forms over configurations of n points in the upper
half-plane and k ordered points on the real line, modulo z -> az + b.  The
quotient is replaced by a slice:

* k >= 2: q_1 = 0 and q_k = 1, interior q's ordered in (0, 1);
* k <= 1: p_1 = i.

Black points are drawn from a mixture of heavy-tailed radial laws centred at
the fixed points and at the black points drawn before them, which keeps the
ratio integrand/density bounded near collisions and at infinity.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .graph import BLACK, Graph, is_connected

CHUNK = 1 << 15
# radial scales are drawn log-uniformly from [SCALE_LO, SCALE_HI]
SCALE_LO, SCALE_HI = 1e-3, 10.0
# pins the overall orientation so that brooms come out positive
ORIENTATION = 1


@dataclass(frozen=True)
class ConfigurationSample:
    p: np.ndarray
    q: np.ndarray
    gauge: str

    def __post_init__(self):
        n, k = len(self.p), len(self.q)
        if 2 * n + k < 2:
            raise ValueError("need 2n + k >= 2")
        if np.any(np.imag(self.p) <= 0):
            raise ValueError("black points must lie in the open upper half-plane")
        if np.any(np.diff(self.q) <= 0):
            raise ValueError("white points must be strictly increasing")
        if self.gauge not in gauges(n, k):
            raise ValueError(f"gauge {self.gauge!r} not available for ({n},{k})")
        if self.gauge == "q-ends" and (self.q[0] != 0 or self.q[-1] != 1):
            raise ValueError("slice needs q_1 = 0 and q_k = 1")
        if self.gauge == "p1-i" and self.p[0] != 1j:
            raise ValueError("slice needs p_1 = i")


@dataclass(frozen=True)
class WeightEstimate:
    mean: float
    stderr: float
    samples: int
    seed: int


def gauge_for(k: int) -> str:
    """Default slice."""
    return "q-ends" if k >= 2 else "p1-i"


def gauges(n: int, k: int) -> tuple[str, ...]:
    out = []
    if k >= 2:
        out.append("q-ends")
    if n >= 1:
        out.append("p1-i")
    return tuple(out)


def slice_coordinates(n: int, k: int, gauge: str | None = None) -> list[tuple[str, int, str]]:
    """Free coordinates of the slice as (kind, index, part), in orientation order."""
    gauge = gauge or gauge_for(k)
    coords = []
    first = 1 if gauge == "p1-i" else 0
    for j in range(first, n):
        coords += [("p", j, "x"), ("p", j, "y")]
    qs = range(1, k - 1) if gauge == "q-ends" else range(k)
    coords += [("q", j, "x") for j in qs]
    return coords


def slice_sign(n: int, k: int, gauge: str | None = None) -> int:
    """Sign of det[T, S, slice basis] in the ambient coordinates
    (x_1, y_1, ..., x_n, y_n, q_1, ..., q_k); constant along the slice."""
    dim = 2 * n + k
    gauge = gauge or gauge_for(k)
    p = np.array([0.1 + 0.37 * j + 1j * (1 + 0.5 * j) for j in range(n)])
    q = np.linspace(0.0, 1.0, k)
    if gauge == "p1-i":
        p[:1] = 1j
    t = np.zeros(dim)
    s = np.zeros(dim)
    for j in range(n):
        t[2 * j] = 1
        s[2 * j], s[2 * j + 1] = p[j].real, p[j].imag
    for j in range(k):
        t[2 * n + j] = 1
        s[2 * n + j] = q[j]
    cols = [t, s]
    for kind, j, part in slice_coordinates(n, k, gauge):
        e = np.zeros(dim)
        e[2 * j + (part == "y") if kind == "p" else 2 * n + j] = 1
        cols.append(e)
    return int(np.sign(np.linalg.det(np.array(cols).T)))


def _form_batch(g: Graph, p: np.ndarray, q: np.ndarray, gauge: str) -> np.ndarray:
    """Batched form matrices, shape (N, e, dim)."""
    n, k = g.nb, g.nw
    col = {c: i for i, c in enumerate(slice_coordinates(n, k, gauge))}
    size = p.shape[0] if p.ndim == 2 else q.shape[0]
    out = np.zeros((size, len(g.edges), len(col)))
    for r, (t, h) in enumerate(g.edges):
        zt = p[:, t[1] - 1]
        zh = p[:, h[1] - 1] if h[0] == BLACK else q[:, h[1] - 1].astype(complex)
        inv1 = 1 / (zh - zt)
        inv2 = 1 / (zh - np.conj(zt))
        head = ("p", h[1] - 1) if h[0] == BLACK else ("q", h[1] - 1)
        tail = ("p", t[1] - 1)
        for key, val in (((*head, "x"), inv1.imag - inv2.imag),
                         ((*head, "y"), inv1.real - inv2.real),
                         ((*tail, "x"), -inv1.imag + inv2.imag),
                         ((*tail, "y"), -inv1.real - inv2.real)):
            c = col.get(key)
            if c is not None:
                out[:, r, c] += val
    return out


def form_matrix(g: Graph, s: ConfigurationSample) -> np.ndarray:
    """Matrix of the edge angle forms in the slice coordinates; rows follow the edge order."""
    dim = 2 * g.nb + g.nw - 2
    if (len(s.p), len(s.q)) != (g.nb, g.nw):
        raise ValueError("sample does not match the graph")
    if len(g.edges) != dim:
        raise ValueError(f"{len(g.edges)} edges but the slice has dimension {dim}")
    return _form_batch(g, np.asarray(s.p)[None, :], np.asarray(s.q, float)[None, :], s.gauge)[0]


def _radial(z: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Planar density of c + r e^{i theta}: theta uniform, r ~ s/(s + r)^2 given a
    log-uniform scale s.  Integrating out s gives the closed form below."""
    r = np.abs(z - c)
    h = (1 / (SCALE_LO + r) - 1 / (SCALE_HI + r)) / math.log(SCALE_HI / SCALE_LO)
    return h / (2 * np.pi * r)


def _draw(n: int, k: int, size: int, rng: np.random.Generator, gauge: str):
    """Slice sample and its density with respect to Lebesgue measure on the free coordinates."""
    dens = np.ones(size)
    if gauge == "q-ends":
        inner = np.sort(rng.random((size, k - 2)), axis=1)
        q = np.concatenate([np.zeros((size, 1)), inner, np.ones((size, 1))], axis=1)
        dens *= math.factorial(k - 2)
        p = np.zeros((size, n), complex)
        start = 0
        anchors = [q[:, j].astype(complex) for j in range(k)]
    else:
        p = np.zeros((size, n), complex)
        if n:
            p[:, 0] = 1j
        q = np.sort(rng.standard_cauchy((size, k)), axis=1)
        dens *= math.factorial(k) * np.prod(1 / (np.pi * (1 + q ** 2)), axis=1)
        start = 1
        anchors = [p[:, 0]] + [q[:, j].astype(complex) for j in range(k)]
    for j in range(start, n):
        centres = anchors + [p[:, i] for i in range(start, j)]
        pick = rng.integers(0, len(centres), size)
        c = np.stack(centres)[pick, np.arange(size)]
        scale = SCALE_LO * (SCALE_HI / SCALE_LO) ** rng.random(size)
        u = rng.random(size)
        r = scale * u / (1 - u)
        z = c + r * np.exp(2j * np.pi * rng.random(size))
        z = np.where(z.imag < 0, np.conj(z), z)
        z = np.where(z.imag == 0, z + 1e-300j, z)
        mix = sum(_radial(z, cc) + _radial(np.conj(z), cc) for cc in centres)
        dens *= mix / len(centres)
        p[:, j] = z
    return p, q, dens


def _duplicate_edges(g: Graph) -> bool:
    return len(set(g.edges)) != len(g.edges)


def exact_zero(g: Graph) -> bool:
    """True when the weight vanishes for structural reasons."""
    dim = 2 * g.nb + g.nw - 2
    return len(g.edges) != dim or _duplicate_edges(g) or not is_connected(g)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("SFQ_THREADS", os.cpu_count() or 1)))
    except ValueError:
        return 1


def estimate_weight(g: Graph, samples: int = 100_000, seed: int = 0,
                    gauge: str | None = None) -> WeightEstimate:
    n, k = g.nb, g.nw
    if 2 * n + k < 2:
        raise ValueError("need 2n + k >= 2")
    gauge = gauge or gauge_for(k)
    if gauge not in gauges(n, k):
        raise ValueError(f"gauge {gauge!r} not available for ({n},{k})")
    if exact_zero(g):
        return WeightEstimate(0.0, 0.0, samples, seed)
    dim = 2 * n + k - 2
    if dim == 0:
        return WeightEstimate(1.0, 0.0, samples, seed)
    sizes = [CHUNK] * (samples // CHUNK) + ([samples % CHUNK] if samples % CHUNK else [])
    streams = np.random.SeedSequence(seed).spawn(len(sizes))

    def chunk(i: int) -> tuple[float, float]:
        rng = np.random.default_rng(streams[i])
        p, q, dens = _draw(n, k, sizes[i], rng, gauge)
        vals = np.linalg.det(_form_batch(g, p, q, gauge)) / dens
        return float(vals.sum()), float((vals ** 2).sum())

    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        parts = list(pool.map(chunk, range(len(sizes))))
    total = sum(a for a, _ in parts)
    total2 = sum(b for _, b in parts)
    mean = total / samples
    var = max(total2 / samples - mean ** 2, 0.0)
    scale = ORIENTATION * slice_sign(n, k, gauge) / (2 * np.pi) ** dim
    return WeightEstimate(mean * scale, math.sqrt(var / samples) * abs(scale), samples, seed)
