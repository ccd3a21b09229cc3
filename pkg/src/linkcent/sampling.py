"""Seeded Monte-Carlo estimation of link-game Shapley values.

Sampling walks random arrival orders of the edges: when an edge arrives it
either merges two components (contributing the base game's merge gain) or
closes a cycle (contributing nothing beyond the symmetric-game difference,
which is zero exactly for the attachment game).  Each edge's marginal is
halved onto its endpoints, giving an unbiased position-centrality estimate.

Reproducibility: permutations come from numpy's PCG64 stream identified by
:data:`RNG_NAME`.  The sample space is split into fixed-size chunks and chunk
``c`` uses ``PCG64(seed).jumped(c)``, so output depends only on
``(seed, samples)`` — never on how chunks are scheduled.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .games import SymmetricGame
from .graph import Graph

RNG_NAME = "numpy-pcg64"
CHUNK = 1 << 16


def _accumulate_impl(perms, edge_u, edge_v, fvals, n, edge_sum, node_sum, node_sq):
    batch, m = perms.shape
    parent = np.empty(n, np.int64)
    size = np.empty(n, np.int64)
    x = np.empty(n, np.float64)
    for b in range(batch):
        for i in range(n):
            parent[i] = i
            size[i] = 1
            x[i] = 0.0
        for t in range(m):
            e = perms[b, t]
            u = edge_u[e]
            v = edge_v[e]
            while parent[u] != u:
                parent[u] = parent[parent[u]]
                u = parent[u]
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            if u == v:
                continue  # cycle edge: no new component is merged
            a = size[u]
            c = size[v]
            marg = fvals[a + c]
            if a > 1:
                marg -= fvals[a]
            if c > 1:
                marg -= fvals[c]
            if a < c:
                u, v = v, u
            parent[v] = u
            size[u] = a + c
            edge_sum[e] += marg
            half = 0.5 * marg
            x[edge_u[e]] += half
            x[edge_v[e]] += half
        for i in range(n):
            node_sum[i] += x[i]
            node_sq[i] += x[i] * x[i]


try:  # compiled kernel; the pure-python body above is the fallback
    from numba import njit

    _accumulate = njit(cache=True)(_accumulate_impl)
except ImportError:  # pragma: no cover
    _accumulate = _accumulate_impl


@dataclass(frozen=True)
class SampleResult:
    edge_mean: np.ndarray
    node_mean: np.ndarray
    node_stderr: np.ndarray
    samples: int
    seed: int


def sample_link_shapley(
    graph: Graph, game: SymmetricGame, samples: int, seed: int
) -> SampleResult:
    """Estimate the link-game Shapley value of every edge and the position
    centrality of every node from ``samples`` random edge orders."""
    if samples < 1:
        raise ValueError("need at least one sample")
    n, m = graph.n, graph.m
    if m == 0:
        zero = np.zeros(n)
        return SampleResult(np.zeros(0), zero, zero.copy(), samples, seed)

    edge_u = np.array([e[0] for e in graph.edges], np.int64)
    edge_v = np.array([e[1] for e in graph.edges], np.int64)
    fvals = np.array([float(game.f(s)) for s in range(n + 1)], np.float64)
    edge_sum = np.zeros(m)
    node_sum = np.zeros(n)
    node_sq = np.zeros(n)

    base = np.arange(m, dtype=np.int64)
    done = 0
    chunk_index = 0
    while done < samples:
        k = min(CHUNK, samples - done)
        rng = np.random.Generator(np.random.PCG64(seed).jumped(chunk_index))
        perms = rng.permuted(np.tile(base, (k, 1)), axis=1)
        _accumulate(perms, edge_u, edge_v, fvals, n, edge_sum, node_sum, node_sq)
        done += k
        chunk_index += 1

    node_mean = node_sum / samples
    if samples > 1:
        var = np.maximum(node_sq - samples * node_mean**2, 0.0) / (samples - 1)
        node_stderr = np.sqrt(var / samples)
    else:
        node_stderr = np.full(n, np.nan)
    return SampleResult(edge_sum / samples, node_mean, node_stderr, samples, seed)
