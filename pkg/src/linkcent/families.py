"""Graph constructors and exhaustive families for sweeps.

The enumeration grows connected graphs one edge at a time (every connected
graph with ``m`` edges arises from one with ``m-1`` edges by inserting an
edge between existing nodes or hanging a pendant node), deduplicating up to
isomorphism with Weisfeiler-Lehman hash buckets refined by exact isomorphism
checks.
"""

from __future__ import annotations

from functools import lru_cache

import networkx as nx
import numpy as np

from .graph import Graph


def chain(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star(n: int, hub: int = 0) -> Graph:
    if n < 2:
        raise ValueError("a star needs at least two nodes")
    return Graph(n, [(hub, i) for i in range(n) if i != hub])


def cycle(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def two_stars(k1: int, k2: int) -> tuple[Graph, int, int]:
    """Two disjoint stars with ``k1`` and ``k2`` leaves; returns the graph
    and the two hub ids (leaves follow their hub in the numbering)."""
    if k1 < 1 or k2 < 1:
        raise ValueError("stars need at least one leaf each")
    hub1, hub2 = 0, k1 + 1
    edges = [(hub1, i) for i in range(1, k1 + 1)]
    edges += [(hub2, hub2 + i) for i in range(1, k2 + 1)]
    return Graph(k1 + k2 + 2, edges), hub1, hub2


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    shift = g1.n
    edges = list(g1.edges) + [(i + shift, j + shift) for i, j in g2.edges]
    return Graph(g1.n + g2.n, edges)


def with_isolated_node(g: Graph) -> Graph:
    """Same graph plus one extra isolated node (id ``n``)."""
    return Graph(g.n + 1, g.edges)


def random_connected_graph(rng: np.random.Generator, n: int, m: int) -> Graph:
    """Uniformly sloppy but seeded: a random recursive tree plus ``m-n+1``
    extra edges drawn without replacement from the remaining pairs."""
    if m < n - 1 or m > n * (n - 1) // 2:
        raise ValueError(f"no connected graph with n={n}, m={m}")
    edges = [(int(rng.integers(0, i)), i) for i in range(1, n)]
    present = {(min(a, b), max(a, b)) for a, b in edges}
    pool = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if (i, j) not in present
    ]
    extra = m - (n - 1)
    if extra:
        for idx in rng.choice(len(pool), size=extra, replace=False):
            present.add(pool[int(idx)])
            edges.append(pool[int(idx)])
    return Graph(n, edges)


# -- exhaustive enumeration ------------------------------------------------


def _to_nx(g: Graph) -> nx.Graph:
    out = nx.Graph()
    out.add_nodes_from(range(g.n))
    out.add_edges_from(g.edges)
    return out


def _from_nx(g: nx.Graph) -> Graph:
    return Graph(g.number_of_nodes(), sorted(tuple(sorted(e)) for e in g.edges()))


class _IsoPool:
    """Set of graphs up to isomorphism: WL-hash buckets, exact check inside."""

    def __init__(self):
        self._buckets: dict[str, list[nx.Graph]] = {}

    def add(self, g: nx.Graph) -> bool:
        key = nx.weisfeiler_lehman_graph_hash(g)
        bucket = self._buckets.setdefault(key, [])
        for other in bucket:
            if nx.is_isomorphic(g, other):
                return False
        bucket.append(g)
        return True


@lru_cache(maxsize=None)
def connected_graphs(
    max_nodes: int | None = None, max_edges: int | None = None
) -> tuple[Graph, ...]:
    """Every connected graph (up to isomorphism) within the caps, at least
    one of which must be given.  Single-node graphs are excluded; results are
    ordered by edge count, deterministic, and cached (graphs are immutable)."""
    if max_nodes is None and max_edges is None:
        raise ValueError("give max_nodes, max_edges, or both")
    ncap = max_nodes if max_nodes is not None else (max_edges + 1)
    ecap = max_edges if max_edges is not None else ncap * (ncap - 1) // 2
    if ncap < 2 or ecap < 1:
        return ()

    out: list[Graph] = []
    level = [nx.Graph([(0, 1)])]
    out.append(_from_nx(level[0]))
    for _ in range(2, ecap + 1):
        pool = _IsoPool()
        nxt: list[nx.Graph] = []
        for g in level:
            k = g.number_of_nodes()
            for i in range(k):
                for j in range(i + 1, k):
                    if g.has_edge(i, j):
                        continue
                    h = g.copy()
                    h.add_edge(i, j)
                    if pool.add(h):
                        nxt.append(h)
            if k < ncap:
                for i in range(k):
                    h = g.copy()
                    h.add_edge(i, k)
                    if pool.add(h):
                        nxt.append(h)
        level = nxt
        out.extend(_from_nx(g) for g in level)
    return tuple(out)


def trees(max_edges: int) -> tuple[Graph, ...]:
    """Every tree with between 1 and ``max_edges`` edges, up to isomorphism."""
    return tuple(
        g for g in connected_graphs(max_edges=max_edges) if g.m == g.n - 1
    )


def automorphism_count(g: Graph) -> int:
    gm = nx.algorithms.isomorphism.GraphMatcher(_to_nx(g), _to_nx(g))
    return sum(1 for _ in gm.isomorphisms_iter())
