"""Graph-restricted games, link games, and link-game Harsanyi dividends.

The link game is played by the *edges* of a graph: an edge coalition is
worth the sum of the base game's values over the node components it induces.
Its Harsanyi dividends drive the dividend-form position engine and enjoy two
structural shortcuts implemented here:

* the dividend of a disconnected edge subset vanishes identically, and
* for a connected cycle-free subset of a zero-normalized game it collapses
  to the closed form ``F(l+1, l-d)`` where ``l`` counts edges, ``d`` counts
  cutedges, and ``F`` is the alternating binomial transform of the size
  function (so the dividend depends only on the pair ``(l, d)``, which is
  memoized).
"""

from __future__ import annotations

import math
import weakref

from .games import CoalitionGame, SymmetricGame, _exact
from .graph import Graph, bits

# per-graph structure tables, shared by every game evaluated on the graph
_node_split_cache: weakref.WeakKeyDictionary = weakref.WeakKeyDictionary()
_edge_split_cache: weakref.WeakKeyDictionary = weakref.WeakKeyDictionary()


def node_split_tables(g: Graph) -> tuple[list[int], list[int]]:
    """For every node mask: the size of the component containing its lowest
    node, and the remaining mask once that component is removed.

    Folding a size function over these two tables values every node-induced
    subgraph in a single pass per game.
    """
    cached = _node_split_cache.get(g)
    if cached is not None:
        return cached
    n = g.n
    nbr = g._nbr_mask
    sizes = [0] * (1 << n)
    rest = [0] * (1 << n)
    for mask in range(1, 1 << n):
        comp = mask & -mask
        frontier = comp
        while frontier:
            grow = 0
            f = frontier
            while f:
                b = f & -f
                grow |= nbr[b.bit_length() - 1]
                f ^= b
            grow &= mask & ~comp
            comp |= grow
            frontier = grow
        sizes[mask] = comp.bit_count()
        rest[mask] = mask ^ comp
    _node_split_cache[g] = (sizes, rest)
    return sizes, rest


def edge_split_tables(g: Graph) -> tuple[list[int], list[int]]:
    """Edge-mask analogue of :func:`node_split_tables`: per edge mask, the
    covered-node count of the component containing the lowest edge and the
    remaining edge mask."""
    cached = _edge_split_cache.get(g)
    if cached is not None:
        return cached
    m = g.m
    adj = g._edge_adj_mask
    enodes = g._edge_node_mask
    sizes = [0] * (1 << m)
    rest = [0] * (1 << m)
    for mask in range(1, 1 << m):
        comp = mask & -mask
        frontier = comp
        while frontier:
            grow = 0
            f = frontier
            while f:
                b = f & -f
                grow |= adj[b.bit_length() - 1]
                f ^= b
            grow &= mask & ~comp
            comp |= grow
            frontier = grow
        nodes = 0
        c = comp
        while c:
            b = c & -c
            nodes |= enodes[b.bit_length() - 1]
            c ^= b
        sizes[mask] = nodes.bit_count()
        rest[mask] = mask ^ comp
    _edge_split_cache[g] = (sizes, rest)
    return sizes, rest


def _fold_table(sizes: list[int], rest: list[int], ftab: list) -> list:
    values = [0] * len(sizes)
    for mask in range(1, len(sizes)):
        values[mask] = ftab[sizes[mask]] + values[rest[mask]]
    return values


def _int_table(game: SymmetricGame, n_max: int) -> list:
    # ints where possible keeps the hot loops on the fast integer path
    return [_exact(game.f(s)) for s in range(n_max + 1)]


def f_transform(game: SymmetricGame, s: int, r: int):
    """Alternating binomial transform ``F(s, r) = sum_k (-1)^k C(r,k) f(s-k)``.

    Satisfies ``F(s, 0) = f(s)`` and the recurrence
    ``F(s, r) + F(s-1, r-1) = F(s, r-1)``; it is the closed dividend form for
    connected cycle-free edge subsets.
    """
    if r < 0 or s < 0 or r > s:
        raise ValueError(f"need 0 <= r <= s, got s={s}, r={r}")
    total = 0
    for k in range(r + 1):
        term = math.comb(r, k) * game.f(s - k)
        total += term if k % 2 == 0 else -term
    return _exact(total)


class RestrictedGame:
    """The base game filtered through the graph: a node coalition is worth
    the sum of values of its connected parts."""

    def __init__(self, graph: Graph, game: SymmetricGame):
        self.graph = graph
        self.game = game
        self._table: list | None = None

    def value(self, nodes):
        """Value of a node coalition (bitmask or iterable of node ids)."""
        mask = nodes if isinstance(nodes, int) else sum(1 << i for i in set(nodes))
        total = 0
        for block in self.graph.components_of_nodes(bits(mask)).blocks:
            total += self.game.f(len(block))
        return _exact(total)

    def value_table(self) -> list:
        if self._table is None:
            sizes, rest = node_split_tables(self.graph)
            self._table = _fold_table(sizes, rest, _int_table(self.game, self.graph.n))
        return self._table

    def coalition_game(self) -> CoalitionGame:
        return CoalitionGame.from_table(self.value_table())


class LinkGame:
    """The game played by edges: an edge coalition is worth the sum of the
    base game over the node components it induces (isolated nodes never
    contribute — only covered nodes form components)."""

    def __init__(self, graph: Graph, game: SymmetricGame):
        self.graph = graph
        self.game = game
        self._zero_normalized = _exact(game.f(1)) == 0
        self._table: list | None = None
        self._wvals: dict[int, object] = {0: 0}
        self._profile_vals: dict[tuple, object] = {(): 0}
        self._fmemo: dict[tuple[int, int], object] = {}

    def value(self, L: int):
        """Worth of the edge coalition ``L`` (bitmask)."""
        if self._table is not None:
            return self._table[L]
        cached = self._wvals.get(L)
        if cached is not None:
            return cached
        profile = self.graph.components_of_edges(L).sizes()
        val = self._profile_vals.get(profile)
        if val is None:
            val = _exact(sum(self.game.f(k) for k in profile))
            self._profile_vals[profile] = val
        self._wvals[L] = val
        return val

    def value_table(self) -> list:
        if self._table is None:
            sizes, rest = edge_split_tables(self.graph)
            self._table = _fold_table(sizes, rest, _int_table(self.game, self.graph.n))
        return self._table

    def coalition_game(self) -> CoalitionGame:
        return CoalitionGame.from_table(self.value_table(), labels=self.graph.edges)

    # -- dividends ---------------------------------------------------------

    def dividend(self, L: int):
        """Harsanyi dividend of the edge coalition ``L``.

        Dispatch: disconnected subsets vanish without enumeration; connected
        cycle-free subsets of zero-normalized games use the closed form
        ``F(l+1, l-d)`` memoized on ``(l, d)``; everything else falls back to
        the alternating sum over subcoalitions.  The result never depends on
        the ambient edge set, only on the subgraph ``L`` induces.
        """
        if L == 0:
            raise ValueError("the empty coalition has no dividend")
        g = self.graph
        if not g.is_connected_edges(L):
            return 0
        if self._zero_normalized and g.is_cycle_free(L):
            l = L.bit_count()
            d = g.cutedges(L).bit_count()
            key = (l, d)
            val = self._fmemo.get(key)
            if val is None:
                val = f_transform(self.game, l + 1, l - d)
                self._fmemo[key] = val
            return val
        return self.dividend_brute_force(L)

    def dividend_brute_force(self, L: int):
        """Alternating sum over all subcoalitions of ``L``."""
        if L == 0:
            raise ValueError("the empty coalition has no dividend")
        l = L.bit_count()
        total = 0
        sub = L
        while True:
            w = self.value(sub)
            total += w if (l - sub.bit_count()) % 2 == 0 else -w
            if sub == 0:
                break
            sub = (sub - 1) & L
        return _exact(total)

    def dividend_by_cutedge_sum(self, L: int):
        """Dividend of a connected cycle-free subset as the alternating sum
        restricted to supersets of its cutedge set."""
        if L == 0:
            raise ValueError("the empty coalition has no dividend")
        g = self.graph
        if not g.is_connected_edges(L) or not g.is_cycle_free(L):
            raise ValueError("cutedge-restricted sum needs a connected cycle-free subset")
        d_mask = g.cutedges(L)
        free = L ^ d_mask
        l = L.bit_count()
        total = 0
        sub = free
        while True:
            t_mask = d_mask | sub
            w = self.value(t_mask)
            total += w if (l - t_mask.bit_count()) % 2 == 0 else -w
            if sub == 0:
                break
            sub = (sub - 1) & free
        return _exact(total)


def connected_edge_subsets(g: Graph):
    """Yield every nonempty connected edge subset of the graph exactly once.

    Enumerates, per lowest edge, by canonical include/exclude branching on
    adjacent candidate edges; no visited set is kept, so memory stays
    proportional to the recursion depth even for huge subset counts.
    """
    m = g.m
    adj = g._edge_adj_mask
    full = g.full_edge_mask
    for base in range(m):
        above = full & ~((1 << (base + 1)) - 1)
        stack = [(1 << base, adj[base] & above, 0)]
        while stack:
            subset, cand, banned = stack.pop()
            if cand == 0:
                yield subset
                continue
            low = cand & -cand
            rest = cand ^ low
            stack.append((subset, rest, banned | low))
            grown = subset | low
            grow = adj[low.bit_length() - 1] & above & ~grown & ~banned & ~rest
            stack.append((grown, rest | grow, banned))
