"""Undirected simple graphs with stable edge ids and bitmask edge subsets.

Nodes are integers ``0..n-1``.  Edges carry stable ids ``0..m-1`` assigned in
construction order; an *edge subset* is a plain ``int`` bitmask over those
ids, so ``L & (1 << e)`` tests membership and ``L.bit_count()`` is the
cardinality.  Node subsets entering the public API are ordinary iterables of
node ids (bitmasks are used internally).

All queries are pure and a :class:`Graph` is never mutated after
construction, so instances can be shared freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask``, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    out = 0
    for i in indices:
        out |= 1 << i
    return out


@dataclass(frozen=True)
class ComponentPartition:
    """Connected components of an induced subgraph.

    ``blocks`` partition exactly the nodes touched by the queried structure:
    the node subset itself for node-induced queries, the covered nodes for
    edge-induced queries (isolated nodes never appear in the latter).
    """

    blocks: tuple[frozenset[int], ...]

    def __len__(self) -> int:
        return len(self.blocks)

    def node_count(self) -> int:
        return sum(len(b) for b in self.blocks)

    def block_of(self, node: int) -> int:
        for idx, block in enumerate(self.blocks):
            if node in block:
                return idx
        raise KeyError(f"node {node} is not covered by this partition")

    def sizes(self) -> tuple[int, ...]:
        return tuple(sorted(len(b) for b in self.blocks))


class Graph:
    """Immutable undirected graph without loops or parallel edges."""

    __slots__ = (
        "n",
        "edges",
        "incident",
        "_nbr_mask",
        "_edge_node_mask",
        "_edge_adj_mask",
        "_incident_mask",
        "__weakref__",
    )

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 1:
            raise ValueError("graph needs at least one node")
        canon: list[tuple[int, int]] = []
        seen: set[tuple[int, int]] = set()
        for i, j in edges:
            if i == j:
                raise ValueError(f"loop edge ({i},{i}) not allowed")
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i},{j}) out of range for n={n}")
            e = (i, j) if i < j else (j, i)
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            canon.append(e)
        self.n = n
        self.edges = tuple(canon)

        inc: list[list[int]] = [[] for _ in range(n)]
        nbr = [0] * n
        for eid, (i, j) in enumerate(self.edges):
            inc[i].append(eid)
            inc[j].append(eid)
            nbr[i] |= 1 << j
            nbr[j] |= 1 << i
        self.incident = tuple(tuple(x) for x in inc)
        self._nbr_mask = tuple(nbr)
        self._edge_node_mask = tuple((1 << i) | (1 << j) for i, j in self.edges)

        # edges sharing an endpoint with e, excluding e itself
        edge_adj = []
        for eid, (i, j) in enumerate(self.edges):
            m = mask_of(inc[i]) | mask_of(inc[j])
            edge_adj.append(m & ~(1 << eid))
        self._edge_adj_mask = tuple(edge_adj)
        self._incident_mask = tuple(mask_of(x) for x in inc)

    # -- basic accessors ---------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def full_edge_mask(self) -> int:
        return (1 << len(self.edges)) - 1

    def degree(self, i: int) -> int:
        return len(self.incident[i])

    def incident_mask(self, i: int) -> int:
        """Bitmask of the edge ids incident to node ``i``."""
        return self._incident_mask[i]

    def edge_id(self, i: int, j: int) -> int:
        e = (i, j) if i < j else (j, i)
        try:
            return self.edges.index(e)
        except ValueError:
            raise KeyError(f"no edge {e}") from None

    def has_edge(self, i: int, j: int) -> bool:
        e = (i, j) if i < j else (j, i)
        return e in self.edges

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges)})"

    # -- floods ------------------------------------------------------------

    def _node_flood(self, inside: int, start: int) -> int:
        """Node mask of the component of ``start`` in the subgraph induced
        by the node mask ``inside`` (``start`` must be inside)."""
        comp = 1 << start
        frontier = comp
        nbr = self._nbr_mask
        while frontier:
            grow = 0
            for i in bits(frontier):
                grow |= nbr[i]
            grow &= inside & ~comp
            comp |= grow
            frontier = grow
        return comp

    def _edge_flood(self, L: int, start_edge: int) -> tuple[int, int]:
        """Edge and node masks of the component of ``start_edge`` in the
        edge-induced subgraph of ``L``."""
        comp = 1 << start_edge
        frontier = comp
        adj = self._edge_adj_mask
        while frontier:
            grow = 0
            for e in bits(frontier):
                grow |= adj[e]
            grow &= L & ~comp
            comp |= grow
            frontier = grow
        nodes = 0
        for e in bits(comp):
            nodes |= self._edge_node_mask[e]
        return comp, nodes

    # -- component queries ---------------------------------------------------

    def components_of_edges(self, L: int) -> ComponentPartition:
        """Connected components of the subgraph induced by the edge subset.

        Nodes of the graph not covered by ``L`` do not appear; the empty
        subset yields an empty partition.
        """
        blocks = []
        rest = L
        while rest:
            e0 = (rest & -rest).bit_length() - 1
            comp_edges, comp_nodes = self._edge_flood(rest, e0)
            rest ^= comp_edges
            blocks.append(frozenset(bits(comp_nodes)))
        return ComponentPartition(tuple(blocks))

    def components_of_nodes(self, nodes: Iterable[int]) -> ComponentPartition:
        """Connected components of the subgraph induced by a node subset."""
        inside = mask_of(nodes)
        blocks = []
        rest = inside
        while rest:
            i0 = (rest & -rest).bit_length() - 1
            comp = self._node_flood(rest, i0)
            rest ^= comp
            blocks.append(frozenset(bits(comp)))
        return ComponentPartition(tuple(blocks))

    def covered_nodes(self, L: int) -> int:
        """Node mask covered by the edge subset ``L``."""
        nodes = 0
        for e in bits(L):
            nodes |= self._edge_node_mask[e]
        return nodes

    def is_connected_edges(self, L: int) -> bool:
        """True iff the subgraph induced by ``L`` has a single component.

        The empty subset counts as not connected.
        """
        if L == 0:
            return False
        e0 = (L & -L).bit_length() - 1
        comp_edges, _ = self._edge_flood(L, e0)
        return comp_edges == L

    def is_connected(self) -> bool:
        if self.n == 1:
            return True
        full = (1 << self.n) - 1
        return self._node_flood(full, 0) == full

    # -- structure predicates ------------------------------------------------

    def is_cycle_free(self, L: int) -> bool:
        """True iff the subgraph induced by ``L`` contains no cycle."""
        # a forest has exactly (covered nodes - components) edges
        parts = self.components_of_edges(L)
        return L.bit_count() == parts.node_count() - len(parts)

    def creates_cycle(self, L: int, e: int) -> bool:
        """True iff adding edge ``e`` to the subset ``L`` closes a cycle,
        i.e. both endpoints of ``e`` already lie in one component of ``L``."""
        if (L >> e) & 1:
            raise ValueError(f"edge {e} already in the subset")
        if L == 0:
            return False
        u, v = self.edges[e]
        seen = 1 << u
        stack = [u]
        while stack:
            x = stack.pop()
            for eid in self.incident[x]:
                if not (L >> eid) & 1:
                    continue
                a, b = self.edges[eid]
                y = b if a == x else a
                if y == v:
                    return True
                if not (seen >> y) & 1:
                    seen |= 1 << y
                    stack.append(y)
        return False

    def cutvertices(self, L: int) -> frozenset[int]:
        """Articulation nodes of the subgraph induced by ``L`` (DFS low-link)."""
        adj: dict[int, list[int]] = {}
        for e in bits(L):
            i, j = self.edges[e]
            adj.setdefault(i, []).append(j)
            adj.setdefault(j, []).append(i)
        disc: dict[int, int] = {}
        low: dict[int, int] = {}
        art: set[int] = set()
        timer = 0
        for root in adj:
            if root in disc:
                continue
            disc[root] = low[root] = timer
            timer += 1
            root_children = 0
            stack: list[tuple[int, int, Iterator[int]]] = [(root, -1, iter(adj[root]))]
            while stack:
                u, parent, it = stack[-1]
                advanced = False
                for v in it:
                    if v == parent:
                        continue
                    if v in disc:
                        if disc[v] < low[u]:
                            low[u] = disc[v]
                    else:
                        disc[v] = low[v] = timer
                        timer += 1
                        if u == root:
                            root_children += 1
                        stack.append((v, u, iter(adj[v])))
                        advanced = True
                        break
                if not advanced:
                    stack.pop()
                    if parent != -1:
                        if low[u] < low[parent]:
                            low[parent] = low[u]
                        if parent != root and low[u] >= disc[parent]:
                            art.add(parent)
            if root_children >= 2:
                art.add(root)
        return frozenset(art)

    def cutedges(self, L: int) -> int:
        """Edges of ``L`` both of whose endpoints are cutvertices.

        Evaluated within the subgraph induced by ``L`` itself, not within the
        ambient graph; for a tree this is exactly the set of internal edges
        (edges joining two non-leaf nodes).
        """
        art = self.cutvertices(L)
        out = 0
        for e in bits(L):
            i, j = self.edges[e]
            if i in art and j in art:
                out |= 1 << e
        return out

    # -- minimal connecting subgraphs ----------------------------------------

    def minimal_connecting_subgraphs(self, R: Iterable[int]) -> list[int]:
        """All inclusion-minimal edge subsets whose induced subgraph connects
        every node of ``R``.

        For ``|R| == 2`` these are the edge sets of the simple paths between
        the two nodes.  Returns the empty list when ``R`` is not connected in
        the graph; results are sorted by mask for determinism.
        """
        targets = sorted(set(R))
        if len(targets) < 2:
            raise ValueError("need at least two nodes to connect")
        if len(targets) == 2:
            masks = self._simple_path_masks(targets[0], targets[1])
        else:
            masks = self._steiner_tree_masks(targets)
        return sorted(masks)

    def _simple_path_masks(self, u: int, v: int) -> list[int]:
        out: list[int] = []

        def walk(x: int, emask: int, nmask: int) -> None:
            for eid in self.incident[x]:
                a, b = self.edges[eid]
                y = b if a == x else a
                if y == v:
                    out.append(emask | (1 << eid))
                elif not (nmask >> y) & 1:
                    walk(y, emask | (1 << eid), nmask | (1 << y))

        walk(u, 0, 1 << u)
        return out

    def _steiner_tree_masks(self, targets: list[int]) -> list[int]:
        # minimal R-connecting subgraphs are exactly the subtrees covering R
        # all of whose leaves belong to R; grow trees from min(R), pruning
        # every branch as soon as R is covered (supersets cannot be minimal)
        want = mask_of(targets)
        found: set[int] = set()
        seen: set[int] = set()
        stack: list[tuple[int, int]] = [(0, 1 << targets[0])]
        while stack:
            emask, nmask = stack.pop()
            if nmask & want == want:
                if self._tree_leaf_mask(emask) & ~want == 0:
                    found.add(emask)
                continue
            for x in bits(nmask):
                for eid in self.incident[x]:
                    if (emask >> eid) & 1:
                        continue
                    a, b = self.edges[eid]
                    y = b if a == x else a
                    if (nmask >> y) & 1:
                        continue  # would close a cycle
                    key = emask | (1 << eid)
                    if key not in seen:
                        seen.add(key)
                        stack.append((key, nmask | (1 << y)))
        return sorted(found)

    def _tree_leaf_mask(self, emask: int) -> int:
        deg: dict[int, int] = {}
        for e in bits(emask):
            i, j = self.edges[e]
            deg[i] = deg.get(i, 0) + 1
            deg[j] = deg.get(j, 0) + 1
        return mask_of(i for i, d in deg.items() if d == 1)

    def intermediaries(self, R: Iterable[int]) -> frozenset[int]:
        """Nodes outside ``R`` that appear in some minimal R-connecting
        edge-induced subgraph; empty when ``R`` is not connected."""
        targets = sorted(set(R))
        covered = 0
        for emask in self.minimal_connecting_subgraphs(targets):
            covered |= self.covered_nodes(emask)
        return frozenset(bits(covered & ~mask_of(targets)))

    # -- edits ---------------------------------------------------------------

    def add_edge(self, i: int, j: int) -> "Graph":
        """New graph with the extra edge appended under id ``m``; existing
        edge ids are unchanged."""
        if self.has_edge(i, j):
            raise ValueError(f"edge ({i},{j}) already present")
        return Graph(self.n, self.edges + ((i, j) if i < j else (j, i),))

    def remove_edge(self, i: int, j: int) -> "Graph":
        """New graph without the edge; surviving edges keep their relative
        order and are re-indexed compactly."""
        e = (i, j) if i < j else (j, i)
        if e not in self.edges:
            raise ValueError(f"edge {e} not present")
        return Graph(self.n, tuple(x for x in self.edges if x != e))

    def induced_subgraph(self, nodes: Iterable[int]) -> tuple["Graph", dict[int, int]]:
        """Subgraph induced by a node subset, relabelled to ``0..k-1``.

        Returns the new graph and the old-to-new node mapping.
        """
        keep = sorted(set(nodes))
        remap = {old: new for new, old in enumerate(keep)}
        kept = set(keep)
        edges = [
            (remap[i], remap[j]) for i, j in self.edges if i in kept and j in kept
        ]
        return Graph(len(keep), edges), remap


# -- serialization -----------------------------------------------------------


def parse_edgelist(text: str) -> Graph:
    """Parse the plain text format: first line ``n m``, then ``m`` lines
    ``i j`` with 0-based node ids.  Blank lines and ``#`` comments allowed."""
    rows = [
        line.split()
        for line in text.splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not rows:
        raise ValueError("empty graph file")
    header = rows[0]
    if len(header) != 2:
        raise ValueError(f"expected header 'n m', got {' '.join(header)!r}")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError as exc:
        raise ValueError(f"malformed header {' '.join(header)!r}") from exc
    body = rows[1:]
    if len(body) != m:
        raise ValueError(f"header announces {m} edges, found {len(body)}")
    edges = []
    for row in body:
        if len(row) != 2:
            raise ValueError(f"malformed edge line {' '.join(row)!r}")
        try:
            edges.append((int(row[0]), int(row[1])))
        except ValueError as exc:
            raise ValueError(f"malformed edge line {' '.join(row)!r}") from exc
    return Graph(n, edges)


def graph_from_json_obj(obj) -> Graph:
    """Build a graph from ``{"n": ..., "edges": [[i, j], ...]}``."""
    try:
        n = int(obj["n"])
        edges = [(int(i), int(j)) for i, j in obj["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed graph object: {exc}") from exc
    return Graph(n, edges)


def graph_to_json_obj(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges]}


def load_graph(path) -> Graph:
    """Load a graph from a path; JSON when the suffix is ``.json``, the
    edge-list text format otherwise."""
    import json
    from pathlib import Path

    p = Path(path)
    text = p.read_text(encoding="utf-8")
    if p.suffix.lower() == ".json":
        return graph_from_json_obj(json.loads(text))
    return parse_edgelist(text)
