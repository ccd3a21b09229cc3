"""Node centrality measures built on the link and graph-restricted games.

Four measures are provided:

* myerson     — Shapley value of the graph-restricted game over nodes,
* position    — half the sum, over a node's incident edges, of the edges'
                Shapley values in the link game,
* attachment  — the myerson measure under the size game ``2(s-1)``,
* position-attachment — the position measure under the same game.

The position measure ships with two independent exact engines (the marginal
link-game Shapley sum, and the dividend sum pruned to connected edge
subsets) that must agree to the last rational digit, plus a seeded
Monte-Carlo estimator for graphs beyond the exact caps.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

from .games import (
    CapExceededError,
    SymmetricGame,
    attachment,
    mobius_transform,
    shapley_marginal,
)
from .graph import Graph
from .linkgame import LinkGame, RestrictedGame, connected_edge_subsets, f_transform

DEFAULT_NODE_CAP = 16
DEFAULT_EDGE_CAP = 26
_TRANSFORM_LIMIT = 18  # full-lattice dividend transform up to this many edges
_EXPANSION_WARN = 10**8


@dataclass(frozen=True)
class CentralityVector:
    """Per-node centrality values plus provenance.

    Exact methods report :class:`~fractions.Fraction` values; the sampled
    method reports floats together with per-node standard errors and the
    generator identity needed to reproduce them.
    """

    values: tuple
    method: str
    game: str
    seed: int | None = None
    samples: int | None = None
    stderr: tuple | None = None
    rng: str | None = None
    warning: str | None = None

    def __len__(self) -> int:
        return len(self.values)

    def as_floats(self) -> tuple[float, ...]:
        return tuple(float(v) for v in self.values)

    def total(self):
        return sum(self.values)


@dataclass(frozen=True)
class EdgePowerVector:
    """Per-edge Shapley values of the link game, with the same provenance
    fields as :class:`CentralityVector`."""

    values: tuple
    edges: tuple
    method: str
    game: str
    seed: int | None = None
    samples: int | None = None
    warning: str | None = None

    def __len__(self) -> int:
        return len(self.values)

    def total(self):
        return sum(self.values)


def _admissibility_warning(graph: Graph, game: SymmetricGame) -> str | None:
    flags = game.flags(max(graph.n, 2))
    if flags.zero_normalized and flags.superadditive:
        return None
    msg = (
        f"game {game.name!r} is not zero-normalized superadditive; "
        "position values may lose their guarantees (nonnegativity, "
        "isolated-node zero, star maximality)"
    )
    warnings.warn(msg, stacklevel=3)
    return msg


# -- myerson -------------------------------------------------------------------


def myerson_centrality(
    graph: Graph, game: SymmetricGame, cap: int = DEFAULT_NODE_CAP
) -> CentralityVector:
    """Shapley value of the graph-restricted game; exact rationals."""
    if graph.n > cap:
        raise CapExceededError(
            f"{graph.n} nodes exceed the exact myerson cap {cap}"
        )
    phi = shapley_marginal(RestrictedGame(graph, game).coalition_game(), cap=cap)
    return CentralityVector(values=phi, method="myerson_exact", game=game.name)


# -- position: exact engines ---------------------------------------------------


def edge_power(
    graph: Graph, game: SymmetricGame, cap: int = DEFAULT_EDGE_CAP
) -> EdgePowerVector:
    """Shapley value of the link game, one value per edge."""
    if graph.m > cap:
        raise CapExceededError(
            f"{graph.m} edges exceed the exact position cap {cap}; "
            "use the Monte-Carlo sampler"
        )
    warning = _admissibility_warning(graph, game)
    phi = shapley_marginal(LinkGame(graph, game).coalition_game(), cap=cap)
    return EdgePowerVector(
        values=phi,
        edges=graph.edges,
        method="link_shapley_exact",
        game=game.name,
        warning=warning,
    )


def _halve_onto_nodes(graph: Graph, edge_values) -> tuple:
    out = []
    for i in range(graph.n):
        acc = Fraction(0)
        for e in graph.incident[i]:
            acc += edge_values[e]
        out.append(acc / 2)
    return tuple(out)


def _position_marginal(graph: Graph, game: SymmetricGame, cap: int) -> tuple:
    phi = shapley_marginal(LinkGame(graph, game).coalition_game(), cap=cap)
    return _halve_onto_nodes(graph, phi)


def _position_dividends(graph: Graph, game: SymmetricGame) -> tuple:
    m = graph.m
    # per (edge, subset size) integer accumulators; one exact division per size
    acc = [[0] * (m + 1) for _ in range(m)]
    if m <= _TRANSFORM_LIMIT:
        lam = list(LinkGame(graph, game).value_table())
        mobius_transform(lam, m)
        for mask in range(1, 1 << m):
            d = lam[mask]
            if d == 0:
                continue
            size = mask.bit_count()
            rem = mask
            while rem:
                low = rem & -rem
                acc[low.bit_length() - 1][size] += d
                rem ^= low
    else:
        # large sparse graphs: walk connected subsets only (every other
        # dividend vanishes) and let the dispatcher collapse the cycle-free
        # ones to the (l, d) closed form
        lg = LinkGame(graph, game)
        seen = 0
        for mask in connected_edge_subsets(graph):
            seen += 1
            if seen == _EXPANSION_WARN:
                warnings.warn(
                    "connected-subgraph expansion passed 1e8 subsets; "
                    "consider the Monte-Carlo sampler"
                )
            d = lg.dividend(mask)
            if d == 0:
                continue
            size = mask.bit_count()
            rem = mask
            while rem:
                low = rem & -rem
                acc[low.bit_length() - 1][size] += d
                rem ^= low
    psi = []
    for e in range(m):
        total = Fraction(0)
        for size in range(1, m + 1):
            if acc[e][size]:
                total += Fraction(acc[e][size]) / size
        psi.append(total)
    return _halve_onto_nodes(graph, psi)


def position_centrality_exact(
    graph: Graph,
    game: SymmetricGame,
    cap: int = DEFAULT_EDGE_CAP,
    engine: str = "marginal",
) -> CentralityVector:
    """Exact position centrality.

    ``engine="marginal"`` runs the link-game Shapley sum (capped at ``cap``
    edges); ``engine="dividends"`` runs the dividend sum, which prunes every
    disconnected edge subset and has no hard cap.  The two engines agree
    exactly on every input.
    """
    warning = _admissibility_warning(graph, game)
    if engine == "marginal":
        if graph.m > cap:
            raise CapExceededError(
                f"{graph.m} edges exceed the exact position cap {cap}; "
                "use the Monte-Carlo sampler"
            )
        values = _position_marginal(graph, game, cap)
        method = "position_exact_marginal"
    elif engine == "dividends":
        values = _position_dividends(graph, game)
        method = "position_exact_dividends"
    else:
        raise ValueError(f"unknown engine {engine!r}")
    return CentralityVector(values=values, method=method, game=game.name, warning=warning)


# -- position: sampled ---------------------------------------------------------


def position_centrality_mc(
    graph: Graph,
    game: SymmetricGame,
    samples: int,
    seed: int,
) -> CentralityVector:
    """Unbiased Monte-Carlo estimate of position centrality.

    Each sample draws a uniform arrival order of the edges, accumulates the
    link-game marginal of every edge under an incremental union-find, and
    halves it onto the edge's endpoints.  Identical ``(seed, samples)``
    reproduce identical output bit for bit.
    """
    from . import sampling

    res = sampling.sample_link_shapley(graph, game, samples, seed)
    return CentralityVector(
        values=tuple(res.node_mean),
        method="position_mc",
        game=game.name,
        seed=seed,
        samples=samples,
        stderr=tuple(res.node_stderr),
        rng=sampling.RNG_NAME,
    )


def edge_power_mc(
    graph: Graph, game: SymmetricGame, samples: int, seed: int
) -> EdgePowerVector:
    """Monte-Carlo estimate of the link-game Shapley value per edge."""
    from . import sampling

    res = sampling.sample_link_shapley(graph, game, samples, seed)
    return EdgePowerVector(
        values=tuple(res.edge_mean),
        edges=graph.edges,
        method="link_shapley_mc",
        game=game.name,
        seed=seed,
        samples=samples,
    )


# -- attachment ----------------------------------------------------------------


def attachment_centralities(
    graph: Graph,
    node_cap: int = DEFAULT_NODE_CAP,
    edge_cap: int = DEFAULT_EDGE_CAP,
    mc_samples: int = 2_000_000,
    seed: int = 0,
) -> tuple[CentralityVector, CentralityVector]:
    """Attachment (myerson-based) and position-attachment centralities.

    The position side falls back to the Monte-Carlo sampler when the edge
    count exceeds the exact cap.  On trees both centralities equal the node
    degrees.
    """
    game = attachment()
    a = myerson_centrality(graph, game, cap=node_cap)
    a = CentralityVector(values=a.values, method="attachment_exact", game=game.name)
    try:
        pa = position_centrality_exact(graph, game, cap=edge_cap)
        pa = CentralityVector(
            values=pa.values, method="position_attachment_exact", game=game.name
        )
    except CapExceededError:
        mc = position_centrality_mc(graph, game, mc_samples, seed)
        pa = CentralityVector(
            values=mc.values,
            method="position_attachment_mc",
            game=game.name,
            seed=seed,
            samples=mc_samples,
            stderr=mc.stderr,
            rng=mc.rng,
        )
    return a, pa


# -- chains --------------------------------------------------------------------


def chain_position_closed_form(n: int, game: SymmetricGame) -> CentralityVector:
    """Position centrality along an ``n``-node chain via the edge-power
    recursion ``power(e_j) = power(e_{j-1}) + sum_{k=j}^{n-j} F(k+1,2)/k``.

    Matches the exact engines for every symmetric game; the monotone
    middle-outward ordering is guaranteed for convex games.
    """
    if n < 2:
        raise ValueError("a chain needs at least two nodes")
    power = [Fraction(0)] * n  # power[j] is edge {j-1, j}; power[0] is a sentinel
    for j in range(1, n // 2 + 1):
        step = Fraction(0)
        for k in range(j, n - j + 1):
            step += Fraction(f_transform(game, k + 1, 2)) / k
        power[j] = power[j - 1] + step
    for j in range(n // 2 + 1, n):
        power[j] = power[n - j]
    values = []
    for i in range(n):
        left = power[i] if i >= 1 else Fraction(0)
        right = power[i + 1] if i + 1 <= n - 1 else Fraction(0)
        values.append((left + right) / 2)
    return CentralityVector(values=tuple(values), method="closed_form", game=game.name)


def component_sums(graph: Graph, vector: CentralityVector) -> list:
    """Per-component totals, for efficiency checks and shares."""
    out = []
    for block in graph.components_of_nodes(range(graph.n)).blocks:
        out.append((block, sum(vector.values[i] for i in block)))
    return out
