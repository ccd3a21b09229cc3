"""Edge-addition experiments, joined-star closed forms, and axiom checks.

Adding an edge splits the node set into four roles: the two end nodes, the
*intermediaries* (nodes on some minimal connecting subgraph between the two
ends before the addition), the *bypassed* intermediaries (on every such
subgraph — the label is interpretive, the guarantees below only distinguish
intermediaries), and everyone else.  For the attachment game the measured
effect is provably signed: end nodes never lose, intermediaries never gain,
and the untouched remainder keeps its value exactly — the delta engine
verifies the sign pattern whenever it computes exactly, and pins the exact
zeros when estimating by sampling.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import families
from .centrality import (
    CentralityVector,
    DEFAULT_EDGE_CAP,
    DEFAULT_NODE_CAP,
    edge_power,
    edge_power_mc,
    myerson_centrality,
    position_centrality_exact,
    position_centrality_mc,
)
from .games import SymmetricGame, attachment, messages
from .graph import Graph

END_NODE = "end_node"
INTERMEDIARY = "intermediary"
BYPASSED = "bypassed"
UNAFFECTED = "unaffected"

MEASURES = ("myerson", "position", "attachment", "pa")


def classify_nodes(graph: Graph, i0: int, j0: int) -> dict[int, str]:
    """Role of every node for the prospective edge ``{i0, j0}``.

    Bypassed nodes are the intermediaries lying on *every* minimal
    connecting subgraph between the ends.
    """
    minimal = graph.minimal_connecting_subgraphs({i0, j0})
    union, inter = 0, -1
    for emask in minimal:
        covered = graph.covered_nodes(emask)
        union |= covered
        inter &= covered
    ends = {i0, j0}
    roles = {}
    for node in range(graph.n):
        if node in ends:
            roles[node] = END_NODE
        elif (union >> node) & 1:
            roles[node] = BYPASSED if minimal and (inter >> node) & 1 else INTERMEDIARY
        else:
            roles[node] = UNAFFECTED
    return roles


@dataclass(frozen=True)
class DeltaEntry:
    before: object
    after: object
    delta: object
    relative: object | None = None  # percent, None when before == 0


@dataclass
class DeltaReport:
    """Before/after comparison for one added edge."""

    added_edge: tuple[int, int]
    game: str
    method: str
    classification: dict[int, str]
    per_node: dict[str, dict[int, DeltaEntry]]
    per_edge: dict[tuple[int, int], DeltaEntry]
    edge_game: str
    seed: int | None = None
    samples: int | None = None
    warnings: list[str] = field(default_factory=list)


def _entry(before, after) -> DeltaEntry:
    delta = after - before
    rel = None
    if before != 0:
        if isinstance(before, float) or isinstance(after, float):
            rel = delta / before * 100
        else:
            rel = Fraction(delta) / before * 100
    return DeltaEntry(before, after, delta, rel)


def _measure_vectors(
    measure: str,
    g_before: Graph,
    g_after: Graph,
    game: SymmetricGame,
    method: str,
    samples: int,
    seed: int,
    node_cap: int,
    edge_cap: int,
) -> tuple[CentralityVector, CentralityVector]:
    if measure == "myerson":
        return (
            myerson_centrality(g_before, game, cap=node_cap),
            myerson_centrality(g_after, game, cap=node_cap),
        )
    if measure == "attachment":
        return (
            myerson_centrality(g_before, attachment(), cap=node_cap),
            myerson_centrality(g_after, attachment(), cap=node_cap),
        )
    played = game if measure == "position" else attachment()
    if method == "exact":
        return (
            position_centrality_exact(g_before, played, cap=edge_cap),
            position_centrality_exact(g_after, played, cap=edge_cap),
        )
    return (
        position_centrality_mc(g_before, played, samples, seed),
        position_centrality_mc(g_after, played, samples, seed + 1),
    )


def _check_attachment_signs(report: DeltaReport, measure: str) -> None:
    deltas = report.per_node[measure]
    for node, role in report.classification.items():
        d = deltas[node].delta
        if role == END_NODE and d < 0:
            raise AssertionError(f"end node {node} lost {measure} value: {d}")
        if role in (INTERMEDIARY, BYPASSED) and d > 0:
            raise AssertionError(f"intermediary {node} gained {measure} value: {d}")
        if role == UNAFFECTED and d != 0:
            raise AssertionError(f"untouched node {node} moved by {d}")


def edge_addition_delta(
    graph: Graph,
    e0: tuple[int, int],
    game: SymmetricGame,
    measures=("position",),
    method: str = "exact",
    samples: int = 1_000_000,
    seed: int = 0,
    node_cap: int = DEFAULT_NODE_CAP,
    edge_cap: int = DEFAULT_EDGE_CAP,
) -> DeltaReport:
    """Centrality and edge-power changes caused by adding one edge.

    ``measures`` may contain any of ``myerson``, ``position`` (both under
    ``game``), ``attachment`` and ``pa`` (always under the attachment game).
    ``method`` switches the position-type measures between the exact engines
    and the seeded sampler; myerson-type measures are always exact.
    """
    i0, j0 = e0
    g_after = graph.add_edge(i0, j0)  # validates the edge is new
    for measure in measures:
        if measure not in MEASURES:
            raise ValueError(f"unknown measure {measure!r}")
    classification = classify_nodes(graph, i0, j0)

    per_node: dict[str, dict[int, DeltaEntry]] = {}
    warn: list[str] = []
    for measure in measures:
        before, after = _measure_vectors(
            measure, graph, g_after, game, method, samples, seed, node_cap, edge_cap
        )
        entries = {
            node: _entry(before.values[node], after.values[node])
            for node in range(graph.n)
        }
        if measure == "pa" and method == "mc":
            # the exact classification pins these at zero; the sampler only
            # adds noise around it
            for node, role in classification.items():
                if role == UNAFFECTED:
                    e = entries[node]
                    entries[node] = DeltaEntry(e.before, e.before, 0.0, 0.0)
        per_node[measure] = entries
        if before.warning:
            warn.append(before.warning)

    edge_game = game if ("position" in measures or "myerson" in measures) else attachment()
    if method == "exact":
        ep_before = edge_power(graph, edge_game, cap=edge_cap)
        ep_after = edge_power(g_after, edge_game, cap=edge_cap)
    else:
        ep_before = edge_power_mc(graph, edge_game, samples, seed + 2)
        ep_after = edge_power_mc(g_after, edge_game, samples, seed + 3)
    per_edge = {
        graph.edges[e]: _entry(ep_before.values[e], ep_after.values[e])
        for e in range(graph.m)
    }
    new_id = g_after.edge_id(i0, j0)
    new_val = ep_after.values[new_id]
    per_edge[g_after.edges[new_id]] = DeltaEntry(None, new_val, None)

    report = DeltaReport(
        added_edge=(min(i0, j0), max(i0, j0)),
        game=game.name,
        method=method,
        classification=classification,
        per_node=per_node,
        per_edge=per_edge,
        edge_game=edge_game.name,
        seed=seed if method == "mc" else None,
        samples=samples if method == "mc" else None,
        warnings=warn,
    )
    if method == "exact":
        for measure in measures:
            if measure == "pa":
                _check_attachment_signs(report, measure)
    return report


# -- joined stars ----------------------------------------------------------


@dataclass(frozen=True)
class TwoStarReport:
    """Closed-form centrality increments when two star hubs get bridged,
    against the exact engines (messages game)."""

    k1: int
    k2: int
    myerson_hub1: Fraction
    myerson_hub2: Fraction
    position_hub1: Fraction
    position_hub2: Fraction
    myerson_satellite1: Fraction
    myerson_satellite2: Fraction
    position_satellite1: Fraction
    position_satellite2: Fraction
    bridge_power: Fraction
    bridge_over_spoke1: Fraction
    bridge_over_spoke2: Fraction
    engine: dict
    verified: bool


def two_star_closed_forms(
    k1: int, k2: int, game: SymmetricGame | None = None, verify: bool = True
) -> TwoStarReport:
    """Closed forms for bridging a ``k1``-leaf and a ``k2``-leaf star.

    With ``verify`` (the default, feasible while the joined graph stays
    within the exact caps) every increment is recomputed by the exact
    engines and compared as rationals.
    """
    if game is None:
        game = messages()
    if game.name != "messages":
        raise ValueError(f"closed forms cover the messages game, not {game.name!r}")
    f = Fraction
    closed = {
        "myerson_hub1": 1 + f(2, 3) * (k1 + k2) + f(k1 * k2, 2),
        "myerson_hub2": 1 + f(2, 3) * (k1 + k2) + f(k1 * k2, 2),
        "position_hub1": 1 + k1 + f(k2, 2) + f(2 * k1 * k2, 3),
        "position_hub2": 1 + k2 + f(k1, 2) + f(2 * k1 * k2, 3),
        "myerson_satellite1": f(2, 3) + f(k2, 2),
        "myerson_satellite2": f(2, 3) + f(k1, 2),
        "position_satellite1": f(1, 2) + f(k2, 3),
        "position_satellite2": f(1, 2) + f(k1, 3),
        "bridge_power": 2 + k1 + k2 + f(2 * k1 * k2, 3),
    }

    engine: dict = {}
    verified = False
    if verify:
        g, hub1, hub2 = families.two_stars(k1, k2)
        bridged = g.add_edge(hub1, hub2)
        mu_b = myerson_centrality(g, game)
        mu_a = myerson_centrality(bridged, game)
        pi_b = position_centrality_exact(g, game)
        pi_a = position_centrality_exact(bridged, game)
        sat1, sat2 = hub1 + 1, hub2 + 1  # first leaf of each star
        engine = {
            "myerson_hub1": mu_a.values[hub1] - mu_b.values[hub1],
            "myerson_hub2": mu_a.values[hub2] - mu_b.values[hub2],
            "position_hub1": pi_a.values[hub1] - pi_b.values[hub1],
            "position_hub2": pi_a.values[hub2] - pi_b.values[hub2],
            "myerson_satellite1": mu_a.values[sat1] - mu_b.values[sat1],
            "myerson_satellite2": mu_a.values[sat2] - mu_b.values[sat2],
            "position_satellite1": pi_a.values[sat1] - pi_b.values[sat1],
            "position_satellite2": pi_a.values[sat2] - pi_b.values[sat2],
            "bridge_power": edge_power(bridged, game).values[bridged.edge_id(hub1, hub2)],
        }
        verified = all(engine[k] == closed[k] for k in closed)
    return TwoStarReport(
        k1=k1,
        k2=k2,
        **{k: Fraction(v) for k, v in closed.items()},
        bridge_over_spoke1=closed["bridge_power"]
        / (f(2, 3) * k2 + k1 + 2),
        bridge_over_spoke2=closed["bridge_power"]
        / (k2 + f(2, 3) * k1 + 2),
        engine=engine,
        verified=verified,
    )


def bridge_power_ratio_limits(k1: int) -> tuple[Fraction, Fraction]:
    """Limits of bridge power over spoke power as the far star grows."""
    return Fraction(3, 2) + k1, 1 + Fraction(2, 3) * k1


# -- axioms ------------------------------------------------------------------


AXIOMS = (
    "component_efficiency",
    "fairness",
    "balanced_link_contributions",
    "locality",
    "gain_loss",
    "normalisation",
)


@dataclass(frozen=True)
class AxiomWitness:
    description: str
    lhs: object
    rhs: object


@dataclass(frozen=True)
class AxiomReport:
    axiom: str
    holds: bool
    witnesses: tuple[AxiomWitness, ...]


def _witnessed(axiom: str, witnesses: list[AxiomWitness]) -> AxiomReport:
    return AxiomReport(axiom, not witnesses, tuple(witnesses))


def check_axiom(axiom: str, graph: Graph, game: SymmetricGame, measure) -> AxiomReport:
    """Exhaustively verify one axiom for ``measure`` (a Graph -> vector
    callable) on the given graph; exact rational comparison, no tolerance."""
    if axiom not in AXIOMS:
        raise ValueError(f"unknown axiom {axiom!r}")
    sigma = measure(graph)
    witnesses: list[AxiomWitness] = []

    if axiom == "component_efficiency":
        for block in graph.components_of_nodes(range(graph.n)).blocks:
            got = sum(sigma.values[i] for i in block)
            want = game.f(len(block))
            if got != want:
                witnesses.append(AxiomWitness(f"component {sorted(block)}", got, want))

    elif axiom == "fairness":
        for i, j in graph.edges:
            removed = measure(graph.remove_edge(i, j))
            di = sigma.values[i] - removed.values[i]
            dj = sigma.values[j] - removed.values[j]
            if di != dj:
                witnesses.append(AxiomWitness(f"edge ({i},{j})", di, dj))

    elif axiom == "balanced_link_contributions":
        dropped = {e: measure(graph.remove_edge(*e)) for e in graph.edges}
        for i in range(graph.n):
            for j in range(i + 1, graph.n):
                lhs = sum(
                    sigma.values[i] - dropped[graph.edges[e]].values[i]
                    for e in graph.incident[j]
                )
                rhs = sum(
                    sigma.values[j] - dropped[graph.edges[e]].values[j]
                    for e in graph.incident[i]
                )
                if lhs != rhs:
                    witnesses.append(AxiomWitness(f"nodes {i}, {j}", lhs, rhs))

    elif axiom == "locality":
        for block in graph.components_of_nodes(range(graph.n)).blocks:
            sub, remap = graph.induced_subgraph(block)
            local = measure(sub)
            for node in block:
                if sigma.values[node] != local.values[remap[node]]:
                    witnesses.append(
                        AxiomWitness(
                            f"node {node} in component {sorted(block)}",
                            sigma.values[node],
                            local.values[remap[node]],
                        )
                    )

    elif axiom == "gain_loss":
        if graph.is_connected():
            total = sum(sigma.values)
            for i in range(graph.n):
                for j in range(i + 1, graph.n):
                    if graph.has_edge(i, j):
                        continue
                    grown = sum(measure(graph.add_edge(i, j)).values)
                    if grown != total:
                        witnesses.append(AxiomWitness(f"added edge ({i},{j})", grown, total))

    elif axiom == "normalisation":
        n = graph.n
        for i in range(n):
            v = sigma.values[i]
            if not (0 <= v <= n - 1):
                witnesses.append(AxiomWitness(f"node {i} out of [0, n-1]", v, n - 1))
            if graph.degree(i) == 0 and v != 0:
                witnesses.append(AxiomWitness(f"isolated node {i}", v, 0))
        # the axiom quantifies over all graphs; the star pins the scale
        if n >= 2:
            ref = families.star(n)
            hub_val = measure(ref).values[0]
            if hub_val != n - 1:
                witnesses.append(AxiomWitness(f"hub of the {n}-node star", hub_val, n - 1))

    return _witnessed(axiom, witnesses)


def pa_measure(graph: Graph) -> CentralityVector:
    return position_centrality_exact(graph, attachment())


def perturbed_pa_measure(shift: Fraction = Fraction(1, 2)):
    """A deliberately broken measure: position-attachment plus a constant."""

    def measure(graph: Graph) -> CentralityVector:
        base = pa_measure(graph)
        return CentralityVector(
            values=tuple(v + shift for v in base.values),
            method="perturbed",
            game=base.game,
        )

    return measure


CHARACTERISATION_AXIOMS = (
    "locality",
    "normalisation",
    "gain_loss",
    "balanced_link_contributions",
)


@dataclass(frozen=True)
class ProbeReport:
    reports: dict[str, AxiomReport]
    all_pass: bool
    perturbed_reports: dict[str, AxiomReport]
    perturbed_detected: bool


def characterisation_probe(graph: Graph) -> ProbeReport:
    """Run the four characterising axioms for the position-attachment
    measure on one graph, and show the checker has teeth by also running a
    perturbed measure that must produce a witness."""
    game = attachment()
    reports = {
        a: check_axiom(a, graph, game, pa_measure) for a in CHARACTERISATION_AXIOMS
    }
    broken = perturbed_pa_measure()
    perturbed = {
        a: check_axiom(a, graph, game, broken) for a in CHARACTERISATION_AXIOMS
    }
    return ProbeReport(
        reports=reports,
        all_pass=all(r.holds for r in reports.values()),
        perturbed_reports=perturbed,
        perturbed_detected=any(not r.holds for r in perturbed.values()),
    )


def search_end_node_losses(max_nodes: int, games) -> list[dict]:
    """Scan small connected graphs for an added edge whose end node loses
    position value.  Reported, never asserted: none is known."""
    found = []
    for g in families.connected_graphs(max_nodes=max_nodes):
        for i in range(g.n):
            for j in range(i + 1, g.n):
                if g.has_edge(i, j):
                    continue
                grown = g.add_edge(i, j)
                for game in games:
                    before = position_centrality_exact(g, game)
                    after = position_centrality_exact(grown, game)
                    for node in (i, j):
                        d = after.values[node] - before.values[node]
                        if d < 0:
                            found.append(
                                {
                                    "graph": list(g.edges),
                                    "added": (i, j),
                                    "game": game.name,
                                    "node": node,
                                    "delta": d,
                                }
                            )
    return found
