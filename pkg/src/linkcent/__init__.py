"""Link-based game-theoretic centrality for undirected networks."""

from .analysis import (
    AxiomReport,
    DeltaReport,
    TwoStarReport,
    characterisation_probe,
    check_axiom,
    classify_nodes,
    edge_addition_delta,
    two_star_closed_forms,
)
from .centrality import (
    CentralityVector,
    EdgePowerVector,
    attachment_centralities,
    chain_position_closed_form,
    edge_power,
    myerson_centrality,
    position_centrality_exact,
    position_centrality_mc,
)
from .games import (
    CATALOG,
    CapExceededError,
    CoalitionGame,
    SymmetricGame,
    attachment,
    attachment_messages,
    conferences,
    custom_game,
    harsanyi_dividend,
    messages,
    overhead,
    shapley_dividends,
    shapley_marginal,
)
from .graph import ComponentPartition, Graph, load_graph, parse_edgelist
from .linkgame import LinkGame, RestrictedGame, connected_edge_subsets, f_transform

__version__ = "0.1.0"

__all__ = [
    "AxiomReport",
    "CATALOG",
    "CapExceededError",
    "CentralityVector",
    "CoalitionGame",
    "ComponentPartition",
    "DeltaReport",
    "EdgePowerVector",
    "Graph",
    "LinkGame",
    "RestrictedGame",
    "SymmetricGame",
    "TwoStarReport",
    "attachment",
    "attachment_centralities",
    "attachment_messages",
    "chain_position_closed_form",
    "characterisation_probe",
    "check_axiom",
    "classify_nodes",
    "conferences",
    "connected_edge_subsets",
    "custom_game",
    "edge_addition_delta",
    "edge_power",
    "f_transform",
    "harsanyi_dividend",
    "load_graph",
    "messages",
    "myerson_centrality",
    "overhead",
    "parse_edgelist",
    "position_centrality_exact",
    "position_centrality_mc",
    "shapley_dividends",
    "shapley_marginal",
    "two_star_closed_forms",
]
