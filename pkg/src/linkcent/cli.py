"""Command-line front door.

Subcommands::

    linkcent centrality --graph FILE --game messages --measure myerson
    linkcent delta      --graph FILE --add 1,14 --game attachment --measures attachment,pa
    linkcent axioms     --measure pa --max-n 5
    linkcent two-stars  --k1 2 --k2 5
    linkcent dividends  --graph FILE --game messages

Graphs load from the edge-list text format (first line ``n m``, then ``i j``
per line, 0-based) or from ``.json`` files ``{"n":..., "edges":[[i,j],...]}``.
Games are catalog names or a path to a JSON file ``{"name":..., "f":[...]}``.
Identical invocations (including ``--seed``) produce byte-identical output.
Exit status is 0 on success; failures print a JSON error object to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import analysis, families, report
from .centrality import (
    DEFAULT_EDGE_CAP,
    DEFAULT_NODE_CAP,
    attachment_centralities,
    myerson_centrality,
    position_centrality_exact,
    position_centrality_mc,
)
from .games import CATALOG, SymmetricGame, attachment, game_from_json_obj, messages
from .graph import load_graph
from .linkgame import LinkGame

MEASURE_CHOICES = ("myerson", "position", "attachment", "pa")


def _load_game(spec: str) -> SymmetricGame:
    if spec in CATALOG:
        return CATALOG[spec]()
    path = Path(spec)
    if path.suffix.lower() == ".json" and path.exists():
        return game_from_json_obj(json.loads(path.read_text(encoding="utf-8")))
    raise ValueError(
        f"unknown game {spec!r}; expected one of {sorted(CATALOG)} or a JSON file"
    )


def _caps(args) -> tuple[int, int]:
    node_cap = args.node_cap
    if node_cap is None:
        node_cap = int(os.environ.get("LINKCENT_NODE_CAP", DEFAULT_NODE_CAP))
    edge_cap = args.edge_cap
    if edge_cap is None:
        edge_cap = int(os.environ.get("LINKCENT_EDGE_CAP", DEFAULT_EDGE_CAP))
    if node_cap < 1 or edge_cap < 1:
        raise ValueError("caps must be positive")
    return node_cap, edge_cap


def _add_common(p: argparse.ArgumentParser, fmt_default: str) -> None:
    p.add_argument("--out", metavar="PATH", default=None, help="output path (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default=fmt_default)
    p.add_argument("--figures", metavar="DIR", default=None,
                   help="also render figures into this directory")
    p.add_argument("--threads", type=int, default=0,
                   help="worker hint; 1 forces fully serial execution (engines "
                        "are deterministic regardless)")
    p.add_argument("--node-cap", type=int, default=None,
                   help=f"exact myerson cap (default {DEFAULT_NODE_CAP}, env LINKCENT_NODE_CAP)")
    p.add_argument("--edge-cap", type=int, default=None,
                   help=f"exact position cap (default {DEFAULT_EDGE_CAP}, env LINKCENT_EDGE_CAP)")


def _figdir(args) -> Path | None:
    if args.figures is None:
        return None
    d = Path(args.figures)
    d.mkdir(parents=True, exist_ok=True)
    return d


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="linkcent", description=__doc__,
                                  formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("centrality", help="compute one centrality vector")
    p.add_argument("--graph", required=True)
    p.add_argument("--game", default="messages")
    p.add_argument("--measure", choices=MEASURE_CHOICES, default="myerson")
    p.add_argument("--method", choices=("exact", "mc"), default="exact")
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=None)
    _add_common(p, "csv")

    p = sub.add_parser("delta", help="edge-addition before/after report")
    p.add_argument("--graph", required=True)
    p.add_argument("--add", required=True, metavar="I,J")
    p.add_argument("--game", default="messages")
    p.add_argument("--measures", default="position",
                   help="comma list from: " + ",".join(MEASURE_CHOICES))
    p.add_argument("--method", choices=("exact", "mc"), default="exact")
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=None)
    _add_common(p, "json")

    p = sub.add_parser("axioms", help="verify centrality axioms on a graph sweep")
    p.add_argument("--measure", choices=("pa", "myerson"), default="pa")
    p.add_argument("--game", default="messages",
                   help="game for the myerson measure (pa always plays attachment)")
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--perturbed", action="store_true",
                   help="run the deliberately broken measure instead")
    _add_common(p, "json")

    p = sub.add_parser("two-stars", help="closed forms for bridging two star hubs")
    p.add_argument("--k1", type=int, required=True)
    p.add_argument("--k2", type=int, required=True)
    p.add_argument("--game", default="messages")
    _add_common(p, "json")

    p = sub.add_parser("dividends", help="link-game dividend spectrum as CSV")
    p.add_argument("--graph", required=True)
    p.add_argument("--game", default="messages")
    _add_common(p, "csv")

    return top


def _cmd_centrality(args) -> str:
    node_cap, edge_cap = _caps(args)
    g = load_graph(args.graph)
    game = _load_game(args.game)
    if args.method == "mc":
        if args.seed is None:
            raise ValueError("--seed is required when --method mc")
        played = attachment() if args.measure == "pa" else game
        if args.measure in ("myerson", "attachment"):
            raise ValueError("myerson-type measures have no sampler; use --method exact")
        vec = position_centrality_mc(g, played, args.samples, args.seed)
    elif args.measure == "myerson":
        vec = myerson_centrality(g, game, cap=node_cap)
    elif args.measure == "position":
        vec = position_centrality_exact(g, game, cap=edge_cap)
    elif args.measure == "attachment":
        vec, _ = attachment_centralities(g, node_cap=node_cap, edge_cap=edge_cap)
    else:  # pa
        _, vec = attachment_centralities(g, node_cap=node_cap, edge_cap=edge_cap)

    figdir = _figdir(args)
    if figdir is not None:
        report.save_centrality_figure(vec, figdir / f"centrality_{args.measure}.png")
    if args.format == "csv":
        return report.centrality_csv(vec)
    return report.dump_json(report.centrality_json_obj(vec))


def _cmd_delta(args) -> str:
    node_cap, edge_cap = _caps(args)
    g = load_graph(args.graph)
    game = _load_game(args.game)
    try:
        i, j = (int(x) for x in args.add.split(","))
    except ValueError:
        raise ValueError(f"--add expects 'i,j', got {args.add!r}") from None
    measures = tuple(m.strip() for m in args.measures.split(",") if m.strip())
    if args.method == "mc" and args.seed is None:
        raise ValueError("--seed is required when --method mc")
    rep = analysis.edge_addition_delta(
        g,
        (i, j),
        game,
        measures=measures,
        method=args.method,
        samples=args.samples,
        seed=args.seed if args.seed is not None else 0,
        node_cap=node_cap,
        edge_cap=edge_cap,
    )
    figdir = _figdir(args)
    if figdir is not None:
        report.save_delta_figure(rep, figdir / "delta.png")
    if args.format == "csv":
        raise ValueError("delta reports are JSON only")
    return report.dump_json(report.delta_json_obj(rep))


def _cmd_axioms(args) -> str:
    if args.measure == "pa":
        game = attachment()
        measure = (
            analysis.perturbed_pa_measure() if args.perturbed else analysis.pa_measure
        )
        axioms = analysis.CHARACTERISATION_AXIOMS + ("component_efficiency",)
    else:
        game = _load_game(args.game)
        measure = lambda g: myerson_centrality(g, game)  # noqa: E731
        axioms = ("component_efficiency", "fairness")
    sweep = families.connected_graphs(max_nodes=args.max_n)
    reports = {
        axiom: [analysis.check_axiom(axiom, g, game, measure) for g in sweep]
        for axiom in axioms
    }
    obj = report.axiom_reports_json_obj(reports)
    obj["measure"] = "pa-perturbed" if args.perturbed else args.measure
    obj["max_n"] = args.max_n
    return report.dump_json(obj)


def _cmd_two_stars(args) -> str:
    rep = analysis.two_star_closed_forms(args.k1, args.k2, _load_game(args.game))
    figdir = _figdir(args)
    if figdir is not None:
        report.save_two_star_figure(rep, figdir / "two_stars.png")
    return report.dump_json(report.two_star_json_obj(rep))


def _cmd_dividends(args) -> str:
    node_cap, edge_cap = _caps(args)
    g = load_graph(args.graph)
    game = _load_game(args.game)
    if g.m > edge_cap:
        raise ValueError(
            f"{g.m} edges exceed the cap {edge_cap} for a full dividend spectrum"
        )
    rows = report.dividend_rows(g, LinkGame(g, game))
    if args.format == "json":
        obj = {
            "kind": "dividends",
            "game": game.name,
            "rows": [
                {
                    "mask": r["mask"],
                    "l": r["l"],
                    "d": r["d"],
                    "dividend": report.exact_str(r["dividend"]),
                }
                for r in rows
            ],
        }
        return report.dump_json(obj)
    return report.dividend_csv(rows)


_DISPATCH = {
    "centrality": _cmd_centrality,
    "delta": _cmd_delta,
    "axioms": _cmd_axioms,
    "two-stars": _cmd_two_stars,
    "dividends": _cmd_dividends,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "threads", 0) < 0:
        _fail("ValueError", "--threads must be nonnegative")
        return 2
    try:
        text = _DISPATCH[args.command](args)
    except (ValueError, OSError, KeyError) as exc:
        _fail(type(exc).__name__, str(exc))
        return 1
    report.write_text(args.out, text)
    return 0


def _fail(kind: str, message: str) -> None:
    sys.stderr.write(json.dumps({"error": {"type": kind, "message": message}}) + "\n")


if __name__ == "__main__":
    raise SystemExit(main())
