"""Report emission: delimited output, JSON objects, and figure rendering.

Exact rationals are serialized as ``"p/q"`` strings next to 6-decimal floats
so downstream tooling never loses precision silently.  All emitters are
deterministic: identical inputs yield identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .analysis import AxiomReport, DeltaReport, TwoStarReport
from .centrality import CentralityVector, EdgePowerVector

_PNG_METADATA = {"Software": "linkcent"}


def exact_str(x) -> str | None:
    if x is None:
        return None
    if isinstance(x, float):
        return None  # sampled values carry no exact form
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def approx(x) -> float | None:
    if x is None:
        return None
    return float(f"{float(x):.6f}")


def _value_obj(x) -> dict:
    obj = {"value": approx(x)}
    e = exact_str(x)
    if e is not None:
        obj["exact"] = e
    return obj


# -- centrality --------------------------------------------------------------


def centrality_csv(vector: CentralityVector) -> str:
    sampled = vector.stderr is not None
    lines = ["node,value,stderr" if sampled else "node,value,exact"]
    for i, v in enumerate(vector.values):
        if sampled:
            lines.append(f"{i},{float(v):.6f},{vector.stderr[i]:.6f}")
        else:
            lines.append(f"{i},{float(v):.6f},{exact_str(v)}")
    return "\n".join(lines) + "\n"


def centrality_json_obj(vector: CentralityVector) -> dict:
    total = vector.total()
    values = {}
    for i, v in enumerate(vector.values):
        obj = _value_obj(v)
        if total != 0:
            obj["share_percent"] = approx(100 * Fraction(v) / Fraction(total)) if not isinstance(v, float) else approx(100 * v / float(total))
        if vector.stderr is not None:
            obj["stderr"] = approx(vector.stderr[i])
        values[str(i)] = obj
    out = {
        "kind": "centrality",
        "method": vector.method,
        "game": vector.game,
        "values": values,
        "total": _value_obj(total),
    }
    if vector.seed is not None:
        out["seed"] = vector.seed
        out["samples"] = vector.samples
        out["rng"] = vector.rng
    if vector.warning:
        out["warning"] = vector.warning
    return out


def edge_power_csv(vector: EdgePowerVector) -> str:
    sampled = vector.seed is not None
    lines = ["edge,value,stderr" if sampled else "edge,value,exact"]
    for (i, j), v in zip(vector.edges, vector.values):
        tail = "" if sampled else f",{exact_str(v)}"
        lines.append(f"{i}-{j},{float(v):.6f}{tail}")
    return "\n".join(lines) + "\n"


# -- dividend spectra ----------------------------------------------------------


def dividend_rows(graph, link_game) -> list[dict]:
    """One row per nonempty connected edge subset: mask, size, cutedge count
    when cycle-free, dividend.  Disconnected subsets vanish and are omitted."""
    from .linkgame import connected_edge_subsets

    rows = []
    for mask in sorted(connected_edge_subsets(graph)):
        forest = graph.is_cycle_free(mask)
        rows.append(
            {
                "mask": mask,
                "l": mask.bit_count(),
                "d": graph.cutedges(mask).bit_count() if forest else None,
                "dividend": link_game.dividend(mask),
            }
        )
    return rows


def dividend_csv(rows: list[dict]) -> str:
    lines = ["mask,l,d,dividend"]
    for r in rows:
        d = "" if r["d"] is None else r["d"]
        lines.append(f"{r['mask']},{r['l']},{d},{exact_str(r['dividend'])}")
    return "\n".join(lines) + "\n"


# -- delta ---------------------------------------------------------------------


def delta_json_obj(report: DeltaReport) -> dict:
    per_node = {}
    for measure, entries in report.per_node.items():
        per_node[measure] = {
            str(node): {
                "before": _value_obj(e.before),
                "after": _value_obj(e.after),
                "delta": _value_obj(e.delta),
                "relative_percent": approx(e.relative),
            }
            for node, e in entries.items()
        }
    per_edge = {}
    for (i, j), e in sorted(report.per_edge.items()):
        per_edge[f"{i}-{j}"] = {
            "before": _value_obj(e.before) if e.before is not None else None,
            "after": _value_obj(e.after),
            "delta": _value_obj(e.delta) if e.delta is not None else None,
        }
    out = {
        "kind": "delta",
        "added_edge": list(report.added_edge),
        "game": report.game,
        "method": report.method,
        "classification": {str(n): r for n, r in report.classification.items()},
        "per_node": per_node,
        "per_edge": per_edge,
        "edge_power_game": report.edge_game,
    }
    if report.seed is not None:
        out["seed"] = report.seed
        out["samples"] = report.samples
    if report.warnings:
        out["warnings"] = sorted(set(report.warnings))
    return out


# -- axioms ----------------------------------------------------------------


def axiom_reports_json_obj(reports: dict[str, list[AxiomReport]]) -> dict:
    out = {"kind": "axioms", "axioms": {}}
    for axiom, rep_list in sorted(reports.items()):
        witnesses = []
        for idx, rep in enumerate(rep_list):
            for w in rep.witnesses:
                witnesses.append(
                    {
                        "graph_index": idx,
                        "description": w.description,
                        "lhs": _value_obj(w.lhs),
                        "rhs": _value_obj(w.rhs),
                    }
                )
        out["axioms"][axiom] = {
            "holds": all(r.holds for r in rep_list),
            "graphs_checked": len(rep_list),
            "witnesses": witnesses,
        }
    return out


# -- joined stars ------------------------------------------------------------


def two_star_json_obj(report: TwoStarReport) -> dict:
    fields = (
        "myerson_hub1",
        "myerson_hub2",
        "position_hub1",
        "position_hub2",
        "myerson_satellite1",
        "myerson_satellite2",
        "position_satellite1",
        "position_satellite2",
        "bridge_power",
    )
    return {
        "kind": "two_stars",
        "k1": report.k1,
        "k2": report.k2,
        "increments": {name: _value_obj(getattr(report, name)) for name in fields},
        "engine": {name: _value_obj(report.engine[name]) for name in fields},
        "bridge_over_spoke1": _value_obj(report.bridge_over_spoke1),
        "bridge_over_spoke2": _value_obj(report.bridge_over_spoke2),
        "verified": report.verified,
    }


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# -- figures -------------------------------------------------------------------


def save_centrality_figure(vector: CentralityVector, path) -> None:
    """Bar chart of per-node values, with error bars when sampled."""
    nodes = list(range(len(vector.values)))
    vals = [float(v) for v in vector.values]
    fig, ax = plt.subplots(figsize=(max(4.0, 0.45 * len(nodes)), 3.2))
    err = list(vector.stderr) if vector.stderr is not None else None
    ax.bar(nodes, vals, yerr=err, color="#4878a8", capsize=2)
    ax.set_xlabel("node")
    ax.set_ylabel("centrality")
    ax.set_title(f"{vector.method} / {vector.game}")
    ax.set_xticks(nodes)
    fig.tight_layout()
    fig.savefig(path, metadata=_PNG_METADATA)
    plt.close(fig)


def save_delta_figure(report: DeltaReport, path) -> None:
    """Grouped bars of per-node deltas, one group color per measure."""
    measures = list(report.per_node)
    nodes = sorted(next(iter(report.per_node.values())))
    width = 0.8 / max(len(measures), 1)
    fig, ax = plt.subplots(figsize=(max(4.0, 0.5 * len(nodes)), 3.4))
    for k, measure in enumerate(measures):
        entries = report.per_node[measure]
        xs = [n + (k - (len(measures) - 1) / 2) * width for n in nodes]
        ax.bar(xs, [float(entries[n].delta) for n in nodes], width=width, label=measure)
    ax.axhline(0.0, color="black", linewidth=0.8)
    ax.set_xlabel("node")
    ax.set_ylabel("delta")
    i, j = report.added_edge
    ax.set_title(f"adding edge {i}-{j} ({report.game}, {report.method})")
    ax.set_xticks(nodes)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, metadata=_PNG_METADATA)
    plt.close(fig)


def save_two_star_figure(report: TwoStarReport, path) -> None:
    labels = [
        "hub1",
        "hub2",
        "sat1",
        "sat2",
    ]
    myerson = [
        float(report.myerson_hub1),
        float(report.myerson_hub2),
        float(report.myerson_satellite1),
        float(report.myerson_satellite2),
    ]
    position = [
        float(report.position_hub1),
        float(report.position_hub2),
        float(report.position_satellite1),
        float(report.position_satellite2),
    ]
    xs = range(len(labels))
    fig, ax = plt.subplots(figsize=(4.8, 3.2))
    ax.bar([x - 0.2 for x in xs], myerson, width=0.4, label="myerson")
    ax.bar([x + 0.2 for x in xs], position, width=0.4, label="position")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(labels)
    ax.set_ylabel("increment")
    ax.set_title(f"bridging stars k1={report.k1}, k2={report.k2} (messages)")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, metadata=_PNG_METADATA)
    plt.close(fig)


def write_text(path_or_none, text: str) -> None:
    if path_or_none is None:
        import sys

        sys.stdout.write(text)
    else:
        Path(path_or_none).write_text(text, encoding="utf-8")
