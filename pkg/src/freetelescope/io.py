"""Graph JSON and DOT serialization."""

from __future__ import annotations

import json

from .graph import INF, DanglingVertex, FreeProductSignature, GraphError, LabelledDigraph

DOT_COLOURS = ["red", "cyan3", "green4", "blue", "orange", "purple", "brown", "magenta", "gray40"]


def graph_to_json(g: LabelledDigraph) -> dict:
    return {
        "signature": g.signature.to_json(),
        "labels": list(g.labels),
        "n": g.n,
        "succ": [list(row) for row in g.succ],
        "basepoint": g.basepoint,
        "dangling": [{"v": d.vertex, "colours": g.colour_names(d)} for d in g.dangling],
    }


def graph_from_json(data: dict) -> LabelledDigraph:
    try:
        sig = FreeProductSignature(tuple(data["signature"]))
        labels = tuple(data["labels"])
        n = int(data["n"])
        succ = data["succ"]
        if len(succ) != len(labels):
            raise GraphError("succ must have one row per label")
        dangling = []
        for d in data.get("dangling", []):
            colours = frozenset(labels.index(c) for c in d["colours"])
            dangling.append(DanglingVertex(int(d["v"]), colours))
        return LabelledDigraph(sig, succ, labels, data.get("basepoint"), tuple(dangling), n=n)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, GraphError):
            raise
        raise GraphError(f"malformed graph JSON: {exc}") from exc


def dumps(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True)


def to_dot(g: LabelledDigraph, name: str = "G") -> str:
    """DOT source; labels of order 2 are drawn as undirected edges."""
    lines = [f"digraph {name} {{", "  node [shape=circle, fontsize=10];"]
    dangling = {d.vertex for d in g.dangling}
    for v in range(g.n):
        attrs = [f'label="{v}"']
        if v == g.basepoint:
            attrs.append("peripheries=2")
        if v in dangling:
            attrs.append("style=dashed")
        lines.append(f"  {v} [{', '.join(attrs)}];")
    for i, row in enumerate(g.succ):
        colour = DOT_COLOURS[i % len(DOT_COLOURS)]
        involution = g.signature.orders[i] == 2
        for v, w in enumerate(row):
            if w is None:
                continue
            if involution:
                if w < v:
                    continue
                lines.append(f'  {v} -> {w} [color={colour}, dir=none, label="{g.labels[i]}"];')
            else:
                lines.append(f'  {v} -> {w} [color={colour}, label="{g.labels[i]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = ["graph_to_json", "graph_from_json", "to_dot", "dumps", "INF"]
