"""Viewable layouts of drawings: delimited text plus a rendered figure.

The planarization of each component is laid out with a Tutte barycentric
embedding pinned on its largest face, which is a faithful straight-line
realization for 3-connected planarizations and a readable approximation
otherwise.  Components are placed side by side; the sphere nesting is
reported in the text output rather than drawn.
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from .drawing import Drawing, Node

_MARGIN = 2.6


def _component_layout(d: Drawing, comp: Node) -> dict[Node, tuple[float, float]]:
    nodes = [n for n in d.nodes if d.component_of(n) == comp]
    if len(nodes) == 1:
        return {nodes[0]: (0.0, 0.0)}
    segments = []
    for dart in d.all_darts():
        if dart[2] > 0 and d.component_of(d.dart_tail(dart)) == comp:
            segments.append((d.dart_tail(dart), d.dart_head(dart)))
    faces = [
        orb for orb in d.faces_raw()
        if d.component_of(d.dart_tail(orb[0])) == comp
    ]
    outer = max(faces, key=lambda orb: (len(orb), orb))
    boundary: list[Node] = []
    for dart in outer:
        n = d.dart_tail(dart)
        if n not in boundary:
            boundary.append(n)
    pos: dict[Node, tuple[float, float]] = {}
    m = len(boundary)
    for i, n in enumerate(boundary):
        ang = 2 * math.pi * i / m
        pos[n] = (math.cos(ang), math.sin(ang))
    interior = [n for n in nodes if n not in pos]
    if interior:
        index = {n: i for i, n in enumerate(interior)}
        a = np.zeros((len(interior), len(interior)))
        bx = np.zeros(len(interior))
        by = np.zeros(len(interior))
        neigh: dict[Node, list[Node]] = {n: [] for n in nodes}
        for u, v in segments:
            neigh[u].append(v)
            neigh[v].append(u)
        for n in interior:
            i = index[n]
            a[i, i] = len(neigh[n])
            for w in neigh[n]:
                if w in index:
                    a[i, index[w]] -= 1.0
                else:
                    bx[i] += pos[w][0]
                    by[i] += pos[w][1]
        try:
            xs = np.linalg.solve(a, bx)
            ys = np.linalg.solve(a, by)
        except np.linalg.LinAlgError:
            xs = np.zeros(len(interior))
            ys = np.zeros(len(interior))
        for n in interior:
            pos[n] = (float(xs[index[n]]), float(ys[index[n]]))
    return pos


def layout_drawing(d: Drawing) -> dict[Node, tuple[float, float]]:
    """Coordinates for every planarization node, components side by side."""
    comps = sorted({d.component_of(n) for n in d.nodes}, key=repr)
    pos: dict[Node, tuple[float, float]] = {}
    for i, comp in enumerate(comps):
        local = _component_layout(d, comp)
        dx = i * _MARGIN
        for n, (x, y) in local.items():
            pos[n] = (x + dx, y)
    return pos


def _node_ref(n: Node) -> str:
    if isinstance(n, int):
        return f"v:{n}"
    (a, b), (c, e) = n
    return f"x:{a},{b}:{c},{e}"


def serialize_layout(d: Drawing, pos: Optional[dict] = None) -> str:
    """Delimited layout text: node coordinates, segments, region tree."""
    if pos is None:
        pos = layout_drawing(d)
    lines = ["layout 1"]
    for n in d.nodes:
        x, y = pos[n]
        lines.append(f"node {_node_ref(n)} {x:.6f} {y:.6f}")
    for e in sorted(d.graph.edges):
        seq = d.edge_nodes(e)
        for s in range(len(seq) - 1):
            lines.append(
                f"seg {e[0]},{e[1]} {s} {_node_ref(seq[s])} {_node_ref(seq[s + 1])}"
            )
    for idx, reg in enumerate(d.regions):
        refs = " ".join(f"{f[0][0]},{f[0][1]}:{f[1]}:{'+' if f[2] > 0 else '-'}"
                        for f in reg)
        lines.append(f"region {idx} : {refs if refs else '-'}")
    lines.append("stop")
    return "\n".join(lines) + "\n"


def render_figure(d: Drawing, out_path: str, pos: Optional[dict] = None) -> None:
    """Render the planarization to an image file via matplotlib."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    if pos is None:
        pos = layout_drawing(d)
    fig, ax = plt.subplots(figsize=(6, 6))
    cmap = plt.get_cmap("tab20")
    for ci, e in enumerate(sorted(d.graph.edges)):
        seq = d.edge_nodes(e)
        xs = [pos[n][0] for n in seq]
        ys = [pos[n][1] for n in seq]
        ax.plot(xs, ys, "-", color=cmap(ci % 20), linewidth=1.4, zorder=1)
    vx = [pos[n][0] for n in d.nodes if isinstance(n, int)]
    vy = [pos[n][1] for n in d.nodes if isinstance(n, int)]
    ax.scatter(vx, vy, s=42, color="black", zorder=2)
    for n in d.nodes:
        if isinstance(n, int):
            ax.annotate(
                str(n), pos[n], textcoords="offset points", xytext=(4, 4),
                fontsize=8,
            )
        else:
            ax.scatter([pos[n][0]], [pos[n][1]], s=30, marker="x",
                       color="red", zorder=3)
    ax.set_aspect("equal")
    ax.axis("off")
    ax.set_title(f"{d.graph.num_edges} edges, {d.num_crossings()} crossings")
    fig.savefig(out_path, bbox_inches="tight", dpi=150)
    plt.close(fig)
