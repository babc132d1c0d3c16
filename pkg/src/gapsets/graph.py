"""Refinement graph on gapset filtrations, layered by genus.

There is an edge F -> F' when F' has genus exactly one more than F and
contains F piecewise (missing pieces count as empty, so depth may grow
by at most one).  Every tree edge of the gapset tree is a refinement
edge, but not conversely; the extra edges are the interesting part and
are drawn dashed in the dot export.

Piecewise containment forces multiplicity(F') >= multiplicity(F), and a
single added element cannot pay for more than one new element in piece
0, so candidate pairs are pruned to multiplicity(F') - multiplicity(F)
in {0, 1} before the full piece comparison.

Vertices of a level are sorted by their gap lists, so indices, dot node
ids (``g<genus>_<index>``) and exports are deterministic.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .core import Filtration, format_filtration, from_filtration, to_filtration
from .tree import EnumFilter, iter_gapsets, parent

__all__ = [
    "RefinementGraph",
    "is_refinement_edge",
    "build_graph",
    "export_dot",
    "export_edges_csv",
]


def is_refinement_edge(f: Filtration, fp: Filtration) -> bool:
    """True iff fp has genus + 1 and contains f piece by piece."""
    if fp.genus != f.genus + 1:
        return False
    return all(f.piece(i) <= fp.piece(i) for i in range(max(f.depth, fp.depth)))


@dataclass
class RefinementGraph:
    max_genus: int
    levels: list[list[Filtration]]
    # edges[g] connects level g to level g+1: (src_index, dst_index, is_tree)
    edges: list[list[tuple[int, int, bool]]]

    def non_tree_edges(self) -> list[tuple[Filtration, Filtration]]:
        out = []
        for g, layer in enumerate(self.edges):
            for i, j, is_tree in layer:
                if not is_tree:
                    out.append((self.levels[g][i], self.levels[g + 1][j]))
        return out

    def out_degrees(self, genus: int) -> list[int]:
        degs = [0] * len(self.levels[genus])
        for i, _j, _t in self.edges[genus]:
            degs[i] += 1
        return degs


def build_graph(max_genus: int, depth_le: int | None = None) -> RefinementGraph:
    """All refinement edges between consecutive levels up to ``max_genus``."""
    if max_genus < 0:
        raise ValueError("max_genus must be >= 0")
    buckets: list[list] = [[] for _ in range(max_genus + 1)]
    for gs in iter_gapsets(EnumFilter(max_genus=max_genus, depth_le=depth_le)):
        buckets[gs.genus].append(gs)
    gapset_levels = [sorted(b) for b in buckets]
    levels = [[to_filtration(gs) for gs in level] for level in gapset_levels]
    index_of = [{gs.bits: i for i, gs in enumerate(level)} for level in gapset_levels]

    edges: list[list[tuple[int, int, bool]]] = []
    for g in range(max_genus):
        layer = []
        for j, child in enumerate(gapset_levels[g + 1]):
            fj = levels[g + 1][j]
            mj = fj.multiplicity
            tree_parent = parent(child).bits
            for i, gs in enumerate(gapset_levels[g]):
                fi = levels[g][i]
                if mj - fi.multiplicity not in (0, 1):
                    continue
                if is_refinement_edge(fi, fj):
                    layer.append((i, j, gs.bits == tree_parent))
        layer.sort()
        edges.append(layer)
    return RefinementGraph(max_genus, levels, edges)


def export_dot(graph: RefinementGraph) -> str:
    """Graphviz digraph; tree edges solid, extra refinement edges dashed."""
    lines = ["digraph refinement {", "  rankdir=TB;", '  node [shape=box, fontname="monospace"];']
    for g, level in enumerate(graph.levels):
        names = []
        for i, f in enumerate(level):
            name = f"g{g}_{i}"
            names.append(name)
            lines.append(f'  {name} [label="{format_filtration(f)}"];')
        if names:
            lines.append(f"  {{rank=same; {'; '.join(names)};}}")
    for g, layer in enumerate(graph.edges):
        for i, j, is_tree in layer:
            style = "" if is_tree else " [style=dashed]"
            lines.append(f"  g{g}_{i} -> g{g + 1}_{j}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_edges_csv(graph: RefinementGraph) -> str:
    """Edge list: src_filtration,dst_filtration,is_tree_edge."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["src_filtration", "dst_filtration", "is_tree_edge"])
    for g, layer in enumerate(graph.edges):
        for i, j, is_tree in layer:
            writer.writerow(
                [
                    format_filtration(graph.levels[g][i]),
                    format_filtration(graph.levels[g + 1][j]),
                    "true" if is_tree else "false",
                ]
            )
    return buf.getvalue()
