"""Plain-text hull geometry export for external plotting.

Format (one record per line, '#' comments allowed):

    dim <ambient> intrinsic <k> volume <v>
    vertex <x0> <x1> ... <x{dim-1}>
    facet <i0> <i1> ... <i{k-1}>

Facet indices refer to vertex lines in order of appearance (0-based).
"""

from __future__ import annotations

from .hull import ConvexHull


def export_hull(hull: ConvexHull) -> str:
    lines = [
        f"dim {hull.dim} intrinsic {hull.intrinsic_dim} "
        f"volume {hull.volume!r}"
    ]
    for point in hull.vertex_points:
        lines.append("vertex " + " ".join(repr(float(c)) for c in point))
    for f in hull.facets:
        lines.append("facet " + " ".join(str(i) for i in f.vertex_ids))
    return "\n".join(lines) + "\n"


def write_hull(hull: ConvexHull, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(export_hull(hull))
