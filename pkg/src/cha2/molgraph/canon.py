"""Canonical string forms for molecular graphs.

Two isomorphic graphs (same elements, bonds, implicit hydrogens) map to the
same string; non-isomorphic graphs in the supported dialect map to different
strings. The string doubles as the deduplication key for generated molecules.

Method: iterative neighborhood refinement of atom colors to a fixpoint,
then an order-by-order labeling that branches on every residual color tie
and keeps the lexicographically smallest serialization.
"""

from __future__ import annotations

from .graph import MolecularGraph


def _refine_colors(g: MolecularGraph) -> list[int]:
    """Stable coloring: start from (element, degree, H count, bond order sum)
    and refine by sorted neighbor (order, color) multisets until the
    partition stops changing."""
    n = len(g)
    invariants = [
        (g.atoms[i].element, g.heavy_degree(i), g.atoms[i].implicit_h,
         g.bond_order_sum(i))
        for i in range(n)
    ]
    colors = _rank(invariants)
    while True:
        signatures = [
            (colors[i], tuple(sorted((order, colors[j])
                                     for j, order in g.neighbors(i))))
            for i in range(n)
        ]
        new_colors = _rank(signatures)
        if new_colors == colors:
            return colors
        colors = new_colors


def _rank(keys) -> list[int]:
    order = {k: r for r, k in enumerate(sorted(set(keys)))}
    return [order[k] for k in keys]


def _serialize(g: MolecularGraph, ordering: list[int]) -> str:
    pos = {atom: idx for idx, atom in enumerate(ordering)}
    atom_part = ",".join(
        f"{g.atoms[a].element}{g.atoms[a].implicit_h}" for a in ordering
    )
    bonds = sorted(
        (min(pos[i], pos[j]), max(pos[i], pos[j]), order)
        for i, j, order in g.bonds
        if i in pos and j in pos
    )
    bond_part = ",".join(f"{i}-{j}-{o}" for i, j, o in bonds)
    return atom_part + "|" + bond_part


def _component_canonical(g: MolecularGraph, comp: list[int],
                         colors: list[int]) -> str:
    best: str | None = None

    def extend(ordering: list[int], placed: set[int]) -> None:
        nonlocal best
        if len(ordering) == len(comp):
            s = _serialize(g, ordering)
            if best is None or s < best:
                best = s
            return
        # frontier: unplaced atoms bonded to the placed prefix
        candidates = {}
        for a in comp:
            if a in placed:
                continue
            signature = tuple(sorted(
                (ordering.index(j), order)
                for j, order in g.neighbors(a) if j in placed
            ))
            if not signature:
                continue
            candidates[a] = (signature, colors[a])
        lo = min(candidates.values())
        for a, key in sorted(candidates.items()):
            if key == lo:
                ordering.append(a)
                placed.add(a)
                extend(ordering, placed)
                placed.remove(a)
                ordering.pop()

    start_color = min(colors[a] for a in comp)
    for start in comp:
        if colors[start] != start_color:
            continue
        if len(comp) == 1:
            s = _serialize(g, [start])
            best = s if best is None or s < best else best
        else:
            extend([start], {start})
    assert best is not None
    return best


def canonical_form(g: MolecularGraph) -> str:
    """Label-invariant canonical string; "" for the empty graph."""
    if g.is_empty:
        return ""
    colors = _refine_colors(g)
    parts = [_component_canonical(g, comp, colors) for comp in g.components()]
    return ".".join(sorted(parts))
