"""Descriptor vector feeding the drug-likeness proxy scorer.

Deliberately minimal: deterministic counting rules over the graph only, no
pattern libraries. Hydrogen-bond donors/acceptors follow Lipinski counting
(N/O based), rotatable bonds are acyclic single bonds between non-terminal
heavy atoms, and ring count is the cyclomatic number.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import EmptyMolecule
from .graph import ATOMIC_MASS, MolecularGraph


@dataclass(frozen=True)
class DescriptorVector:
    mw: float
    heavy_atoms: int
    hbd: int
    hba: int
    rotb: int
    rings: int
    heteroatom_fraction: float


def _bond_in_ring(g: MolecularGraph, i: int, j: int) -> bool:
    """True iff i-j lies on a cycle: j stays reachable from i without it."""
    stack = [i]
    seen = {i}
    while stack:
        v = stack.pop()
        for w, _ in g.neighbors(v):
            if v == i and w == j:
                continue
            if w == j:
                return True
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return False


def descriptors(g: MolecularGraph) -> DescriptorVector:
    if g.is_empty:
        raise EmptyMolecule("descriptors of the empty graph are undefined")
    mw = 0.0
    hbd = hba = hetero = 0
    for atom in g.atoms:
        mw += ATOMIC_MASS[atom.element] + atom.implicit_h * ATOMIC_MASS["H"]
        if atom.element in ("N", "O"):
            hba += 1
            if atom.implicit_h >= 1:
                hbd += 1
        if atom.element != "C":
            hetero += 1
    rotb = 0
    for i, j, order in g.bonds:
        if order != 1:
            continue
        if g.heavy_degree(i) < 2 or g.heavy_degree(j) < 2:
            continue
        if not _bond_in_ring(g, i, j):
            rotb += 1
    rings = len(g.bonds) - len(g.atoms) + len(g.components())
    return DescriptorVector(
        mw=round(mw, 6),
        heavy_atoms=len(g.atoms),
        hbd=hbd,
        hba=hba,
        rotb=rotb,
        rings=rings,
        heteroatom_fraction=hetero / len(g.atoms),
    )
