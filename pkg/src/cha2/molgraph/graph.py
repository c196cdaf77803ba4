"""Molecular graph with explicit heavy atoms and implicit hydrogens.

Only the elements reachable from the training corpus are supported; each
element has a fixed maximum valence and every constructed graph satisfies
``sum(bond orders) + implicit_h == max_valence`` exactly, per atom.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import ValenceViolation

MAX_VALENCE = {"C": 4, "N": 3, "O": 2, "F": 1}

ATOMIC_MASS = {
    "C": 12.011,
    "H": 1.008,
    "N": 14.007,
    "O": 15.999,
    "F": 18.998,
}


@dataclass(frozen=True)
class Atom:
    element: str
    implicit_h: int


@dataclass(frozen=True)
class MolecularGraph:
    """Immutable heavy-atom graph. Bonds are stored as (i, j, order), i < j."""

    atoms: tuple[Atom, ...]
    bonds: tuple[tuple[int, int, int], ...]
    _adjacency: dict[int, tuple[tuple[int, int], ...]] = field(
        compare=False, repr=False, default_factory=dict
    )

    @staticmethod
    def from_heavy(elements, bond_list) -> "MolecularGraph":
        """Build a graph from heavy-atom elements and (i, j, order) bonds,
        filling implicit hydrogens up to each element's maximum valence.

        Raises ValenceViolation if an element is unknown, a bond is
        degenerate, or bond orders exceed the element's capacity.
        """
        elements = list(elements)
        n = len(elements)
        for el in elements:
            if el not in MAX_VALENCE:
                raise ValenceViolation(f"unsupported element {el!r}")
        used = [0] * n
        seen = set()
        norm_bonds = []
        for i, j, order in bond_list:
            if i == j:
                raise ValenceViolation(f"self-loop on atom {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise ValenceViolation(f"bond ({i},{j}) out of range")
            if order not in (1, 2, 3):
                raise ValenceViolation(f"bond order {order} not in 1..3")
            if i > j:
                i, j = j, i
            if (i, j) in seen:
                raise ValenceViolation(f"parallel bond ({i},{j})")
            seen.add((i, j))
            used[i] += order
            used[j] += order
            norm_bonds.append((i, j, order))
        atoms = []
        for idx, el in enumerate(elements):
            free = MAX_VALENCE[el] - used[idx]
            if free < 0:
                raise ValenceViolation(
                    f"atom {idx} ({el}) carries bond order {used[idx]} "
                    f"> max valence {MAX_VALENCE[el]}"
                )
            atoms.append(Atom(el, free))
        norm_bonds.sort()
        adj: dict[int, list[tuple[int, int]]] = {i: [] for i in range(n)}
        for i, j, order in norm_bonds:
            adj[i].append((j, order))
            adj[j].append((i, order))
        frozen = {i: tuple(sorted(v)) for i, v in adj.items()}
        return MolecularGraph(tuple(atoms), tuple(norm_bonds), frozen)

    @staticmethod
    def empty() -> "MolecularGraph":
        return MolecularGraph((), (), {})

    def __len__(self) -> int:
        return len(self.atoms)

    @property
    def is_empty(self) -> bool:
        return not self.atoms

    def neighbors(self, i: int) -> tuple[tuple[int, int], ...]:
        """(neighbor index, bond order) pairs, sorted."""
        return self._adjacency.get(i, ())

    def heavy_degree(self, i: int) -> int:
        return len(self.neighbors(i))

    def bond_order_sum(self, i: int) -> int:
        return sum(order for _, order in self.neighbors(i))

    def bond_between(self, i: int, j: int) -> int:
        """Bond order between i and j, 0 if not bonded."""
        for k, order in self.neighbors(i):
            if k == j:
                return order
        return 0

    def components(self) -> list[list[int]]:
        """Connected components as sorted atom index lists, sorted by head."""
        seen = [False] * len(self.atoms)
        out = []
        for start in range(len(self.atoms)):
            if seen[start]:
                continue
            stack, comp = [start], []
            seen[start] = True
            while stack:
                v = stack.pop()
                comp.append(v)
                for w, _ in self.neighbors(v):
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            out.append(sorted(comp))
        return out

    def count_bonds_between(self, el_a: str, el_b: str) -> int:
        """Number of bonds (any order) whose endpoints are el_a and el_b."""
        n = 0
        for i, j, _ in self.bonds:
            pair = {self.atoms[i].element, self.atoms[j].element}
            if pair == {el_a, el_b} or (el_a == el_b and pair == {el_a}):
                n += 1
        return n

    def validate(self) -> None:
        """Re-check the valence identity; raises ValenceViolation on breach."""
        for idx, atom in enumerate(self.atoms):
            total = self.bond_order_sum(idx) + atom.implicit_h
            if total != MAX_VALENCE[atom.element]:
                raise ValenceViolation(
                    f"atom {idx} ({atom.element}): bonds+H = {total}, "
                    f"expected {MAX_VALENCE[atom.element]}"
                )
