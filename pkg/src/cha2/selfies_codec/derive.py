"""Derivation of valence-valid molecular graphs from arbitrary token
sequences: the robustness property of the dialect.

Rules (scoped: the whole sequence is the top scope, each branch payload is
a nested scope over the branching atom):

1. An atom token bonds the new atom to the current atom with order
   ``min(prefix, free valence of current, max valence of new element)``;
   if the current atom has no free valence left the scope terminates. The
   first atom of the top scope is placed unbonded. The new atom becomes
   current.
2. A branch token reads the next token as its overload value Q and spans
   the following Q+1 tokens. If the current atom has free valence >= 2 the
   span is derived as a nested scope rooted at the current atom; otherwise
   the whole construct (branch token, overload token, span) is consumed and
   discarded. Branch bond-order prefixes are inert in this dialect: the
   first payload atom's own prefix carries the bond order.
3. A ring token reads the next token as Q and queues a closure between the
   current atom and the atom Q+1 positions back in creation order (clamped
   to the first atom). Closures are resolved after derivation, in queue
   order: a single bond is added iff both endpoints still have free valence
   and are not already bonded; infeasible closures are dropped.
4. A padding token terminates the scope, in operational and in overload
   positions alike (so appending padding can never alter a derivation).
5. Control tokens before any atom exists are skipped.

Remaining valence becomes implicit hydrogens. Every input decodes to some
(possibly empty) graph; no input raises.
"""

from __future__ import annotations

from ..errors import UnknownToken
from ..molgraph.graph import MAX_VALENCE, MolecularGraph
from .alphabet import (
    KIND_ATOM,
    KIND_BRANCH,
    KIND_NOP,
    KIND_RING,
    Alphabet,
    TokenSequence,
    overload_value,
    token_kind,
)


class DialectTables:
    """Per-alphabet lookup tables driving the automaton (and shared with
    the compiled kernel): token kind, element valence, bond order, and the
    fixed overload value of every symbol."""

    __slots__ = ("alphabet", "kinds", "valences", "orders", "elements",
                 "overloads")

    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet
        self.kinds = []
        self.valences = []
        self.orders = []
        self.elements = []
        self.overloads = []
        for sym in alphabet.symbols:
            kind, element, order = token_kind(sym)
            self.kinds.append(kind)
            self.elements.append(element)
            self.valences.append(MAX_VALENCE[element] if element else 0)
            self.orders.append(order)
            self.overloads.append(overload_value(sym))


def derive_molecule(t: TokenSequence, alphabet: Alphabet) -> MolecularGraph:
    """Decode one token sequence into a valence-valid graph."""
    tables = DialectTables(alphabet)
    elements, bonds = derive_heavy(list(t.indices), tables)
    return MolecularGraph.from_heavy(elements, bonds)


def derive_heavy(tokens: list[int], tables: DialectTables):
    """Automaton core: returns (element list, bond list) for one sequence.

    Split out so tests and the batch API can bypass graph construction.
    """
    kinds = tables.kinds
    n_symbols = len(kinds)

    elements: list[str] = []
    free: list[int] = []
    bonds: list[tuple[int, int, int]] = []
    ring_queue: list[tuple[int, int]] = []

    def scope(pos: int, end: int, current: int) -> None:
        """Derive tokens[pos:end] with ``current`` as the attachment atom
        (-1 when no atom exists yet). Consumes the span; never returns
        tokens to the caller."""
        while pos < end:
            tok = tokens[pos]
            pos += 1
            if not 0 <= tok < n_symbols:
                raise UnknownToken(f"index {tok} outside alphabet")
            kind = kinds[tok]
            if kind == KIND_NOP:
                return
            if kind == KIND_ATOM:
                if current < 0:
                    current = len(elements)
                    elements.append(tables.elements[tok])
                    free.append(tables.valences[tok])
                    continue
                if free[current] == 0:
                    return
                order = min(tables.orders[tok], free[current],
                            tables.valences[tok])
                new = len(elements)
                elements.append(tables.elements[tok])
                free.append(tables.valences[tok] - order)
                free[current] -= order
                bonds.append((current, new, order))
                current = new
            elif kind == KIND_BRANCH:
                if current < 0:
                    continue  # leading control token: skipped
                if pos >= end:
                    return
                data = tokens[pos]
                if not 0 <= data < n_symbols:
                    raise UnknownToken(f"index {data} outside alphabet")
                if kinds[data] == KIND_NOP:
                    return  # padding terminates the scope anywhere
                q = tables.overloads[data]
                pos += 1
                span_end = min(pos + q + 1, end)
                if free[current] >= 2:
                    scope(pos, span_end, current)
                pos = span_end
            elif kind == KIND_RING:
                if current < 0:
                    continue
                if pos >= end:
                    return
                data = tokens[pos]
                if not 0 <= data < n_symbols:
                    raise UnknownToken(f"index {data} outside alphabet")
                if kinds[data] == KIND_NOP:
                    return
                q = tables.overloads[data]
                pos += 1
                partner = max(0, current - (q + 1))
                ring_queue.append((partner, current))

    scope(0, len(tokens), -1)

    for i, j in ring_queue:
        if i == j:
            continue
        if free[i] < 1 or free[j] < 1:
            continue
        if any(a == i and b == j for a, b, _ in bonds) or \
           any(a == j and b == i for a, b, _ in bonds):
            continue
        bonds.append((i, j, 1))
        free[i] -= 1
        free[j] -= 1

    return elements, bonds
