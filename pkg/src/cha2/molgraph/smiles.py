"""SMILES subset parser and emitter for dataset ingestion.

Supported grammar:
  atoms       C N O F, aromatic c n o, bracket atoms [C], [NH2], [nH], [C@H]
              (stereo marks and explicit H counts inside brackets are stripped)
  bonds       - = #   (default single); / and \\ are read as single bonds
  branches    ( ... )
  rings       closure digits 0-9

Aromatic rings are kekulized by a deterministic alternating-bond assignment;
molecules whose aromatic system admits no such assignment are rejected.
Stereochemistry, charges, isotopes and elements outside C/N/O/F are out of
scope: charges and foreign elements raise, stereo marks are dropped.
"""

from __future__ import annotations

from ..errors import (
    KekulizationFailure,
    UnbalancedParenthesis,
    UnclosedRing,
    UnsupportedElement,
    ValenceViolation,
)
from .graph import MAX_VALENCE, MolecularGraph

_ORGANIC = {"C", "N", "O", "F"}
_AROMATIC = {"c", "n", "o"}
_BOND_CHARS = {"-": 1, "=": 2, "#": 3, "/": 1, "\\": 1}


def _parse_bracket_atom(body: str, pos: int) -> tuple[str, bool]:
    """Parse the inside of [...]: returns (element, aromatic). Strips
    isotope digits, chirality, and explicit H counts; rejects charges."""
    s = body
    i = 0
    while i < len(s) and s[i].isdigit():  # isotope prefix
        i += 1
    rest = s[i:]
    if not rest:
        raise UnsupportedElement(f"empty bracket atom at {pos}")
    el = None
    aromatic = False
    for cand in ("C", "N", "O", "F"):
        if rest.startswith(cand):
            el = cand
            rest = rest[len(cand):]
            break
        if rest.startswith(cand.lower()) and cand.lower() in _AROMATIC:
            el = cand
            aromatic = True
            rest = rest[1:]
            break
    if el is None:
        raise UnsupportedElement(f"element in [{body}] not in C/N/O/F")
    # strip chirality and explicit hydrogen count
    while rest:
        ch = rest[0]
        if ch == "@":
            rest = rest[1:]
        elif ch == "H":
            rest = rest[1:]
            while rest and rest[0].isdigit():
                rest = rest[1:]
        elif ch in "+-":
            raise UnsupportedElement(f"charged atom [{body}] not supported")
        else:
            raise UnsupportedElement(f"unrecognized bracket content [{body}]")
    return el, aromatic


def parse_smiles(s: str) -> MolecularGraph:
    """Parse a subset-SMILES string into a valence-valid graph."""
    elements: list[str] = []
    aromatic_flags: list[bool] = []
    bonds: list[tuple[int, int, int, bool]] = []  # i, j, order, aromatic_pair
    stack: list[int] = []
    ring_open: dict[str, tuple[int, int | None]] = {}
    prev: int | None = None
    pending_bond: int | None = None

    def add_atom(el: str, aromatic: bool) -> None:
        nonlocal prev, pending_bond
        idx = len(elements)
        elements.append(el)
        aromatic_flags.append(aromatic)
        if prev is not None:
            if pending_bond is not None:
                order, arom_pair = pending_bond, False
            elif aromatic and aromatic_flags[prev]:
                order, arom_pair = 1, True
            else:
                order, arom_pair = 1, False
            bonds.append((prev, idx, order, arom_pair))
        prev = idx
        pending_bond = None

    i = 0
    while i < len(s):
        ch = s[i]
        if ch in ("C", "N", "O", "F"):
            add_atom(ch, False)
        elif ch in _AROMATIC:
            add_atom(ch.upper(), True)
        elif ch == "[":
            end = s.find("]", i)
            if end < 0:
                raise UnsupportedElement(f"unterminated bracket at {i}")
            el, aromatic = _parse_bracket_atom(s[i + 1:end], i)
            add_atom(el, aromatic)
            i = end
        elif ch in _BOND_CHARS:
            pending_bond = _BOND_CHARS[ch]
        elif ch == "(":
            if prev is None:
                raise UnbalancedParenthesis("branch before any atom")
            stack.append(prev)
        elif ch == ")":
            if not stack:
                raise UnbalancedParenthesis("unmatched ')'")
            prev = stack.pop()
        elif ch.isdigit():
            if prev is None:
                raise UnclosedRing(f"ring digit {ch} before any atom")
            if ch in ring_open:
                j, order = ring_open.pop(ch)
                if j == prev:
                    raise UnclosedRing(f"ring {ch} closes on its own atom")
                if order is None:
                    order = pending_bond
                elif pending_bond is not None and pending_bond != order:
                    raise UnclosedRing(f"ring {ch} bond order conflict")
                arom = aromatic_flags[j] and aromatic_flags[prev]
                if order is None:
                    order = 1
                else:
                    arom = False
                bonds.append((min(j, prev), max(j, prev), order, arom))
                pending_bond = None
            else:
                ring_open[ch] = (prev, pending_bond)
                pending_bond = None
        elif ch in "@":
            pass  # stray stereo mark, stripped
        elif ch.isspace():
            raise UnsupportedElement("whitespace inside SMILES")
        else:
            raise UnsupportedElement(f"unsupported SMILES character {ch!r}")
        i += 1

    if stack:
        raise UnbalancedParenthesis("unmatched '('")
    if ring_open:
        raise UnclosedRing(f"unclosed ring digits {sorted(ring_open)}")

    orders = _kekulize(elements, aromatic_flags, bonds)
    return MolecularGraph.from_heavy(
        elements, [(i, j, o) for (i, j, _, _), o in zip(bonds, orders)]
    )


def _kekulize(elements, aromatic_flags, bonds) -> list[int]:
    """Assign final bond orders. Aromatic-aromatic bonds get an alternating
    single/double pattern: every aromatic carbon without a pre-existing
    multiple bond must take exactly one double bond, aromatic nitrogens may
    (pyridine) or may not (pyrrole), aromatic oxygens never do."""
    n = len(elements)
    arom_bond_ids = [k for k, (_, _, _, arom) in enumerate(bonds) if arom]
    if not arom_bond_ids:
        return [o for _, _, o, _ in bonds]

    fixed_multiple = [False] * n
    for i, j, order, arom in bonds:
        if not arom and order >= 2:
            fixed_multiple[i] = fixed_multiple[j] = True

    required = set()
    optional = set()
    for idx in range(n):
        if not aromatic_flags[idx]:
            continue
        if elements[idx] == "C" and not fixed_multiple[idx]:
            required.add(idx)
        elif elements[idx] == "N" and not fixed_multiple[idx]:
            optional.add(idx)
        # aromatic O contributes lone pairs only

    adjacency: dict[int, list[tuple[int, int]]] = {}
    for k in arom_bond_ids:
        i, j, _, _ = bonds[k]
        if i in required | optional and j in required | optional:
            adjacency.setdefault(i, []).append((j, k))
            adjacency.setdefault(j, []).append((i, k))

    matched_bond: dict[int, int] = {}

    def backtrack(todo: list[int], taken: set[int]) -> bool:
        while todo and todo[0] in taken:
            todo = todo[1:]
        if not todo:
            return True
        v = todo[0]
        for w, k in sorted(adjacency.get(v, ())):
            if w in taken:
                continue
            matched_bond[v] = k
            matched_bond[w] = k
            if backtrack(todo[1:], taken | {v, w}):
                return True
            del matched_bond[v]
            del matched_bond[w]
        return False

    if not backtrack(sorted(required), set()):
        raise KekulizationFailure(
            "aromatic system admits no alternating bond assignment"
        )

    double_ids = set(matched_bond.values())
    out = []
    for k, (i, j, order, arom) in enumerate(bonds):
        out.append(2 if k in double_ids else order)
    return out


_BOND_TOKEN = {1: "", 2: "=", 3: "#"}


def emit_smiles(g: MolecularGraph) -> str:
    """Emit subset SMILES; parse_smiles(emit_smiles(g)) is isomorphic to g.
    Components are joined with '.'."""
    if g.is_empty:
        return ""
    pieces = []
    for comp in g.components():
        pieces.append(_emit_component(g, comp))
    return ".".join(pieces)


def _emit_component(g: MolecularGraph, comp: list[int]) -> str:
    # pass 1: spanning tree (deterministic DFS, neighbors in index order)
    # and the back edges that become ring closures
    root = comp[0]
    pre: dict[int, int] = {}
    children: dict[int, list[int]] = {a: [] for a in comp}
    back_edges: list[tuple[int, int]] = []  # (earlier, later) by preorder

    def explore(v: int, parent: int) -> None:
        pre[v] = len(pre)
        for w, _ in g.neighbors(v):
            if w == parent:
                continue
            if w in pre:
                if pre[w] < pre[v] and (w, v) not in back_edges:
                    back_edges.append((w, v))
            else:
                children[v].append(w)
                explore(w, v)

    explore(root, -1)

    opens: dict[int, list[tuple[int, int]]] = {}
    closes: dict[int, list[tuple[int, int]]] = {}
    for u, v in back_edges:
        opens.setdefault(u, []).append((u, v))
        closes.setdefault(v, []).append((u, v))

    # pass 2: emit, allocating closure digits from a reusable pool
    free_digits = list("0987654321")
    digit_of: dict[tuple[int, int], str] = {}

    def emit(v: int, entry_order: int) -> str:
        parts = [_BOND_TOKEN[entry_order], g.atoms[v].element]
        for edge in closes.get(v, ()):
            digit = digit_of.pop(edge)
            parts.append(_BOND_TOKEN[g.bond_between(*edge)] + digit)
            free_digits.append(digit)
        for edge in opens.get(v, ()):
            if not free_digits:
                raise ValenceViolation(
                    "more than 10 simultaneous ring closures"
                )
            digit = free_digits.pop()
            digit_of[edge] = digit
            parts.append(_BOND_TOKEN[g.bond_between(*edge)] + digit)
        kids = children[v]
        for idx, w in enumerate(kids):
            sub = emit(w, g.bond_between(v, w))
            parts.append(sub if idx == len(kids) - 1 else "(" + sub + ")")
        return "".join(parts)

    return emit(root, 1)
