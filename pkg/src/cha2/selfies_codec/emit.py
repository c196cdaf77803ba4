"""Graph-to-token emission: express a molecular graph in the dialect so
that deriving the emitted sequence reproduces the graph exactly.

The spanning tree is chosen so every non-tree (ring closure) edge is a
single bond -- closure tokens cannot carry a bond order. Children are
visited smallest-subtree first so that branch payloads stay short; the
largest subtree continues the main chain unwrapped.
"""

from __future__ import annotations

from ..errors import EmitError
from ..molgraph.graph import MolecularGraph
from .alphabet import OVERLOAD_ORDER, PAD

_ATOM_TOKEN = {1: "[{}]", 2: "[={}]", 3: "[#{}]"}
_BRANCH_TOKEN = {1: "[Branch1]", 2: "[=Branch1]", 3: "[#Branch1]"}


def _tree_dfs_multi_first(g: MolecularGraph, n: int):
    """DFS spanning tree exploring multiple bonds first; None when a
    multiple bond would be left as a closure."""
    children: dict[int, list[int]] = {v: [] for v in range(n)}
    closures: list[tuple[int, int]] = []
    visited = [False] * n

    def span(v: int, parent: int) -> bool:
        visited[v] = True
        for w, order in sorted(g.neighbors(v), key=lambda e: (-e[1], e[0])):
            if w == parent:
                continue
            if visited[w]:
                key = (min(v, w), max(v, w))
                if key not in closures:
                    if order >= 2:
                        return False
                    closures.append(key)
            else:
                children[v].append(w)
                if not span(w, v):
                    return False
        return True

    if not span(0, -1):
        return None
    return children, closures


def _tree_union_find(g: MolecularGraph, n: int):
    """Kruskal-style tree: all multiple bonds first (error when they form
    a cycle), completed with single bonds."""
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a: int, b: int) -> bool:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
        return True

    tree = set()
    for i, j, order in sorted(g.bonds, key=lambda b: (-b[2], b[0], b[1])):
        if union(i, j):
            tree.add((i, j))
        elif order >= 2:
            raise EmitError(
                "a cycle of multiple bonds cannot close with a ring token"
            )
    closures = [(i, j) for i, j, _ in g.bonds if (i, j) not in tree]

    children: dict[int, list[int]] = {v: [] for v in range(n)}
    tree_adj: dict[int, list[int]] = {v: [] for v in range(n)}
    for i, j in tree:
        tree_adj[i].append(j)
        tree_adj[j].append(i)
    seen = [False] * n

    def walk(v: int) -> None:
        seen[v] = True
        for w in sorted(tree_adj[v]):
            if not seen[w]:
                children[v].append(w)
                walk(w)

    walk(0)
    return children, closures


def graph_to_selfies(g: MolecularGraph) -> list[str]:
    """Token list for ``g``. Raises EmitError for graphs the dialect cannot
    express: disconnected graphs, cycles made entirely of multiple bonds,
    or branch/ring offsets beyond the fixed overload table."""
    if g.is_empty:
        return []
    if len(g.components()) != 1:
        raise EmitError("disconnected graphs are not expressible")

    # Spanning tree with every multiple bond inside it: ring closure
    # tokens carry single bonds only. A DFS that walks multiple bonds
    # first gives chain-like trees (short strings) but can strand a
    # multiple bond in rare topologies; the union-find construction is
    # the complete fallback and only fails when the multiple bonds
    # themselves contain a cycle.
    n = len(g)
    tree_result = _tree_dfs_multi_first(g, n)
    if tree_result is None:
        tree_result = _tree_union_find(g, n)
    children, closures = tree_result

    atom_count: dict[int, int] = {}

    def count(v: int) -> int:
        atom_count[v] = 1 + sum(count(w) for w in children[v])
        return atom_count[v]

    count(0)
    for v in range(n):
        children[v].sort(key=lambda w: (atom_count[w], w))

    pre: dict[int, int] = {}

    def number(v: int) -> None:
        pre[v] = len(pre)
        for w in children[v]:
            number(w)

    number(0)

    closes: dict[int, list[int]] = {}
    for a, b in closures:
        later, earlier = (a, b) if pre[a] > pre[b] else (b, a)
        closes.setdefault(later, []).append(earlier)

    def overload_token(q: int, what: str) -> str:
        # [nop] is last in the table and may not appear mid-sequence
        if not 0 <= q < len(OVERLOAD_ORDER) - 1:
            raise EmitError(f"{what} offset {q} not expressible")
        return OVERLOAD_ORDER[q]

    def emit(v: int, entry_order: int) -> list[str]:
        out = [_ATOM_TOKEN[entry_order].format(g.atoms[v].element)]
        for partner in sorted(closes.get(v, ()), key=lambda p: pre[p]):
            q = pre[v] - pre[partner] - 1
            out.append("[Ring1]")
            out.append(overload_token(q, "ring"))
        kids = children[v]
        for idx, w in enumerate(kids):
            payload = emit(w, g.bond_between(v, w))
            if idx < len(kids) - 1:
                out.append(_BRANCH_TOKEN[g.bond_between(v, w)])
                out.append(overload_token(len(payload) - 1, "branch"))
            out.extend(payload)
        return out

    return emit(0, 1)
