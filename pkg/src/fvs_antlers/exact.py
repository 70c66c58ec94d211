"""Exact feedback vertex set solvers and v-flower construction.

``fvs_bruteforce`` is the reference oracle (plain subset enumeration).
``fvs_exact`` / ``fvs_bounded`` branch on shortest cycles after the usual
loop / degree <= 1 / degree 2 simplifications and must agree with it.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations

from .errors import GraphDomainError, RefusalError
from .multigraph import MultiGraph

__all__ = [
    "FlowerResult",
    "oracle_cap",
    "fvs_bruteforce",
    "fvs_exact",
    "fvs_bounded",
    "fvs_number",
    "tree_flower",
    "find_flower",
]

DEFAULT_ORACLE_CAP = 16


def oracle_cap() -> int:
    """Vertex cap for the brute-force oracle (env ``FVS_ORACLE_CAP``)."""
    return int(os.environ.get("FVS_ORACLE_CAP", DEFAULT_ORACLE_CAP))


@dataclass(frozen=True)
class FlowerResult:
    """A hitting set avoiding the centre plus a flower of matching order."""

    center: object
    hit_set: frozenset
    petals: list = field(default_factory=list)

    @property
    def order(self) -> int:
        return len(self.petals)


# -- brute force ---------------------------------------------------------

def _acyclic_without(pairs, removed):
    parent = {}

    def find(x):
        while parent.get(x, x) != x:
            parent[x] = parent.get(parent[x], parent[x])
            x = parent[x]
        return x

    for u, v in pairs:
        if u in removed or v in removed:
            continue
        if u == v:
            return False
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def fvs_bruteforce(G: MultiGraph, cap: int | None = None) -> tuple:
    """Minimum FVS by enumerating vertex subsets in increasing size.

    Among minimum solutions the lexicographically first (over sorted vertex
    ids) is returned, which keeps test expectations deterministic.
    """
    cap = oracle_cap() if cap is None else cap
    if G.n > cap:
        raise RefusalError(f"brute-force oracle capped at {cap} vertices (got {G.n})")
    pairs = [p for _, p in G.edge_items()]
    order = sorted(G.vertices)
    for size in range(len(order) + 1):
        for combo in combinations(order, size):
            if _acyclic_without(pairs, set(combo)):
                return size, frozenset(combo)
    raise AssertionError("unreachable: removing every vertex leaves no cycle")


# -- branching solver ----------------------------------------------------

def _to_adj(G):
    adj = {v: Counter() for v in G.vertices}
    for _, (u, v) in G.edge_items():
        adj[u][v] += 1
        if u != v:
            adj[v][u] += 1
    return adj


def _copy(adj):
    return {v: Counter(c) for v, c in adj.items()}


def _delete(adj, v):
    for w in adj.pop(v):
        if w != v:
            del adj[w][v]


def _simplify(adj, taken):
    """Exhaustively apply loop, degree <= 1 and degree-2 bypass rules in place."""
    changed = True
    while changed:
        changed = False
        for v in list(adj):
            if v not in adj:
                continue
            nb = adj[v]
            if nb.get(v):
                taken.append(v)
                _delete(adj, v)
                changed = True
                continue
            deg = sum(nb.values())
            if deg <= 1:
                _delete(adj, v)
                changed = True
            elif deg == 2:
                ws = list(nb.elements())
                _delete(adj, v)
                a, b = ws
                adj[a][b] += 1
                if a != b:
                    adj[b][a] += 1
                changed = True


def _shortest_cycle(adj):
    for v, nb in adj.items():
        for w, c in nb.items():
            if c >= 2:
                return [v, w]
    best = None
    for s in sorted(adj, key=lambda x: -len(adj[x])):
        parent = {s: None}
        depth = {s: 0}
        queue = [s]
        head = 0
        found = None
        while head < len(queue) and found is None:
            x = queue[head]
            head += 1
            for y in adj[x]:
                if y == parent[x]:
                    continue
                if y in depth:
                    found = (x, y)
                    break
                parent[y] = x
                depth[y] = depth[x] + 1
                queue.append(y)
        if found is None:
            continue
        x, y = found
        px, py = [x], [y]
        while px[-1] != s:
            px.append(parent[px[-1]])
        while py[-1] != s:
            py.append(parent[py[-1]])
        # trim the common tail
        while len(px) > 1 and len(py) > 1 and px[-2] == py[-2]:
            px.pop()
            py.pop()
        cycle = px + py[-2::-1]
        if best is None or len(cycle) < len(best):
            best = cycle
            if len(best) <= 3:
                break
    return best


def _branch(adj, budget):
    taken = []
    _simplify(adj, taken)
    budget -= len(taken)
    if budget < 0:
        return None
    if not adj:
        return taken
    if budget == 0:
        return None
    for x in _shortest_cycle(adj):
        sub = _copy(adj)
        _delete(sub, x)
        rest = _branch(sub, budget - 1)
        if rest is not None:
            return taken + [x] + rest
    return None


def fvs_bounded(G: MultiGraph, z: int):
    """A minimum FVS if ``fvs(G) <= z``, else ``None``."""
    if z < 0:
        raise GraphDomainError("z must be non-negative")
    base = _to_adj(G)
    for k in range(z + 1):
        sol = _branch(_copy(base), k)
        if sol is not None:
            return frozenset(sol)
    return None


def fvs_exact(G: MultiGraph) -> tuple:
    """Exact ``(fvs(G), witness)`` by iterative deepening on ``fvs_bounded``."""
    base = _to_adj(G)
    k = 0
    while True:
        sol = _branch(_copy(base), k)
        if sol is not None:
            return len(sol), frozenset(sol)
        k += 1


def fvs_number(G: MultiGraph) -> int:
    return fvs_exact(G)[0]


# -- flowers ---------------------------------------------------------------

def tree_flower(G: MultiGraph, v) -> FlowerResult:
    """Hitting set ``X`` avoiding ``v`` with a v-flower of order ``|X|``.

    Requires that ``v`` carries no self-loop and ``G - v`` is a forest.
    Each round roots a tree of ``G - v`` that closes a cycle with ``v``,
    takes the deepest vertex ``x`` whose subtree still does, records one
    cycle through ``v`` and ``x`` as a petal and discards that subtree.
    """
    if v not in G.vertices:
        raise GraphDomainError(f"unknown vertex {v!r}")
    if G.has_self_loop(v):
        raise GraphDomainError("flower centre must not carry a self-loop")
    rest = G.remove([v])
    if not rest.is_acyclic():
        raise GraphDomainError("G - v must be acyclic")

    to_v = Counter(w for _, w in G.incident(v) if w != v)
    alive = set(rest.vertices)
    hit, petals = [], []
    for tree in rest.components():
        pending = [tree]
        while pending:
            part = pending.pop()
            part = part & alive
            if sum(to_v[x] for x in part) < 2:
                continue
            root = min(part)
            parent = {root: None}
            order = [root]
            for x in order:
                for _, y in rest.incident(x):
                    if y in part and y not in parent:
                        parent[y] = x
                        order.append(y)
            depth = {root: 0}
            for x in order[1:]:
                depth[x] = depth[parent[x]] + 1
            sub = {x: to_v[x] for x in order}
            for x in reversed(order[1:]):
                sub[parent[x]] += sub[x]
            x = min((y for y in order if sub[y] >= 2), key=lambda y: (-depth[y], y))
            children = [c for c in order if parent[c] == x]
            if to_v[x] >= 2:
                petal = (v, x)
            else:
                ends = [x] if to_v[x] == 1 else []
                for c in sorted(children):
                    if len(ends) == 2:
                        break
                    if sub[c] == 1:
                        # walk down to the single vertex with an edge to v
                        y = c
                        while to_v[y] == 0:
                            y = next(d for d in order if parent[d] == y and sub[d] == 1)
                        ends.append(y)
                a, b = ends

                def up(y):
                    path = [y]
                    while path[-1] != x:
                        path.append(parent[path[-1]])
                    return path

                pa, pb = up(a), up(b)
                petal = (v, *pa, *reversed(pb[:-1]))
            subtree = {x}
            for y in order:
                if parent[y] in subtree:
                    subtree.add(y)
            hit.append(x)
            petals.append(petal)
            alive -= subtree
            remaining = part - subtree
            if remaining:
                pending.extend(rest.components(remaining))
    return FlowerResult(v, frozenset(hit), petals)


def _cycles_through(G, v, limit):
    """Simple cycles through ``v`` as vertex tuples starting at ``v``."""
    found = []
    for w in sorted(G.neighbors(v)):
        if G.multiplicity(v, w) >= 2:
            found.append((v, w))
    nbrs = sorted(G.neighbors(v))

    def dfs(path, seen):
        if len(found) >= limit:
            return
        x = path[-1]
        for _, y in G.incident(x):
            if y == v and len(path) >= 3 and path[1] < x:
                found.append(tuple(path))
            elif y != v and y not in seen and y != x:
                seen.add(y)
                path.append(y)
                dfs(path, seen)
                path.pop()
                seen.discard(y)

    for a in nbrs:
        dfs([v, a], {v, a})
    uniq = sorted(set(found), key=lambda c: (len(c), c))
    return uniq


def find_flower(G: MultiGraph, v, order: int, cycle_limit: int = 5000):
    """Petals of a v-flower of the requested order, or ``None``."""
    if order <= 0:
        return []
    loops = [e for e, w in G.incident(v) if w == v]
    if loops:
        rest = find_flower(G.remove(edges=[loops[0]]), v, order - 1, cycle_limit)
        return None if rest is None else [(v,)] + rest
    if G.remove([v]).is_acyclic():
        res = tree_flower(G, v)
        return res.petals[:order] if res.order >= order else None
    for cyc in _cycles_through(G, v, cycle_limit):
        rest = find_flower(G.remove(cyc[1:]), v, order - 1, cycle_limit)
        if rest is not None:
            return [cyc] + rest
    return None
