"""Immutable undirected multigraph with parallel edges and self-loops.

Vertices are hashable, orderable ids (the parsers use positive integers).
Edges carry integer ids that stay stable across every derived graph, so a
reduction log can always refer back to the input graph.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Mapping

from .errors import GraphDomainError

__all__ = [
    "MultiGraph",
    "induced_subgraph",
    "remove",
    "edges_between",
    "is_acyclic",
    "pendant_forest",
]


def _pair(u, v):
    return (u, v) if u <= v else (v, u)


class MultiGraph:
    """Undirected multigraph stored as an incidence map ``edge id -> (u, v)``.

    Instances are treated as values: every mutating operation returns a new
    graph.  ``next_edge`` is the id handed to the next added edge; it only
    grows, so ids are never reused along a chain of derived graphs.
    """

    __slots__ = ("_vertices", "_ends", "_next_edge", "_adj")

    def __init__(self, vertices: Iterable = (), edges: Mapping | None = None,
                 next_edge: int | None = None):
        verts = frozenset(vertices)
        ends = {}
        for e, (u, v) in (edges or {}).items():
            if u not in verts or v not in verts:
                raise GraphDomainError(
                    f"edge {e} has endpoint outside the vertex set: {(u, v)}")
            ends[e] = _pair(u, v)
        top = max(ends) + 1 if ends else 1
        if next_edge is None:
            next_edge = top
        elif next_edge < top:
            raise GraphDomainError("next_edge must exceed every existing edge id")
        self._vertices = verts
        self._ends = ends
        self._next_edge = next_edge
        self._adj = None

    @classmethod
    def from_edges(cls, pairs: Iterable, vertices: Iterable | None = None) -> "MultiGraph":
        """Build a graph whose edges get ids ``1, 2, ...`` in iteration order."""
        pairs = [tuple(p) for p in pairs]
        verts = set(vertices) if vertices is not None else set()
        if vertices is None:
            for u, v in pairs:
                verts.update((u, v))
        return cls(verts, {i: p for i, p in enumerate(pairs, start=1)})

    # -- basic accessors -------------------------------------------------

    @property
    def vertices(self) -> frozenset:
        return self._vertices

    @property
    def edges(self) -> tuple:
        return tuple(sorted(self._ends))

    @property
    def next_edge(self) -> int:
        return self._next_edge

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return len(self._ends)

    def endpoints(self, e) -> tuple:
        try:
            return self._ends[e]
        except KeyError:
            raise GraphDomainError(f"unknown edge id {e!r}") from None

    def edge_items(self):
        """``(edge id, (u, v))`` pairs in id order."""
        return sorted(self._ends.items())

    def has_edge(self, e) -> bool:
        return e in self._ends

    def _adjacency(self):
        if self._adj is None:
            adj = {v: [] for v in self._vertices}
            for e, (u, v) in self._ends.items():
                adj[u].append((e, v))
                if u != v:
                    adj[v].append((e, u))
            self._adj = adj
        return self._adj

    def incident(self, v) -> list:
        """``(edge id, other endpoint)`` for each edge at ``v``; loops once."""
        self._check_vertex(v)
        return self._adjacency()[v]

    def degree(self, v) -> int:
        # a self-loop contributes two endpoints
        return sum(2 if w == v else 1 for _, w in self.incident(v))

    def neighbors(self, v) -> set:
        return {w for _, w in self.incident(v) if w != v}

    def neighborhood(self, X: Iterable) -> set:
        """Open neighbourhood ``N(X)``: neighbours of ``X`` outside ``X``."""
        X = set(X)
        adj = self._adjacency()
        out = set()
        for v in X:
            for _, w in adj[v]:
                if w not in X:
                    out.add(w)
        return out

    def has_self_loop(self, v) -> bool:
        return any(w == v for _, w in self.incident(v))

    def edges_joining(self, u, v) -> list:
        return sorted(e for e, w in self.incident(u) if w == v)

    def multiplicity(self, u, v) -> int:
        return sum(1 for _, w in self.incident(u) if w == v)

    def pair_multiplicities(self) -> dict:
        counts = defaultdict(int)
        for pair in self._ends.values():
            counts[pair] += 1
        return dict(counts)

    def _check_vertex(self, v):
        if v not in self._vertices:
            raise GraphDomainError(f"unknown vertex {v!r}")

    # -- derived graphs --------------------------------------------------

    def induced_subgraph(self, X: Iterable) -> "MultiGraph":
        X = frozenset(X)
        if not X <= self._vertices:
            raise GraphDomainError(
                f"vertices not in graph: {sorted(X - self._vertices)}")
        ends = {e: p for e, p in self._ends.items() if p[0] in X and p[1] in X}
        return MultiGraph(X, ends, self._next_edge)

    def remove(self, vertices: Iterable = (), edges: Iterable = ()) -> "MultiGraph":
        vertices = frozenset(vertices)
        edges = frozenset(edges)
        if not vertices <= self._vertices:
            raise GraphDomainError(
                f"vertices not in graph: {sorted(vertices - self._vertices)}")
        missing = [e for e in edges if e not in self._ends]
        if missing:
            raise GraphDomainError(f"edges not in graph: {sorted(missing)}")
        ends = {e: p for e, p in self._ends.items()
                if e not in edges and p[0] not in vertices and p[1] not in vertices}
        return MultiGraph(self._vertices - vertices, ends, self._next_edge)

    def add_edges(self, pairs: Iterable) -> tuple:
        """Return ``(new graph, new edge ids)``; ids are taken from ``next_edge``."""
        ends = dict(self._ends)
        nxt = self._next_edge
        new_ids = []
        for u, v in pairs:
            self._check_vertex(u)
            self._check_vertex(v)
            ends[nxt] = _pair(u, v)
            new_ids.append(nxt)
            nxt += 1
        return MultiGraph(self._vertices, ends, nxt), new_ids

    def subgraph(self, vertices: Iterable, edges: Iterable) -> "MultiGraph":
        """Subgraph on the given vertices keeping only the listed edges."""
        vertices = frozenset(vertices)
        ends = {}
        for e in edges:
            u, v = self.endpoints(e)
            if u not in vertices or v not in vertices:
                raise GraphDomainError(f"edge {e} leaves the chosen vertex set")
            ends[e] = (u, v)
        return MultiGraph(vertices, ends, self._next_edge)

    # -- global queries --------------------------------------------------

    def edges_between(self, X: Iterable, Y: Iterable) -> int:
        X, Y = set(X), set(Y)
        if X & Y:
            raise GraphDomainError("edges_between needs disjoint vertex sets")
        return sum(1 for u, v in self._ends.values()
                   if (u in X and v in Y) or (u in Y and v in X))

    def components(self, within: Iterable | None = None) -> list:
        """Vertex sets of connected components, ordered by smallest vertex.

        With ``within``, components of the induced subgraph on that set.
        """
        pool = set(self._vertices if within is None else within)
        adj = self._adjacency()
        comps = []
        for s in sorted(pool):
            if s not in pool:
                continue
            pool.discard(s)
            comp = [s]
            stack = [s]
            while stack:
                x = stack.pop()
                for _, y in adj[x]:
                    if y in pool:
                        pool.discard(y)
                        comp.append(y)
                        stack.append(y)
            comps.append(frozenset(comp))
        return comps

    def is_acyclic(self) -> bool:
        parent = {}

        def find(x):
            root = x
            while parent.get(root, root) != root:
                root = parent[root]
            while parent.get(x, x) != root:
                parent[x], x = root, parent[x]
            return root

        for u, v in self._ends.values():
            if u == v:
                return False
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
        return True

    def key(self) -> tuple:
        """Hashable identity of the vertex set and incidence map."""
        return (self._vertices, frozenset(self._ends.items()))

    def __eq__(self, other):
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self._vertices == other._vertices and self._ends == other._ends

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"MultiGraph(n={self.n}, m={self.m})"


def induced_subgraph(G: MultiGraph, X: Iterable) -> MultiGraph:
    return G.induced_subgraph(X)


def remove(G: MultiGraph, vertices: Iterable = (), edges: Iterable = ()) -> MultiGraph:
    """``G - Y`` where ``Y`` is split into vertex ids and edge ids."""
    return G.remove(vertices, edges)


def edges_between(G: MultiGraph, X: Iterable, Y: Iterable) -> int:
    return G.edges_between(X, Y)


def is_acyclic(G: MultiGraph) -> bool:
    return G.is_acyclic()


def pendant_forest(G: MultiGraph, cut: Iterable = ()) -> frozenset:
    """Vertices removed by repeatedly deleting degree <= 1 vertices of ``G - cut``.

    The result is the largest ``F`` for which ``(cut, F)`` is a feedback
    vertex cut: every component of ``G[F]`` is a tree joined to the rest of
    ``G - cut`` by at most one edge, and every FVC with this cut has its
    forest inside the returned set.
    """
    cut = set(cut)
    alive = set(G.vertices) - cut
    deg = {}
    for v in alive:
        deg[v] = sum(2 if w == v else 1 for _, w in G.incident(v) if w in alive)
    queue = [v for v in alive if deg[v] <= 1]
    peeled = set()
    while queue:
        v = queue.pop()
        if v in peeled:
            continue
        peeled.add(v)
        for _, w in G.incident(v):
            if w in alive and w not in peeled and w != v:
                deg[w] -= 1
                if deg[w] <= 1:
                    queue.append(w)
    return frozenset(peeled)
