"""Input coercion shared by the estimator facade and the CLI."""

from __future__ import annotations

from collections.abc import Iterable

from .errors import GraphDomainError
from .multigraph import MultiGraph


def check_graph(X) -> MultiGraph:
    """Accept a ``MultiGraph``, instance-file text, or an iterable of ``(u, v)`` pairs."""
    if isinstance(X, MultiGraph):
        return X
    if isinstance(X, str):
        from .io import parse_graph
        return parse_graph(X)
    if isinstance(X, Iterable):
        pairs = []
        for item in X:
            try:
                u, v = item
            except (TypeError, ValueError):
                raise GraphDomainError(f"edge entries must be pairs, got {item!r}") from None
            pairs.append((u, v))
        return MultiGraph.from_edges(pairs)
    raise GraphDomainError(f"cannot interpret {type(X).__name__} as a graph")


def check_vertex_set(G: MultiGraph, X, name: str = "vertex set") -> frozenset:
    X = frozenset(X)
    missing = X - G.vertices
    if missing:
        raise GraphDomainError(f"{name} has vertices outside the graph: {sorted(missing)}")
    return X


def check_parameters(k: int, z: int):
    for name, val in (("k", k), ("z", z)):
        if not isinstance(val, int) or isinstance(val, bool):
            raise GraphDomainError(f"{name} must be an integer, got {val!r}")
    if not 0 <= z <= k:
        raise GraphDomainError(f"need k >= z >= 0 (got k={k}, z={z})")
