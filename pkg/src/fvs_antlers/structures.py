"""Feedback vertex cuts, antlers and certificates, with checked predicates."""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable

from .errors import GraphDomainError, RefusalError
from .exact import find_flower, fvs_bounded
from .multigraph import MultiGraph

__all__ = [
    "Fvc",
    "Certificate",
    "Antler",
    "exact_cap",
    "verify_fvc",
    "verify_antler",
    "verify_certificate",
    "find_certificate",
    "is_z_antler",
    "certificate_tree_bound",
    "prune_certificate",
    "enumerate_antlers",
    "enumerate_fvcs",
]

DEFAULT_EXACT_CAP = 64
DEFAULT_ENUMERATION_CAP = 9


def exact_cap() -> int:
    """Vertex cap for exact sub-solves inside verifiers (env ``FVS_EXACT_CAP``)."""
    return int(os.environ.get("FVS_EXACT_CAP", DEFAULT_EXACT_CAP))


@dataclass(frozen=True)
class Fvc:
    """A candidate feedback vertex cut ``(cut, forest)``."""

    cut: frozenset = frozenset()
    forest: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "cut", frozenset(self.cut))
        object.__setattr__(self, "forest", frozenset(self.forest))

    @property
    def width(self) -> int:
        return len(self.cut)

    @property
    def is_empty(self) -> bool:
        return not self.cut and not self.forest

    @property
    def vertices(self) -> frozenset:
        return self.cut | self.forest

    def to_dict(self) -> dict:
        return {"cut": sorted(self.cut), "forest": sorted(self.forest)}


@dataclass(frozen=True)
class Certificate:
    """Subgraph witnessing that the cut is optimal, component-wise of order ``order``."""

    vertices: frozenset
    edges: frozenset
    order: int

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "edges", frozenset(self.edges))

    def graph(self, G: MultiGraph) -> MultiGraph:
        return G.subgraph(self.vertices, self.edges)

    def to_dict(self) -> dict:
        return {"vertices": sorted(self.vertices), "edges": sorted(self.edges),
                "order": self.order}


@dataclass(frozen=True)
class Antler:
    base: Fvc
    certificate: Certificate | None = None

    @property
    def cut(self) -> frozenset:
        return self.base.cut

    @property
    def forest(self) -> frozenset:
        return self.base.forest


def _as_fvc(f) -> Fvc:
    if isinstance(f, Fvc):
        return f
    if isinstance(f, Antler):
        return f.base
    cut, forest = f
    return Fvc(cut, forest)


def verify_fvc(G: MultiGraph, f) -> bool:
    """True iff ``f`` is a feedback vertex cut of ``G``."""
    f = _as_fvc(f)
    C, F = f.cut, f.forest
    if C & F or not (C | F) <= G.vertices:
        return False
    if not G.induced_subgraph(F).is_acyclic():
        return False
    inside = C | F
    for tree in G.components(F):
        out = 0
        for v in tree:
            for _, w in G.incident(v):
                if w not in inside:
                    out += 1
        if out > 1:
            return False
    return True


def _check_cap(size):
    cap = exact_cap()
    if size > cap:
        raise RefusalError(f"exact sub-solve capped at {cap} vertices (got {size})")


def verify_antler(G: MultiGraph, f) -> bool:
    """True iff ``f`` is an FVC whose cut is a minimum FVS of ``G[C ∪ F]``."""
    f = _as_fvc(f)
    if not verify_fvc(G, f):
        return False
    if not f.cut:
        return True
    _check_cap(len(f.vertices))
    # the cut always hits every cycle of G[C ∪ F]; only optimality is open
    return fvs_bounded(G.induced_subgraph(f.vertices), len(f.cut) - 1) is None


def verify_certificate(G: MultiGraph, C: Iterable, H: Certificate, z: int,
                       forest: Iterable | None = None) -> bool:
    """Check that ``H`` is a ``C``-certificate of order ``z`` inside ``G``.

    With ``forest`` given, ``H`` must also lie inside ``G[C ∪ forest]``.
    """
    C = frozenset(C)
    if not H.vertices <= G.vertices:
        return False
    if forest is not None and not H.vertices <= C | frozenset(forest):
        return False
    for e in H.edges:
        if not G.has_edge(e):
            return False
        u, v = G.endpoints(e)
        if u not in H.vertices or v not in H.vertices:
            return False
    sub = G.subgraph(H.vertices, H.edges)
    for comp in sub.components():
        part = sub.induced_subgraph(comp)
        hit = C & comp
        if len(hit) > z:
            return False
        _check_cap(len(comp))
        if not part.remove(hit).is_acyclic():
            return False
        if hit and fvs_bounded(part, len(hit) - 1) is not None:
            return False
    return True


def _set_partitions(items, max_block):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest, max_block):
        for i in range(len(part)):
            if len(part[i]) < max_block:
                yield part[:i] + [part[i] + [first]] + part[i + 1:]
        yield [[first]] + part


@lru_cache(maxsize=65536)
def _certificate_search(G, C, F, z):
    if not C:
        return Certificate(frozenset(), frozenset(), z)
    if z <= 0:
        return None
    whole = G.induced_subgraph(C | F)
    if len(C) <= z:
        if fvs_bounded(whole, len(C) - 1) is None:
            return Certificate(whole.vertices, frozenset(whole.edges), z)
        return None
    if len(F) > 14:
        raise RefusalError("exhaustive certificate search capped at 14 forest vertices")
    order = sorted(F)
    for groups in _set_partitions(sorted(C), z):
        for assign in product(range(len(groups) + 1), repeat=len(order)):
            ok = True
            verts, edges = set(), set()
            for gi, grp in enumerate(groups):
                part = set(grp) | {f for f, a in zip(order, assign) if a == gi}
                sub = G.induced_subgraph(part)
                if fvs_bounded(sub, len(grp) - 1) is not None:
                    ok = False
                    break
                verts |= part
                edges |= set(sub.edges)
            if ok:
                return Certificate(frozenset(verts), frozenset(edges), z)
    return None


def find_certificate(G: MultiGraph, f, z: int) -> Certificate | None:
    """Exhaustively search ``G[C ∪ F]`` for a ``C``-certificate of order ``z``.

    Only meant for tiny instances; the verifiers elsewhere take explicit
    certificates.
    """
    f = _as_fvc(f)
    return _certificate_search(G, f.cut, f.forest, z)


def is_z_antler(G: MultiGraph, f, z: int) -> bool:
    f = _as_fvc(f)
    return verify_antler(G, f) and find_certificate(G, f, z) is not None


def certificate_tree_bound(cut_size: int, z: int) -> int:
    """Upper bound on the number of trees a pruned certificate keeps."""
    return max(0, (cut_size * (z * z + 2 * z - 1)) // 2)


def prune_certificate(G: MultiGraph, C: Iterable, H: Certificate, z: int) -> Certificate:
    """Drop redundant trees of ``H - C`` until no further tree qualifies.

    A tree ``T`` is dropped when (1) every cut vertex closing a cycle with
    ``T`` keeps an order-``z`` flower in ``H - T`` and (2) every pair of
    neighbours of ``T`` shares at least ``z + 1`` other trees.  Trees are
    examined in order of their smallest vertex.
    """
    C = frozenset(C)
    sub = G.subgraph(H.vertices, H.edges)
    while True:
        trees = sub.components(sub.vertices - C)
        nbhd = [sub.neighborhood(T) for T in trees]
        dropped = False
        for i, T in enumerate(trees):
            if _redundant_tree(sub, C, trees, nbhd, i, z):
                sub = sub.remove(T)
                dropped = True
                break
        if not dropped:
            break
    return Certificate(sub.vertices, frozenset(sub.edges), z)


def _redundant_tree(sub, C, trees, nbhd, i, z):
    T = trees[i]
    rest = sub.remove(T)
    for v in sorted(C & sub.vertices):
        if sub.induced_subgraph(T | {v}).is_acyclic():
            continue
        if find_flower(rest, v, z) is None:
            return False
    for u, w in combinations(sorted(nbhd[i]), 2):
        shared = sum(1 for j, N in enumerate(nbhd) if j != i and u in N and w in N)
        if shared < z + 1:
            return False
    return True


def enumerate_fvcs(G: MultiGraph, k_max: int, cap: int | None = None) -> list:
    """Every FVC with width at most ``k_max`` (tiny graphs only)."""
    cap = DEFAULT_ENUMERATION_CAP if cap is None else cap
    if G.n > cap:
        raise RefusalError(f"enumeration capped at {cap} vertices (got {G.n})")
    order = sorted(G.vertices)
    found = []
    for labels in product((0, 1, 2), repeat=len(order)):
        if labels.count(1) > k_max:
            continue
        C = frozenset(v for v, a in zip(order, labels) if a == 1)
        F = frozenset(v for v, a in zip(order, labels) if a == 2)
        f = Fvc(C, F)
        if verify_fvc(G, f):
            found.append(f)
    return found


def enumerate_antlers(G: MultiGraph, k_max: int, z: int, cap: int | None = None) -> list:
    """Every ``z``-antler of width at most ``k_max``, each with a certificate."""
    out = []
    for f in enumerate_fvcs(G, k_max, cap):
        if not verify_antler(G, f):
            continue
        cert = find_certificate(G, f, z)
        if cert is not None:
            out.append(Antler(f, cert))
    return out


def check_subset(G: MultiGraph, X: Iterable, name: str = "vertex set") -> frozenset:
    X = frozenset(X)
    if not X <= G.vertices:
        raise GraphDomainError(f"{name} not contained in the graph: {sorted(X - G.vertices)}")
    return X
