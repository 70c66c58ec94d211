"""Seeded instance generators: random multigraphs and planted antlers.

All generators draw from ``random.Random(seed)`` and number vertices from 1,
so their output serializes without explicit vertex lines.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import GraphDomainError
from .exact import fvs_bruteforce, fvs_exact, oracle_cap
from .multigraph import MultiGraph
from .structures import Certificate, Fvc

__all__ = ["PlantedInstance", "random_multigraph", "gen_planted", "gen_chain", "gen_union"]


@dataclass
class PlantedInstance:
    """A generated graph plus its ground truth."""

    graph: MultiGraph
    antlers: list
    z: int
    certificate: Certificate
    params: dict = field(default_factory=dict)
    optimum: int | None = None
    optimum_method: str | None = None

    @property
    def cut(self) -> frozenset:
        return frozenset().union(*(a.cut for a in self.antlers))

    @property
    def forest(self) -> frozenset:
        return frozenset().union(*(a.forest for a in self.antlers))

    def coloring(self):
        """Colouring that properly colours the union of the planted antlers."""
        from .coloring import Coloring3
        return Coloring3.from_sets(self.graph, self.cut, self.forest,
                                   forest_edges=self.certificate.edges)

    def sidecar(self) -> dict:
        return {
            "params": self.params,
            "z": self.z,
            "cut": sorted(self.cut),
            "forest": sorted(self.forest),
            "sequence": [a.to_dict() for a in self.antlers],
            "certificate": self.certificate.to_dict(),
            "optimum": self.optimum,
            "optimum_method": self.optimum_method,
        }


def random_multigraph(n: int, m: int, seed: int, loops: bool = True,
                      parallel: bool = True) -> MultiGraph:
    """``m`` uniformly drawn edges on vertices ``1..n``."""
    if n < 0 or m < 0 or (m and n == 0):
        raise GraphDomainError("need n >= 0, m >= 0 and n > 0 when m > 0")
    rng = random.Random(seed)
    pairs, seen = [], set()
    attempts = 0
    while len(pairs) < m:
        attempts += 1
        if attempts > 100 * (m + 1):
            raise GraphDomainError("cannot place that many edges under the given restrictions")
        u, v = rng.randint(1, n), rng.randint(1, n)
        if u == v and not loops:
            continue
        key = (min(u, v), max(u, v))
        if key in seen and not parallel:
            continue
        seen.add(key)
        pairs.append((u, v))
    return MultiGraph.from_edges(pairs, vertices=range(1, n + 1))


class _Builder:
    def __init__(self):
        self.count = 0
        self.pairs = []

    def vertex(self):
        self.count += 1
        return self.count

    def edge(self, u, v):
        self.pairs.append((u, v))
        return len(self.pairs)


def _random_tree(b, rng, size):
    nodes = [b.vertex()]
    for _ in range(size - 1):
        x = b.vertex()
        b.edge(rng.choice(nodes), x)
        nodes.append(x)
    return nodes


def _plant(b, rng, k, t):
    """Add one antler of width ``k``; returns ``(cut, forest, cert_vertices, cert_edges, trees)``."""
    head = [b.vertex() for _ in range(k)]
    forest, cert_v, cert_e, trees = [], set(head), set(), []
    for c in head:
        path = [b.vertex() for _ in range(rng.choice((1, 2, 3)))]
        ids = [b.edge(c, path[0])]
        ids += [b.edge(x, y) for x, y in zip(path, path[1:])]
        ids.append(b.edge(path[-1], c))
        forest += path
        cert_v.update(path)
        cert_e.update(ids)
        trees.append(path)
    for c in head:
        for _ in range(t):
            nodes = _random_tree(b, rng, rng.randint(1, 3))
            b.edge(rng.choice(nodes), c)
            if rng.random() < 0.5:
                b.edge(rng.choice(nodes), rng.choice(head))
            forest += nodes
            trees.append(nodes)
    return head, forest, cert_v, cert_e, trees


def _rest_graph(b, rng, r):
    rest = [b.vertex() for _ in range(r)]
    for i in range(1, r):
        b.edge(rest[rng.randrange(i)], rest[i])
    for _ in range(r // 2):
        u, v = rng.sample(rest, 2) if r >= 2 else (rest[0], rest[0])
        if u != v:
            b.edge(u, v)
    return rest


def _canonical(b):
    """Graph with edges numbered in serialized order, so sidecar ids survive a file round trip."""
    from .io import canonicalize
    return canonicalize(MultiGraph.from_edges(b.pairs, vertices=range(1, b.count + 1)))


def _optimum(G):
    if G.n <= oracle_cap():
        return fvs_bruteforce(G)[0], "bruteforce"
    return fvs_exact(G)[0], "exact"


def gen_planted(k: int, z: int, t: int, r: int, seed: int) -> PlantedInstance:
    """A width-``k`` antler whose private cycles certify it, attached to a random rest.

    Each head vertex gets a private cycle through 1-3 fresh forest vertices
    and ``t`` extra trees joined to the head (and by at most one edge to
    the rest).  The rest is a random connected graph on ``r`` vertices
    with a few random head-rest edges.
    """
    if not (k >= z >= 1) or t < 0 or r < 0:
        raise GraphDomainError("need k >= z >= 1, t >= 0 and r >= 0")
    rng = random.Random(seed)
    b = _Builder()
    # the antler takes ids 1..|C ∪ F|, the rest comes after
    head, forest, cert_v, cert_e, _ = _plant(b, rng, k, t)
    rest = _rest_graph(b, rng, r)
    if rest:
        for c in head:
            for _ in range(rng.randint(0, 2)):
                b.edge(c, rng.choice(rest))
        _attach_trees_to_rest(b, rng, set(forest) - cert_v, rest)
    G, remap = _canonical(b)
    base = Fvc(head, forest)
    cert = Certificate(frozenset(cert_v), frozenset(remap[e] for e in cert_e), z)
    opt, method = _optimum(G)
    params = {"k": k, "z": z, "t": t, "r": r, "seed": seed}
    return PlantedInstance(G, [base], z, cert, params, opt, method)


def _attach_trees_to_rest(b, rng, tree_vertices, rest):
    """Give roughly half of the extra trees a single edge into the rest."""
    parent = {v: v for v in tree_vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in list(b.pairs):
        if u in parent and v in parent:
            parent[find(u)] = find(v)
    groups = {}
    for v in sorted(tree_vertices):
        groups.setdefault(find(v), []).append(v)
    for _, nodes in sorted(groups.items()):
        if rng.random() < 0.5:
            b.edge(rng.choice(nodes), rng.choice(rest))


def _finish(b, pieces, z, params):
    G, remap = _canonical(b)
    antlers = [Fvc(head, forest) for head, forest, _, _ in pieces]
    cert_v = set().union(*(cv for _, _, cv, _ in pieces))
    cert_e = {remap[e] for _, _, _, ce in pieces for e in ce}
    opt, method = _optimum(G)
    return PlantedInstance(G, antlers, z, Certificate(cert_v, cert_e, z), params, opt, method)


def gen_chain(widths, t: int, seed: int) -> PlantedInstance:
    """Planted 1-antlers that only become antlers once their predecessors are gone.

    Piece ``i + 1`` has one tree joined by two edges to the head of piece
    ``i``, so the pieces form an antler sequence in the given order.
    """
    widths = list(widths)
    if not widths or any(w < 1 for w in widths) or t < 0:
        raise GraphDomainError("need at least one piece, widths >= 1 and t >= 0")
    rng = random.Random(seed)
    b = _Builder()
    pieces = []
    for i, w in enumerate(widths):
        head, forest, cv, ce, trees = _plant(b, rng, w, t)
        if pieces:
            prev_head = pieces[-1][0]
            tree = rng.choice(trees[w:] or trees)
            b.edge(rng.choice(tree), rng.choice(prev_head))
            b.edge(rng.choice(tree), rng.choice(prev_head))
        pieces.append((head, forest, cv, ce))
    return _finish(b, pieces, 1, {"widths": widths, "t": t, "seed": seed, "shape": "chain"})


def gen_union(widths, t: int, seed: int) -> PlantedInstance:
    """Disjoint union of planted 1-antlers."""
    widths = list(widths)
    if not widths or any(w < 1 for w in widths) or t < 0:
        raise GraphDomainError("need at least one piece, widths >= 1 and t >= 0")
    rng = random.Random(seed)
    b = _Builder()
    pieces = []
    for w in widths:
        head, forest, cv, ce, _ = _plant(b, rng, w, t)
        pieces.append((head, forest, cv, ce))
    return _finish(b, pieces, 1, {"widths": widths, "t": t, "seed": seed, "shape": "union"})
