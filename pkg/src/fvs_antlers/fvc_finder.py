"""Detection of reducible feedback vertex cuts via vertex 2-colourings."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .coloring import Color, Coloring2, as_color
from .errors import GraphDomainError
from .multigraph import MultiGraph, pendant_forest
from .structures import Fvc
from .universal import build_universal

__all__ = [
    "f_r",
    "is_reducible",
    "KnapsackItem",
    "knapsack_best_values",
    "find_fvc_colored",
    "find_reducible_fvc",
    "fvc_sample_size",
    "structured_fvc_colorings",
]


def f_r(x: int) -> int:
    """Forest-size threshold ``2x^3 + 3x^2 - x`` above which a cut is reducible."""
    if x < 0:
        raise GraphDomainError("f_r is defined on non-negative integers")
    return 2 * x ** 3 + 3 * x ** 2 - x


def is_reducible(f: Fvc) -> bool:
    return len(f.forest) > f_r(len(f.cut))


def fvc_sample_size(k: int) -> int:
    """Number of vertices whose colours decide properness for width ``k``."""
    return 2 * f_r(k) + k + 1


@dataclass(frozen=True)
class KnapsackItem:
    tree_id: int
    weight: int
    value: int


def knapsack_best_values(items: Iterable[KnapsackItem], b_max: int) -> list:
    """0-1 knapsack table: ``table[b] = (best value, chosen tree ids)`` for weight <= b.

    Equal values are broken towards the lexicographically smaller id tuple.
    """
    if b_max < 0:
        raise GraphDomainError("b_max must be non-negative")
    table = [(0, ()) for _ in range(b_max + 1)]
    for item in sorted(items, key=lambda it: it.tree_id):
        if item.weight < 0 or item.value < 0:
            raise GraphDomainError("knapsack weights and values must be non-negative")
        for b in range(b_max, item.weight - 1, -1):
            val, ids = table[b - item.weight]
            cand = (val + item.value, tuple(sorted(ids + (item.tree_id,))))
            cur = table[b]
            if cand[0] > cur[0] or (cand[0] == cur[0] and cand[1] < cur[1]):
                table[b] = cand
    return table


def _forest_trees(G, forest_class):
    """Tree components of ``G[forest_class]`` with their outside-edge counters."""
    trees = []
    for comp in G.components(forest_class):
        edges_inside = 0
        loop = False
        out = Counter()
        for x in comp:
            for _, y in G.incident(x):
                if y in comp:
                    if y == x:
                        loop = True
                    edges_inside += 1
                else:
                    out[y] += 1
        # each inner edge was seen from both ends
        if loop or edges_inside // 2 != len(comp) - 1:
            continue
        trees.append((comp, out))
    return trees


def find_fvc_colored(G: MultiGraph, chi) -> Fvc:
    """Search one 2-colouring for a reducible FVC; empty ``Fvc`` when none is found.

    First every forest-coloured tree is tried on its own (cut = its
    neighbourhood, minus one vertex joined by a single edge).  Then, for each
    cut-coloured ``u``, the trees hanging off ``u`` by exactly one edge are
    combined: trees whose neighbours are all shared hubs are always taken,
    the others are selected by a knapsack over their private neighbours.
    """
    if not isinstance(chi, Coloring2):
        chi = Coloring2({v: as_color(c) for v, c in dict(chi).items()})
    chi.check_total(G)
    forest_class = chi.of(Color.FOREST)
    cut_class = chi.of(Color.CUT)
    trees = _forest_trees(G, forest_class)

    for comp, out in trees:
        singles = sorted(u for u, c in out.items() if c == 1)
        cut = set(out) - ({singles[0]} if singles else set())
        if len(comp) > f_r(len(cut)):
            return Fvc(cut, comp)

    for u in sorted(cut_class):
        family = [i for i, (_, out) in enumerate(trees) if out.get(u) == 1]
        if not family:
            continue
        touch = Counter()
        for i in family:
            for w in trees[i][1]:
                if w != u:
                    touch[w] += 1
        hubs = {w for w, c in touch.items() if c >= 2}
        hub_u = hubs | {u}
        first = [i for i in family if set(trees[i][1]) <= hub_u]
        second = [i for i in family if i not in first]
        base_value = sum(len(trees[i][0]) for i in first)
        items = [KnapsackItem(i, len(set(trees[i][1]) - hub_u), len(trees[i][0]))
                 for i in second]
        private = set()
        for i in second:
            private |= set(trees[i][1]) - hub_u
        table = knapsack_best_values(items, len(private))
        for b, (value, chosen) in enumerate(table):
            if base_value + value > f_r(len(hubs) + b):
                cut = set(hubs)
                forest = set()
                for i in first:
                    forest |= trees[i][0]
                for i in chosen:
                    forest |= trees[i][0]
                    cut |= set(trees[i][1])
                cut.discard(u)
                return Fvc(cut, forest)
    return Fvc()


def structured_fvc_colorings(G: MultiGraph, k: int) -> Iterator[Coloring2]:
    """Colourings whose forest class is the pendant forest of ``G - C``, ``|C| <= k``.

    Any reducible single-tree FVC ``(C, T)`` has ``T`` inside the pendant
    forest of ``G - C``, so the first pass of :func:`find_fvc_colored`
    recovers a reducible cut from the matching colouring.
    """
    seen = set()
    order = sorted(G.vertices)
    for size in range(k + 1):
        for C in combinations(order, size):
            forest = pendant_forest(G, C)
            if not forest or forest in seen:
                continue
            seen.add(forest)
            yield Coloring2.from_forest_class(G, forest)


def find_reducible_fvc(G: MultiGraph, k: int, backend: str = "structured",
                       seed: int = 0) -> Fvc:
    """First reducible FVC found over a family of colourings, else the empty FVC.

    ``backend`` is ``"structured"`` (pendant-forest colourings) or one of the
    universal-family backends, in which case every member ``Q`` of an
    ``(n, s)``-universal family with ``s = 2 f_r(k) + k + 1`` (capped at
    ``n``) is used as the cut class.
    """
    if k < 0:
        raise GraphDomainError("k must be non-negative")
    if G.n == 0:
        return Fvc()
    if backend == "structured":
        colorings = structured_fvc_colorings(G, k)
    else:
        order = sorted(G.vertices)
        fam = build_universal(order, min(fvc_sample_size(k), len(order)), backend, seed)
        colorings = (Coloring2.from_cut_class(G, Q) for Q in fam)
    for chi in colorings:
        f = find_fvc_colored(G, chi)
        if not f.is_empty and is_reducible(f):
            return f
    return Fvc()
