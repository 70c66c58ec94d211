"""Antler extraction from vertex/edge 3-colourings and the reduction loop built on it."""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Sequence

from .coloring import Color, Coloring3
from .errors import GraphDomainError, NotFoundError, RefusalError
from .exact import fvs_bounded
from .fvc_finder import find_reducible_fvc
from .multigraph import MultiGraph, pendant_forest
from .reducer import OperationNotFound, ReductionStep, ReductionTrace, apply_operation, op3_remove_antler
from .structures import Certificate, Fvc, find_certificate, verify_antler, verify_certificate
from .universal import build_universal, random_family_size

__all__ = [
    "AntlerSequence",
    "Extraction",
    "w_chi",
    "extract_antler",
    "extract_with_certificate",
    "colored_antler_sample_size",
    "structured_antler_colorings",
    "proper_coloring",
    "transport_coloring",
    "find_and_apply",
    "reduce_all",
    "solve_by_antler_complexity",
    "complexity_grid",
]

log = logging.getLogger(__name__)

C_, F_, R_ = Color.CUT, Color.FOREST, Color.REST


def colored_antler_sample_size(k: int, z: int) -> int:
    """Relevant vertices and edges deciding properness: ``26 k^5 z^2``."""
    return 26 * k ** 5 * z * z


# -- W_chi and extraction ------------------------------------------------------------

def _live_graph(G, chi):
    """``G`` minus every R-coloured vertex and edge."""
    drop_v = [v for v in G.vertices if chi.vcolor(v) is R_]
    drop_e = [e for e in G.edges if chi.ecolor(e) is R_]
    return G.remove(drop_v, drop_e)


def _forest_pieces(G, chi):
    """Components of ``G[F-vertices] - R`` with their neighbourhoods in ``G - R``."""
    live = _live_graph(G, chi)
    fverts = [v for v in live.vertices if chi.vcolor(v) is F_]
    return [(comp, frozenset(live.neighborhood(comp))) for comp in live.components(fverts)]


def w_chi(G: MultiGraph, chi: Coloring3, C: Iterable) -> frozenset:
    """Forest-coloured vertices whose live component only sees vertices of ``C``."""
    C = frozenset(C)
    bad = [v for v in C if chi.vcolor(v) is not C_]
    if bad:
        raise GraphDomainError(f"vertices {sorted(bad)} are not cut-coloured")
    out = set()
    for comp, nbhd in _forest_pieces(G, chi):
        if nbhd <= C:
            out |= comp
    return frozenset(out)


def _w_from_pieces(pieces, C):
    out = set()
    for comp, nbhd in pieces:
        if nbhd <= C:
            out |= comp
    return frozenset(out)


@dataclass
class Extraction:
    """Result of :func:`extract_with_certificate`.

    ``certificate`` is assembled from the final round's marked sets;
    ``certificate_ok`` records whether it passed verification.
    """

    fvc: Fvc
    coloring: Coloring3
    marked_sets: list = field(default_factory=list)
    certificate: Certificate | None = None
    certificate_ok: bool = True
    rounds: int = 0


def _recolor_r_edges(G, chi):
    for e, (a, b) in G.edge_items():
        if chi.vcolor(a) is R_ or chi.vcolor(b) is R_:
            chi.edge[e] = R_


def _drop_bad_trees(G, chi):
    rest = {v for v in G.vertices if chi.vcolor(v) is R_}
    fverts = [v for v in G.vertices if chi.vcolor(v) is F_]
    changed = False
    for comp in G.components(fverts):
        sub = G.induced_subgraph(comp)
        if not sub.is_acyclic() or G.edges_between(comp, rest) > 1:
            for v in comp:
                chi.vertex[v] = R_
                for e, _ in G.incident(v):
                    chi.edge[e] = R_
            changed = True
    return changed


def extract_with_certificate(G: MultiGraph, chi: Coloring3, z: int) -> Extraction:
    """Run the extraction loop and also assemble the certificate it implies."""
    if z < 0:
        raise GraphDomainError("z must be non-negative")
    work = chi.restricted_to(G)
    rounds = 0
    while True:
        rounds += 1
        _recolor_r_edges(G, work)
        # recolouring a tree may push a neighbouring tree over the edge limit
        while _drop_bad_trees(G, work):
            pass
        cut_class = sorted(v for v in G.vertices if work.vcolor(v) is C_)
        pieces = _forest_pieces(G, work)
        live = _live_graph(G, work)
        marked, accepted = set(), []
        for size in range(1, min(z, len(cut_class)) + 1):
            for C in combinations(cut_class, size):
                Cs = frozenset(C)
                W = _w_from_pieces(pieces, Cs)
                if fvs_bounded(live.induced_subgraph(Cs | W), size - 1) is None:
                    marked |= Cs
                    accepted.append(Cs)
        unmarked = [v for v in cut_class if v not in marked]
        if not unmarked:
            break
        for v in unmarked:
            work.vertex[v] = R_

    cut = frozenset(v for v in G.vertices if work.vcolor(v) is C_)
    forest = frozenset(v for v in G.vertices if work.vcolor(v) is F_)
    fvc = Fvc(cut, forest)
    cert = _certificate_from_marks(G, work, pieces, accepted, z)
    ok = verify_certificate(G, cut, cert, z, forest)
    if not ok:
        log.warning("certificate from marked sets failed verification for %s", fvc)
    return Extraction(fvc, work, accepted, cert, ok, rounds)


def _certificate_from_marks(G, chi, pieces, accepted, z):
    """Disjoint subgraphs ``G[D_i + (W(D<=i) - W(D<i))] - R`` over the marked sets."""
    live = _live_graph(G, chi)
    verts, edges = set(), set()
    seen_cut = frozenset()
    w_prev = _w_from_pieces(pieces, seen_cut)
    for Ci in accepted:
        D = Ci - seen_cut
        seen_cut = seen_cut | Ci
        w_now = _w_from_pieces(pieces, seen_cut)
        part = live.induced_subgraph(D | (w_now - w_prev))
        verts |= part.vertices
        edges |= set(part.edges)
        w_prev = w_now
    return Certificate(frozenset(verts), frozenset(edges), z)


def extract_antler(G: MultiGraph, chi: Coloring3, z: int) -> Fvc:
    """Largest ``z``-antler the colouring pins down; the input colouring is left untouched."""
    return extract_with_certificate(G, chi, z).fvc


# -- colouring sources ------------------------------------------------------------

def proper_coloring(G: MultiGraph, cut, forest, certificate: Certificate | None = None,
                    z: int | None = None) -> Coloring3:
    """Colouring that properly colours the antler ``(cut, forest)``.

    Certificate edges are coloured F and every other edge R.  Without a
    certificate one is searched for exhaustively (tiny graphs only).
    """
    cut, forest = frozenset(cut), frozenset(forest)
    if certificate is None:
        order = len(cut) if z is None else z
        certificate = find_certificate(G, Fvc(cut, forest), order)
        if certificate is None:
            raise NotFoundError("no certificate of the requested order")
    return Coloring3.from_sets(G, cut, forest, forest_edges=certificate.edges)


def structured_antler_colorings(G: MultiGraph, k: int):
    """Colourings ``C -> C``, pendant forest of ``G - C`` -> F, rest R, all edges F.

    For every ``z``-antler ``(C, F)`` with ``|C| <= min(k, z)`` the pair
    ``(C, P(C))`` is a properly coloured ``z``-antler containing it.
    """
    seen = set()
    order = sorted(G.vertices)
    for size in range(k + 1):
        for C in combinations(order, size):
            forest = pendant_forest(G, C)
            if not C and not forest:
                continue
            key = (frozenset(C), forest)
            if key in seen:
                continue
            seen.add(key)
            yield Coloring3.from_sets(G, C, forest)


def _family_colorings(G, k, z, seed, max_trials, stats):
    ground = [("v", v) for v in sorted(G.vertices)] + [("e", e) for e in G.edges]
    s = min(colored_antler_sample_size(k, z), len(ground))
    size = random_family_size(len(ground), s)
    total = size * size
    budget = total if max_trials is None else min(max_trials, total)
    complete = budget == total
    if stats is not None:
        stats["family_size"] = size
        stats["trials"] = budget
        stats["failure_probability"] = 1.0
    if complete:
        fam1 = build_universal(ground, s, "random", seed)
        fam2 = build_universal(ground, s, "random", seed + 1)
        if stats is not None:
            stats["failure_probability"] = min(
                1.0, fam1.failure_probability + fam2.failure_probability)
        pairs = product(fam1.sets, fam2.sets)
    else:
        # a member of a random family is a uniform random subset, so draw lazily
        rng = random.Random(seed)

        def draw():
            bits = rng.getrandbits(len(ground))
            return frozenset(x for i, x in enumerate(ground) if bits >> i & 1)

        pairs = ((draw(), draw()) for _ in range(budget))
    for q1, q2 in pairs:
        yield Coloring3.from_classes(G, q1, q2)


# -- colouring transport -----------------------------------------------------------

def transport_coloring(chi: Coloring3, before: MultiGraph, after: MultiGraph,
                       step: ReductionStep) -> Coloring3:
    """Carry an injected colouring across one reduction step.

    Removed elements are dropped.  Trimmed pairs keep their non-R colours
    first; a contracted path keeps F only if the vertex and both edges were
    F.  A contracted cut vertex passes C to its first F-coloured neighbour,
    and the new edge stays F when both absorbed edges were.  Edges added by
    rewiring are R.
    """
    out = Coloring3({v: chi.vcolor(v) for v in after.vertices},
                    {e: chi.ecolor(e) for e in after.edges if before.has_edge(e)})
    d = step.details
    if step.kind == "op1":
        u, v = d["pair"]
        ids = before.edges_joining(u, v)
        colors = sorted((chi.ecolor(e) for e in ids), key=lambda c: c is R_)
        for e, c in zip(after.edges_joining(u, v), colors):
            out.edge[e] = c
    elif step.kind == "op2":
        v = d["vertex"]
        absorbed = [e for e, _ in before.incident(v)]
        edges_f = all(chi.ecolor(e) is F_ for e in absorbed)
        keep = chi.vcolor(v) is F_ and edges_f
        if chi.vcolor(v) is C_:
            # a contracted cut vertex hands its role to a forest neighbour
            heir = next((a for a in d["endpoints"] if chi.vcolor(a) is F_), None)
            if heir is not None:
                out.vertex[heir] = C_
                keep = edges_f
        out.edge[d["new_edge"]] = F_ if keep else R_
    for e in after.edges:
        out.edge.setdefault(e, R_)
    return out


# -- driver ---------------------------------------------------------------------------

def _antler_step(G, chi, z):
    f = extract_antler(G, chi, z)
    if f.is_empty:
        return None
    return op3_remove_antler(G, f)


def find_and_apply(G: MultiGraph, k: int, z: int, *, fvc_backend: str = "structured",
                   colorings: Sequence[Coloring3] | None = None,
                   antler_search: str = "structured", max_trials: int | None = 2000,
                   seed: int = 0, stats: dict | None = None):
    """Find and apply one operation, or return ``None`` when nothing was found.

    Sources are tried in order: a reducible FVC (then the FVC driver),
    injected colourings, pendant-forest colourings and, with
    ``antler_search="families"``, a budgeted pair of random universal
    families over ``V(G) + E(G)``.
    """
    if not 0 <= z <= k:
        raise GraphDomainError("need k >= z >= 0")
    if antler_search not in ("structured", "families", "none"):
        raise GraphDomainError(f"unknown antler search {antler_search!r}")
    if G.n == 0:
        return None

    fvc = find_reducible_fvc(G, k, fvc_backend, seed)
    if not fvc.is_empty:
        try:
            G2, step = apply_operation(G, fvc)
            step.details.setdefault("source", "fvc")
            return G2, step
        except OperationNotFound:
            log.debug("reducible cut %s admitted no operation", fvc)

    sources = []
    if colorings:
        sources.append(("oracle", colorings))
    if antler_search == "structured":
        sources.append(("structured", structured_antler_colorings(G, k)))
    elif antler_search == "families":
        sources.append(("families", _family_colorings(G, k, z, seed, max_trials, stats)))
    for name, chis in sources:
        for chi in chis:
            found = _antler_step(G, chi, z)
            if found is not None:
                G2, step = found
                step.details["source"] = name
                return G2, step
    return None


def reduce_all(G: MultiGraph, k: int, z: int, *, max_steps: int | None = None,
               colorings: Sequence[Coloring3] | None = None, **kwargs):
    """Apply :func:`find_and_apply` until it finds nothing.

    Returns ``(G_final, S, trace)``.  Injected colourings are carried across
    steps with :func:`transport_coloring`.
    """
    if not 0 <= z <= k:
        raise GraphDomainError("need k >= z >= 0")
    limit = max_steps if max_steps is not None else 20 * (G.n + G.m + 1) ** 2
    trace = ReductionTrace()
    chis = list(colorings or ())
    while True:
        if len(trace) >= limit:
            raise RefusalError(f"reduction exceeded {limit} steps")
        found = find_and_apply(G, k, z, colorings=chis, **kwargs)
        if found is None:
            break
        G2, step = found
        chis = [transport_coloring(c, G, G2, step) for c in chis]
        trace.append(step)
        G = G2
    return G, trace.accumulated_S, trace


def complexity_grid(n: int, cap: int) -> list:
    """Pairs ``1 <= z <= k <= cap`` by increasing ``k^5 z^2 + z log2 n``."""
    logn = math.log2(max(n, 2))
    pairs = [(k, z) for k in range(1, cap + 1) for z in range(1, k + 1)]
    return sorted(pairs, key=lambda p: (p[0] ** 5 * p[1] ** 2 + p[1] * logn, p))


def solve_by_antler_complexity(G: MultiGraph, cap: int = 3, **kwargs) -> frozenset:
    """Optimal FVS for graphs whose antler complexity fits in the ``cap`` grid."""
    if G.is_acyclic():
        return frozenset()
    for k, z in complexity_grid(G.n, cap):
        _, S, _ = reduce_all(G, k, z, **kwargs)
        if G.remove(S).is_acyclic():
            log.info("solved at (k, z) = (%d, %d) with |S| = %d", k, z, len(S))
            return S
    raise NotFoundError(f"antler complexity exceeds cap {cap}")


@dataclass
class AntlerSequence:
    """Disjoint pairs ``(C_i, F_i)``, each a ``z``-antler once the earlier ones are removed."""

    pairs: list
    z: int

    def __post_init__(self):
        self.pairs = [Fvc(c, f) for c, f in
                      ((p.cut, p.forest) if isinstance(p, Fvc) else p for p in self.pairs)]

    @property
    def width(self) -> int:
        return max((len(p.cut) for p in self.pairs), default=0)

    @property
    def cut_union(self) -> frozenset:
        return frozenset().union(*(p.cut for p in self.pairs))

    def prefix(self, i: int) -> Fvc:
        cut, forest = frozenset(), frozenset()
        for p in self.pairs[:i]:
            cut |= p.cut
            forest |= p.forest
        return Fvc(cut, forest)

    def is_valid(self, G: MultiGraph) -> bool:
        H = G
        for p in self.pairs:
            if not p.vertices <= H.vertices or not verify_antler(H, p):
                return False
            if find_certificate(H, p, self.z) is None:
                return False
            H = H.remove(p.vertices)
        return True
