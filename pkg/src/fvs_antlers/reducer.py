"""The five FVS-safe and antler-safe graph operations and their driver.

Every operation takes a graph and returns ``(G', step)`` where ``step``
records the removed set ``S`` and enough parameters to replay it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import GraphDomainError, NotFoundError
from .exact import find_flower, tree_flower
from .fvc_finder import is_reducible
from .multigraph import MultiGraph
from .structures import Certificate, Fvc, verify_antler, verify_certificate, verify_fvc

__all__ = [
    "ReductionStep",
    "ReductionTrace",
    "OperationNotFound",
    "op1_trim_multiplicity",
    "op2_contract_degree2",
    "op3_remove_antler",
    "op4_remove_flower_center",
    "op5_rewire_tree",
    "apply_operation",
    "replay_step",
    "double_edge_count",
]

KINDS = ("op1", "op2", "op3", "op4", "op5")


class OperationNotFound(NotFoundError):
    """No operation could be selected for the given cut."""


@dataclass(frozen=True)
class ReductionStep:
    kind: str
    removed: frozenset = frozenset()
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise GraphDomainError(f"unknown operation kind {self.kind!r}")
        object.__setattr__(self, "removed", frozenset(self.removed))

    def to_dict(self) -> dict:
        return {"kind": self.kind, "removed": sorted(self.removed), "details": self.details}

    @classmethod
    def from_dict(cls, d) -> "ReductionStep":
        return cls(d["kind"], frozenset(d.get("removed", ())), dict(d.get("details", {})))


@dataclass
class ReductionTrace:
    steps: list = field(default_factory=list)

    def append(self, step: ReductionStep):
        self.steps.append(step)

    @property
    def accumulated_S(self) -> frozenset:
        out = frozenset()
        for s in self.steps:
            out |= s.removed
        return out

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def to_json(self, **kwargs) -> str:
        return json.dumps([s.to_dict() for s in self.steps], **kwargs)

    @classmethod
    def from_json(cls, text: str) -> "ReductionTrace":
        return cls([ReductionStep.from_dict(d) for d in json.loads(text)])

    def replay(self, G: MultiGraph) -> MultiGraph:
        for step in self.steps:
            G, _ = replay_step(G, step)
        return G


def double_edge_count(G: MultiGraph) -> int:
    """Number of vertex pairs joined by exactly two edges."""
    return sum(1 for (u, v), c in G.pair_multiplicities().items() if u != v and c == 2)


# -- individual operations ----------------------------------------------------

def op1_trim_multiplicity(G: MultiGraph, u, v):
    if u == v:
        raise GraphDomainError("operation 1 applies to two distinct vertices")
    ids = G.edges_joining(u, v)
    if len(ids) < 3:
        raise GraphDomainError(f"{u} and {v} are joined by {len(ids)} < 3 edges")
    drop = ids[2:]
    return G.remove(edges=drop), ReductionStep(
        "op1", frozenset(), {"pair": sorted((u, v)), "removed_edges": drop})


def op2_contract_degree2(G: MultiGraph, v):
    if G.has_self_loop(v):
        raise GraphDomainError(f"vertex {v} carries a self-loop")
    if G.degree(v) != 2:
        raise GraphDomainError(f"vertex {v} has degree {G.degree(v)} != 2")
    a, b = sorted(w for _, w in G.incident(v))
    G2, (e,) = G.remove([v]).add_edges([(a, b)])
    return G2, ReductionStep("op2", frozenset(),
                             {"vertex": v, "endpoints": [a, b], "new_edge": e})


def op3_remove_antler(G: MultiGraph, fvc: Fvc, certificate: Certificate | None = None):
    if not verify_antler(G, fvc):
        raise GraphDomainError("operation 3 needs an antler")
    if certificate is not None and not verify_certificate(
            G, fvc.cut, certificate, certificate.order, fvc.forest):
        raise GraphDomainError("supplied certificate does not verify")
    details = fvc.to_dict()
    if certificate is not None:
        details["order"] = certificate.order
    return G.remove(fvc.vertices), ReductionStep("op3", fvc.cut, details)


def _valid_flower(G, v, petals, allowed):
    used = set()
    loops = sum(1 for _, w in G.incident(v) if w == v)
    loop_petals = 0
    for petal in petals:
        petal = tuple(petal)
        if not petal or petal[0] != v:
            return False
        inner = petal[1:]
        if any(x not in allowed or x == v for x in inner) or len(set(inner)) != len(inner):
            return False
        if used & set(inner):
            return False
        used |= set(inner)
        if not inner:
            loop_petals += 1
        elif len(inner) == 1:
            if G.multiplicity(v, inner[0]) < 2:
                return False
        else:
            for a, b in zip(petal, petal[1:] + (v,)):
                if G.multiplicity(a, b) < 1:
                    return False
    return loop_petals <= loops


def op4_remove_flower_center(G: MultiGraph, fvc: Fvc, v, petals=None):
    if not verify_fvc(G, fvc):
        raise GraphDomainError("operation 4 needs a feedback vertex cut")
    if v not in fvc.cut:
        raise GraphDomainError(f"vertex {v} is not in the cut")
    need = len(fvc.cut) + 1
    host = G.induced_subgraph(fvc.forest | {v})
    if petals is None:
        petals = find_flower(host, v, need)
        if petals is None:
            raise GraphDomainError(f"no flower of order {need} at {v}")
    elif len(petals) < need or not _valid_flower(host, v, petals, fvc.forest):
        raise GraphDomainError(f"flower witness at {v} is invalid or below order {need}")
    petals = [list(p) for p in petals[:need]]
    return G.remove([v]), ReductionStep(
        "op4", frozenset([v]), {"vertex": v, **fvc.to_dict(), "petals": petals})


def _op5_violation(G, fvc, v, X, T, w):
    """Reason the rewiring preconditions fail, or ``None`` when they hold."""
    C, F = fvc.cut, fvc.forest
    if v not in C:
        return "v is not in the cut"
    if not X <= F:
        return "X must lie inside the forest"
    if not G.induced_subgraph((F | {v}) - X).is_acyclic():
        return "G[F + v] - X is not acyclic"
    trees = G.components(F - X)
    if T not in trees:
        return "T is not a tree of G[F] - X"
    if w not in T or G.multiplicity(v, w) != 1:
        return "w must be in T and joined to v by exactly one edge"
    nbhd = {t: G.neighborhood(t) for t in trees}
    for u in sorted(nbhd[T] - {v}):
        if G.multiplicity(u, v) >= 2:
            continue
        others = sum(1 for t in trees if t != T and u in nbhd[t] and v in nbhd[t])
        if others <= len(C):
            return f"neighbour {u} shares only {others} other trees with v"
    return None


def op5_rewire_tree(G: MultiGraph, fvc: Fvc, v, X, T, w):
    """Replace the edge ``v-w`` by double edges from ``v`` to ``N(T) - v``."""
    X, T = frozenset(X), frozenset(T)
    if not verify_fvc(G, fvc):
        raise GraphDomainError("operation 5 needs a feedback vertex cut")
    reason = _op5_violation(G, fvc, v, X, T, w)
    if reason:
        raise GraphDomainError(f"operation 5 precondition: {reason}")
    (vw,) = G.edges_joining(v, w)
    targets = sorted(G.neighborhood(T) - {v})
    G2 = G.remove(edges=[vw])
    added = []
    for u in targets:
        missing = 2 - G2.multiplicity(v, u)
        if missing > 0:
            G2, ids = G2.add_edges([(v, u)] * missing)
            added += ids
    return G2, ReductionStep("op5", frozenset(), {
        "vertex": v, "w": w, "X": sorted(X), "tree": sorted(T), **fvc.to_dict(),
        "removed_edge": vw, "added_edges": added})


# -- driver ----------------------------------------------------------------------

def _local_step(G):
    """Loop, low-degree and multiplicity rules; ``None`` when none applies."""
    order = sorted(G.vertices)
    for v in order:
        if G.has_self_loop(v):
            return op3_remove_antler(G, Fvc({v}, ()))
    for v in order:
        if G.degree(v) <= 1:
            return op3_remove_antler(G, Fvc((), {v}))
    for v in order:
        if G.degree(v) == 2:
            return op2_contract_degree2(G, v)
    for (u, v), c in sorted(G.pair_multiplicities().items()):
        if u != v and c > 2:
            return op1_trim_multiplicity(G, u, v)
    return None


def apply_operation(G: MultiGraph, fvc: Fvc):
    """Apply one operation justified by the reducible FVC ``fvc``.

    Local rules are tried first; otherwise a cut vertex with many edges into
    the forest either centres a large flower (operation 4) or owns an edge
    into an unmarked tree that can be rewired (operation 5).
    """
    if not verify_fvc(G, fvc) or not is_reducible(fvc):
        raise GraphDomainError("apply_operation needs a reducible feedback vertex cut")
    local = _local_step(G)
    if local is not None:
        return local

    C, F = fvc.cut, fvc.forest
    c = len(C)
    threshold = 2 * c * c + 3 * c - 1
    heavy = [v for v in sorted(C) if G.edges_between({v}, F) > threshold]
    for v in heavy:
        flower = tree_flower(G.induced_subgraph(F | {v}), v)
        if flower.order >= c + 1:
            return op4_remove_flower_center(G, fvc, v, flower.petals[:c + 1])
        X = flower.hit_set
        trees = G.components(F - X)
        nbhd = {t: G.neighborhood(t) for t in trees}
        marked = set()
        for u in sorted((X | C) - {v}):
            if G.multiplicity(u, v) >= 2:
                continue
            hits = [t for t in trees if u in nbhd[t] and v in nbhd[t]]
            marked.update(hits[:c + 1])
        for w in sorted(G.neighbors(v) & (F - X)):
            T = next(t for t in trees if w in t)
            if T in marked:
                continue
            if _op5_violation(G, fvc, v, X, T, w) is None:
                return op5_rewire_tree(G, fvc, v, X, T, w)
    raise OperationNotFound("no operation applies for the given cut")


def replay_step(G: MultiGraph, step: ReductionStep):
    d = step.details
    if step.kind == "op1":
        return op1_trim_multiplicity(G, *d["pair"])
    if step.kind == "op2":
        return op2_contract_degree2(G, d["vertex"])
    fvc = Fvc(d["cut"], d["forest"])
    if step.kind == "op3":
        return op3_remove_antler(G, fvc)
    if step.kind == "op4":
        return op4_remove_flower_center(G, fvc, d["vertex"], [tuple(p) for p in d["petals"]])
    return op5_rewire_tree(G, fvc, d["vertex"], d["X"], d["tree"], d["w"])

