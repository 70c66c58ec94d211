"""Text formats: graphs, colourings, DOT export.

Graph files use a DIMACS-like dialect::

    c comment
    p fvs <n> <m>
    v <id>          (only when the vertex set is not 1..n)
    e <u> <v>       (one line per edge; repeat for parallel edges, u == v for a loop)

Edge ids are assigned 1..m in line order.  Serialization writes the
canonical form with edge lines sorted, so ``serialize(parse(t)) == t`` for
canonical ``t``.
"""

from __future__ import annotations

from typing import Iterable

from .coloring import Coloring3, as_color
from .errors import GraphDomainError, GraphParseError
from .multigraph import MultiGraph

__all__ = [
    "parse_graph",
    "serialize_graph",
    "read_graph",
    "write_graph",
    "parse_coloring",
    "serialize_coloring",
    "to_dot",
    "canonicalize",
]


def _int(tok, lineno):
    try:
        return int(tok)
    except ValueError:
        raise GraphParseError(f"expected an integer, got {tok!r}", lineno) from None


def parse_graph(text: str) -> MultiGraph:
    header = None
    vlines, pairs = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        tag = parts[0]
        if tag == "p":
            if header is not None:
                raise GraphParseError("duplicate header", lineno)
            if len(parts) != 4 or parts[1] != "fvs":
                raise GraphParseError("header must read 'p fvs <n> <m>'", lineno)
            n, m = _int(parts[2], lineno), _int(parts[3], lineno)
            if n < 0 or m < 0:
                raise GraphParseError("negative counts in header", lineno)
            header = (n, m, lineno)
            continue
        if header is None:
            raise GraphParseError("line before the 'p fvs' header", lineno)
        if tag == "v":
            if len(parts) != 2:
                raise GraphParseError("vertex line must read 'v <id>'", lineno)
            v = _int(parts[1], lineno)
            if v < 0:
                raise GraphParseError(f"negative vertex id {v}", lineno)
            vlines.append((v, lineno))
        elif tag == "e":
            if len(parts) != 3:
                raise GraphParseError("edge line must read 'e <u> <v>'", lineno)
            pairs.append((_int(parts[1], lineno), _int(parts[2], lineno), lineno))
        else:
            raise GraphParseError(f"unknown line type {tag!r}", lineno)

    if header is None:
        raise GraphParseError("missing 'p fvs' header", 1)
    n, m, hline = header
    if vlines:
        ids = [v for v, _ in vlines]
        if len(set(ids)) != len(ids):
            dup = next(ln for i, (v, ln) in enumerate(vlines) if v in ids[:i])
            raise GraphParseError("duplicate vertex line", dup)
        if len(ids) != n:
            raise GraphParseError(f"header declares {n} vertices, found {len(ids)}", hline)
        vertices = set(ids)
    else:
        vertices = set(range(1, n + 1))
    for u, v, ln in pairs:
        for x in (u, v):
            if x not in vertices:
                raise GraphParseError(f"vertex id {x} out of range", ln)
    if len(pairs) != m:
        raise GraphParseError(f"header declares {m} edges, found {len(pairs)}", hline)
    return MultiGraph.from_edges([(u, v) for u, v, _ in pairs], vertices=vertices)


def canonicalize(G: MultiGraph) -> tuple:
    """Renumber edges 1..m in serialized order; returns ``(G', old_id -> new_id)``."""
    order = sorted(G.edges, key=lambda e: (G.endpoints(e), e))
    mapping = {e: i for i, e in enumerate(order, 1)}
    return MultiGraph(G.vertices, {mapping[e]: G.endpoints(e) for e in order}), mapping


def serialize_graph(G: MultiGraph, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p fvs {G.n} {G.m}")
    if G.vertices != frozenset(range(1, G.n + 1)):
        lines += [f"v {v}" for v in sorted(G.vertices)]
    lines += [f"e {u} {v}" for u, v in sorted(G.endpoints(e) for e in G.edges)]
    return "\n".join(lines) + "\n"


def read_graph(path) -> MultiGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def write_graph(G: MultiGraph, path, comments: Iterable[str] = ()):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_graph(G, comments))


def parse_coloring(text: str, G: MultiGraph | None = None) -> Coloring3:
    """Read ``v <id> C|F|R`` and ``g <edge-id> C|F|R`` lines."""
    vertex, edge = {}, {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if len(parts) != 3 or parts[0] not in ("v", "g"):
            raise GraphParseError("colouring lines read 'v <id> <C|F|R>' or 'g <id> <C|F|R>'",
                                  lineno)
        key = _int(parts[1], lineno)
        try:
            color = as_color(parts[2])
        except GraphDomainError as exc:
            raise GraphParseError(str(exc), lineno) from None
        target = vertex if parts[0] == "v" else edge
        if key in target:
            raise GraphParseError(f"duplicate colour for {parts[0]} {key}", lineno)
        if G is not None:
            known = key in G.vertices if parts[0] == "v" else G.has_edge(key)
            if not known:
                raise GraphParseError(f"unknown {'vertex' if parts[0] == 'v' else 'edge'} {key}",
                                      lineno)
        target[key] = color
    return Coloring3(vertex, edge)


def serialize_coloring(chi: Coloring3) -> str:
    return "\n".join(chi.to_lines()) + "\n"


def to_dot(G: MultiGraph, cut: Iterable = (), forest: Iterable = (), name: str = "G") -> str:
    """Undirected DOT with one line per parallel edge; loops drawn as ``v -- v``."""
    cut, forest = set(cut), set(forest)
    out = [f"graph {name} {{"]
    for v in sorted(G.vertices):
        attrs = ""
        if v in cut:
            attrs = ' [color=red, style=filled, fillcolor="#f4cccc"]'
        elif v in forest:
            attrs = ' [color=darkgreen, style=filled, fillcolor="#d9ead3"]'
        out.append(f"  {v}{attrs};")
    for e in G.edges:
        u, v = G.endpoints(e)
        out.append(f'  {u} -- {v} [label="{e}"];')
    out.append("}")
    return "\n".join(out) + "\n"
