"""Colour classes and colourings of vertices (and edges)."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping

from .errors import GraphDomainError
from .multigraph import MultiGraph

__all__ = ["Color", "Coloring2", "Coloring3", "as_color"]


class Color(str, Enum):
    CUT = "C"
    FOREST = "F"
    REST = "R"

    def __str__(self):
        return self.value


def as_color(value) -> Color:
    if isinstance(value, Color):
        return value
    try:
        return Color(str(value).upper())
    except ValueError:
        raise GraphDomainError(f"unknown colour {value!r}") from None


@dataclass
class Coloring2:
    """Total vertex 2-colouring into cut and forest classes."""

    vertex: dict

    @classmethod
    def from_cut_class(cls, G: MultiGraph, cut_class: Iterable) -> "Coloring2":
        cut_class = set(cut_class)
        return cls({v: Color.CUT if v in cut_class else Color.FOREST for v in G.vertices})

    @classmethod
    def from_forest_class(cls, G: MultiGraph, forest_class: Iterable) -> "Coloring2":
        forest_class = set(forest_class)
        return cls({v: Color.FOREST if v in forest_class else Color.CUT for v in G.vertices})

    def check_total(self, G: MultiGraph):
        missing = G.vertices - set(self.vertex)
        if missing:
            raise GraphDomainError(f"colouring misses vertices {sorted(missing)}")
        for v, c in self.vertex.items():
            if as_color(c) is Color.REST:
                raise GraphDomainError("vertex 2-colourings use only C and F")

    def of(self, color: Color) -> frozenset:
        return frozenset(v for v, c in self.vertex.items() if as_color(c) is color)


@dataclass
class Coloring3:
    """Total 3-colouring of vertices and edges.

    Elements missing from the maps are read as ``R``; callers that need a
    strictly total colouring can use :meth:`total_on`.
    """

    vertex: dict = field(default_factory=dict)
    edge: dict = field(default_factory=dict)

    def __post_init__(self):
        self.vertex = {v: as_color(c) for v, c in self.vertex.items()}
        self.edge = {e: as_color(c) for e, c in self.edge.items()}

    @classmethod
    def from_sets(cls, G: MultiGraph, cut: Iterable = (), forest: Iterable = (),
                  forest_edges: Iterable | None = None) -> "Coloring3":
        """Vertices in ``cut``/``forest`` get C/F, the rest R.

        Edges in ``forest_edges`` get F and all others R; with
        ``forest_edges=None`` every edge is coloured F.
        """
        cut, forest = set(cut), set(forest)
        vertex = {v: Color.CUT if v in cut else Color.FOREST if v in forest else Color.REST
                  for v in G.vertices}
        if forest_edges is None:
            edge = {e: Color.FOREST for e in G.edges}
        else:
            fe = set(forest_edges)
            edge = {e: Color.FOREST if e in fe else Color.REST for e in G.edges}
        return cls(vertex, edge)

    @classmethod
    def from_classes(cls, G: MultiGraph, q_cut: Iterable, q_forest: Iterable) -> "Coloring3":
        """Colouring built from two element sets: ``q_cut`` -> C, ``q_forest - q_cut`` -> F.

        Elements are tagged ``("v", id)`` or ``("e", id)``.
        """
        q_cut, q_forest = set(q_cut), set(q_forest)

        def pick(tag):
            if tag in q_cut:
                return Color.CUT
            if tag in q_forest:
                return Color.FOREST
            return Color.REST

        return cls({v: pick(("v", v)) for v in G.vertices},
                   {e: pick(("e", e)) for e in G.edges})

    def vcolor(self, v) -> Color:
        return self.vertex.get(v, Color.REST)

    def ecolor(self, e) -> Color:
        return self.edge.get(e, Color.REST)

    def vertices_of(self, color: Color) -> frozenset:
        return frozenset(v for v, c in self.vertex.items() if c is color)

    def restricted_to(self, G: MultiGraph) -> "Coloring3":
        return Coloring3({v: self.vcolor(v) for v in G.vertices},
                         {e: self.ecolor(e) for e in G.edges})

    def total_on(self, G: MultiGraph) -> bool:
        return G.vertices <= set(self.vertex) and set(G.edges) <= set(self.edge)

    def copy(self) -> "Coloring3":
        return Coloring3(dict(self.vertex), dict(self.edge))

    def to_lines(self) -> list:
        lines = [f"v {v} {c.value}" for v, c in sorted(self.vertex.items())]
        lines += [f"g {e} {c.value}" for e, c in sorted(self.edge.items())]
        return lines
