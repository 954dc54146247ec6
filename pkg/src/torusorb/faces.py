"""Face poset and one-skeleton of the suspended simplex with two vertices.

A non-vertex face is the intersection of the facets indexed by a subset S of
{1, ..., n} with |S| < n (S empty is the whole space). The two vertices p and
q sit below everything. For n = 1 the space is an interval whose only facets
are its two endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Literal, Optional

Vertex = Literal["p", "q"]
VERTICES: tuple[Vertex, Vertex] = ("p", "q")


@dataclass(frozen=True, order=True)
class Face:
    n: int
    facets: frozenset[int] = frozenset()
    vertex: Optional[Vertex] = None

    def __post_init__(self):
        object.__setattr__(self, "facets", frozenset(self.facets))
        if self.vertex is not None:
            if self.vertex not in VERTICES:
                raise ValueError(f"unknown vertex {self.vertex!r}")
            if self.facets:
                raise ValueError("vertex faces carry no facet set")
        else:
            if not self.facets <= set(range(1, self.n + 1)):
                raise ValueError(f"facet indices {sorted(self.facets)} out of range 1..{self.n}")
            if len(self.facets) >= self.n:
                raise ValueError("a non-vertex face needs fewer than n facets")

    @property
    def is_vertex(self) -> bool:
        return self.vertex is not None

    @property
    def codim(self) -> int:
        return self.n if self.is_vertex else len(self.facets)

    @property
    def vertices(self) -> tuple[Vertex, ...]:
        return (self.vertex,) if self.is_vertex else VERTICES

    def label(self) -> str:
        if self.is_vertex:
            return self.vertex
        if not self.facets:
            return "whole"
        return "F" + ",".join(str(i) for i in sorted(self.facets))

    def __str__(self):
        return self.label()


def whole(n: int) -> Face:
    return Face(n)


def facet(n: int, i: int) -> Face:
    if n == 1:
        raise ValueError("for n = 1 the facets are the vertices")
    return Face(n, frozenset({i}))


def vertex(n: int, v: Vertex) -> Face:
    return Face(n, vertex=v)


def faces(n: int) -> list[Face]:
    """Every face, ordered by codimension, then facet set, then p before q."""
    if n < 1:
        raise ValueError("n must be at least 1")
    out = [Face(n, frozenset(S)) for k in range(n) for S in combinations(range(1, n + 1), k)]
    out += [vertex(n, "p"), vertex(n, "q")]
    return out


def leq(E: Face, F: Face) -> bool:
    """Face inclusion E <= F."""
    if E.is_vertex:
        return F.vertex == E.vertex or not F.is_vertex
    if F.is_vertex:
        return False
    return F.facets <= E.facets


def join_and_meet(E: Face, F: Face) -> tuple[Optional[Face], list[Face]]:
    """Smallest face containing both, and the connected components of E ∩ F.

    The join is ``None`` only for the pair {p, q}, whose intersection is empty.
    """
    n = E.n
    if E.n != F.n:
        raise ValueError("faces from different dimensions")
    if E.is_vertex or F.is_vertex:
        if E.is_vertex and F.is_vertex:
            if E == F:
                return E, [E]
            return None, []
        v, other = (E, F) if E.is_vertex else (F, E)
        return other, [v]
    join = Face(n, E.facets & F.facets)
    union = E.facets | F.facets
    if len(union) == n:
        return join, [vertex(n, "p"), vertex(n, "q")]
    return join, [Face(n, union)]


@dataclass(frozen=True)
class Edge:
    """Oriented edge e_j (p -> q), or its reversal (q -> p)."""

    index: int
    reversed: bool = False

    @property
    def initial(self) -> Vertex:
        return "q" if self.reversed else "p"

    @property
    def terminal(self) -> Vertex:
        return "p" if self.reversed else "q"

    def reverse(self) -> Edge:
        return Edge(self.index, not self.reversed)

    def label(self) -> str:
        return f"{'ebar' if self.reversed else 'e'}{self.index}"


@dataclass(frozen=True)
class Graph:
    n: int
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]  # oriented, both directions

    def edges_from(self, v: Vertex) -> list[Edge]:
        return [e for e in self.edges if e.initial == v]

    def valence(self, v: Vertex) -> int:
        return len(self.edges_from(v))


def one_skeleton(n: int) -> Graph:
    edges = tuple(Edge(j) for j in range(1, n + 1)) + tuple(Edge(j, True) for j in range(1, n + 1))
    return Graph(n, VERTICES, edges)


def face_subgraph(F: Face) -> Graph:
    """One-skeleton of F: edges e_j with j not in the facet set.

    Edge e_j is normal to facet F_j, so it lies in every other facet.
    """
    n = F.n
    if F.is_vertex:
        return Graph(n, (F.vertex,), ())
    keep = [j for j in range(1, n + 1) if j not in F.facets]
    if n == 1:
        keep = [1]
    edges = tuple(Edge(j) for j in keep) + tuple(Edge(j, True) for j in keep)
    return Graph(n, VERTICES, edges)
