"""Uniform hypergraphs: representation, degrees, 2-shadow, and text I/O.

Vertices are dense integers 0..n-1. Edges are normalized to sorted vertex
tuples and kept in lexicographic order, with bitset companions so the
search modules can test pair containment in O(1). Duplicate edges are
rejected: Berge cycles need distinct hyperedges, and a multiset edge list
would silently change what the searches mean.

Text format (one hypergraph per file)::

    # optional comment lines
    n r
    e v1 v2 ... vr

The graph text format is identical with r = 2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .graphs import Graph


class ParseError(ValueError):
    """Malformed text input; the message names the offending line."""


@dataclass(frozen=True)
class Hypergraph:
    """An r-uniform hypergraph on vertices 0..n-1 with distinct edges."""

    n: int
    r: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not 2 <= self.r <= self.n:
            raise ValueError(f"need 2 <= r <= n, got r={self.r}, n={self.n}")
        normalized = []
        for e in self.edges:
            vs = sorted(e)
            if len(set(vs)) != self.r or len(vs) != self.r:
                raise ValueError(
                    f"edge {tuple(e)} must have exactly r={self.r} distinct vertices"
                )
            if vs[0] < 0 or vs[-1] >= self.n:
                raise ValueError(f"edge {tuple(e)} out of vertex range 0..{self.n - 1}")
            normalized.append(tuple(vs))
        normalized.sort()
        for a, b in zip(normalized, normalized[1:]):
            if a == b:
                raise ValueError(f"duplicate edge {a}")
        object.__setattr__(self, "edges", tuple(normalized))

    @cached_property
    def edge_bitsets(self) -> tuple[int, ...]:
        return tuple(sum(1 << v for v in e) for e in self.edges)

    @cached_property
    def pair_edges(self) -> dict[tuple[int, int], tuple[int, ...]]:
        """Map from shadow pair (u,v), u<v, to the indices of edges containing it."""
        table: dict[tuple[int, int], list[int]] = {}
        for i, e in enumerate(self.edges):
            for p in itertools.combinations(e, 2):
                table.setdefault(p, []).append(i)
        return {p: tuple(ids) for p, ids in table.items()}

    @cached_property
    def shadow(self) -> Graph:
        return two_shadow(self)

    def edges_containing(self, v: int) -> list[int]:
        bit = 1 << v
        return [i for i, m in enumerate(self.edge_bitsets) if m & bit]


@dataclass(frozen=True)
class DegreeProfile:
    """Per-vertex incidence counts and their minimum."""

    degrees: tuple[int, ...]
    minimum: int


def degree(h: Hypergraph, v: int) -> int:
    """Number of hyperedges containing v."""
    if not 0 <= v < h.n:
        raise ValueError(f"vertex {v} out of range 0..{h.n - 1}")
    bit = 1 << v
    return sum(1 for m in h.edge_bitsets if m & bit)

def degree_profile(h: Hypergraph) -> DegreeProfile:
    degs = [0] * h.n
    for e in h.edges:
        for v in e:
            degs[v] += 1
    return DegreeProfile(tuple(degs), min(degs))


def min_degree(h: Hypergraph) -> int:
    if h.n < 1:
        raise ValueError("hypergraph has no vertices")
    return degree_profile(h).minimum


def two_shadow(h: Hypergraph) -> Graph:
    """Graph on the same vertices; {u,v} is an edge iff some hyperedge contains both."""
    adj = [0] * h.n
    for e in h.edges:
        for u, v in itertools.combinations(e, 2):
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    return Graph(h.n, tuple(adj))


def _parse_lines(text: str):
    """Yield (lineno, tokens) for non-comment, non-blank lines."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line.split()


def parse_hypergraph(text: str) -> Hypergraph:
    header = None
    edges: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()
    n = r = 0
    for lineno, tokens in _parse_lines(text):
        if header is None:
            if len(tokens) != 2:
                raise ParseError(f"line {lineno}: expected header 'n r'")
            try:
                n, r = int(tokens[0]), int(tokens[1])
            except ValueError:
                raise ParseError(f"line {lineno}: header values must be integers") from None
            if not 2 <= r <= n:
                raise ParseError(f"line {lineno}: need 2 <= r <= n, got n={n}, r={r}")
            header = (n, r)
            continue
        if tokens[0] != "e":
            raise ParseError(f"line {lineno}: expected edge line starting with 'e'")
        try:
            vs = [int(t) for t in tokens[1:]]
        except ValueError:
            raise ParseError(f"line {lineno}: vertices must be integers") from None
        if len(vs) != r:
            raise ParseError(f"line {lineno}: edge size {len(vs)} != r={r}")
        if len(set(vs)) != r:
            raise ParseError(f"line {lineno}: repeated vertex in edge")
        if min(vs) < 0 or max(vs) >= n:
            raise ParseError(f"line {lineno}: vertex out of range 0..{n - 1}")
        key = tuple(sorted(vs))
        if key in seen:
            raise ParseError(f"line {lineno}: duplicate edge {key}")
        seen.add(key)
        edges.append(key)
    if header is None:
        raise ParseError("line 1: missing header 'n r'")
    return Hypergraph(n, r, tuple(edges))


def serialize_hypergraph(h: Hypergraph) -> str:
    """Canonical text form: vertices sorted within edges, edges sorted, newline-terminated."""
    lines = [f"{h.n} {h.r}"]
    lines.extend("e " + " ".join(str(v) for v in e) for e in h.edges)
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    h = parse_hypergraph(text)
    if h.r != 2:
        raise ParseError(f"graph file must have r=2, got r={h.r}")
    return Graph.from_edges(h.n, h.edges)


def serialize_graph(g: Graph) -> str:
    if g.n < 2:
        raise ValueError("graph serialization needs n >= 2")
    lines = [f"{g.n} 2"]
    lines.extend(f"e {u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"
