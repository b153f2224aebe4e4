"""Shadow matchings: injective assignments of hyperedges to contained pairs.

The assignment's image is a simple graph F on the hypergraph's vertex
set; a cycle in F lifts to a Berge cycle by replacing each cycle edge
with its preimage hyperedge. Matchings are immutable once built; every
builder is deterministic under its tie-break policy so equal inputs
reproduce the same F.

Matchings here are maximal in the bipartite incidence between hyperedges
and shadow pairs: a matching is maximal when no unmatched hyperedge still
contains an unused pair, which forces every unmatched hyperedge to induce
a clique in F.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from random import Random

from .berge import LiftedBergeCycle, verify_berge_cycle
from .graphs import Graph
from .hypergraph import Hypergraph


class ShadowMatching:
    """Immutable injective map from hyperedge indices to contained vertex pairs.

    Stored bidirectionally (edge -> pair and pair -> edge) because lifting
    sits on hot verification paths.
    """

    __slots__ = ("hypergraph", "edge_to_pair", "pair_to_edge", "_graph")

    def __init__(self, hypergraph: Hypergraph, edge_to_pair: dict[int, tuple[int, int]]):
        bitsets = hypergraph.edge_bitsets
        pair_to_edge: dict[tuple[int, int], int] = {}
        normalized: dict[int, tuple[int, int]] = {}
        for idx in sorted(edge_to_pair):
            if not 0 <= idx < len(hypergraph.edges):
                raise ValueError(f"hyperedge index {idx} out of range")
            u, v = edge_to_pair[idx]
            if u == v:
                raise ValueError(f"pair for hyperedge {idx} must have two vertices")
            pair = (u, v) if u < v else (v, u)
            if not bitsets[idx] >> pair[0] & 1 or not bitsets[idx] >> pair[1] & 1:
                raise ValueError(f"pair {pair} not contained in hyperedge {idx}")
            if pair in pair_to_edge:
                raise ValueError(f"pair {pair} assigned to two hyperedges")
            pair_to_edge[pair] = idx
            normalized[idx] = pair
        self.hypergraph = hypergraph
        self.edge_to_pair = normalized
        self.pair_to_edge = pair_to_edge
        self._graph: Graph | None = None

    @property
    def graph(self) -> Graph:
        """The matched graph F: exactly the image pairs."""
        if self._graph is None:
            self._graph = Graph.from_edges(self.hypergraph.n, self.pair_to_edge.keys())
        return self._graph

    def pair_of(self, edge_index: int) -> tuple[int, int] | None:
        return self.edge_to_pair.get(edge_index)

    def edge_of(self, u: int, v: int) -> int | None:
        return self.pair_to_edge.get((u, v) if u < v else (v, u))

    def matched_edges(self) -> tuple[int, ...]:
        return tuple(sorted(self.edge_to_pair))

    def unmatched_edges(self) -> tuple[int, ...]:
        return tuple(
            i for i in range(len(self.hypergraph.edges)) if i not in self.edge_to_pair
        )

    def size(self) -> int:
        return len(self.edge_to_pair)

    def remapped(self, overrides: dict[int, tuple[int, int]]) -> "ShadowMatching":
        """New matching with the given hyperedges reassigned (validated afresh)."""
        assignment = dict(self.edge_to_pair)
        assignment.update(overrides)
        return ShadowMatching(self.hypergraph, assignment)

    def to_lines(self) -> list[str]:
        return [
            f"m {idx} {u} {v}"
            for idx, (u, v) in sorted(self.edge_to_pair.items())
        ]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ShadowMatching)
            and self.hypergraph == other.hypergraph
            and self.edge_to_pair == other.edge_to_pair
        )

    def __repr__(self) -> str:
        return f"ShadowMatching({self.size()} of {len(self.hypergraph.edges)} hyperedges)"


def _greedy_fill(
    h: Hypergraph,
    assignment: dict[int, tuple[int, int]],
    used: set[tuple[int, int]],
    order,
    rng: Random | None,
) -> None:
    for idx in order:
        if idx in assignment:
            continue
        pairs = list(itertools.combinations(h.edges[idx], 2))
        if rng is not None:
            rng.shuffle(pairs)
        for pair in pairs:
            if pair not in used:
                assignment[idx] = pair
                used.add(pair)
                break


def maximal_matching(h: Hypergraph, policy: str = "canonical", seed: int | None = None) -> ShadowMatching:
    """Greedy maximal matching of hyperedges to distinct contained pairs.

    The canonical policy scans hyperedges in canonical order and takes the
    lexicographically smallest unused pair, so F is reproducible across
    runs. The random policy samples the scan and pair orders from a seeded
    generator; the cycle-lifting theory is policy-agnostic, and property
    tests use this to sample the policy space.
    """
    if policy not in ("canonical", "random"):
        raise ValueError(f"unknown policy {policy!r}")
    rng = Random(seed) if policy == "random" else None
    order = list(range(len(h.edges)))
    if rng is not None:
        rng.shuffle(order)
    assignment: dict[int, tuple[int, int]] = {}
    used: set[tuple[int, int]] = set()
    _greedy_fill(h, assignment, used, order, rng)
    return ShadowMatching(h, assignment)


def extend_to_maximal(
    phi: ShadowMatching, policy: str = "canonical", seed: int | None = None
) -> ShadowMatching:
    """Extend a matching greedily until maximal, keeping existing assignments."""
    if policy not in ("canonical", "random"):
        raise ValueError(f"unknown policy {policy!r}")
    h = phi.hypergraph
    rng = Random(seed) if policy == "random" else None
    order = list(range(len(h.edges)))
    if rng is not None:
        rng.shuffle(order)
    assignment = dict(phi.edge_to_pair)
    used = set(phi.pair_to_edge)
    _greedy_fill(h, assignment, used, order, rng)
    if len(assignment) == phi.size():
        return phi
    return ShadowMatching(h, assignment)


def maximum_matching(h: Hypergraph) -> ShadowMatching:
    """Maximum-cardinality matching via augmenting paths (test oracle).

    The cycle-lifting machinery only ever needs maximal matchings; this
    strengthening exists to cross-check them.
    """
    pair_of: dict[int, tuple[int, int]] = {}
    owner: dict[tuple[int, int], int] = {}

    def augment(idx: int, visited: set[tuple[int, int]]) -> bool:
        for pair in itertools.combinations(h.edges[idx], 2):
            if pair in visited:
                continue
            visited.add(pair)
            holder = owner.get(pair)
            if holder is None or augment(holder, visited):
                owner[pair] = idx
                pair_of[idx] = pair
                return True
        return False

    for idx in range(len(h.edges)):
        augment(idx, set())
    return ShadowMatching(h, pair_of)


def matching_respecting_cycle(h: Hypergraph, cycle: LiftedBergeCycle) -> ShadowMatching:
    """Maximal matching whose image contains the given hamiltonian Berge cycle.

    Each cycle hyperedge e_i is forced onto the pair {v_i, v_{i+1}}; the
    rest is extended greedily under the canonical policy.
    """
    check = verify_berge_cycle(h, cycle)
    if not check.ok:
        raise ValueError(f"cycle fails verification: {check.reason} at {check.index}")
    if cycle.length != h.n:
        raise ValueError(f"cycle length {cycle.length} is not hamiltonian (n={h.n})")
    ln = cycle.length
    forced: dict[int, tuple[int, int]] = {}
    for i in range(ln):
        u, v = cycle.vertices[i], cycle.vertices[(i + 1) % ln]
        forced[cycle.edges[i]] = (u, v) if u < v else (v, u)
    return extend_to_maximal(ShadowMatching(h, forced))


def lift_cycle(phi: ShadowMatching, cycle_vertices) -> LiftedBergeCycle:
    """Replace each consecutive pair of the graph cycle with its preimage hyperedge."""
    seq = tuple(cycle_vertices)
    ln = len(seq)
    edges = []
    for i in range(ln):
        u, v = seq[i], seq[(i + 1) % ln]
        idx = phi.edge_of(u, v)
        if idx is None:
            raise ValueError(f"pair ({u},{v}) is not in the matched graph")
        edges.append(idx)
    return LiftedBergeCycle(seq, tuple(edges))


@dataclass(frozen=True)
class CliqueCheckReport:
    """Outcome of checking that unmatched hyperedges induce cliques in F."""

    ok: bool
    violations: tuple[tuple[int, tuple[int, int]], ...] = ()


def unmatched_hyperedges_clique_check(h: Hypergraph, phi: ShadowMatching) -> CliqueCheckReport:
    """Every unmatched hyperedge must induce a clique in F; a violation names
    the hyperedge and a missing pair, and certifies the matching was not maximal."""
    f_graph = phi.graph
    violations = []
    for idx in phi.unmatched_edges():
        for u, v in itertools.combinations(h.edges[idx], 2):
            if not f_graph.has_edge(u, v):
                violations.append((idx, (u, v)))
                break
    return CliqueCheckReport(not violations, tuple(violations))
