"""Simple-graph machinery: exact cycle searches and classical condition checks.

Graphs are immutable, with adjacency stored as one bitmask per vertex so
the search loops can test membership and intersect neighborhoods in O(1).
All cycle/path searches are exact backtracking searches with an explicit
expanded-node budget: ``ABSENT`` is only ever reported after the search
tree was exhausted, while running out of budget yields ``UNKNOWN``.
Returned cycles are canonical (minimum vertex first, smaller second
vertex), so equal inputs produce identical witnesses.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from math import comb

DEFAULT_BUDGET = 10_000_000


class Outcome(Enum):
    FOUND = "found"
    ABSENT = "absent"
    UNKNOWN = "unknown"


class BudgetExhausted(Exception):
    """Internal escape hatch; never propagates out of the public API."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1 (no loops)."""

    n: int
    adj: tuple[int, ...]

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u} not allowed")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << v) for v in range(n)))

    @classmethod
    def cycle_graph(cls, n: int) -> "Graph":
        if n < 3:
            raise ValueError("cycle graph needs n >= 3")
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(m.bit_count() for m in self.adj)

    @cached_property
    def edge_count(self) -> int:
        return sum(self.degrees) // 2

    def min_degree(self) -> int:
        if self.n == 0:
            raise ValueError("graph has no vertices")
        return min(self.degrees)

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            m = self.adj[u] >> (u + 1) << (u + 1)
            while m:
                b = m & -m
                out.append((u, b.bit_length() - 1))
                m ^= b
        return out

    def neighbors(self, v: int) -> list[int]:
        out = []
        m = self.adj[v]
        while m:
            b = m & -m
            out.append(b.bit_length() - 1)
            m ^= b
        return out

    def with_edges(self, pairs) -> "Graph":
        adj = list(self.adj)
        for u, v in pairs:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return Graph(self.n, tuple(adj))

    def without_edges(self, pairs) -> "Graph":
        adj = list(self.adj)
        for u, v in pairs:
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)
        return Graph(self.n, tuple(adj))


@dataclass(frozen=True)
class CycleSearchResult:
    outcome: Outcome
    cycle: tuple[int, ...] | None
    expanded: int


@dataclass(frozen=True)
class PathSearchResult:
    outcome: Outcome
    path: tuple[int, ...] | None
    expanded: int


def edge_count(g: Graph) -> int:
    return g.edge_count


def find_cycle_of_length(g: Graph, length: int, budget: int = DEFAULT_BUDGET) -> CycleSearchResult:
    """Search for a simple cycle with exactly `length` vertices.

    Anchored DFS: the cycle is forced to start at its minimum vertex and
    the orientation with the smaller second vertex is kept, so each cycle
    is generated once and witnesses are canonical.
    """
    if not 3 <= length <= g.n:
        raise ValueError(f"cycle length {length} out of range 3..{g.n}")
    if budget <= 0:
        raise ValueError("budget must be positive")
    adj = g.adj
    expanded = 0
    path: list[int] = []

    def extend(v: int, visited: int, depth: int, above: int, start: int) -> bool:
        nonlocal expanded
        if depth == length:
            return bool(adj[v] >> start & 1) and path[1] < v
        cand = adj[v] & ~visited & above
        if depth == length - 1:
            cand &= adj[start]
        while cand:
            b = cand & -cand
            cand ^= b
            expanded += 1
            if expanded > budget:
                raise BudgetExhausted
            u = b.bit_length() - 1
            path.append(u)
            if extend(u, visited | b, depth + 1, above, start):
                return True
            path.pop()
        return False

    full = (1 << g.n) - 1
    try:
        for start in range(g.n - length + 1):
            above = full & ~((1 << (start + 1)) - 1)
            path = [start]
            if extend(start, 1 << start, 1, above, start):
                return CycleSearchResult(Outcome.FOUND, tuple(path), expanded)
    except BudgetExhausted:
        return CycleSearchResult(Outcome.UNKNOWN, None, expanded)
    return CycleSearchResult(Outcome.ABSENT, None, expanded)


def hamiltonian_cycle(g: Graph, budget: int = DEFAULT_BUDGET) -> CycleSearchResult:
    if g.n < 3:
        return CycleSearchResult(Outcome.ABSENT, None, 0)
    return find_cycle_of_length(g, g.n, budget)


def girth(g: Graph) -> int | None:
    """Exact shortest-cycle length via BFS from every vertex; None if acyclic."""
    best: int | None = None
    for src in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[src] = 0
        queue = deque([src])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * dist[u] >= best:
                continue
            m = g.adj[u]
            while m:
                b = m & -m
                m ^= b
                w = b.bit_length() - 1
                if dist[w] == -1:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    cyc = dist[u] + dist[w] + 1
                    if best is None or cyc < best:
                        best = cyc
        if best == 3:
            return 3
    return best


def circumference(g: Graph, budget: int = DEFAULT_BUDGET) -> CycleSearchResult:
    """Longest cycle by descending-length search with a shared budget pool."""
    expanded = 0
    for length in range(g.n, 2, -1):
        remaining = budget - expanded
        if remaining <= 0:
            return CycleSearchResult(Outcome.UNKNOWN, None, expanded)
        res = find_cycle_of_length(g, length, remaining)
        expanded += res.expanded
        if res.outcome is Outcome.FOUND:
            return CycleSearchResult(Outcome.FOUND, res.cycle, expanded)
        if res.outcome is Outcome.UNKNOWN:
            return CycleSearchResult(Outcome.UNKNOWN, None, expanded)
    return CycleSearchResult(Outcome.ABSENT, None, expanded)


def has_triangle(g: Graph) -> bool:
    for u in range(g.n):
        m = g.adj[u] >> (u + 1) << (u + 1)
        while m:
            b = m & -m
            m ^= b
            v = b.bit_length() - 1
            if g.adj[u] & g.adj[v]:
                return True
    return False


def is_bipartite(g: Graph) -> bool:
    color = [-1] * g.n
    for src in range(g.n):
        if color[src] != -1:
            continue
        color[src] = 0
        queue = deque([src])
        while queue:
            u = queue.popleft()
            m = g.adj[u]
            while m:
                b = m & -m
                m ^= b
                w = b.bit_length() - 1
                if color[w] == -1:
                    color[w] = color[u] ^ 1
                    queue.append(w)
                elif color[w] == color[u]:
                    return False
    return True


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = 1
    queue = deque([0])
    while queue:
        u = queue.popleft()
        m = g.adj[u] & ~seen
        while m:
            b = m & -m
            m ^= b
            seen |= b
            queue.append(b.bit_length() - 1)
    return seen == (1 << g.n) - 1


def is_two_connected(g: Graph) -> bool:
    """2-connectedness by brute vertex removal (intended for small graphs)."""
    if g.n < 3 or not is_connected(g):
        return False
    for v in range(g.n):
        keep = [u for u in range(g.n) if u != v]
        relabel = {u: i for i, u in enumerate(keep)}
        sub = Graph.from_edges(
            g.n - 1,
            [(relabel[a], relabel[b]) for a, b in g.edges() if a != v and b != v],
        )
        if not is_connected(sub):
            return False
    return True


@dataclass(frozen=True)
class GraphPancyclicityReport:
    """Witness cycles per length, or the smallest length proven absent."""

    cycles: dict[int, tuple[int, ...]]
    first_missing: int | None
    unknown_lengths: tuple[int, ...]
    expanded: int

    @property
    def complete(self) -> bool:
        return self.first_missing is None and not self.unknown_lengths


def pancyclicity_certificate_graph(
    g: Graph, budget: int = DEFAULT_BUDGET
) -> GraphPancyclicityReport:
    """Witness a cycle of every length 3..n, or report the first absent length.

    Each length gets its own `budget`; searching stops at the first
    completed-absent length.
    """
    if g.n < 3:
        raise ValueError("pancyclicity needs n >= 3")
    cycles: dict[int, tuple[int, ...]] = {}
    unknown: list[int] = []
    expanded = 0
    for length in range(3, g.n + 1):
        res = find_cycle_of_length(g, length, budget)
        expanded += res.expanded
        if res.outcome is Outcome.FOUND:
            cycles[length] = res.cycle
        elif res.outcome is Outcome.ABSENT:
            return GraphPancyclicityReport(cycles, length, tuple(unknown), expanded)
        else:
            unknown.append(length)
    return GraphPancyclicityReport(cycles, None, tuple(unknown), expanded)


def hamiltonian_closure(g: Graph) -> Graph:
    """Fixed point of adding edges between nonadjacent pairs with degree sum >= n.

    The fixed point does not depend on the order in which edges are added.
    """
    n = g.n
    adj = list(g.adj)
    degs = [m.bit_count() for m in adj]
    changed = True
    while changed:
        changed = False
        for u in range(n):
            for v in range(u + 1, n):
                if not adj[u] >> v & 1 and degs[u] + degs[v] >= n:
                    adj[u] |= 1 << v
                    adj[v] |= 1 << u
                    degs[u] += 1
                    degs[v] += 1
                    changed = True
    return Graph(n, tuple(adj))


def hamiltonian_path_between(
    g: Graph, x: int, y: int, budget: int = DEFAULT_BUDGET
) -> PathSearchResult:
    """Spanning path from x to y, if one exists."""
    if x == y:
        raise ValueError("endpoints must be distinct")
    if not (0 <= x < g.n and 0 <= y < g.n):
        raise ValueError("endpoint out of range")
    adj = g.adj
    n = g.n
    expanded = 0
    path = [x]
    ybit = 1 << y

    def extend(v: int, visited: int, depth: int) -> bool:
        nonlocal expanded
        cand = adj[v] & ~visited
        if depth < n - 1:
            cand &= ~ybit
        else:
            cand &= ybit
        while cand:
            b = cand & -cand
            cand ^= b
            expanded += 1
            if expanded > budget:
                raise BudgetExhausted
            u = b.bit_length() - 1
            path.append(u)
            if depth + 1 == n or extend(u, visited | b, depth + 1):
                return True
            path.pop()
        return False

    if n == 1:
        return PathSearchResult(Outcome.ABSENT, None, 0)
    try:
        if extend(x, 1 << x, 1):
            return PathSearchResult(Outcome.FOUND, tuple(path), expanded)
    except BudgetExhausted:
        return PathSearchResult(Outcome.UNKNOWN, None, expanded)
    return PathSearchResult(Outcome.ABSENT, None, expanded)


def is_hamiltonian_connected(g: Graph, budget: int = DEFAULT_BUDGET) -> Outcome:
    """FOUND if every vertex pair is joined by a spanning path."""
    for x in range(g.n):
        for y in range(x + 1, g.n):
            res = hamiltonian_path_between(g, x, y, budget)
            if res.outcome is not Outcome.FOUND:
                return res.outcome
    return Outcome.FOUND


def is_balanced_complete_bipartite(g: Graph) -> bool:
    """Structural test for K_{n/2,n/2} (no general isomorphism machinery)."""
    n = g.n
    if n < 2 or n % 2:
        return False
    color = [-1] * n
    color[0] = 0
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if color[w] == -1:
                color[w] = color[u] ^ 1
                queue.append(w)
            elif color[w] == color[u]:
                return False
    if -1 in color:
        return False
    side = [v for v in range(n) if color[v] == 1]
    if len(side) != n // 2:
        return False
    mask1 = sum(1 << v for v in side)
    mask0 = ((1 << n) - 1) ^ mask1
    return all(g.adj[v] == (mask1 if color[v] == 0 else mask0) for v in range(n))


@dataclass(frozen=True)
class ConditionReport:
    """Whether a classical sufficient condition's hypothesis holds, and
    whether its conclusion was verified by search where that is feasible."""

    condition: str
    hypothesis_holds: bool
    conclusion_checked: bool
    conclusion_holds: bool | None
    details: dict = field(default_factory=dict)


def check_dirac(g: Graph, budget: int = DEFAULT_BUDGET) -> ConditionReport:
    """Minimum degree >= n/2 forces a hamiltonian cycle."""
    n = g.n
    hyp = n >= 3 and 2 * g.min_degree() >= n
    details: dict = {"min_degree": g.min_degree() if n else None, "n": n}
    if not hyp:
        return ConditionReport("dirac", False, False, None, details)
    res = hamiltonian_cycle(g, budget)
    details["search"] = res.outcome.value
    if res.outcome is Outcome.UNKNOWN:
        return ConditionReport("dirac", True, False, None, details)
    return ConditionReport("dirac", True, True, res.outcome is Outcome.FOUND, details)


def check_ore(g: Graph, budget: int = DEFAULT_BUDGET) -> ConditionReport:
    """Degree sum >= n over all nonadjacent pairs forces a hamiltonian cycle."""
    n = g.n
    degs = g.degrees
    hyp = n >= 3 and all(
        degs[u] + degs[v] >= n
        for u in range(n)
        for v in range(u + 1, n)
        if not g.has_edge(u, v)
    )
    details: dict = {"n": n}
    if not hyp:
        return ConditionReport("ore", False, False, None, details)
    res = hamiltonian_cycle(g, budget)
    details["search"] = res.outcome.value
    if res.outcome is Outcome.UNKNOWN:
        return ConditionReport("ore", True, False, None, details)
    return ConditionReport("ore", True, True, res.outcome is Outcome.FOUND, details)


def check_bondy(g: Graph, budget: int = DEFAULT_BUDGET) -> ConditionReport:
    """A hamiltonian graph with e >= n^2/4 is pancyclic or K_{n/2,n/2}."""
    n = g.n
    details: dict = {"edges": g.edge_count, "n": n}
    if n < 3:
        return ConditionReport("bondy", False, False, None, details)
    ham = hamiltonian_cycle(g, budget)
    details["hamiltonian"] = ham.outcome.value
    hyp = ham.outcome is Outcome.FOUND and 4 * g.edge_count >= n * n
    if not hyp:
        return ConditionReport("bondy", False, False, None, details)
    if is_balanced_complete_bipartite(g):
        details["exceptional_graph"] = True
        return ConditionReport("bondy", True, True, True, details)
    rep = pancyclicity_certificate_graph(g, budget)
    if rep.unknown_lengths:
        return ConditionReport("bondy", True, False, None, details)
    details["pancyclic"] = rep.complete
    return ConditionReport("bondy", True, True, rep.complete, details)


def check_brandt(g: Graph, budget: int = DEFAULT_BUDGET) -> ConditionReport:
    """A nonbipartite graph with min degree >= (n+2)/3 is weakly pancyclic
    with girth 3 or 4."""
    n = g.n
    details: dict = {"n": n}
    hyp = n >= 3 and not is_bipartite(g) and 3 * g.min_degree() >= n + 2
    if not hyp:
        return ConditionReport("brandt", False, False, None, details)
    gir = girth(g)
    circ = circumference(g, budget)
    details["girth"] = gir
    if circ.outcome is Outcome.UNKNOWN:
        return ConditionReport("brandt", True, False, None, details)
    clen = len(circ.cycle)
    details["circumference"] = clen
    if gir not in (3, 4):
        return ConditionReport("brandt", True, True, False, details)
    for length in range(gir, clen + 1):
        res = find_cycle_of_length(g, length, budget)
        if res.outcome is Outcome.UNKNOWN:
            return ConditionReport("brandt", True, False, None, details)
        if res.outcome is Outcome.ABSENT:
            details["missing_length"] = length
            return ConditionReport("brandt", True, True, False, details)
    return ConditionReport("brandt", True, True, True, details)


def check_mantel(g: Graph) -> ConditionReport:
    """More than n^2/4 edges force a triangle."""
    n = g.n
    hyp = 4 * g.edge_count > n * n
    details = {"edges": g.edge_count, "n": n}
    if not hyp:
        return ConditionReport("mantel", False, False, None, details)
    return ConditionReport("mantel", True, True, has_triangle(g), details)


def check_hamconn_corollary(g: Graph, budget: int = DEFAULT_BUDGET) -> ConditionReport:
    """At most two edges short of complete (n >= 6) forces hamiltonian-connectivity."""
    n = g.n
    hyp = n >= 6 and g.edge_count >= comb(n, 2) - 2
    details: dict = {"edges": g.edge_count, "n": n}
    if not hyp:
        return ConditionReport("hamiltonian-connected", False, False, None, details)
    res = is_hamiltonian_connected(g, budget)
    details["search"] = res.value
    if res is Outcome.UNKNOWN:
        return ConditionReport("hamiltonian-connected", True, False, None, details)
    return ConditionReport(
        "hamiltonian-connected", True, True, res is Outcome.FOUND, details
    )
