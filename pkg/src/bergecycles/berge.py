"""Exact Berge-cycle search on uniform hypergraphs, plus certification.

A Berge cycle of length l is an alternating sequence of l distinct
vertices and l distinct hyperedges v1,e1,v2,...,vl,el with
{v_i, v_{i+1}} contained in e_i, indices cyclic.

The searcher walks vertex sequences of the 2-shadow while maintaining a
bipartite matching from the consecutive pairs chosen so far to distinct
hyperedges containing them. A prefix is abandoned as soon as no system of
distinct representatives exists for its pairs; greedy edge assignment
would miss reassignments and make negative answers unsound, so the check
runs incremental augmenting paths with exact undo on backtrack.

ABSENT is reported only when the search tree was exhausted; running out
of the expanded-node budget yields UNKNOWN.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graphs import (
    DEFAULT_BUDGET,
    BudgetExhausted,
    Graph,
    Outcome,
    find_cycle_of_length,
    is_two_connected,
)
from .hypergraph import Hypergraph

BRUTE_FORCE_MAX_N = 9
BRUTE_FORCE_MAX_EDGES = 20


@dataclass(frozen=True)
class LiftedBergeCycle:
    """Vertex sequence plus hyperedge indices, with {v_i,v_{i+1}} in edges[i]."""

    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        if len(self.vertices) != len(self.edges):
            raise ValueError("vertex and hyperedge sequences must have equal length")

    @property
    def length(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class BergeVerification:
    ok: bool
    reason: str = ""
    index: int = -1


def verify_berge_cycle(h: Hypergraph, c: LiftedBergeCycle) -> BergeVerification:
    """Check distinct vertices, distinct hyperedges, and cyclic containment."""
    ln = c.length
    if ln < 3:
        return BergeVerification(False, "length below 3", 0)
    seen_v: dict[int, int] = {}
    for i, v in enumerate(c.vertices):
        if not 0 <= v < h.n:
            return BergeVerification(False, "vertex out of range", i)
        if v in seen_v:
            return BergeVerification(False, "repeated vertex", i)
        seen_v[v] = i
    seen_e: dict[int, int] = {}
    for i, e in enumerate(c.edges):
        if not 0 <= e < len(h.edges):
            return BergeVerification(False, "hyperedge index out of range", i)
        if e in seen_e:
            return BergeVerification(False, "repeated hyperedge", i)
        seen_e[e] = i
    bitsets = h.edge_bitsets
    for i in range(ln):
        u = c.vertices[i]
        v = c.vertices[(i + 1) % ln]
        if not bitsets[c.edges[i]] >> u & 1 or not bitsets[c.edges[i]] >> v & 1:
            return BergeVerification(False, "pair not contained in hyperedge", i)
    return BergeVerification(True)


class _PairMatcher:
    """Incremental pair -> distinct-hyperedge matching with exact undo.

    Pushing a pair runs one augmenting-path attempt; a failed push leaves
    the matching untouched (so the caller can prune), and pop() restores
    the state before the matching push.
    """

    __slots__ = ("pair_edges", "slot_pairs", "slot_edge", "owner", "trails", "checks")

    def __init__(self, pair_edges: dict[tuple[int, int], tuple[int, ...]]):
        self.pair_edges = pair_edges
        self.slot_pairs: list[tuple[int, int]] = []
        self.slot_edge: list[int | None] = []
        self.owner: dict[int, int] = {}
        self.trails: list[list[tuple[int, int | None, int]]] = []
        self.checks = 0

    def push(self, pair: tuple[int, int]) -> bool:
        self.checks += 1
        slot = len(self.slot_pairs)
        self.slot_pairs.append(pair)
        self.slot_edge.append(None)
        trail: list[tuple[int, int | None, int]] = []
        if self._augment(slot, set(), trail):
            self.trails.append(trail)
            return True
        self.slot_pairs.pop()
        self.slot_edge.pop()
        return False

    def _augment(self, slot: int, visited: set[int], trail) -> bool:
        for e in self.pair_edges.get(self.slot_pairs[slot], ()):
            if e in visited:
                continue
            visited.add(e)
            holder = self.owner.get(e)
            if holder is None or self._augment(holder, visited, trail):
                trail.append((slot, self.slot_edge[slot], e))
                self.slot_edge[slot] = e
                self.owner[e] = slot
                return True
        return False

    def pop(self) -> None:
        trail = self.trails.pop()
        for slot, old, new in reversed(trail):
            del self.owner[new]
            self.slot_edge[slot] = old
            if old is not None:
                self.owner[old] = slot
        self.slot_pairs.pop()
        self.slot_edge.pop()

    def assignment(self) -> list[int]:
        return [e for e in self.slot_edge if e is not None]


def _ordered_pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def _remaining_feasible(pairs, pair_edges, used: set[int]) -> bool:
    """Kuhn matching of `pairs` into hyperedges avoiding `used`."""
    match: dict[int, int] = {}

    def augment(i: int, visited: set[int]) -> bool:
        for e in pair_edges.get(pairs[i], ()):
            if e in used or e in visited:
                continue
            visited.add(e)
            if e not in match or augment(match[e], visited):
                match[e] = i
                return True
        return False

    return all(augment(i, set()) for i in range(len(pairs)))


def _lex_min_assignment(pairs, pair_edges) -> tuple[int, ...]:
    """Lexicographically smallest injective edge assignment for the pair list."""
    chosen: list[int] = []
    used: set[int] = set()
    for i, p in enumerate(pairs):
        for e in pair_edges.get(p, ()):
            if e in used:
                continue
            if _remaining_feasible(pairs[i + 1 :], pair_edges, used | {e}):
                chosen.append(e)
                used.add(e)
                break
        else:
            raise AssertionError("assignment known feasible but greedy failed")
    return tuple(chosen)


@dataclass(frozen=True)
class BergeSearchResult:
    outcome: Outcome
    cycle: LiftedBergeCycle | None
    expanded: int
    matching_checks: int


def find_berge_cycle(
    h: Hypergraph, length: int, budget: int = DEFAULT_BUDGET
) -> BergeSearchResult:
    """Search for a Berge cycle with exactly `length` vertices and hyperedges.

    Witnesses are canonical: the vertex sequence starts at its minimum
    vertex with the smaller second vertex, and the hyperedge assignment is
    the lexicographically smallest one for that sequence.
    """
    if not 3 <= length <= h.n:
        raise ValueError(f"cycle length {length} out of range 3..{h.n}")
    if budget <= 0:
        raise ValueError("budget must be positive")
    shadow = h.shadow
    adj = shadow.adj
    pair_edges = h.pair_edges
    # Extend toward low-degree shadow vertices first: sparse constructions
    # fail fast when the scarce continuations are tried (and rejected) early.
    deg = shadow.degrees
    ext_order = tuple(
        tuple(sorted(shadow.neighbors(v), key=lambda u: (deg[u], u)))
        for v in range(h.n)
    )
    degree_order = sorted(range(h.n), key=lambda v: (deg[v], v))
    hamiltonian = length == h.n
    # A hamiltonian Berge cycle induces a hamiltonian cycle in the shadow,
    # which needs a 2-connected shadow; this settles cut-vertex sharpness
    # constructions without entering the search tree.
    if hamiltonian and not is_two_connected(shadow):
        return BergeSearchResult(Outcome.ABSENT, None, 0, 0)
    full = (1 << h.n) - 1
    expanded = 0
    checks = 0
    path: list[int] = []

    def spanning_prune(visited: int, head: int, start: int) -> bool:
        """Sound rejections for spanning searches, where every unvisited
        vertex must still be absorbed into the cycle."""
        unvisited = full & ~visited
        avail = unvisited | (1 << head) | (1 << start)
        m = unvisited
        while m:
            b = m & -m
            m ^= b
            if (adj[b.bit_length() - 1] & avail).bit_count() < 2:
                return True
        # Pairwise nonadjacent unvisited vertices occupy nonconsecutive
        # slots of the remaining path, so any independent set caps at
        # ceil(u/2); a greedy set in ascending degree order finds the
        # oversized ones cheaply.
        u_count = unvisited.bit_count()
        limit = (u_count + 1) // 2
        indep = 0
        m = unvisited
        for v in degree_order:
            if m >> v & 1:
                indep += 1
                if indep > limit:
                    return True
                m &= ~adj[v]
                m &= ~(1 << v)
                if not m:
                    break
        return False

    def extend(v: int, visited: int, depth: int, start: int, matcher: _PairMatcher) -> bool:
        nonlocal expanded
        if depth == length:
            if path[1] > v or not adj[v] >> start & 1:
                return False
            closing = _ordered_pair(v, start)
            if matcher.push(closing):
                return True
            return False
        if hamiltonian and spanning_prune(visited, v, start):
            return False
        last = depth == length - 1
        start_bit = 1 << start
        for u in ext_order[v]:
            if u <= start or visited >> u & 1:
                continue
            if last and not adj[u] & start_bit:
                continue
            expanded += 1
            if expanded > budget:
                raise BudgetExhausted
            if not matcher.push(_ordered_pair(v, u)):
                continue
            path.append(u)
            if extend(u, visited | (1 << u), depth + 1, start, matcher):
                return True
            path.pop()
            matcher.pop()
        return False

    try:
        for start in range(h.n - length + 1):
            matcher = _PairMatcher(pair_edges)
            path = [start]
            if extend(start, 1 << start, 1, start, matcher):
                checks += matcher.checks
                seq = tuple(path)
                pairs = [
                    _ordered_pair(seq[i], seq[(i + 1) % length]) for i in range(length)
                ]
                assignment = _lex_min_assignment(pairs, pair_edges)
                cycle = LiftedBergeCycle(seq, assignment)
                return BergeSearchResult(Outcome.FOUND, cycle, expanded, checks)
            checks += matcher.checks
    except BudgetExhausted:
        return BergeSearchResult(Outcome.UNKNOWN, None, expanded, checks)
    return BergeSearchResult(Outcome.ABSENT, None, expanded, checks)


@dataclass(frozen=True)
class BergeCircumferenceResult:
    outcome: Outcome
    length: int | None
    cycle: LiftedBergeCycle | None
    expanded: int


def berge_circumference(h: Hypergraph, budget: int = DEFAULT_BUDGET) -> BergeCircumferenceResult:
    """Longest Berge-cycle length by descending search with a shared budget pool.

    ABSENT means the hypergraph has no Berge cycle at all.
    """
    expanded = 0
    for length in range(h.n, 2, -1):
        remaining = budget - expanded
        if remaining <= 0:
            return BergeCircumferenceResult(Outcome.UNKNOWN, None, None, expanded)
        res = find_berge_cycle(h, length, remaining)
        expanded += res.expanded
        if res.outcome is Outcome.FOUND:
            return BergeCircumferenceResult(Outcome.FOUND, length, res.cycle, expanded)
        if res.outcome is Outcome.UNKNOWN:
            return BergeCircumferenceResult(Outcome.UNKNOWN, None, None, expanded)
    return BergeCircumferenceResult(Outcome.ABSENT, None, None, expanded)


def brute_force_berge_cycles(h: Hypergraph, length: int) -> list[LiftedBergeCycle]:
    """All Berge cycles of the given length, modulo rotation/reflection of the
    vertex sequence. Exhaustive and unpruned: the test oracle for the searcher.
    """
    if h.n > BRUTE_FORCE_MAX_N or len(h.edges) > BRUTE_FORCE_MAX_EDGES:
        raise ValueError(
            f"brute force guarded to n <= {BRUTE_FORCE_MAX_N} and "
            f"|E| <= {BRUTE_FORCE_MAX_EDGES}"
        )
    if not 3 <= length <= h.n:
        raise ValueError(f"cycle length {length} out of range 3..{h.n}")
    import itertools

    pair_edges = h.pair_edges
    out: list[LiftedBergeCycle] = []

    def assignments(pairs, i, used, acc):
        if i == len(pairs):
            out.append(LiftedBergeCycle(seq, tuple(acc)))
            return
        for e in pair_edges.get(pairs[i], ()):
            if e in used:
                continue
            used.add(e)
            acc.append(e)
            assignments(pairs, i + 1, used, acc)
            acc.pop()
            used.remove(e)

    for subset in itertools.combinations(range(h.n), length):
        anchor = subset[0]
        rest = subset[1:]
        for perm in itertools.permutations(rest):
            if perm[0] > perm[-1]:
                continue
            seq = (anchor,) + perm
            pairs = [
                _ordered_pair(seq[i], seq[(i + 1) % length]) for i in range(length)
            ]
            if any(p not in pair_edges for p in pairs):
                continue
            assignments(pairs, 0, set(), [])
    return out


@dataclass
class PancyclicityCertificate:
    """One verified Berge cycle per length 3..n, with per-length provenance."""

    n: int
    r: int
    cycles: dict[int, LiftedBergeCycle] = field(default_factory=dict)
    methods: dict[int, str] = field(default_factory=dict)
    missing: tuple[int, ...] = ()
    unknown: tuple[int, ...] = ()
    complete: bool = False
    stats: dict = field(default_factory=dict)
    pipeline_trace: list[str] | None = None
    phi_lines: list[str] | None = None

    def to_json_dict(self) -> dict:
        cycles = {}
        for length in sorted(self.cycles):
            c = self.cycles[length]
            entry = {
                "vertices": list(c.vertices),
                "edges": list(c.edges),
                "method": self.methods.get(length, "direct-search"),
            }
            if self.pipeline_trace is not None:
                entry["provenance"] = self.methods.get(length, "direct-search")
            cycles[str(length)] = entry
        doc = {
            "n": self.n,
            "r": self.r,
            "complete": self.complete,
            "cycles": cycles,
            "missing": list(self.missing),
            "stats": dict(self.stats),
        }
        if self.unknown:
            doc["stats"]["unknown_lengths"] = list(self.unknown)
        if self.pipeline_trace is not None:
            doc["pipeline_trace"] = list(self.pipeline_trace)
        if self.phi_lines is not None:
            doc["phi"] = list(self.phi_lines)
        return doc


def pancyclicity_certificate(
    h: Hypergraph, budget: int = DEFAULT_BUDGET, phi=None
) -> PancyclicityCertificate:
    """Assemble Berge-cycle witnesses for every length 3..n.

    Prefers lifting cycles from the matched graph of a shadow matching
    (built here if not supplied), falling back to direct search per
    length. Each length l gets a budget of budget*l so the long-cycle
    searches are not starved.
    """
    if h.n < 3:
        raise ValueError("pancyclicity needs n >= 3")
    from .matching import lift_cycle, maximal_matching

    if phi is None:
        phi = maximal_matching(h)
    f_graph = phi.graph
    cert = PancyclicityCertificate(n=h.n, r=h.r)
    missing: list[int] = []
    unknown: list[int] = []
    expanded = 0
    checks = 0
    for length in range(3, h.n + 1):
        per_budget = budget * length
        if f_graph.n >= 3 and length <= f_graph.n:
            g_res = find_cycle_of_length(f_graph, length, per_budget)
            expanded += g_res.expanded
            if g_res.outcome is Outcome.FOUND:
                lifted = lift_cycle(phi, g_res.cycle)
                check = verify_berge_cycle(h, lifted)
                if not check.ok:
                    raise AssertionError(f"lifted cycle failed verification: {check}")
                cert.cycles[length] = lifted
                cert.methods[length] = "lifted-from-F"
                continue
        b_res = find_berge_cycle(h, length, per_budget)
        expanded += b_res.expanded
        checks += b_res.matching_checks
        if b_res.outcome is Outcome.FOUND:
            cert.cycles[length] = b_res.cycle
            cert.methods[length] = "direct-search"
        elif b_res.outcome is Outcome.ABSENT:
            missing.append(length)
        else:
            unknown.append(length)
    cert.missing = tuple(missing)
    cert.unknown = tuple(unknown)
    cert.complete = not missing and not unknown
    cert.stats = {"expanded": expanded, "matching_checks": checks}
    return cert
