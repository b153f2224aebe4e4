"""Generators for the extremal families, and the Voss-class machinery.

Constructions 1 and 2 are the sharpness examples for the pancyclicity
degree threshold C(floor((n-1)/2), r-1) + 1: both have minimum degree
exactly C(floor((n-1)/2), r-1) and no hamiltonian Berge cycle.
Construction 3 is the hamiltonian-but-not-pancyclic 3-uniform family on
2k vertices that avoids short even Berge cycles.

The five Voss classes G1..G5 are the dense nonhamiltonian graphs on
n in {2k+1, 2k+2} vertices with minimum degree >= k = floor((n-1)/2);
`classify_voss` searches for a witnessing partition, exactly for n <= 14.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from random import Random

from .graphs import Graph, Outcome, is_two_connected
from .hypergraph import Hypergraph

VOSS_CLASSES = ("G1", "G2", "G3", "G4", "G5")
EXACT_CLASSIFY_LIMIT = 14
_G3_MAX_TRIES = 200_000


def _clique_edges(vertices) -> list[tuple[int, ...]]:
    return [tuple(vs) for vs in itertools.combinations(sorted(vertices), 2)]


def _construction_range_check(n: int, r: int) -> None:
    k = (n - 1) // 2
    if not 3 <= r <= k - 1:
        raise ValueError(f"need 3 <= r <= floor((n-1)/2)-1 = {k - 1}, got r={r}")


def construction_1(n: int, r: int, seed: int | None = None) -> Hypergraph:
    """Two r-uniform cliques sharing one vertex (n odd) or disjoint plus one
    extra edge (n even). Minimum degree C(floor((n-1)/2), r-1), Berge
    circumference ceil(n/2).

    The canonical extra edge (n even) spans the last r-1 vertices of the
    first clique and the first vertex of the second; a seed randomizes its
    placement instead.
    """
    _construction_range_check(n, r)
    edges: list[tuple[int, ...]] = []
    if n % 2:
        half = (n + 1) // 2
        first = range(half)
        second = range(half - 1, n)
        edges.extend(itertools.combinations(first, r))
        edges.extend(itertools.combinations(second, r))
    else:
        half = n // 2
        first = list(range(half))
        second = list(range(half, n))
        edges.extend(itertools.combinations(first, r))
        edges.extend(itertools.combinations(second, r))
        if seed is None:
            extra = tuple(range(half - (r - 1), half)) + (half,)
        else:
            rng = Random(seed)
            t = rng.randint(1, r - 1)
            extra = tuple(sorted(rng.sample(first, t) + rng.sample(second, r - t)))
        edges.append(tuple(sorted(extra)))
    return Hypergraph(n, r, tuple(edges))


def construction_2(n: int, r: int) -> Hypergraph:
    """All r-sets meeting the large side in at most one vertex.

    Parts have sizes floor((n-1)/2) and ceil((n+1)/2); the large side
    attains the minimum degree C(floor((n-1)/2), r-1).
    """
    _construction_range_check(n, r)
    small = (n - 1) // 2
    part_a = range(small)
    part_b = range(small, n)
    edges = list(itertools.combinations(part_a, r))
    for b in part_b:
        for rest in itertools.combinations(part_a, r - 1):
            edges.append(tuple(sorted(rest + (b,))))
    return Hypergraph(n, r, tuple(edges))


def construction_3(k: int) -> Hypergraph:
    """3-uniform {{i, i+1, i+k} : i in Z_{2k}}: hamiltonian, all degrees 3,
    yet no even Berge cycles of length 4..k-1."""
    if k < 5:
        raise ValueError(f"need k >= 5, got k={k}")
    n = 2 * k
    edges = [tuple(sorted((i, (i + 1) % n, (i + k) % n))) for i in range(n)]
    return Hypergraph(n, 3, tuple(edges))


def complete_hypergraph(n: int, r: int) -> Hypergraph:
    if not 2 <= r <= n:
        raise ValueError(f"need 2 <= r <= n, got n={n}, r={r}")
    return Hypergraph(n, r, tuple(itertools.combinations(range(n), r)))


def complete_bipartite_graph(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise ValueError("both sides must be nonempty")
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


@dataclass(frozen=True)
class VossWitness:
    """A partition certifying membership in one of the classes G1..G5."""

    cls: str
    k: int
    part1: tuple[int, ...]
    part2: tuple[int, ...]
    x0: int | None = None
    e0: tuple[int, int] | None = None


@dataclass(frozen=True)
class VossClassification:
    outcome: Outcome  # FOUND = member, ABSENT = not in any class, UNKNOWN = budget
    witness: VossWitness | None = None


def generate_voss(
    cls: str, k: int, e0_present: bool = False, seed: int | None = None
) -> tuple[Graph, VossWitness]:
    """Sample a member of the requested class with its witness.

    Canonical members are produced without a seed; a seed randomizes the
    free choices the class template leaves open (extra internal edges, e0
    placement, the dense 2-connected side of G3).
    """
    if cls not in VOSS_CLASSES:
        raise ValueError(f"unknown class {cls!r}")
    if k < 3:
        raise ValueError(f"need k >= 3, got k={k}")
    if e0_present and cls not in ("G1", "G5"):
        raise ValueError(f"class {cls} has no optional edge e0")
    rng = Random(seed) if seed is not None else None

    if cls == "G1":
        n = 2 * k + 2
        part1 = tuple(range(k + 1))
        part2 = tuple(range(k + 1, n))
        edges = _clique_edges(part1) + _clique_edges(part2)
        e0 = None
        if e0_present:
            if rng is None:
                e0 = (0, k + 1)
            else:
                e0 = (rng.choice(part1), rng.choice(part2))
            edges.append(e0)
        g = Graph.from_edges(n, edges)
        return g, VossWitness("G1", k, part1, part2, None, e0)

    if cls == "G2":
        n = 2 * k + 1
        x0 = k
        part1 = tuple(range(k + 1))
        part2 = tuple(range(k, n))
        edges = _clique_edges(part1) + _clique_edges(part2)
        g = Graph.from_edges(n, edges)
        return g, VossWitness("G2", k, part1, part2, x0, None)

    if cls == "G3":
        n = 2 * k + 2
        x0 = k
        part1 = tuple(range(k + 1))
        part2 = tuple(range(k, n))
        clique = _clique_edges(part1)
        rng = rng or Random(0)
        # Rejection-sample the second side at density 0.7 until it is
        # 2-connected and every non-x0 vertex keeps degree >= k inside it.
        pairs = _clique_edges(part2)
        for _ in range(_G3_MAX_TRIES):
            chosen = [p for p in pairs if rng.random() < 0.7]
            side = Graph.from_edges(n, chosen)
            degs = [side.degree(v) for v in part2]
            if any(d < k for v, d in zip(part2, degs) if v != x0):
                continue
            relabel = {v: i for i, v in enumerate(part2)}
            sub = Graph.from_edges(
                len(part2), [(relabel[a], relabel[b]) for a, b in chosen]
            )
            if not is_two_connected(sub):
                continue
            g = Graph.from_edges(n, clique + chosen)
            return g, VossWitness("G3", k, part1, part2, x0, None)
        raise RuntimeError(f"G3 sampling failed after {_G3_MAX_TRIES} tries (k={k})")

    if cls == "G4":
        n = 2 * k + 1
        part1 = tuple(range(k))
        part2 = tuple(range(k, n))
        edges = [(a, b) for a in part1 for b in part2]
        if rng is not None:
            edges += [p for p in _clique_edges(part1) if rng.random() < 0.5]
        g = Graph.from_edges(n, edges)
        return g, VossWitness("G4", k, part1, part2, None, None)

    # G5
    n = 2 * k + 2
    part1 = tuple(range(k))
    part2 = tuple(range(k, n))
    edges = [(a, b) for a in part1 for b in part2]
    if rng is not None:
        edges += [p for p in _clique_edges(part1) if rng.random() < 0.5]
    e0 = None
    if e0_present:
        if rng is None:
            e0 = (k, k + 1)
        else:
            e0 = tuple(sorted(rng.sample(part2, 2)))
        edges.append(e0)
    g = Graph.from_edges(n, edges)
    return g, VossWitness("G5", k, part1, part2, None, e0)


def _is_clique(g: Graph, vertices) -> bool:
    return all(g.has_edge(u, v) for u, v in itertools.combinations(vertices, 2))


def _is_independent(g: Graph, vertices) -> bool:
    return not any(g.has_edge(u, v) for u, v in itertools.combinations(vertices, 2))


def _cross_edges(g: Graph, part1, part2) -> list[tuple[int, int]]:
    out = []
    for a in part1:
        for b in part2:
            if a != b and g.has_edge(a, b):
                out.append((a, b) if a < b else (b, a))
    return out


def _check_g1(g: Graph, k: int, part1: tuple[int, ...]) -> VossWitness | None:
    part2 = tuple(v for v in range(g.n) if v not in set(part1))
    if not (_is_clique(g, part1) and _is_clique(g, part2)):
        return None
    cross = set(_cross_edges(g, part1, part2))
    if len(cross) > 1:
        return None
    e0 = min(cross) if cross else None
    return VossWitness("G1", k, part1, part2, None, e0)


def _check_g2(g: Graph, k: int, part1: tuple[int, ...], x0: int) -> VossWitness | None:
    rest = tuple(v for v in range(g.n) if v not in set(part1))
    part2 = tuple(sorted(rest + (x0,)))
    if not (_is_clique(g, part1) and _is_clique(g, part2)):
        return None
    if _cross_edges(g, [v for v in part1 if v != x0], rest):
        return None
    return VossWitness("G2", k, part1, part2, x0, None)


def _check_g3(g: Graph, k: int, part1: tuple[int, ...], x0: int) -> VossWitness | None:
    if not _is_clique(g, part1):
        return None
    rest = tuple(v for v in range(g.n) if v not in set(part1))
    part2 = tuple(sorted(rest + (x0,)))
    if _cross_edges(g, [v for v in part1 if v != x0], rest):
        return None
    if any(g.degree(v) < k for v in range(g.n)):
        return None
    relabel = {v: i for i, v in enumerate(part2)}
    part2_set = set(part2)
    sub = Graph.from_edges(
        len(part2),
        [
            (relabel[a], relabel[b])
            for a, b in g.edges()
            if a in part2_set and b in part2_set
        ],
    )
    if not is_two_connected(sub):
        return None
    return VossWitness("G3", k, part1, part2, x0, None)


def _check_g4(g: Graph, k: int, part2: tuple[int, ...]) -> VossWitness | None:
    if not _is_independent(g, part2):
        return None
    part1 = tuple(v for v in range(g.n) if v not in set(part2))
    if not all(g.has_edge(a, b) for a in part1 for b in part2):
        return None
    return VossWitness("G4", k, part1, part2, None, None)


def _check_g5(g: Graph, k: int, part2: tuple[int, ...]) -> VossWitness | None:
    if any(g.degree(v) < k for v in range(g.n)):
        return None
    inside = [
        (u, v) for u, v in itertools.combinations(sorted(part2), 2) if g.has_edge(u, v)
    ]
    if len(inside) > 1:
        return None
    part1 = tuple(v for v in range(g.n) if v not in set(part2))
    e0 = inside[0] if inside else None
    return VossWitness("G5", k, part1, part2, None, e0)


def _classify_exhaustive(g: Graph, k: int) -> VossWitness | None:
    n = g.n
    vertices = range(n)
    if n == 2 * k + 2:
        # G1: unordered balanced partition, so fix vertex 0 on side 1.
        for rest in itertools.combinations(range(1, n), k):
            w = _check_g1(g, k, (0,) + rest)
            if w:
                return w
        for part1 in itertools.combinations(vertices, k + 1):
            for x0 in part1:
                w = _check_g3(g, k, part1, x0)
                if w:
                    return w
        for part2 in itertools.combinations(vertices, k + 2):
            w = _check_g5(g, k, part2)
            if w:
                return w
    elif n == 2 * k + 1:
        # G2: parts are interchangeable, so fix vertex 0 on side 1.
        for part1 in itertools.combinations(vertices, k + 1):
            if 0 not in part1:
                continue
            for x0 in part1:
                w = _check_g2(g, k, part1, x0)
                if w:
                    return w
        for part2 in itertools.combinations(vertices, k + 1):
            w = _check_g4(g, k, part2)
            if w:
                return w
    return None


def _maximal_cliques(g: Graph) -> list[int]:
    """Bron-Kerbosch with pivoting; returns clique bitmasks."""
    out: list[int] = []
    full = (1 << g.n) - 1

    def expand(r: int, p: int, x: int):
        if not p and not x:
            out.append(r)
            return
        pivot_candidates = p | x
        pivot = (pivot_candidates & -pivot_candidates).bit_length() - 1
        best = pivot
        m = pivot_candidates
        best_cover = -1
        while m:
            b = m & -m
            m ^= b
            u = b.bit_length() - 1
            cover = (p & g.adj[u]).bit_count()
            if cover > best_cover:
                best_cover = cover
                best = u
        ext = p & ~g.adj[best]
        while ext:
            b = ext & -ext
            ext ^= b
            v = b.bit_length() - 1
            expand(r | b, p & g.adj[v], x & g.adj[v])
            p &= ~b
            x |= b
            ext &= p

    expand(0, full, 0)
    return out


def _mask_vertices(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return tuple(out)


def _classify_anchored(g: Graph, k: int) -> VossWitness | None:
    """Fast path: derive candidate partitions from maximum cliques (G1-G3)
    and maximum independent sets (G4-G5) instead of raw enumeration."""
    n = g.n
    cliques = sorted(_maximal_cliques(g), key=lambda m: -m.bit_count())
    comp = Graph(n, tuple((1 << n) - 1 & ~(1 << v) & ~g.adj[v] for v in range(n)))
    indep = sorted(_maximal_cliques(comp), key=lambda m: -m.bit_count())

    def subsets_of(masks, size, limit=2000):
        seen = set()
        for m in masks:
            vs = _mask_vertices(m)
            if len(vs) < size:
                continue
            for sub in itertools.combinations(vs, size):
                if sub not in seen:
                    seen.add(sub)
                    yield sub
                    if len(seen) >= limit:
                        return

    if n == 2 * k + 2:
        for part1 in subsets_of(cliques, k + 1):
            w = _check_g1(g, k, part1)
            if w:
                return w
        for part1 in subsets_of(cliques, k + 1):
            for x0 in part1:
                w = _check_g3(g, k, part1, x0)
                if w:
                    return w
        for part2 in subsets_of(indep, k + 2):
            w = _check_g5(g, k, part2)
            if w:
                return w
        # An e0 inside part2 means part2 is one vertex beyond an independent set.
        for base in subsets_of(indep, k + 1):
            base_set = set(base)
            for v in range(n):
                if v in base_set:
                    continue
                w = _check_g5(g, k, tuple(sorted(base + (v,))))
                if w:
                    return w
    elif n == 2 * k + 1:
        for part1 in subsets_of(cliques, k + 1):
            for x0 in part1:
                w = _check_g2(g, k, part1, x0)
                if w:
                    return w
        for part2 in subsets_of(indep, k + 1):
            w = _check_g4(g, k, part2)
            if w:
                return w
    return None


def classify_voss(g: Graph) -> VossClassification:
    """Find a witnessing partition for membership in G1..G5.

    Tries the clique/independent-set anchored candidates first, then (for
    n <= 14) an exhaustive partition search, which makes ABSENT exact at
    that scale. Larger graphs that the anchored pass cannot place come
    back UNKNOWN.
    """
    n = g.n
    k = (n - 1) // 2
    if k < 3:
        return VossClassification(Outcome.ABSENT)
    w = _classify_anchored(g, k)
    if w:
        return VossClassification(Outcome.FOUND, w)
    if n <= EXACT_CLASSIFY_LIMIT:
        w = _classify_exhaustive(g, k)
        if w:
            return VossClassification(Outcome.FOUND, w)
        return VossClassification(Outcome.ABSENT)
    return VossClassification(Outcome.UNKNOWN)
