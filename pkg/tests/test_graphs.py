"""Cycle searches, closure, and the classical condition checkers."""

import itertools
from math import comb
from random import Random

import pytest

from bergecycles import (
    Graph,
    Outcome,
    check_bondy,
    check_brandt,
    check_dirac,
    check_hamconn_corollary,
    check_mantel,
    check_ore,
    circumference,
    find_cycle_of_length,
    girth,
    hamiltonian_closure,
    hamiltonian_cycle,
    hamiltonian_path_between,
    has_triangle,
    is_bipartite,
    pancyclicity_certificate_graph,
)
from bergecycles.families import complete_bipartite_graph
from bergecycles.graphs import is_balanced_complete_bipartite


def cycle_lengths_by_enumeration(g: Graph) -> set[int]:
    """No-pruning oracle: try every vertex subset in every cyclic order."""
    lengths = set()
    for size in range(3, g.n + 1):
        for subset in itertools.combinations(range(g.n), size):
            for perm in itertools.permutations(subset[1:]):
                seq = (subset[0],) + perm
                if all(
                    g.has_edge(seq[i], seq[(i + 1) % size]) for i in range(size)
                ):
                    lengths.add(size)
                    break
            if size in lengths:
                break
    return lengths


def random_graph(n: int, p: float, rng: Random) -> Graph:
    return Graph.from_edges(
        n,
        [e for e in itertools.combinations(range(n), 2) if rng.random() < p],
    )


class TestFindCycle:
    def test_c5_finds_itself(self):
        g = Graph.cycle_graph(5)
        res = find_cycle_of_length(g, 5)
        assert res.outcome is Outcome.FOUND
        assert res.cycle == (0, 1, 2, 3, 4)

    def test_c5_has_no_triangle(self):
        res = find_cycle_of_length(Graph.cycle_graph(5), 3)
        assert res.outcome is Outcome.ABSENT

    def test_k4_lengths(self):
        g = Graph.complete(4)
        for ell in (3, 4):
            assert find_cycle_of_length(g, ell).outcome is Outcome.FOUND

    def test_length_out_of_range(self):
        with pytest.raises(ValueError, match="range"):
            find_cycle_of_length(Graph.complete(4), 2)

    def test_budget_exhaustion_is_unknown(self):
        g = Graph.complete(9)
        res = find_cycle_of_length(g, 9, budget=3)
        assert res.outcome is Outcome.UNKNOWN

    def test_canonical_witness(self):
        g = Graph.complete(5)
        res = find_cycle_of_length(g, 4)
        assert res.cycle[0] == min(res.cycle)
        assert res.cycle[1] < res.cycle[-1]
        again = find_cycle_of_length(Graph.complete(5), 4)
        assert again.cycle == res.cycle

    def test_search_exactness_against_enumerator(self):
        rng = Random(7)
        for _ in range(40):
            n = rng.randint(4, 8)
            g = random_graph(n, rng.uniform(0.2, 0.8), rng)
            expected = cycle_lengths_by_enumeration(g)
            for ell in range(3, n + 1):
                res = find_cycle_of_length(g, ell)
                assert res.outcome is not Outcome.UNKNOWN
                assert (res.outcome is Outcome.FOUND) == (ell in expected)
                if res.cycle:
                    size = len(res.cycle)
                    assert len(set(res.cycle)) == size
                    assert all(
                        g.has_edge(res.cycle[i], res.cycle[(i + 1) % size])
                        for i in range(size)
                    )


class TestHamiltonian:
    def test_cycle_graph(self):
        assert hamiltonian_cycle(Graph.cycle_graph(6)).outcome is Outcome.FOUND

    def test_unbalanced_bipartite(self):
        assert hamiltonian_cycle(complete_bipartite_graph(3, 4)).outcome is Outcome.ABSENT

    def test_path_between_endpoints(self):
        g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
        res = hamiltonian_path_between(g, 0, 3)
        assert res.outcome is Outcome.FOUND
        assert res.path == (0, 1, 2, 3)

    def test_path_in_complete_graph(self):
        g = Graph.complete(4)
        for x, y in itertools.combinations(range(4), 2):
            assert hamiltonian_path_between(g, x, y).outcome is Outcome.FOUND

    def test_star_leaf_to_leaf(self):
        g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
        assert hamiltonian_path_between(g, 1, 2).outcome is Outcome.ABSENT

    def test_path_same_endpoint_rejected(self):
        with pytest.raises(ValueError, match="distinct"):
            hamiltonian_path_between(Graph.complete(4), 1, 1)


class TestGirthCircumference:
    def test_c6(self):
        g = Graph.cycle_graph(6)
        assert girth(g) == 6
        res = circumference(g)
        assert res.outcome is Outcome.FOUND and len(res.cycle) == 6
        assert is_bipartite(g)
        assert not has_triangle(g)

    def test_k33(self):
        g = complete_bipartite_graph(3, 3)
        assert girth(g) == 4
        res = circumference(g)
        assert len(res.cycle) == 6
        assert is_bipartite(g)

    def test_petersen_girth(self):
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        g = Graph.from_edges(10, outer + spokes + inner)
        assert girth(g) == 5

    def test_two_cliques_sharing_vertex(self):
        # Shadow of the n=11 sharpness construction: circumference 6.
        edges = list(itertools.combinations(range(6), 2)) + list(
            itertools.combinations(range(5, 11), 2)
        )
        g = Graph.from_edges(11, edges)
        res = circumference(g)
        assert res.outcome is Outcome.FOUND and len(res.cycle) == 6

    def test_forest_has_no_cycles(self):
        g = Graph.from_edges(4, [(0, 1), (1, 2), (1, 3)])
        assert girth(g) is None
        assert circumference(g).outcome is Outcome.ABSENT

    def test_girth_matches_enumeration(self):
        rng = Random(3)
        for _ in range(30):
            n = rng.randint(4, 8)
            g = random_graph(n, rng.uniform(0.15, 0.7), rng)
            lengths = cycle_lengths_by_enumeration(g)
            assert girth(g) == (min(lengths) if lengths else None)
            res = circumference(g)
            if lengths:
                assert len(res.cycle) == max(lengths)
            else:
                assert res.outcome is Outcome.ABSENT


class TestPancyclicityGraph:
    def test_k5_complete(self):
        rep = pancyclicity_certificate_graph(Graph.complete(5))
        assert rep.complete and sorted(rep.cycles) == [3, 4, 5]

    def test_k33_missing_triangle(self):
        rep = pancyclicity_certificate_graph(complete_bipartite_graph(3, 3))
        assert rep.first_missing == 3

    def test_c6_with_chord(self):
        # C6 plus chord {0,3} has cycles of lengths 4 and 6 only (oracle:
        # exhaustive enumeration), so the first missing length is 3.
        g = Graph.cycle_graph(6).with_edges([(0, 3)])
        assert cycle_lengths_by_enumeration(g) == {4, 6}
        rep = pancyclicity_certificate_graph(g)
        assert rep.first_missing == 3
        assert find_cycle_of_length(g, 5).outcome is Outcome.ABSENT


class TestClosure:
    def test_c4_closes_to_k4(self):
        assert hamiltonian_closure(Graph.cycle_graph(4)) == Graph.complete(4)

    def test_c5_is_fixed_point(self):
        g = Graph.cycle_graph(5)
        assert hamiltonian_closure(g) == g

    def test_k6_minus_perfect_matching(self):
        g = Graph.complete(6).without_edges([(0, 1), (2, 3), (4, 5)])
        assert hamiltonian_closure(g) == Graph.complete(6)

    def test_order_independence(self):
        # Oracle: a re-implementation that adds qualifying pairs in random order.
        def shuffled_closure(g: Graph, rng: Random) -> Graph:
            adj = list(g.adj)
            degs = [m.bit_count() for m in adj]
            while True:
                pairs = [
                    (u, v)
                    for u, v in itertools.combinations(range(g.n), 2)
                    if not adj[u] >> v & 1 and degs[u] + degs[v] >= g.n
                ]
                if not pairs:
                    return Graph(g.n, tuple(adj))
                u, v = rng.choice(pairs)
                adj[u] |= 1 << v
                adj[v] |= 1 << u
                degs[u] += 1
                degs[v] += 1

        rng = Random(11)
        for _ in range(25):
            n = rng.randint(4, 9)
            g = random_graph(n, rng.uniform(0.3, 0.8), rng)
            closed = hamiltonian_closure(g)
            assert closed == shuffled_closure(g, rng)
            assert closed == shuffled_closure(g, rng)

    def test_closure_preserves_hamiltonicity(self):
        rng = Random(23)
        for _ in range(30):
            n = rng.randint(4, 8)
            g = random_graph(n, rng.uniform(0.3, 0.8), rng)
            before = hamiltonian_cycle(g).outcome
            after = hamiltonian_cycle(hamiltonian_closure(g)).outcome
            assert before == after


class TestConditionCheckers:
    def test_dirac_k7(self):
        rep = check_dirac(Graph.complete(7))
        assert rep.hypothesis_holds and rep.conclusion_holds

    def test_dirac_hypothesis_fails(self):
        assert not check_dirac(Graph.cycle_graph(7)).hypothesis_holds

    def test_ore_on_k23(self):
        # K_{2,3} fails Ore: the two degree-2 vertices are nonadjacent with sum 4 < 5.
        assert not check_ore(complete_bipartite_graph(2, 3)).hypothesis_holds
        rep = check_ore(Graph.complete(5).without_edges([(0, 1)]))
        assert rep.hypothesis_holds and rep.conclusion_holds

    def test_bondy_exceptional_graph(self):
        rep = check_bondy(complete_bipartite_graph(3, 3))
        assert rep.hypothesis_holds
        assert rep.conclusion_holds
        assert rep.details.get("exceptional_graph")

    def test_bondy_on_pancyclic(self):
        rep = check_bondy(Graph.complete(5))
        assert rep.hypothesis_holds and rep.conclusion_holds

    def test_brandt_on_wheel(self):
        hub = [(6, i) for i in range(6)]
        rim = [(i, (i + 1) % 6) for i in range(6)]
        rep = check_brandt(Graph.from_edges(7, hub + rim))
        assert rep.hypothesis_holds and rep.conclusion_holds

    def test_mantel(self):
        assert check_mantel(Graph.complete(4)).conclusion_holds
        assert not check_mantel(complete_bipartite_graph(3, 3)).hypothesis_holds

    def test_hamconn_small_n_fails_hypothesis(self):
        g = Graph.complete(5).without_edges([(0, 1)])
        assert not check_hamconn_corollary(g).hypothesis_holds

    def test_hamconn_k6_minus_two_edges(self):
        g = Graph.complete(6).without_edges([(0, 1), (2, 3)])
        rep = check_hamconn_corollary(g)
        assert rep.hypothesis_holds and rep.conclusion_holds

    def test_structural_k_half_half(self):
        assert is_balanced_complete_bipartite(complete_bipartite_graph(3, 3))
        assert not is_balanced_complete_bipartite(complete_bipartite_graph(2, 4))
        assert not is_balanced_complete_bipartite(Graph.complete(6))
