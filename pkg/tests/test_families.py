"""Extremal constructions and the five nonhamiltonian graph classes."""

import itertools
from math import comb
from random import Random

import pytest

from bergecycles import (
    Graph,
    Outcome,
    classify_voss,
    complete_bipartite_graph,
    complete_hypergraph,
    construction_1,
    construction_2,
    construction_3,
    degree_profile,
    find_berge_cycle,
    generate_voss,
    hamiltonian_cycle,
    min_degree,
)
from bergecycles.families import VOSS_CLASSES


class TestConstruction1:
    def test_n11_counts(self):
        h = construction_1(11, 3)
        assert len(h.edges) == 2 * comb(6, 3) == 40
        assert min_degree(h) == 10

    def test_n12_counts(self):
        h = construction_1(12, 3)
        assert len(h.edges) == 2 * comb(6, 3) + 1 == 41
        assert min_degree(h) == 10

    def test_even_extra_edge_crosses(self):
        h = construction_1(12, 3)
        half = 6
        crossing = [
            e for e in h.edges if min(e) < half <= max(e)
        ]
        assert crossing == [(4, 5, 6)]

    def test_even_random_extra_edge(self):
        h = construction_1(12, 3, seed=5)
        crossing = [e for e in h.edges if min(e) < 6 <= max(e)]
        assert len(crossing) == 1
        assert len(h.edges) == 41

    def test_parameter_gate(self):
        with pytest.raises(ValueError, match="floor"):
            construction_1(11, 5)  # r must stay below floor((n-1)/2)


class TestConstruction2:
    def test_n11_counts(self):
        h = construction_2(11, 3)
        assert len(h.edges) == comb(5, 3) + 6 * comb(5, 2) == 70
        assert min_degree(h) == 10

    def test_large_side_attains_minimum(self):
        h = construction_2(11, 3)
        profile = degree_profile(h)
        assert all(profile.degrees[b] == 10 for b in range(5, 11))

    def test_at_most_one_large_side_vertex_per_edge(self):
        h = construction_2(13, 4)
        small = set(range(6))
        for e in h.edges:
            assert len(set(e) - small) <= 1


class TestConstruction3:
    def test_k6_shape(self):
        h = construction_3(6)
        assert h.n == 12 and len(h.edges) == 12
        assert degree_profile(h).degrees == (3,) * 12

    def test_edges_match_formula(self):
        k = 7
        h = construction_3(k)
        expected = {tuple(sorted((i, (i + 1) % (2 * k), (i + k) % (2 * k)))) for i in range(2 * k)}
        assert set(h.edges) == expected

    def test_k_gate(self):
        with pytest.raises(ValueError, match="k >= 5"):
            construction_3(4)


class TestCompleteFamilies:
    def test_complete_hypergraph_count(self):
        assert len(complete_hypergraph(5, 3).edges) == 10

    def test_single_edge_case(self):
        assert len(complete_hypergraph(4, 4).edges) == 1

    def test_complete_bipartite(self):
        g = complete_bipartite_graph(3, 3)
        assert g.edge_count == 9
        with pytest.raises(ValueError, match="nonempty"):
            complete_bipartite_graph(0, 3)


class TestGenerateVoss:
    def test_g2_shape(self):
        g, w = generate_voss("G2", 4)
        assert g.n == 9
        assert g.min_degree() == 4
        assert w.x0 == 4
        assert g.edge_count == 2 * comb(5, 2)

    def test_g4_is_complete_bipartite(self):
        g, w = generate_voss("G4", 4)
        assert g.n == 9
        assert sorted(g.edges()) == sorted(complete_bipartite_graph(4, 5).edges())

    def test_g1_with_crossing_edge_nonhamiltonian(self):
        g, w = generate_voss("G1", 4, e0_present=True)
        assert w.e0 == (0, 5)
        assert hamiltonian_cycle(g).outcome is Outcome.ABSENT

    def test_e0_rejected_where_template_forbids(self):
        for cls in ("G2", "G3", "G4"):
            with pytest.raises(ValueError, match="e0"):
                generate_voss(cls, 4, e0_present=True)

    def test_k_gate(self):
        with pytest.raises(ValueError, match="k >= 3"):
            generate_voss("G1", 2)

    def test_unknown_class(self):
        with pytest.raises(ValueError, match="class"):
            generate_voss("G6", 4)

    def test_generators_nonhamiltonian_with_degree_floor(self):
        for cls in VOSS_CLASSES:
            for k in (3, 4, 5):
                for variant in (None, 1, 2):
                    e0 = cls in ("G1", "G5") and variant == 2
                    g, w = generate_voss(cls, k, e0_present=e0, seed=variant)
                    assert g.min_degree() >= k, (cls, k, variant)
                    assert hamiltonian_cycle(g).outcome is Outcome.ABSENT, (cls, k, variant)


class TestClassifyVoss:
    def test_round_trip_all_classes(self):
        for cls in VOSS_CLASSES:
            for k in (3, 4):
                g, w = generate_voss(cls, k, seed=9)
                res = classify_voss(g)
                assert res.outcome is Outcome.FOUND
                assert res.witness.cls == cls

    def test_g2_witness_recovers_shared_vertex(self):
        g, w = generate_voss("G2", 4)
        res = classify_voss(g)
        assert res.witness.cls == "G2"
        assert res.witness.x0 == w.x0

    def test_k45_is_g4(self):
        res = classify_voss(complete_bipartite_graph(4, 5))
        assert res.outcome is Outcome.FOUND and res.witness.cls == "G4"

    def test_c7_not_in_family(self):
        res = classify_voss(Graph.cycle_graph(7))
        assert res.outcome is Outcome.ABSENT

    def test_small_n_not_in_family(self):
        res = classify_voss(Graph.complete(4))
        assert res.outcome is Outcome.ABSENT

    def test_e0_recovered(self):
        g, w = generate_voss("G1", 4, e0_present=True)
        res = classify_voss(g)
        assert res.witness.cls == "G1"
        assert res.witness.e0 == w.e0

    def test_converse_on_perturbed_members(self):
        # Nonhamiltonian + degree floor should land in some class; sampling
        # is random members plus small perturbations that keep the premises.
        rng = Random(41)
        for k in (3, 4):
            for cls in VOSS_CLASSES:
                g, w = generate_voss(cls, k, seed=rng.randint(0, 10**6))
                candidates = [
                    p
                    for p in itertools.combinations(range(g.n), 2)
                    if not g.has_edge(*p)
                ]
                rng.shuffle(candidates)
                for extra in candidates[:6]:
                    g2 = g.with_edges([extra])
                    if g2.min_degree() < k:
                        continue
                    if hamiltonian_cycle(g2).outcome is not Outcome.ABSENT:
                        continue
                    res = classify_voss(g2)
                    assert res.outcome is Outcome.FOUND, (cls, k, extra)


class TestSharpnessSmall:
    def test_min_degree_and_no_hamiltonian_cycle_all_valid_sizes(self):
        for n in range(9, 16):
            for r in range(3, (n - 1) // 2):
                expected = comb((n - 1) // 2, r - 1)
                for ctor in (construction_1, construction_2):
                    h = ctor(n, r)
                    assert min_degree(h) == expected, (ctor.__name__, n, r)
                    assert find_berge_cycle(h, n).outcome is Outcome.ABSENT, (
                        ctor.__name__,
                        n,
                        r,
                    )
