"""Hypergraph representation, degrees, 2-shadow, and the text format."""

import itertools
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bergecycles import (
    Graph,
    Hypergraph,
    ParseError,
    degree,
    degree_profile,
    min_degree,
    parse_hypergraph,
    serialize_hypergraph,
    two_shadow,
)
from bergecycles.families import complete_hypergraph, construction_1, construction_3


def brute_degree(h: Hypergraph, v: int) -> int:
    return sum(1 for e in h.edges if v in e)


hypergraphs = st.integers(3, 8).flatmap(
    lambda n: st.integers(2, min(4, n)).flatmap(
        lambda r: st.lists(
            st.frozensets(st.integers(0, n - 1), min_size=r, max_size=r),
            max_size=12,
            unique=True,
        ).map(lambda es: Hypergraph(n, r, tuple(tuple(sorted(e)) for e in set(es))))
    )
)


class TestHypergraph:
    def test_single_edge(self):
        h = Hypergraph(3, 3, ((0, 1, 2),))
        assert h.edges == ((0, 1, 2),)
        assert degree(h, 0) == 1

    def test_edges_canonicalized(self):
        h = Hypergraph(4, 3, ((3, 1, 2), (2, 1, 0)))
        assert h.edges == ((0, 1, 2), (1, 2, 3))

    def test_rejects_wrong_size(self):
        with pytest.raises(ValueError, match="distinct vertices"):
            Hypergraph(4, 3, ((0, 1),))

    def test_rejects_repeated_vertex(self):
        with pytest.raises(ValueError, match="distinct vertices"):
            Hypergraph(4, 3, ((0, 1, 1),))

    def test_rejects_duplicate_edge(self):
        with pytest.raises(ValueError, match="duplicate"):
            Hypergraph(4, 3, ((0, 1, 2), (2, 1, 0)))

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError, match="range"):
            Hypergraph(3, 3, ((0, 1, 3),))

    def test_rejects_bad_uniformity(self):
        with pytest.raises(ValueError, match="2 <= r <= n"):
            Hypergraph(2, 3, ())


class TestDegrees:
    def test_construction_3_all_degrees_three(self):
        h = construction_3(6)
        for v in range(h.n):
            assert brute_degree(h, v) == 3
            assert degree(h, v) == 3

    def test_construction_1_nonshared_vertex(self):
        # Minimum degree of the sharpness construction is C(5,2) at n=11, r=3.
        h = construction_1(11, 3)
        assert min_degree(h) == comb(5, 2) == 10

    def test_complete_hypergraph_min_degree(self):
        assert min_degree(complete_hypergraph(5, 3)) == comb(4, 2) == 6

    def test_construction_1_even_min_degree(self):
        h = construction_1(12, 3)
        profile = degree_profile(h)
        assert profile.minimum == 10
        assert min(profile.degrees) == profile.minimum

    def test_degree_out_of_range(self):
        h = Hypergraph(3, 3, ((0, 1, 2),))
        with pytest.raises(ValueError, match="range"):
            degree(h, 3)

    @given(hypergraphs)
    @settings(max_examples=60, deadline=None)
    def test_handshake(self, h):
        profile = degree_profile(h)
        assert sum(profile.degrees) == h.r * len(h.edges)


class TestTwoShadow:
    def test_single_edge_is_triangle(self):
        g = two_shadow(Hypergraph(3, 3, ((0, 1, 2),)))
        assert sorted(g.edges()) == [(0, 1), (0, 2), (1, 2)]

    def test_construction_1_two_cliques(self):
        g = two_shadow(construction_1(11, 3))
        # Shadow of a hypergraph clique is a graph clique; oracle: pairwise scan.
        first, second = set(range(6)), set(range(5, 11))
        for u, v in itertools.combinations(range(11), 2):
            expected = {u, v} <= first or {u, v} <= second
            assert g.has_edge(u, v) == expected

    def test_construction_3_neighborhoods(self):
        k = 6
        g = two_shadow(construction_3(k))
        n = 2 * k
        for i in range(n):
            expected = {(i + d) % n for d in (1, -1, k - 1, 1 - k, k, -k)}
            assert set(g.neighbors(i)) == expected

    @given(hypergraphs)
    @settings(max_examples=60, deadline=None)
    def test_shadow_edge_bound(self, h):
        g = two_shadow(h)
        bound = len(h.edges) * comb(h.r, 2)
        assert g.edge_count <= bound
        pair_lists = h.pair_edges.values()
        no_sharing = all(len(ids) == 1 for ids in pair_lists)
        assert (g.edge_count == bound) == no_sharing

    @given(hypergraphs, st.data())
    @settings(max_examples=60, deadline=None)
    def test_shadow_monotone_under_subsets(self, h, data):
        if not h.edges:
            return
        keep = data.draw(
            st.lists(st.sampled_from(range(len(h.edges))), unique=True, min_size=1)
        )
        sub = Hypergraph(h.n, h.r, tuple(h.edges[i] for i in keep))
        g_full, g_sub = two_shadow(h), two_shadow(sub)
        for v in range(h.n):
            assert g_sub.adj[v] & ~g_full.adj[v] == 0


class TestTextFormat:
    def test_parse_basic(self):
        h = parse_hypergraph("3 2\ne 0 1\ne 1 2\n")
        assert h.n == 3 and h.r == 2
        assert h.edges == ((0, 1), (1, 2))

    def test_parse_comments_and_blanks(self):
        h = parse_hypergraph("# a path\n\n3 2\n# edges follow\ne 0 1\n")
        assert h.edges == ((0, 1),)

    def test_wrong_edge_size_names_line(self):
        with pytest.raises(ParseError, match="line 2.*size 2 != r=3"):
            parse_hypergraph("3 3\ne 0 1\n")

    def test_duplicate_edge_names_line(self):
        with pytest.raises(ParseError, match="line 3.*duplicate"):
            parse_hypergraph("4 3\ne 0 1 2\ne 2 1 0\n")

    def test_missing_header(self):
        with pytest.raises(ParseError, match="header"):
            parse_hypergraph("# nothing\n")

    def test_bad_vertex(self):
        with pytest.raises(ParseError, match="line 2"):
            parse_hypergraph("3 2\ne 0 x\n")

    def test_serialize_is_canonical(self):
        h = Hypergraph(4, 3, ((1, 2, 3), (0, 1, 2)))
        assert serialize_hypergraph(h) == "4 3\ne 0 1 2\ne 1 2 3\n"

    @given(hypergraphs)
    @settings(max_examples=80, deadline=None)
    def test_round_trip(self, h):
        assert parse_hypergraph(serialize_hypergraph(h)) == h

    def test_round_trip_canonicalizes_text(self):
        messy = "4 3\ne 3 2 1\ne 0 2 1\n"
        canon = serialize_hypergraph(parse_hypergraph(messy))
        assert canon == "4 3\ne 0 1 2\ne 1 2 3\n"
        assert serialize_hypergraph(parse_hypergraph(canon)) == canon
