import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_canonical, labeled_connected_class_count, lapack_eigs
from penergy.canon import automorphism_generators, canonical_form, canonical_graph, canonical_labeling
from penergy.enumeration import (
    all_graphs,
    connected_graphs,
    dominating_vertex_graphs,
    enumerate_connected,
    expand,
    graph6_level,
)
from penergy.graphs import (
    Graph,
    add_dominating_vertex,
    adjacency,
    adjacency_array,
    clique_deletion_vertices,
    closed_form_spectrum,
    complement,
    components,
    family,
    family_matrix,
    graph6_decode,
    graph6_encode,
    has_dominating_vertex,
    induced_subgraph,
    is_complete,
    is_connected,
    is_disjoint_union_of_cliques,
    parse_family,
    read_graph6_lines,
    relabel,
    structural_predicates,
)

CONNECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853}
ALL_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044}


@st.composite
def graphs(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, mask) if keep])


class TestGraph:
    def test_validation(self):
        with pytest.raises(ValueError):
            Graph(2, (0b10, 0))
        with pytest.raises(ValueError):
            Graph(1, (1,))
        with pytest.raises(ValueError):
            Graph(0, ())
        with pytest.raises(ValueError):
            Graph.from_edges(3, [(1, 1)])

    def test_accessors(self):
        g = family("path", 4)
        assert g.edges() == [(0, 1), (1, 2), (2, 3)]
        assert g.m == 3
        assert g.degrees() == [1, 2, 2, 1]
        assert g.neighbors(1) == [0, 2]
        assert g.has_edge(2, 1) and not g.has_edge(0, 2)

    def test_families(self):
        assert family("cycle", 5).degrees() == [2] * 5
        assert family("complete", 4).m == 6
        assert family("star", 5).degrees() == [4, 1, 1, 1, 1]
        assert family("edgeless", 3).m == 0
        with pytest.raises(ValueError):
            family("cycle", 2)
        with pytest.raises(ValueError):
            family("wheel", 5)

    def test_parse_family(self):
        assert parse_family("P7") == family("path", 7)
        assert parse_family("S4") == family("star", 5)
        assert parse_family(" K5 ") == family("complete", 5)
        for bad in ("X3", "P", "p3", "C2"):
            with pytest.raises(ValueError):
                parse_family(bad)


class TestClosedForms:
    @pytest.mark.parametrize("kind", ["path", "cycle", "complete", "star"])
    @pytest.mark.parametrize("n", [3, 5, 12, 40])
    def test_against_lapack(self, kind, n):
        expected = lapack_eigs(adjacency_array(family(kind, n)))
        np.testing.assert_allclose(closed_form_spectrum(kind, n).values, expected, atol=1e-10)


    @pytest.mark.parametrize("kind", ["path", "cycle", "complete", "star", "edgeless"])
    def test_dense_family_matches_bitset_graph(self, kind):
        assert family_matrix(kind, 9) == adjacency(family(kind, 9))

    def test_dense_family_beyond_bitset_cap(self):
        m = family_matrix("cycle", 200)
        assert m.n == 200 and m.entries.sum() == 400
        with pytest.raises(ValueError):
            family_matrix("cycle", 2)


class TestStructure:
    def test_components(self):
        g = Graph.from_edges(5, [(0, 1), (3, 4)])
        assert components(g) == [0b11, 0b100, 0b11000]
        assert not is_connected(g)
        assert is_disjoint_union_of_cliques(g)
        assert is_connected(family("path", 5))

    def test_clique_deletion(self):
        # paw: triangle 1-2-3 with pendant 0 on 3
        paw = Graph.from_edges(4, [(0, 3), (1, 2), (1, 3), (2, 3)])
        assert clique_deletion_vertices(paw) == {0: 1, 3: 2}
        assert clique_deletion_vertices(family("star", 4)) == {0: 3}
        assert clique_deletion_vertices(family("complete", 3)) == {0: 1, 1: 1, 2: 1}

    def test_predicates(self):
        s = structural_predicates(family("star", 4))
        assert s.connected and not s.complete
        assert s.dominating_vertices == frozenset({0})
        assert not s.is_disjoint_union_of_cliques
        assert structural_predicates(family("complete", 3)).complete
        assert is_complete(family("complete", 1))
        assert has_dominating_vertex(family("star", 3))
        assert not has_dominating_vertex(family("cycle", 5))

    def test_operations(self):
        p4 = family("path", 4)
        assert induced_subgraph(p4, [0, 1, 2]) == family("path", 3)
        assert relabel(p4, [3, 2, 1, 0]) == p4
        assert complement(family("complete", 4)) == family("edgeless", 4)
        assert add_dominating_vertex(family("edgeless", 3)) == relabel(family("star", 4), [1, 2, 3, 0])


class TestGraph6:
    def test_anchors(self):
        assert graph6_encode(family("complete", 3)) == "Bw"
        assert graph6_encode(family("path", 3)) == "Bg"
        assert graph6_encode(family("edgeless", 1)) == "@"
        assert graph6_encode(family("complete", 2)) == "A_"
        assert str(family("cycle", 4)) == graph6_encode(family("cycle", 4))

    def test_strict_decode(self):
        for bad in ("", "B", "Bww", "A`", "B\x7f", "~"):
            with pytest.raises(ValueError):
                graph6_decode(bad)

    def test_read_lines_skips_header_and_blanks(self):
        gs = read_graph6_lines(">>graph6<<\nBw\n\nBg\n")
        assert gs == [family("complete", 3), family("path", 3)]

    @settings(max_examples=200, deadline=None)
    @given(graphs(max_n=20))
    def test_round_trip(self, g):
        assert graph6_decode(graph6_encode(g)) == g


class TestCanon:
    @settings(max_examples=150, deadline=None)
    @given(graphs(min_n=4, max_n=6), graphs(min_n=4, max_n=6))
    def test_equal_forms_iff_isomorphic(self, g, h):
        if g.n != h.n:
            return
        same = brute_canonical(g.n, g.edges()) == brute_canonical(h.n, h.edges())
        assert (canonical_form(g) == canonical_form(h)) == same

    def test_equal_forms_iff_isomorphic_exhaustive_n5(self):
        pairs = list(itertools.combinations(range(5), 2))
        by_form, by_brute = {}, {}
        for mask in range(1 << len(pairs)):
            edges = [e for k, e in enumerate(pairs) if mask >> k & 1]
            by_form.setdefault(canonical_form(Graph.from_edges(5, edges)), set()).add(mask)
            by_brute.setdefault(brute_canonical(5, edges), set()).add(mask)
        assert sorted(map(sorted, by_form.values())) == sorted(map(sorted, by_brute.values()))

    def test_canonical_graph_is_fixed_point(self):
        for s in graph6_level(6):
            g = graph6_decode(s)
            assert canonical_graph(g) == g

    @settings(max_examples=100, deadline=None)
    @given(graphs(max_n=12), st.randoms(use_true_random=False))
    def test_invariant_under_relabeling(self, g, rnd):
        order = list(range(g.n))
        rnd.shuffle(order)
        assert canonical_form(relabel(g, order)) == canonical_form(g)

    def test_invariant_under_many_relabelings(self):
        rng = random.Random(11)
        corpus = [graph6_decode(s) for s in rng.sample(graph6_level(7), 10)]
        for g in corpus:
            form = canonical_form(g)
            for _ in range(1000):
                order = list(range(g.n))
                rng.shuffle(order)
                assert canonical_form(relabel(g, order)) == form

    def test_distinguishes_cospectral_pair(self):
        star = family("star", 5)
        c4_plus_k1 = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0)])
        np.testing.assert_allclose(lapack_eigs(adjacency_array(star)), lapack_eigs(adjacency_array(c4_plus_k1)),
                                   atol=1e-12)
        assert canonical_form(star) != canonical_form(c4_plus_k1)

    def test_labeling_is_permutation(self):
        g = family("cycle", 9)
        lab, _ = canonical_labeling(g)
        assert sorted(lab) == list(range(9))

    def test_automorphisms_of_cycle(self):
        g = family("cycle", 6)
        gens = automorphism_generators(g)
        assert gens
        for perm in gens:
            assert relabel(g, perm) == g

    def test_regular_graph_stress(self):
        # Petersen graph: vertex-transitive, refinement alone does nothing
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        g = Graph.from_edges(10, outer + spokes + inner)
        rng = random.Random(3)
        forms = set()
        for _ in range(5):
            order = list(range(10))
            rng.shuffle(order)
            forms.add(canonical_form(relabel(g, order)))
        assert len(forms) == 1


class TestEnumeration:
    @pytest.mark.parametrize("n", range(1, 8))
    def test_connected_counts(self, n):
        assert enumerate_connected(n) == CONNECTED_COUNTS[n]

    @pytest.mark.parametrize("n", range(1, 8))
    def test_all_counts(self, n):
        assert len(all_graphs(n)) == ALL_COUNTS[n]

    @pytest.mark.parametrize("n", range(1, 7))
    def test_against_labeled_oracle(self, n):
        assert labeled_connected_class_count(n, brute_canonical) == CONNECTED_COUNTS[n]

    @pytest.mark.parametrize("n", range(2, 8))
    def test_outputs_are_canonical_connected_and_distinct(self, n):
        gs = connected_graphs(n)
        assert all(is_connected(g) for g in gs)
        assert all(canonical_graph(g) == g for g in gs)
        assert len({canonical_form(g) for g in gs}) == len(gs)

    def test_level_is_sorted_and_stable(self):
        level = graph6_level(6)
        assert list(level) == sorted(level)
        assert graph6_level(6) is level

    def test_expand_children_have_parent(self):
        parent = canonical_graph(family("path", 4))
        for child in expand(parent):
            assert child.n == 5 and is_connected(child)

    def test_sink(self):
        seen = []
        assert enumerate_connected(4, seen.append) == 6
        assert len(seen) == 6

    def test_bounds(self):
        with pytest.raises(ValueError):
            graph6_level(0)
        with pytest.raises(ValueError):
            graph6_level(11)

    @pytest.mark.parametrize("n", range(2, 7))
    def test_dominating_vertex_graphs(self, n):
        expected = [g for g in connected_graphs(n) if has_dominating_vertex(g) and not is_complete(g)]
        got = dominating_vertex_graphs(n)
        assert sorted(graph6_encode(g) for g in got) == sorted(graph6_encode(g) for g in expected)

    def test_every_connected_class_reachable(self):
        # every connected 5-vertex graph on labeled edges lands in the enumerated set
        level = set(graph6_level(5))
        pairs = list(itertools.combinations(range(5), 2))
        for mask in range(1 << len(pairs)):
            g = Graph.from_edges(5, [e for k, e in enumerate(pairs) if mask >> k & 1])
            if is_connected(g):
                assert graph6_encode(canonical_graph(g)) in level
