import math

import pytest

from fillinlab.chordal import is_chordal, is_split
from fillinlab.errors import GraphInputError, ResourceLimitError
from fillinlab.graph import Graph
from fillinlab.reduction import (
    Coloring,
    brooks_coloring,
    decision_equivalence_check,
    full_vertices,
    load_instance,
    reduce_colored,
    reduce_primitive,
    save_instance,
    split_completion,
    strip_clique_components,
    verify_sandwich,
)
from fillinlab.solvers import (
    exact_fillin_ordering_oracle,
    exact_vertex_cover,
    greedy_minfill_heuristic,
)

from .conftest import random_graph
from .oracles import edge_set, min_vertex_cover_brute


@pytest.fixture(scope="module")
def k2_instance():
    return reduce_primitive(Graph.build(2, [(0, 1)]))


class TestPrimitive:
    def test_k2_shape(self, k2_instance):
        inst = k2_instance
        assert inst.graph.n == 10  # n^3 + n
        assert inst.block_deficit == 4
        assert [len(b) for b in inst.blocks] == [4, 4]
        # U is a clique of 8
        for u in range(2, 10):
            for v in range(u + 1, 10):
                assert inst.graph.has_edge(u, v)
        # each original vertex misses exactly its own block
        for v in (0, 1):
            for u in inst.blocks[v]:
                assert not inst.graph.has_edge(v, int(u))
            for u in inst.blocks[1 - v]:
                assert inst.graph.has_edge(v, int(u))

    def test_vertex_count_formula(self, rng):
        for n in (1, 3, 4):
            g = random_graph(rng, n)
            inst = reduce_primitive(g)
            assert inst.graph.n == n**3 + n

    def test_k2_oracle_window(self, k2_instance):
        phi = len(exact_fillin_ordering_oracle(k2_instance.graph))
        assert phi == 4  # tau * n^2 = 1 * 4, and 4 < (1+1)*4
        tau = exact_vertex_cover(k2_instance.original).size
        assert tau * 4 <= phi < (tau + 1) * 4

    def test_edgeless_gadget_is_split(self):
        inst = reduce_primitive(Graph.build(2))
        assert is_split(inst.graph)[0] and is_chordal(inst.graph)[0]
        assert exact_fillin_ordering_oracle(inst.graph) == frozenset()

    def test_guardrail(self):
        with pytest.raises(ResourceLimitError, match="41"):
            reduce_primitive(Graph.build(41), max_n=40)

    def test_empty_graph_rejected(self):
        with pytest.raises(GraphInputError):
            reduce_primitive(Graph.build(0))

    def test_original_embeds_induced(self, rng):
        g = random_graph(rng, 4)
        inst = reduce_primitive(g)
        sub, _ = inst.graph.induced_subgraph(range(4))
        assert sub == g


class TestBrooks:
    def test_petersen(self, graphs):
        col = brooks_coloring(graphs["petersen"], 3)
        assert col.q <= 3 and not col.used_fallback
        assert col.monochromatic_edge(graphs["petersen"]) is None

    def test_even_cycle_two_colors(self, graphs):
        col = brooks_coloring(graphs["c6"], 3)
        assert col.q <= 3
        assert col.monochromatic_edge(graphs["c6"]) is None

    def test_k4_rejected(self, graphs):
        with pytest.raises(GraphInputError, match="strip"):
            brooks_coloring(graphs["k4"], 3)

    def test_degree_bound_enforced(self, graphs):
        with pytest.raises(GraphInputError, match="degree"):
            brooks_coloring(graphs["star5"], 3)

    def test_d_below_three_rejected(self, graphs):
        with pytest.raises(GraphInputError):
            brooks_coloring(graphs["c4"], 2)

    def test_regular_components(self, rng):
        from fillinlab.generate import random_regular

        for seed in range(8):
            g = random_regular(10, 3, seed)
            if g.m == 0:
                continue
            from fillinlab.reduction import find_forbidden_clique

            if find_forbidden_clique(g, 3) is not None:
                continue
            col = brooks_coloring(g, 3)
            assert col.q <= 3 and col.monochromatic_edge(g) is None


class TestColored:
    def test_prism_24_vertices(self, graphs):
        col = brooks_coloring(graphs["prism"], 3)
        assert col.q == 3
        inst = reduce_colored(graphs["prism"], 1, col)
        assert inst.graph.n == (1 * 3 + 1) * 6  # 24
        assert inst.block_deficit == 6

    def test_unused_color_block_sees_everyone(self):
        k33 = Graph.build(6, [(i, j) for i in range(3) for j in range(3, 6)])
        col = Coloring(colors=(0, 0, 0, 1, 1, 1), q=3)
        inst = reduce_colored(k33, 1, col)
        for u in inst.blocks[2]:
            for v in range(6):
                assert inst.graph.has_edge(int(u), v)

    def test_improper_coloring_rejected(self, graphs):
        bad = Coloring(colors=(0, 0, 1, 1, 2, 2), q=3)
        with pytest.raises(GraphInputError, match="monochromatic"):
            reduce_colored(graphs["prism"], 1, bad)

    def test_cell_guardrail(self, graphs):
        col = brooks_coloring(graphs["prism"], 3)
        with pytest.raises(ResourceLimitError):
            reduce_colored(graphs["prism"], 10**6, col)

    def test_edgeless_split(self):
        g = Graph.build(3)
        inst = reduce_colored(g, 1, Coloring(colors=(0, 0, 0), q=1))
        assert is_split(inst.graph)[0]


class TestSplitCompletion:
    def test_k2_single_cover(self, k2_instance):
        fill = split_completion(k2_instance, {0})
        assert len(fill) == 4  # 1*4 + 0 - 0

    def test_empty_cover_edgeless(self):
        inst = reduce_primitive(Graph.build(2))
        assert split_completion(inst, set()) == frozenset()

    def test_size_formula(self, rng):
        for _ in range(15):
            g = random_graph(rng, int(rng.integers(2, 5)))
            inst = reduce_primitive(g)
            cover = exact_vertex_cover(g).vertices
            fill = split_completion(inst, cover)
            inside = math.comb(len(cover), 2) - len(
                g.induced_subgraph(cover)[0].edge_list()
            )
            assert len(fill) == len(cover) * inst.block_deficit + inside

    def test_colored_split_bound(self, graphs):
        col = brooks_coloring(graphs["prism"], 3)
        inst = reduce_colored(graphs["prism"], 1, col)
        tau_res = exact_vertex_cover(graphs["prism"])
        fill = split_completion(inst, tau_res.vertices)
        tau = tau_res.size
        assert len(fill) <= 1 * 6 * tau + math.comb(tau, 2)

    def test_non_cover_rejected(self, k2_instance):
        with pytest.raises(GraphInputError, match=r"\(0, 1\) is uncovered"):
            split_completion(k2_instance, set())

    def test_result_makes_split_chordal(self, rng):
        g = random_graph(rng, 4)
        inst = reduce_primitive(g)
        fill = split_completion(inst, exact_vertex_cover(g).vertices)
        done = inst.graph.add_edges(fill)
        assert is_split(done)[0] and is_chordal(done)[0]


class TestFullVertices:
    def test_everything_full(self, k2_instance):
        inst = k2_instance
        fill = set(inst.missing_pairs(0)) | set(inst.missing_pairs(1))
        assert full_vertices(inst, fill) == {0, 1}

    def test_roundtrip_primitive(self, rng):
        for _ in range(15):
            g = random_graph(rng, int(rng.integers(2, 5)))
            inst = reduce_primitive(g)
            cover = set(exact_vertex_cover(g).vertices)
            # grow to an arbitrary (non-minimum) cover too
            extra = cover | {int(v) for v in rng.choice(g.n, size=1)}
            for c in (cover, extra):
                assert full_vertices(inst, split_completion(inst, c)) == c

    def test_roundtrip_colored(self, rng):
        from fillinlab.generate import random_subcubic

        for _ in range(10):
            g = random_subcubic(8, rng)
            if g.m == 0 or g.n == 0:
                continue
            col = brooks_coloring(g, 3)
            inst = reduce_colored(g, 2, col)
            cover = set(exact_vertex_cover(g).vertices)
            assert full_vertices(inst, split_completion(inst, cover)) == cover

    def test_empty_fill_empty_cover(self):
        inst = reduce_primitive(Graph.build(2))
        assert full_vertices(inst, frozenset()) == frozenset()

    def test_invalid_fill_rejected(self, k2_instance):
        with pytest.raises(GraphInputError, match="invalid fill-in"):
            full_vertices(k2_instance, {(0, 1)})  # already an edge

    def test_accounting_inequality(self, rng):
        from fillinlab.chordal import elimination_fill

        g = random_graph(rng, 4)
        inst = reduce_primitive(g)
        for _ in range(10):
            fill = elimination_fill(inst.graph, rng.permutation(inst.graph.n))
            full = full_vertices(inst, fill)
            assert len(fill) >= inst.block_deficit * len(full)


class TestVerifySandwich:
    def test_k2(self, rng):
        rep = verify_sandwich(Graph.build(2, [(0, 1)]), rng=rng)
        assert rep.passed
        assert rep.outputs["phi_gadget"] == 4
        assert rep.outputs["tau"] == 1

    def test_edgeless(self, rng):
        rep = verify_sandwich(Graph.build(2), rng=rng)
        assert rep.passed and rep.outputs["phi_gadget"] == 0

    def test_p3_window(self, graphs, rng):
        rep = verify_sandwich(graphs["p3"], rng=rng)
        assert rep.passed
        assert rep.outputs["tau"] == 1
        assert rep.outputs["constructive_upper_bound"] == 9  # 1*9 + 0 - 0 < 18

    def test_random_instances(self, rng):
        for n in (2, 3, 4):
            g = random_graph(rng, n)
            assert verify_sandwich(g, rng=rng).passed

    def test_colored_instance_rejected(self, graphs):
        col = brooks_coloring(graphs["prism"], 3)
        inst = reduce_colored(graphs["prism"], 1, col)
        with pytest.raises(GraphInputError):
            verify_sandwich(graphs["prism"], inst)


class TestDecisionEquivalence:
    def test_k2_c1_constructive(self, k2_instance):
        fill = split_completion(k2_instance, {0})
        rep = decision_equivalence_check(
            k2_instance.original, 1, fill, k2_instance
        )
        assert rep.passed  # 4 <= 2*4-1 = 7 and extracted cover of size 1 <= 1

    def test_k2_c0_heuristics_exceed(self, k2_instance):
        for strategy in ("min-degree", "min-fill"):
            fill = greedy_minfill_heuristic(k2_instance.graph, strategy)
            rep = decision_equivalence_check(
                k2_instance.original, 0, fill, k2_instance
            )
            assert rep.passed
            assert len(fill) > 3  # (0+1)*4 - 1

    def test_edgeless_c0(self):
        g = Graph.build(2)
        inst = reduce_primitive(g)
        rep = decision_equivalence_check(g, 0, frozenset(), inst)
        assert rep.passed

    def test_random_pairs(self, rng):
        for _ in range(10):
            n = int(rng.integers(2, 5))
            g = random_graph(rng, n)
            inst = reduce_primitive(g)
            c = int(rng.integers(0, n + 1))
            fill = greedy_minfill_heuristic(inst.graph, "min-degree")
            assert decision_equivalence_check(g, c, fill, inst).passed


class TestStripCliqueComponents:
    def test_k4_plus_edge(self):
        g = Graph.build(
            6, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 5)]
        )
        stripped, mapping, forced = strip_clique_components(g, 3)
        assert sorted(forced) == [0, 1, 2]
        assert stripped.n == 2 and stripped.m == 1
        assert list(mapping) == [4, 5]

    def test_no_clique_components(self, graphs):
        stripped, mapping, forced = strip_clique_components(graphs["c5"], 3)
        assert forced == [] and stripped == graphs["c5"]

    def test_forced_plus_rest_is_optimal(self):
        g = Graph.build(
            7, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 5), (5, 6)]
        )
        stripped, mapping, forced = strip_clique_components(g, 3)
        rest = exact_vertex_cover(stripped).size
        assert len(forced) + rest == min_vertex_cover_brute(7, edge_set(g))


from hypothesis import given, settings
from hypothesis import strategies as st


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_roundtrip_property_primitive(data):
    n = data.draw(st.integers(1, 4))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = data.draw(st.sets(st.sampled_from(pairs))) if pairs else set()
    g = Graph.build(n, edges)
    inst = reduce_primitive(g)
    # any superset of a minimum cover is a cover; the map must invert exactly
    base = set(exact_vertex_cover(g).vertices)
    extra = data.draw(st.sets(st.integers(0, n - 1)))
    cover = base | extra
    assert full_vertices(inst, split_completion(inst, cover)) == cover


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_block_accounting_property(data):
    n = data.draw(st.integers(2, 4))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = data.draw(st.sets(st.sampled_from(pairs)))
    g = Graph.build(n, edges)
    inst = reduce_primitive(g)
    order = data.draw(st.permutations(range(inst.graph.n)))
    from fillinlab.chordal import elimination_fill

    fill = elimination_fill(inst.graph, order)
    full = full_vertices(inst, fill, check_fillin=False)
    assert len(fill) >= inst.block_deficit * len(full)
    assert is_vertex_cover_safe(inst.original, full)


def is_vertex_cover_safe(graph, cover):
    cover = set(cover)
    return all(u in cover or v in cover for u, v in graph.iter_edges())


class TestSerialization:
    def test_roundtrip_primitive(self, tmp_path, k2_instance):
        path = tmp_path / "inst.col"
        save_instance(k2_instance, path)
        loaded = load_instance(path)
        assert loaded.graph == k2_instance.graph
        assert loaded.kind == "primitive"
        assert [list(b) for b in loaded.blocks] == [
            list(b) for b in k2_instance.blocks
        ]
        assert loaded.original == k2_instance.original

    def test_roundtrip_colored(self, tmp_path, graphs):
        col = brooks_coloring(graphs["prism"], 3)
        inst = reduce_colored(graphs["prism"], 2, col)
        path = tmp_path / "colored.col"
        save_instance(inst, path)
        loaded = load_instance(path)
        assert loaded.graph == inst.graph
        assert loaded.b == 2 and loaded.q == col.q
        assert loaded.coloring.colors == col.colors
