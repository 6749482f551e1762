from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ccczagreb.ccc import (
    CliqueDecomposition,
    GraphError,
    SimpleGraph,
    ccc_graph,
    ccc_graph_all_pairs,
    detect_clique_union,
    export_dot,
    graph_from_decomposition,
    parse_decomposition,
    parse_graph_expr,
)
from ccczagreb.group import conjugacy_data, cyclic_group

from conftest import group, small_corpus

decompositions = st.lists(st.tuples(st.integers(1, 4), st.integers(1, 7)), min_size=1, max_size=5).map(
    CliqueDecomposition.of
)


def naive_ccc_edges(G) -> set[frozenset[int]]:
    data = conjugacy_data(G)
    verts = data.noncentral()
    mul = G.mul.tolist()
    edges = set()
    for i, c in enumerate(verts):
        for j, d in enumerate(verts[:i]):
            if any(mul[x][y] == mul[y][x] for x in data.classes[c].members for y in data.classes[d].members):
                edges.add(frozenset((i, j)))
    return edges


@pytest.mark.parametrize("sel", small_corpus(48)[::2])
def test_fixed_representative_matches_naive_definition(sel):
    G = group(sel)
    g = ccc_graph(G)
    assert {frozenset(e) for e in g.edges()} == naive_ccc_edges(G)
    assert g == ccc_graph_all_pairs(G)


@pytest.mark.parametrize(
    "sel, expected",
    [("dihedral:6", "2K2"), ("dihedral:12", "K5 + 2K1"), ("dicyclic:2", "3K1"), ("semidihedral:3", "2K4"),
     ("v8m:2", "3K2"), ("unm:2,3", "2K2"), ("frobenius:7,3", "2K2"), ("a4", "K2 + K1")],
)
def test_known_decompositions(sel, expected):
    assert str(detect_clique_union(ccc_graph(group(sel)))) == expected


def test_abelian_group_has_empty_graph():
    g = ccc_graph(cyclic_group(6))
    assert g.num_vertices == 0
    assert detect_clique_union(g) == CliqueDecomposition(())
    assert str(detect_clique_union(g)) == "empty"


def test_vertex_labels_are_words():
    assert ccc_graph(group("dihedral:6")).labels == ("a", "a^2", "b", "ab")


@settings(max_examples=500)
@given(decompositions, st.randoms(use_true_random=False))
def test_detect_recovers_shuffled_clique_unions(d, rnd):
    g = graph_from_decomposition(d)
    perm = list(range(g.num_vertices))
    rnd.shuffle(perm)
    A = g.adjacency[np.ix_(perm, perm)]
    shuffled = SimpleGraph(tuple(g.labels[i] for i in perm), A)
    got = detect_clique_union(shuffled)
    assert got == d
    assert got.num_vertices == g.num_vertices and got.num_edges == g.num_edges


@given(decompositions, st.data())
def test_bridging_two_cliques_breaks_the_union(d, data):
    g = graph_from_decomposition(d)
    sizes = [m for l, m in d.parts for _ in range(l)]
    if len(sizes) < 2 or sum(sorted(sizes)[-2:]) <= 2:
        return
    starts = np.cumsum([0] + sizes)
    i = data.draw(st.integers(0, len(sizes) - 1))
    j = data.draw(st.integers(0, len(sizes) - 1).filter(lambda j: j != i and sizes[i] + sizes[j] > 2))
    A = g.adjacency.copy()
    A[starts[i], starts[j]] = A[starts[j], starts[i]] = True
    assert detect_clique_union(SimpleGraph(g.labels, A)) is None


@pytest.mark.parametrize("expr", ["P:3", "C:4", "star:2", "star:5+K:3", "C:5+K:2"])
def test_non_clique_unions(expr):
    assert detect_clique_union(parse_graph_expr(expr)) is None


def test_graph_expressions():
    g = parse_graph_expr("star:5+K:3")
    assert (g.num_vertices, g.num_edges) == (9, 8)
    assert sorted(g.degrees()) == [1, 1, 1, 1, 1, 2, 2, 2, 5]
    assert detect_clique_union(parse_graph_expr("K:4+K:4+E:2")) == CliqueDecomposition(((2, 4), (2, 1)))
    for bad in ["K3", "Q:3", "C:2", "K:0", ""]:
        with pytest.raises(GraphError):
            parse_graph_expr(bad)


def test_decomposition_syntax_and_canonical_form():
    d = parse_decomposition("K1 + 2K4 + K4 + K_{1}")
    assert d.parts == ((3, 4), (2, 1))
    assert str(d) == "3K4 + 2K1"
    assert (d.num_vertices, d.num_edges) == (14, 18)
    with pytest.raises(GraphError):
        parse_decomposition("K1,5-star-union-K3")
    with pytest.raises(GraphError):
        CliqueDecomposition(((1, 1), (1, 4)))


def test_simple_graph_validation():
    with pytest.raises(GraphError):
        SimpleGraph(("a",), np.array([[True]]))
    with pytest.raises(GraphError):
        SimpleGraph(("a", "b"), np.array([[False, True], [False, False]]))
    with pytest.raises(GraphError):
        SimpleGraph.from_edges(["a"], [(0, 0)])


def test_json_round_trip_and_dot():
    g = ccc_graph(group("dihedral:12"))
    assert SimpleGraph.from_json(g.to_json()) == g
    dot = export_dot(g, "D24")
    assert dot == export_dot(ccc_graph(group("dihedral:12")), "D24")
    assert dot.startswith("graph D24 {") and dot.count(" -- ") == g.num_edges
    assert 'label="a\\"b"' in export_dot(SimpleGraph.from_edges(['a"b'], []), "x")
