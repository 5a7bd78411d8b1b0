import pytest

from pathlabel import (
    Graph,
    GraphParseError,
    ShapeError,
    classify,
    complement,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    disjoint_union,
    format_edge_list,
    parse_edge_list,
    parse_graph,
    parse_graph6,
    path_graph,
    spider,
    stats,
    to_dot,
    to_graph6,
    vines,
)


def double_star():
    # centers 0 and 1, two leaves each
    return Graph.from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])


def test_parse_path():
    g = parse_edge_list("0 1\n1 2")
    assert g == path_graph(3)


def test_parse_declared_isolated_vertices():
    g = parse_edge_list("n 2\n")
    assert g.n == 2 and g.m == 0


def test_parse_comments_and_blank_lines():
    g = parse_edge_list("# a triangle\n\n0 1\n1 2  # trailing\n0 2\n")
    assert g == cycle_graph(3)


@pytest.mark.parametrize("text, fragment", [
    ("0 0", "line 1"),
    ("0 1\n1 0", "line 2"),
    ("0 1\nfoo bar", "line 2"),
    ("0 1 2", "line 1"),
    ("0 -1", "line 1"),
])
def test_parse_errors_name_the_line(text, fragment):
    with pytest.raises(GraphParseError, match=fragment):
        parse_edge_list(text)


def test_edge_list_round_trip():
    g = disjoint_union(complete_graph(3), path_graph(2), Graph.from_edges(1, []))
    assert parse_edge_list(format_edge_list(g)) == g


def test_graph_rejects_asymmetric_adjacency():
    with pytest.raises(ValueError):
        Graph(2, ((1,), ()))


def test_complement_p4_is_p4():
    g = complement(path_graph(4))
    assert set(g.edges) == {(0, 2), (0, 3), (1, 3)}


def test_complement_bipartite_splits_into_cliques():
    g = complement(complete_bipartite(2, 3))
    assert g == disjoint_union(complete_graph(2), complete_graph(3))


def test_graph6_known_strings():
    assert to_graph6(complete_graph(2)) == "A_"
    assert to_graph6(Graph.from_edges(1, [])) == "@"
    assert parse_graph6("A_") == complete_graph(2)
    assert parse_graph6(">>graph6<<A_") == complete_graph(2)


def test_graph6_rejects_bad_input():
    with pytest.raises(GraphParseError):
        parse_graph6("A")
    with pytest.raises(GraphParseError):
        parse_graph6("A~")   # padding bits set


def test_parse_graph_auto_detects():
    g = complete_bipartite(2, 3)
    assert parse_graph(to_graph6(g) + "\n") == g
    assert parse_graph(format_edge_list(g)) == g


def test_stats_examples():
    st = stats(spider([1, 1, 1]))
    assert (st.leaves, st.heavy_edges) == (3, 0)
    st = stats(double_star())
    assert (st.leaves, st.heavy_edges) == (4, 1)
    assert st.heavy_vertices == (0, 1)
    st = stats(path_graph(5))
    assert (st.leaves, st.heavy_edges, st.m) == (2, 0, 4)


@pytest.mark.parametrize("g, shape", [
    (spider([4, 4, 4]), "generalized_star"),
    (spider([1, 1, 2]), "tree"),
    (cycle_graph(6), "cycle"),
    (path_graph(5), "path"),
    (Graph.from_edges(1, []), "path"),
    (spider([1, 1, 1, 1]), "star"),
    (disjoint_union(path_graph(2), path_graph(3)), "forest"),
    (complete_graph(4), "connected_other"),
    (disjoint_union(cycle_graph(3), path_graph(2)), "disconnected_other"),
])
def test_classify(g, shape):
    assert classify(g) == shape


def test_vines_of_star():
    vs = vines(spider([1, 1, 1]))
    assert [v.vertices for v in vs] == [(1,), (2,), (3,)]
    assert {v.center for v in vs} == {0}


def test_vines_of_spider_read_off_arms():
    vs = vines(spider([2, 2, 3]))
    assert sorted(len(v.vertices) for v in vs) == [2, 2, 3]


def test_vines_of_caterpillar():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (1, 4), (2, 5)])
    assert sorted(v.vertices for v in vines(g)) == [(0,), (3,), (4,), (5,)]


def test_vines_reject_paths_and_cycles():
    with pytest.raises(ShapeError):
        vines(path_graph(4))
    with pytest.raises(ShapeError):
        vines(cycle_graph(4))


def test_dot_marks_covering_edges():
    dot = to_dot(path_graph(3), labels=[0, 2, 4], paths=[(0, 1)])
    assert '0 [label="0:0"]' in dot
    assert "0 -- 1 [style=bold" in dot
    assert "1 -- 2;" in dot
