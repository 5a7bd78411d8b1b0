import random

import pytest

from pathlabel import (
    ConditionError,
    ContractError,
    Graph,
    OracleBudget,
    PathCovering,
    ShapeError,
    complete_graph,
    cycle_graph,
    enumerate_trees,
    expand_tree,
    formula_bounds,
    is_2_sparse,
    is_general_2_sparse,
    oracle_path_cover,
    path_graph,
    random_tree,
    spider,
    theorem7_path_cover,
    theorem12_path_cover,
    theorem13_path_cover,
    tree_path_cover,
    vines,
)
from pathlabel.pathcover import max_forest_matching, theorem12_cover


def double_star():
    return Graph.from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])


def caterpillar():
    # u=0 with leaves 2,3; v=1 with leaf 4 and heavy neighbour w=5; w with leaves 6,7
    return Graph.from_edges(8, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (5, 6), (5, 7)])


def triangle_with_leaves():
    edges = [(0, 1), (1, 2), (0, 2)]
    edges += [(c, 3 + 3 * c + i) for c in range(3) for i in range(3)]
    return Graph.from_edges(12, edges)


def test_path_covers_itself():
    p, cov = tree_path_cover(path_graph(7))
    assert p == 1
    assert cov.paths in (((0, 1, 2, 3, 4, 5, 6),), ((6, 5, 4, 3, 2, 1, 0),))


def test_star_needs_two_paths():
    p, cov = tree_path_cover(spider([1, 1, 1]))
    assert p == 2
    assert cov.sequence == (1, 3)


def test_caterpillar():
    p, cov = tree_path_cover(caterpillar())
    assert p == 3
    cov.validate(caterpillar())


@pytest.mark.parametrize("n", [1, 2])
def test_tiny_trees(n):
    assert tree_path_cover(path_graph(n))[0] == 1


def test_non_tree_rejected():
    with pytest.raises(ShapeError):
        tree_path_cover(cycle_graph(4))


def test_large_tree_is_fast():
    t = random_tree(100_000, random.Random(5))
    p, cov = tree_path_cover(t)
    assert len(cov.paths) == p
    cov.validate(t)


def test_bounds_examples():
    assert formula_bounds(spider([1, 1, 1])) == (2, 2)
    assert formula_bounds(double_star()) == (2, 3)
    assert formula_bounds(path_graph(2)) == (1, 1)
    with pytest.raises(ShapeError):
        formula_bounds(path_graph(1))


def test_theorem7_examples():
    p, d = theorem7_path_cover(double_star())
    assert p == 2 and (d.l, d.h, d.s, d.t) == (4, 1, 0, 0)
    p, d = theorem7_path_cover(caterpillar())
    assert p == 3 and (d.l, d.h, d.s, d.t) == (5, 2, 1, 0)


def test_theorem7_two_adjacent_vertices_with_one_leaf_and_a_two_path():
    # both heavy vertices see two light neighbours here, so S is empty
    t = Graph.from_edges(8, [(0, 1), (0, 2), (0, 3), (3, 4), (1, 5), (1, 6), (6, 7)])
    p, d = theorem7_path_cover(t)
    assert (d.s, d.t) == (0, 0)
    assert p == 2 == oracle_path_cover(t).P


def test_theorem7_with_a_matched_pair():
    # 0 and 1 each have one leaf and one further heavy neighbour, so S={0,1} and t=1
    t = Graph.from_edges(10, [(0, 1), (0, 2), (0, 3), (3, 4), (3, 5),
                              (1, 6), (1, 7), (7, 8), (7, 9)])
    p, d = theorem7_path_cover(t)
    assert (d.l, d.h, d.s, d.t) == (6, 3, 2, 1)
    assert p == 3 == oracle_path_cover(t).P


def test_theorem7_condition_names_the_vertex():
    # vertex 0 has three heavy neighbours and no light one
    edges = [(0, 1), (0, 2), (0, 3)]
    nxt = 4
    for c in (1, 2, 3):
        edges += [(c, nxt), (c, nxt + 1)]
        nxt += 2
    t = Graph.from_edges(nxt, edges)
    with pytest.raises(ConditionError) as err:
        theorem7_path_cover(t)
    assert err.value.witness == 0


def test_forest_matching_is_maximum():
    g = path_graph(5)
    assert max_forest_matching(g, range(5)) == 2
    assert max_forest_matching(spider([1, 1, 1]), range(4)) == 1
    assert max_forest_matching(g, [0, 2, 4]) == 0


def test_sparse_predicates():
    assert is_2_sparse(spider([2, 3, 1])) and is_general_2_sparse(spider([2, 3, 1]))
    assert not is_2_sparse(double_star())
    assert is_general_2_sparse(double_star())


def test_theorem12_triangle_with_leaves():
    g = triangle_with_leaves()
    assert theorem12_path_cover(g) == 6
    cov = theorem12_cover(g)
    cov.validate(g)
    assert len(cov.paths) == 6


def test_theorem12_on_a_path_and_a_cycle():
    assert theorem12_path_cover(path_graph(5)) == 1
    with pytest.raises(ConditionError):
        theorem12_path_cover(cycle_graph(6))
    with pytest.raises(ConditionError):
        theorem12_path_cover(Graph.from_edges(4, [(0, 1), (2, 3)]))


def test_theorem12_reduces_to_sparse_formula():
    # a 2-sparse non-tree: a 6-cycle with three pendant leaves on one vertex
    g = Graph.from_edges(9, [(i, (i + 1) % 6) for i in range(6)] + [(0, 6), (0, 7), (0, 8)])
    assert is_2_sparse(g)
    assert theorem12_path_cover(g) == 3 + g.m - g.n == oracle_path_cover(g).P


def test_expansion_of_p3():
    g = expand_tree(path_graph(3), [3, 4])
    # one triangle and one K4 sharing the middle vertex
    assert (g.n, g.m) == (6, 9)
    p, cov = theorem13_path_cover(path_graph(3), [3, 4])
    assert p == 1
    cov.validate(g)


def test_expansion_identities():
    t = spider([2, 1, 1])
    assert expand_tree(t, [2] * t.m) == t
    assert expand_tree(path_graph(2), [5]) == complete_graph(5)
    with pytest.raises(ConditionError):
        expand_tree(path_graph(2), [1])


def test_theorem13_examples():
    t = spider([1, 1, 1])
    p, cov = theorem13_path_cover(t, [3, 3, 3])
    assert p == 2 == oracle_path_cover(expand_tree(t, [3, 3, 3])).P
    assert theorem13_path_cover(spider([1, 1, 1, 1]), [2, 2, 2, 2])[0] == 3
    with pytest.raises(ConditionError):
        theorem13_path_cover(double_star(), [2] * 5)


def test_theorem13_accepts_orders_by_edge():
    t = path_graph(3)
    p, cov = theorem13_path_cover(t, {(0, 1): 3, (1, 2): 4})
    assert p == 1
    with pytest.raises(ConditionError):
        theorem13_path_cover(t, {(0, 1): 3})


def test_covering_validation_errors():
    g = path_graph(3)
    with pytest.raises(ContractError):
        PathCovering(((0, 2), (1,)), 3).validate(g)
    with pytest.raises(ContractError):
        PathCovering(((0, 1),), 3).validate(g)
    with pytest.raises(ContractError):
        PathCovering(((0, 1), (1, 2)), 3).validate(g)


def _minimum_coverings(t):
    return oracle_path_cover(t, OracleBudget(max_coverings=100_000)).coverings


def _small_trees():
    for n in range(4, 8):
        yield from enumerate_trees(n)
    rng = random.Random(11)
    for n in range(8, 11):
        for _ in range(40):
            yield random_tree(n, rng)


def test_vines_are_subpaths_of_every_minimum_covering():
    for t in _small_trees():
        if t.n < 4 or max(t.degrees) <= 2:
            continue
        vs = vines(t)
        for cov in _minimum_coverings(t):
            where = {x: (i, j) for i, p in enumerate(cov.paths) for j, x in enumerate(p)}
            for vine in vs:
                spots = sorted(where[x] for x in vine.vertices)
                assert len({i for i, _ in spots}) == 1
                js = [j for _, j in spots]
                assert js == list(range(js[0], js[0] + len(js)))


def test_shared_vine_center_is_interior():
    for t in _small_trees():
        if t.n < 4 or max(t.degrees) <= 2:
            continue
        centers = [v.center for v in vines(t)]
        shared = {c for c in centers if centers.count(c) >= 2}
        for cov in _minimum_coverings(t):
            ends = {p[0] for p in cov.paths} | {p[-1] for p in cov.paths}
            assert not shared & ends
