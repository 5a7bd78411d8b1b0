import json
import random

import pytest

from pathlabel import (
    ConstructionError,
    Graph,
    ResourceError,
    ShapeError,
    apply_type1,
    apply_type2,
    apply_type3,
    certify_F_membership,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    disjoint_union,
    duis,
    enumerate_trees,
    generate_F,
    make_labeled_generalized_star,
    make_labeled_path,
    path_graph,
    random_tree,
    replay_script,
    sequence_set,
    spider,
)
from pathlabel.islands import LabeledTree, script_from_json, script_to_json


def marks_by_depth(lt, center):
    dist = lt.tree.bfs_distances(center)
    out = {}
    for v, m in enumerate(lt.marks):
        out.setdefault(dist[v], set()).add(m)
    return out


def test_three_vine_star_marks():
    s = make_labeled_generalized_star(3, 4)
    assert s.tree == spider([4, 4, 4])
    assert marks_by_depth(s, 0) == {0: {"A"}, 1: {"B"}, 2: {"A"}, 3: {"A"}, 4: {"O"}}
    assert set(s.star_vines.values()) == {4}


def test_two_vine_star_is_a_nine_vertex_path():
    s = make_labeled_generalized_star(2, 4)
    assert s.tree.n == 9 and max(s.tree.degrees) == 2
    assert s.marks.count("B") == 2 and s.marks[0] == "A"


def test_single_vertex_vines_carry_no_b():
    s = make_labeled_generalized_star(3, 1)
    assert s.marks == ("A", "O", "O", "O")
    assert s.star_vines == {}


def test_labeled_paths():
    p = make_labeled_path(6)
    assert p.tree == path_graph(6)
    assert p.marks == ("O", "A", "A", "A", "A", "O")
    assert make_labeled_path(3).marks == ("O", "A", "O")
    with pytest.raises(ConstructionError):
        make_labeled_path(2)
    with pytest.raises(ConstructionError):
        make_labeled_generalized_star(1, 3)


def test_leaves_must_be_unmarked():
    with pytest.raises(ValueError):
        LabeledTree(path_graph(3), ("A", "A", "O"))


def test_type1_attaches_a_star_at_an_a_vertex():
    t = make_labeled_path(5)
    out = apply_type1(t, 3, make_labeled_generalized_star(3, 3))
    assert out.tree.n == 15
    assert out.tree.has_edge(3, 5)
    assert out.marks[:5] == t.marks
    assert duis(out.tree).unique
    assert len(sequence_set(out.tree)) == 1


def test_type2_attaches_a_path_through_an_inner_vertex():
    t = make_labeled_path(5)
    out = apply_type2(t, 3, make_labeled_path(5), 3)
    assert out.tree.has_edge(3, 8)
    assert duis(out.tree).unique
    with pytest.raises(ConstructionError):
        apply_type2(t, 3, make_labeled_path(5), 0)


def test_type3_needs_matching_vines():
    t = make_labeled_generalized_star(3, 3)
    out = apply_type3(t, 4, make_labeled_generalized_star(3, 3))
    assert out.tree.n == 20 and out.tree.has_edge(4, 10)
    assert len(sequence_set(out.tree, 20)) == 1
    with pytest.raises(ConstructionError):
        apply_type3(t, 4, make_labeled_generalized_star(3, 2))


def test_operations_check_marks():
    t = make_labeled_generalized_star(3, 3)
    with pytest.raises(ConstructionError):
        apply_type1(t, 1, make_labeled_generalized_star(3, 3))   # B vertex
    with pytest.raises(ConstructionError):
        apply_type3(t, 0, make_labeled_generalized_star(3, 3))   # A vertex
    with pytest.raises(ConstructionError):
        apply_type1(t, 0, make_labeled_generalized_star(2, 3))   # two vines


def test_generate_with_no_operations_gives_a_base():
    rng = random.Random(0)
    for _ in range(20):
        lt = generate_F(rng, 0)
        assert len(lt.script) == 1
        assert lt.script[0]["op"] == "base"


def test_generated_trees_replay_and_are_unique():
    rng = random.Random(1)
    for _ in range(60):
        lt = generate_F(rng, 4, max_n=12)
        assert lt.tree.n <= 12
        again = replay_script(script_from_json(script_to_json(lt.script)))
        assert again.tree == lt.tree and again.marks == lt.marks
        assert duis(lt.tree).unique
        assert len(sequence_set(lt.tree)) == 1


def test_replay_rejects_bad_scripts():
    with pytest.raises(ConstructionError):
        replay_script([])
    with pytest.raises(ConstructionError):
        replay_script([{"op": "type1", "u": 0, "vine_count": 3, "vine_vertices": 1}])
    with pytest.raises(ConstructionError):
        replay_script([{"op": "base", "kind": "path", "n": 3},
                       {"op": "type3", "u": 1, "vine_count": 3, "vine_vertices": 1}])


def test_duis_examples():
    assert duis(spider([1, 1, 2])).answer == "multiple"
    for g in (spider([2, 2, 2]), spider([1, 1, 1, 1]), path_graph(1), path_graph(2),
              path_graph(7), make_labeled_generalized_star(2, 3).tree):
        assert duis(g).unique


def test_duis_rejects_non_trees():
    with pytest.raises(ShapeError):
        duis(cycle_graph(4))
    with pytest.raises(ShapeError):
        duis(spider([1, 1, 1]), root=0)


def test_star_with_a_hanging_star_is_multiple():
    # centre 0 with leaves 1,2,3; a three-leaf star hangs off leaf 1 through vertex 4
    t = Graph.from_edges(8, [(0, 1), (0, 2), (0, 3), (1, 4), (4, 5), (4, 6), (4, 7)])
    assert not duis(t).unique
    assert len(sequence_set(t)) > 1


def test_verdict_does_not_depend_on_the_root():
    for n in range(3, 8):
        for t in enumerate_trees(n):
            answers = {duis(t, root=r).unique for r in range(n) if t.degree(r) == 1}
            assert len(answers) == 1


def test_verdict_json():
    data = duis(spider([1, 1, 2])).to_json()
    assert data["verdict"] == "multiple"
    assert data["trace"][-1]["action"] == "reject"
    json.dumps(data)


def test_sequence_set_examples():
    assert sequence_set(complete_bipartite(5, 2)) == ((1, 1, 5), (1, 3, 3))
    assert sequence_set(disjoint_union(complete_graph(2), complete_graph(3))) == ((2, 3),)
    assert sequence_set(path_graph(5)) == ((5,),)
    assert sequence_set(spider([1, 1, 2])) == ((1, 4), (2, 3))
    with pytest.raises(ResourceError):
        sequence_set(path_graph(20), 16)


def test_certify_generalized_star():
    script = certify_F_membership(spider([3, 3, 3]))
    assert [e["op"] for e in script] == ["base"]
    assert replay_script(script).tree == spider([3, 3, 3])


def test_certify_type3_composite():
    composite = apply_type3(make_labeled_generalized_star(3, 3), 4,
                            make_labeled_generalized_star(3, 3))
    script = certify_F_membership(composite.tree)
    assert [e["op"] for e in script] == ["base", "type3"]
    assert replay_script(script).tree == composite.tree


def test_certify_multiple_gives_nothing():
    assert certify_F_membership(spider([1, 1, 2])) is None


def test_certify_rebuilds_every_unique_tree():
    rng = random.Random(3)
    trees = list(enumerate_trees(7)) + [random_tree(rng.randint(9, 14), rng) for _ in range(400)]
    for t in trees:
        script = certify_F_membership(t)
        if script is None:
            continue
        rebuilt = replay_script(script)
        assert rebuilt.tree == t


def test_duis_operation_count_is_linear():
    rng = random.Random(4)
    ratios = []
    for n in (200, 2000, 20000):
        t = random_tree(n, rng)
        ratios.append(duis(t).ops / n)
    assert max(ratios) < 12
    # a long caterpillar forces many peeling rounds
    n = 6000
    edges = [(i, i + 1) for i in range(n - 1)] + [(i, n - 1 + i) for i in range(1, n - 1)]
    cat = Graph.from_edges(2 * n - 2, edges)
    assert duis(cat).ops / cat.n < 12


def test_certify_when_a_piece_hangs_off_an_earlier_leaf():
    # the trace peels a star at 5 whose attachment vertex 9 is a leaf of the
    # path 9-12-10 peeled next, so no labeling follows the trace directly
    t = Graph.from_edges(13, [(0, 4), (0, 5), (1, 5), (1, 11), (2, 8), (3, 11), (4, 6),
                              (5, 9), (7, 8), (8, 12), (9, 12), (10, 12)])
    assert duis(t).unique
    script = certify_F_membership(t)
    assert replay_script(script).tree == t
