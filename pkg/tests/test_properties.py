"""Property tests over random graphs and trees (hypothesis drives the seeds and sizes)."""
import random

from hypothesis import given, settings, strategies as st

from pathlabel import (
    Graph,
    classify,
    complement,
    duis,
    expand_tree,
    formula_bounds,
    generate_F,
    is_2_sparse,
    is_general_2_sparse,
    labeling_from_cover,
    oracle_path_cover,
    parse_graph6,
    prufer_decode,
    stats,
    theorem7_path_cover,
    theorem12_path_cover,
    theorem13_path_cover,
    to_graph6,
    tree_path_cover,
    validate_l21,
    vines,
)
from pathlabel.errors import ConditionError
from pathlabel.verify import random_2_sparse_tree, random_expansion_instance, random_theorem12_graph

SETTINGS = settings(max_examples=150, deadline=None)


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@st.composite
def trees(draw, min_n=1, max_n=12):
    n = draw(st.integers(min_n, max_n))
    if n == 1:
        return Graph.from_edges(1, [])
    seq = draw(st.lists(st.integers(0, n - 1), min_size=n - 2, max_size=n - 2))
    return prufer_decode(seq, n)


@SETTINGS
@given(graphs())
def test_complement_is_an_involution(g):
    assert complement(complement(g)) == g
    assert complement(g).m + g.m == g.n * (g.n - 1) // 2


@SETTINGS
@given(graphs())
def test_graph6_round_trip(g):
    assert parse_graph6(to_graph6(g)) == g


@SETTINGS
@given(trees(min_n=2))
def test_tree_leaf_and_vine_counts(t):
    st_ = stats(t)
    assert st_.leaves >= 2
    assert st_.leaves + len(st_.heavy_vertices) <= t.n
    assert st_.heavy_edges <= st_.m
    shape = classify(t)
    if shape == "path":
        assert st_.heavy_edges == 0 and st_.leaves == 2
        return
    vs = vines(t)
    assert sum(len(v.vertices) for v in vs) <= t.n - 1
    seen = [x for v in vs for x in v.vertices]
    assert len(seen) == len(set(seen))
    assert sorted(v.vertices[0] for v in vs) == [x for x in range(t.n) if t.degree(x) == 1]
    for v in vs:
        assert t.degree(v.center) > 2
        assert all(t.degree(x) <= 2 for x in v.vertices)
    if shape in ("generalized_star", "star"):
        assert len(st_.heavy_vertices) == 1


@SETTINGS
@given(trees())
def test_tree_cover_matches_oracle(t):
    p, cov = tree_path_cover(t)
    cov.validate(t)
    assert len(cov.paths) == p == oracle_path_cover(t).P
    if t.n >= 2:
        lo, hi = formula_bounds(t)
        assert lo <= p <= hi
        st_ = stats(t)
        assert (p == st_.leaves - 1) == is_2_sparse(t)
        assert (p == st_.leaves - st_.heavy_edges - 1) == is_general_2_sparse(t)
        try:
            f, data = theorem7_path_cover(t)
        except ConditionError:
            pass
        else:
            assert f == p
            assert data.t <= data.s // 2


@SETTINGS
@given(trees(min_n=2))
def test_certificate_from_tree_cover(t):
    p, cov = tree_path_cover(t)
    f = labeling_from_cover(complement(t), cov)
    assert validate_l21(complement(t), f)[0]
    assert f.span == t.n + p - 2 and f.holes == p - 1


@SETTINGS
@given(trees())
def test_duis_matches_sequence_count(t):
    assert duis(t).unique == (len(oracle_path_cover(t).sequences) == 1)


@SETTINGS
@given(st.integers(0, 2**32 - 1), st.integers(0, 4))
def test_family_members_are_unique(seed, ops):
    lt = generate_F(random.Random(seed), ops, max_n=12)
    assert duis(lt.tree).unique
    assert len(oracle_path_cover(lt.tree).sequences) == 1


@SETTINGS
@given(st.integers(0, 2**32 - 1), st.integers(6, 12))
def test_sparse_non_spiders_are_multiple(seed, n):
    t = random_2_sparse_tree(random.Random(seed), n, interesting=True)
    assert not duis(t).unique
    assert len(oracle_path_cover(t).sequences) >= 2


@SETTINGS
@given(st.integers(0, 2**32 - 1))
def test_theorem12_family_matches_oracle(seed):
    g = random_theorem12_graph(random.Random(seed), 12)
    assert theorem12_path_cover(g) == oracle_path_cover(g).P


@SETTINGS
@given(st.integers(0, 2**32 - 1))
def test_expansions_match_oracle(seed):
    t, orders = random_expansion_instance(random.Random(seed), 14)
    g = expand_tree(t, orders)
    p, cov = theorem13_path_cover(t, orders)
    cov.validate(g)
    assert len(cov.paths) == p == oracle_path_cover(g).P
