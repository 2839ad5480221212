import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gainmat.errors import PreconditionError, UnsupportedError
from gainmat.gaingraph import (
    Edge,
    GainGraph,
    components,
    compressed_graph,
    covering_graph,
    is_balanced,
    maximal_forest,
    normalize_forest,
    quotient_graph,
    random_gain_graph,
    subgroup_of_subset,
    switch,
)
from gainmat.groups import DihedralElement, GroupDescriptor, Rotation, Translation, natural
from gainmat.matroids import CountFunction, matroid_rank

from oracles import cycle_gains, dfs_components

C3 = GroupDescriptor.cyclic(3)
C4 = GroupDescriptor.cyclic(4)
D3 = GroupDescriptor.dihedral(3)
TRIV = GroupDescriptor.trivial()
ID = Rotation(0)


def triangle(group, gains):
    return GainGraph(3, [Edge(0, 1, gains[0]), Edge(1, 2, gains[1]), Edge(2, 0, gains[2])], group)


seeds = st.integers(0, 2**32)


def random_graph(seed, group, n=4, m=6):
    return random_gain_graph(group, n, m, random.Random(seed))


# components ----------------------------------------------------------------------


def test_components_examples():
    g = triangle(TRIV, [ID] * 3)
    assert components(g, []) == []
    assert components(g, None) == [(0, 1, 2)]
    two = GainGraph(4, [Edge(0, 1, ID), Edge(2, 3, ID)], TRIV)
    assert components(two, None) == [(0,), (1,)]


@given(seeds)
def test_components_match_dfs(seed):
    g = random_graph(seed, C4, 5, 7)
    ours = sorted(sorted(c) for c in components(g, None))
    ref = sorted(es for es, _ in dfs_components(g, range(g.m)))
    assert ours == ref


def test_maximal_forest_skips_loops():
    g = GainGraph(2, [Edge(0, 0, Rotation(1)), Edge(0, 1, ID), Edge(1, 0, ID)], C3)
    assert maximal_forest(g, None) == (1,)


# switching ------------------------------------------------------------------------


def test_switch_identity_is_noop():
    g = triangle(C4, [Rotation(1), Rotation(2), Rotation(3)])
    assert switch(g, 1, ID) == g


def test_switch_loop_conjugates():
    h = DihedralElement(1, False)
    gamma = DihedralElement(0, True)
    g = GainGraph(1, [Edge(0, 0, h)], D3)
    assert switch(g, 0, gamma).edges[0].gain == D3.conjugate(gamma, h)


def test_switch_three_cases():
    g = GainGraph(3, [Edge(0, 1, Rotation(1)), Edge(2, 0, Rotation(1)), Edge(1, 2, Rotation(1))], C4)
    s = switch(g, 0, Rotation(2))
    assert [e.gain for e in s.edges] == [Rotation(3), Rotation(3), Rotation(1)]


@given(seeds, st.lists(st.tuples(st.integers(0, 3), st.integers(0, 5)), max_size=6))
def test_switching_preserves_balance_and_components(seed, moves):
    for group in (C4, D3):
        g = random_graph(seed, group)
        h = g
        els = group.elements()
        for v, j in moves:
            h = switch(h, v, els[j % len(els)])
        assert components(h, None) == components(g, None)
        for comp in components(g, None):
            assert is_balanced(h, comp) == is_balanced(g, comp)


# forest normalization ----------------------------------------------------------------


def test_normalize_identity_forest_no_switches():
    g = triangle(C4, [ID, ID, Rotation(1)])
    _, log = normalize_forest(g, [0, 1])
    assert log == []


def test_normalize_single_edge():
    g = GainGraph(2, [Edge(0, 1, Rotation(3))], C4)
    h, log = normalize_forest(g, [0])
    assert len(log) == 1
    assert h.edges[0].gain == ID


def test_normalize_triangle_tree_carries_cycle_gain():
    a, b, c = Rotation(1), Rotation(2), Rotation(2)
    g = triangle(C4, [a, b, c])
    h, log = normalize_forest(g, [0, 1])
    assert h.edges[0].gain == ID and h.edges[1].gain == ID
    # walk 0 -> 1 -> 2 -> 0 from the root
    assert h.edges[2].gain == C4.multiply(C4.multiply(a, b), c)
    replay = g
    for v, gamma in log:
        replay = switch(replay, v, gamma)
    assert replay == h


def test_normalize_rejects_cycles():
    g = triangle(C4, [ID, ID, ID])
    with pytest.raises(PreconditionError):
        normalize_forest(g, [0, 1, 2])


# subgroups and balance ----------------------------------------------------------------


def test_subgroup_examples():
    path = GainGraph(3, [Edge(0, 1, Rotation(1)), Edge(1, 2, Rotation(3))], C4)
    assert subgroup_of_subset(path, None, 0).is_trivial()
    loop = GainGraph(1, [Edge(0, 0, Rotation(2))], C4)
    assert subgroup_of_subset(loop, None, 0).size == 2
    tri = triangle(C4, [Rotation(1), ID, ID])
    assert subgroup_of_subset(tri, None, 0).size == 4


def test_subgroup_preconditions():
    two = GainGraph(4, [Edge(0, 1, ID), Edge(2, 3, ID)], C4)
    with pytest.raises(PreconditionError):
        subgroup_of_subset(two, None, 0)
    with pytest.raises(PreconditionError):
        subgroup_of_subset(two, [0], 3)


@given(seeds)
def test_subgroup_size_independent_of_base_point(seed):
    g = random_graph(seed, D3, 3, 6)
    for comp in components(g, None):
        vs = {g.edges[i].tail for i in comp} | {g.edges[i].head for i in comp}
        sizes = {subgroup_of_subset(g, comp, v).size for v in vs}
        assert len(sizes) == 1


def test_balance_examples():
    assert is_balanced(triangle(C4, [ID] * 3))
    assert not is_balanced(GainGraph(1, [Edge(0, 0, Rotation(1))], C4))
    path = GainGraph(3, [Edge(0, 1, Rotation(1)), Edge(1, 2, Rotation(2))], C4)
    assert is_balanced(path)


@given(seeds)
def test_balance_matches_cycle_gain_oracle(seed):
    g = random_graph(seed, D3, 4, 6)
    for es, _ in dfs_components(g, range(g.m)):
        assert is_balanced(g, es) == all(D3.is_identity(x) for x in cycle_gains(g, es))


# compression ------------------------------------------------------------------------


def test_compressed_examples():
    tree = GainGraph(3, [Edge(0, 1, Rotation(1)), Edge(1, 2, Rotation(1))], C4)
    c = compressed_graph(tree)
    assert (c.n, c.m) == (1, 0)
    loop = GainGraph(1, [Edge(0, 0, Rotation(1))], C4)
    assert compressed_graph(loop) == loop
    two = GainGraph(4, [Edge(0, 0, Rotation(1)), Edge(0, 1, ID), Edge(2, 3, ID), Edge(3, 2, Rotation(2))], C4)
    c = compressed_graph(two)
    assert c.n == 2
    assert sorted(e.tail for e in c.edges) == [0, 1]


# covers and quotients ------------------------------------------------------------------


def test_covering_examples():
    g = triangle(TRIV, [ID] * 3)
    cov = covering_graph(g)
    assert cov.num_vertices == 3 and len(cov.edges) == 3
    cov = covering_graph(GainGraph(1, [Edge(0, 0, Rotation(1))], C3))
    assert cov.num_vertices == 3 and cov.edges == ((0, 1), (0, 2), (1, 2))
    cov = covering_graph(GainGraph(2, [Edge(0, 1, ID)], GroupDescriptor.cyclic(2)))
    assert cov.num_vertices == 4 and len(cov.edges) == 2
    assert not set(cov.edges[0]) & set(cov.edges[1])


def test_covering_refuses_infinite_group():
    g = GainGraph(1, [Edge(0, 0, Translation((1,)))], GroupDescriptor.translation(1))
    with pytest.raises(UnsupportedError):
        covering_graph(g)


def test_quotient_of_c3_triangle():
    q = quotient_graph(covering_graph(GainGraph(1, [Edge(0, 0, Rotation(1))], C3)))
    assert (q.n, q.m) == (1, 1)
    assert C3.power(q.edges[0].gain, 3) == ID and q.edges[0].gain != ID


def test_quotient_trivial_group():
    g = triangle(TRIV, [ID] * 3)
    q = quotient_graph(covering_graph(g))
    assert {frozenset((e.tail, e.head)) for e in q.edges} == {frozenset(p) for p in ((0, 1), (1, 2), (0, 2))}


@given(seeds)
def test_cover_quotient_round_trip_preserves_ranks(seed):
    rng = random.Random(seed)
    for group in (C4, D3):
        edges, seen = [], set()
        for _ in range(5):
            u, v = rng.randrange(3), rng.randrange(3)
            gain = group.random_element(rng)
            if u == v and group.is_identity(gain):
                continue
            key = (u, v, gain)
            rkey = (v, u, group.inverse(gain))
            if key in seen or rkey in seen or (u == v and (u, v, group.inverse(gain)) in seen):
                continue
            seen.add(key)
            edges.append(Edge(u, v, gain))
        g = GainGraph(3, edges, group)
        q = quotient_graph(covering_graph(g))
        assert q.n == g.n and q.m == g.m
        cf = CountFunction.rho(natural(group))
        assert matroid_rank(cf, q).rank == matroid_rank(cf, g).rank
        assert is_balanced(q) == is_balanced(g)


# reorientation ----------------------------------------------------------------------


@given(seeds, st.integers(0, 5))
def test_reorientation_invariance(seed, i):
    g = random_graph(seed, D3)
    h = g.reoriented(i % g.m)
    assert components(h, None) == components(g, None)
    assert is_balanced(h) == is_balanced(g)
    cf = CountFunction.rho(natural(D3))
    assert matroid_rank(cf, h).rank == matroid_rank(cf, g).rank
