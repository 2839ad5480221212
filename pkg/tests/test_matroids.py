import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gainmat.errors import BudgetExceededError, InputError, UnsupportedError
from gainmat.gaingraph import Edge, GainGraph, switch
from gainmat.groups import BilinearMap, GroupDescriptor, Rotation, Translation, natural
from gainmat.matroids import (
    CountFunction,
    CountOracle,
    base_value,
    budgets,
    dilworth_rank,
    greedy_basis,
    is_independent,
    matroid_rank,
    union_rank,
)

from cases import TRIVIAL, Z2, count_kinds, random_graph, simple_graph
from oracles import (
    dilworth_by_partitions,
    edge_subsets,
    forest_union_rank,
    frame_rank,
    induced_rank,
    rho_value,
)

C4 = GroupDescriptor.cyclic(4)
D3 = GroupDescriptor.dihedral(3)
KINDS = count_kinds()
kind_params = pytest.mark.parametrize("label, group, cf", KINDS, ids=[k[0] for k in KINDS])
seeds = st.integers(0, 2**32)

K3 = simple_graph(3, [(0, 1), (1, 2), (0, 2)])
K4 = simple_graph(4, list(combinations(range(4), 2)))


# base values --------------------------------------------------------------------


def test_base_value_examples():
    assert base_value(CountFunction.frame_union(1), K3) == 2
    loop = GainGraph(1, [Edge(0, 0, Rotation(1))], C4)
    assert base_value(CountFunction.rho(natural(C4)), loop) == 2
    lat = GainGraph(1, [Edge(0, 0, Translation(z)) for z in ((1, 0), (0, 1), (1, 1))], Z2)
    assert base_value(CountFunction.lift("rank"), lat) == 2


@kind_params
def test_values_normalized(label, group, cf):
    g = random_graph(group, random.Random(label))
    assert base_value(cf, g, []) == 0


@given(seeds)
def test_frame_value_is_biased_graph_rank(seed):
    for group in (C4, D3):
        g = random_graph(group, random.Random(seed), 4, 6)
        for x in edge_subsets(range(g.m)):
            assert base_value(CountFunction.frame_union(1), g, x) == frame_rank(g, x)


@given(seeds)
def test_rho_value_matches_closure_oracle(seed):
    for group in (C4, D3, GroupDescriptor.cyclic(6)):
        g = random_graph(group, random.Random(seed), 3, 5)
        rep = natural(group)
        for x in edge_subsets(range(g.m)):
            assert base_value(CountFunction.rho(rep), g, x) == rho_value(rep, g, x)


def test_kind_group_mismatch():
    with pytest.raises(UnsupportedError):
        base_value(CountFunction.lift("rank"), K3)
    with pytest.raises(InputError):
        base_value(CountFunction.rho(natural(C4)), K3)


def test_shift_only_once():
    with pytest.raises(InputError):
        CountFunction.rho_truncated(natural(TRIVIAL)).shifted()


# Dilworth truncation --------------------------------------------------------------


def test_dilworth_examples():
    h = CountFunction.rho_truncated(natural(TRIVIAL))
    assert dilworth_rank(h, K3).rank == 3
    assert dilworth_rank(h, K3, []).rank == 0


@kind_params
def test_dilworth_dp_matches_partition_enumeration(label, group, cf):
    rng = random.Random(f"dilworth:{label}")
    for _ in range(6):
        g = random_graph(group, rng, 4, 6)
        oracle = CountOracle(cf, g)
        value = lambda x: base_value(cf, g, x)
        for x in edge_subsets(range(g.m)):
            got = oracle.hat(oracle.local_mask(x))
            assert got == dilworth_by_partitions(value, x)
            assert got <= sum(max(value((e,)), 0) for e in x)


@kind_params
def test_rank_result_certificate(label, group, cf):
    rng = random.Random(f"cert:{label}")
    for _ in range(5):
        g = random_graph(group, rng)
        for res in (matroid_rank(cf, g), dilworth_rank(cf, g)):
            assert res.certificate
            assert res.rank == len(res.leftover) + sum(base_value(cf, g, p) for p in res.parts)


# induced matroid rank ------------------------------------------------------------------


def test_matroid_rank_examples():
    parallel = simple_graph(2, [(0, 1), (0, 1)])
    assert matroid_rank(CountFunction.frame_union(1), parallel).rank == 1
    assert matroid_rank(CountFunction.rho(natural(TRIVIAL)), K3).rank == 3
    assert matroid_rank(CountFunction.rho(natural(TRIVIAL)), K3, []).rank == 0


@kind_params
def test_matroid_rank_matches_independence_definition(label, group, cf):
    rng = random.Random(f"induced:{label}")
    for _ in range(6):
        g = random_graph(group, rng, 4, 6)
        oracle = CountOracle(cf, g)
        value = lambda x: base_value(cf, g, x)
        for x in edge_subsets(range(g.m)):
            assert oracle.rank(oracle.local_mask(x)) == induced_rank(value, x)


@kind_params
def test_matroid_axioms_exhaustive(label, group, cf):
    rng = random.Random(f"axioms:{label}")
    for _ in range(4):
        g = random_graph(group, rng, 4, 6, min_e=6)
        r = CountOracle(cf, g).rank_table()
        full = len(r)
        assert r[0] == 0
        for x in range(full):
            for i in range(g.m):
                if not x >> i & 1:
                    assert r[x] <= r[x | 1 << i] <= r[x] + 1
            for y in range(x, full):
                assert r[x] + r[y] >= r[x | y] + r[x & y]


@given(seeds)
def test_trivial_group_rho_is_union_of_forests(seed):
    rng = random.Random(seed)
    for d in (1, 2, 3):
        g = random_graph(GroupDescriptor.trivial(d), rng, 4, 6)
        cf = CountFunction.rho(natural(g.group))
        assert matroid_rank(cf, g).rank == forest_union_rank(g, range(g.m), d)


@settings(max_examples=20)
@given(seeds, st.lists(st.tuples(st.integers(0, 4), st.integers(0, 5)), min_size=1, max_size=5))
def test_switching_preserves_every_rank(seed, moves):
    for label, group, cf in KINDS:
        g = random_graph(group, random.Random(f"{seed}:{label}"), 4, 6)
        h = g
        srng = random.Random(f"moves:{seed}")
        for v, _ in moves:
            h = switch(h, v % g.n, group.random_element(srng))
        assert matroid_rank(cf, h).rank == matroid_rank(cf, g).rank, label


# independence ------------------------------------------------------------------------


def test_independence_examples():
    one = GainGraph(2, [Edge(0, 1, Rotation(1))], C4)
    assert is_independent(CountFunction.frame_union(1), one).independent
    loops = GainGraph(1, [Edge(0, 0, Rotation(1)), Edge(0, 0, Rotation(2))], C4)
    res = is_independent(CountFunction.frame_union(1), loops)
    assert not res.independent
    assert res.violator == (0, 1) and res.violator_value == 1
    assert is_independent(CountFunction.rho(natural(C4)), loops).independent


@kind_params
def test_violator_is_first_minimum_violator(label, group, cf):
    rng = random.Random(f"violator:{label}")
    for _ in range(6):
        g = random_graph(group, rng, 4, 6)
        value = lambda x: base_value(cf, g, x)
        expected = None
        for x in edge_subsets(range(g.m)):
            if x and len(x) > value(x):
                expected = x
                break
        res = is_independent(cf, g)
        assert res.independent == (expected is None)
        assert res.violator == expected


# union -----------------------------------------------------------------------------


def test_union_examples():
    graphic = CountFunction.rho(natural(GroupDescriptor.trivial(1)))
    g1 = simple_graph(4, list(combinations(range(4), 2)), GroupDescriptor.trivial(1))
    assert union_rank(graphic, CountFunction.zero(), g1) == matroid_rank(graphic, g1).rank == 3
    doubled = simple_graph(2, [(0, 1), (0, 1)], GroupDescriptor.trivial(1))
    assert union_rank(graphic, graphic, doubled) == 2
    assert union_rank(graphic, graphic, g1) == 6


@given(seeds)
def test_union_of_two_graphic_matches_forest_oracle(seed):
    g = random_graph(GroupDescriptor.trivial(1), random.Random(seed), 4, 7)
    graphic = CountFunction.rho(natural(g.group))
    assert union_rank(graphic, graphic, g) == forest_union_rank(g, range(g.m), 2)


def test_greedy_basis_is_maximal():
    g = K4
    cf = CountFunction.rho(natural(GroupDescriptor.trivial(2)))
    oracle = CountOracle(cf, g)
    basis = greedy_basis(lambda x: oracle.rank(oracle.local_mask(x)), range(g.m))
    assert len(basis) == oracle.rank()
    assert is_independent(cf, g, basis).independent


# budgets ---------------------------------------------------------------------------


@pytest.mark.parametrize("raw, expected", [("", (16, 12)), ("9", (9, 9)), ("20,10", (20, 10)),
                                           ("subset=5,partition=4", (5, 4)), ("partition=3", (16, 3))])
def test_budget_env(monkeypatch, raw, expected):
    monkeypatch.setenv("GAINMAT_BUDGET", raw)
    assert budgets() == expected


def test_budget_exceeded(monkeypatch):
    monkeypatch.setenv("GAINMAT_BUDGET", "4")
    g = simple_graph(3, [(0, 1)] * 5)
    with pytest.raises(BudgetExceededError) as info:
        matroid_rank(CountFunction.frame_union(1), g)
    assert info.value.budget == 4
    with pytest.raises(BudgetExceededError):
        is_independent(CountFunction.frame_union(1), g)


def test_bad_budget(monkeypatch):
    monkeypatch.setenv("GAINMAT_BUDGET", "lots")
    with pytest.raises(InputError):
        budgets()
