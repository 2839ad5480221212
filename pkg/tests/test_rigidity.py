import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gainmat.errors import InputError, UnsupportedError
from gainmat.gaingraph import Edge, GainGraph
from gainmat.groups import GroupDescriptor, Rotation, Translation
from gainmat.linrep import GenericAssignment
from gainmat.rigidity import (
    check,
    check_bodybar,
    check_crystal_parallel,
    check_crystal_rigidity,
    check_parallel_point,
    check_rigidity_Ck,
    target_dims,
)

from cases import CORPUS, TRIVIAL, random_graph, simple_graph
from oracles import forest_union_rank, induced_rank, laman_rank

C2 = GroupDescriptor.cyclic(2)
C3 = GroupDescriptor.cyclic(3)
C4 = GroupDescriptor.cyclic(4)
D3 = GroupDescriptor.dihedral(3)
T3 = GroupDescriptor.trivial(3)
P1 = GroupDescriptor.wallpaper("p1")
P2 = GroupDescriptor.wallpaper("p2")
P4 = GroupDescriptor.wallpaper("p4")
K3 = simple_graph(3, [(0, 1), (1, 2), (0, 2)])
seeds = st.integers(0, 2**32)
corpus_params = pytest.mark.parametrize("name, n, pairs", CORPUS, ids=[c[0] for c in CORPUS])


def loops(group, gains):
    return GainGraph(1, [Edge(0, 0, x) for x in gains], group)


def consistent(v):
    assert v.oracles_agree and v.certificate_verified
    assert v.positive == (v.rank == v.target)
    assert len(v.independent_set) == v.rank
    if not v.positive and v.violating_subset is not None:
        assert v.violating_subset
    return v


# targets ------------------------------------------------------------------------


def test_target_examples():
    assert target_dims(TRIVIAL, "parallel", 2, 5) == (2 * 5 - 1 - 2, {"d": 2, "fixed_space_dim": 2,
                                                                      "unclamped_target": 7})
    _, consts = target_dims(P4, "crystal-rigidity", 2, 1)
    assert consts["k"] == 2
    _, consts = target_dims(T3, "bodybar", 3, 2)
    assert consts["D"] == 6


@pytest.mark.parametrize("name, k, fixed", [("p1", 4, 2), ("p2", 4, 0), ("p3", 2, 0), ("p4", 2, 0), ("p6", 2, 0)])
def test_wallpaper_constants(name, k, fixed):
    target, consts = target_dims(GroupDescriptor.wallpaper(name), "crystal-rigidity", None, 3)
    assert (consts["k"], consts["fixed_space_dim"]) == (k, fixed)
    assert target == 2 * 3 + k - 1 - fixed


def test_bodybar_constants():
    assert target_dims(TRIVIAL, "bodybar", None, 2)[1]["D"] == 3
    assert target_dims(T3, "bodybar", None, 2) == (6, {"d": 3, "D": 6, "group_term": 0, "unclamped_target": 6})


def test_target_is_clamped():
    target, consts = target_dims(TRIVIAL, "parallel", None, 1)
    assert target == 0 and consts["unclamped_target"] == -1


def test_unsupported_pairs():
    with pytest.raises(UnsupportedError):
        target_dims(D3, "rigidity", None, 2)
    with pytest.raises(UnsupportedError):
        target_dims(P4, "parallel", None, 2)
    with pytest.raises(UnsupportedError):
        target_dims(C4, "crystal-parallel", None, 2)
    with pytest.raises(InputError):
        target_dims(C4, "wobbly", None, 2)
    with pytest.raises(InputError):
        target_dims(C4, "parallel", 3, 2)


# parallel redrawings --------------------------------------------------------------


def test_parallel_examples():
    v = consistent(check_parallel_point(K3, 2))
    assert (v.decision, v.rank, v.target) == ("robust", 3, 3)
    path = simple_graph(3, [(0, 1), (1, 2)])
    v = consistent(check_parallel_point(path, 2))
    assert (v.decision, v.rank, v.target) == ("not-robust", 2, 3)
    v = consistent(check_parallel_point(simple_graph(2, [(0, 1)]), 2))
    assert (v.decision, v.rank, v.target) == ("robust", 1, 1)


@corpus_params
def test_trivial_parallel_is_laman_count(name, n, pairs):
    g = simple_graph(n, pairs)
    v = consistent(check_parallel_point(g))
    assert v.rank == laman_rank(g, range(g.m))


@pytest.mark.parametrize("name, n, pairs", CORPUS[:6], ids=[c[0] for c in CORPUS[:6]])
def test_trivial_parallel_in_space(name, n, pairs):
    g = simple_graph(n, pairs, T3)
    v = consistent(check_parallel_point(g))
    dup, _ = g.duplicated(2)

    def value(y):
        vs = {dup.edges[i].tail for i in y} | {dup.edges[i].head for i in y}
        return 3 * len(vs) - 4

    assert v.rank == induced_rank(value, range(dup.m))
    assert v.target == 3 * n - 4


# rotation rigidity ----------------------------------------------------------------


def test_rigidity_examples():
    v = consistent(check_rigidity_Ck(loops(C3, [Rotation(1)])))
    assert (v.decision, v.rank, v.target) == ("rigid", 1, 1)
    v = consistent(check_rigidity_Ck(GainGraph(1, [], C2)))
    assert (v.decision, v.rank, v.target) == ("flexible", 0, 1)
    v = consistent(check_rigidity_Ck(K3))
    assert (v.decision, v.rank, v.target) == ("rigid", 3, 3)


def test_dihedral_rigidity_refused():
    with pytest.raises(UnsupportedError):
        check_rigidity_Ck(loops(D3, [D3.elements()[1]]))
    with pytest.raises(UnsupportedError):
        check("rigidity", GainGraph(2, [], D3))


@corpus_params
def test_trivial_rigidity_is_laman_count(name, n, pairs):
    g = simple_graph(n, pairs)
    v = consistent(check_rigidity_Ck(g))
    assert v.rank == laman_rank(g, range(g.m))
    assert v.positive == (laman_rank(g, range(g.m)) == 2 * n - 3)


# body-bar ------------------------------------------------------------------------------


def test_bodybar_examples():
    v = consistent(check_bodybar(simple_graph(2, [(0, 1)] * 6, T3), 3))
    assert (v.decision, v.rank, v.target) == ("rigid", 6, 6)
    v = consistent(check_bodybar(simple_graph(2, [(0, 1)] * 5, T3), 3))
    assert v.decision == "flexible" and v.rank == 5
    v = consistent(check_bodybar(simple_graph(2, [(0, 1)] * 3), 2))
    assert (v.decision, v.rank, v.target) == ("rigid", 3, 3)


@pytest.mark.parametrize("name, n, pairs", CORPUS[:8], ids=[c[0] for c in CORPUS[:8]])
def test_trivial_bodybar_is_tay_count(name, n, pairs):
    # doubling stays within the default partition budget of 12 edges
    for copies in [c for c in (1, 2) if c * len(pairs) <= 12]:
        g = simple_graph(n, pairs * copies)
        v = consistent(check_bodybar(g))
        assert v.rank == forest_union_rank(g, range(g.m), 3)


# crystallographic ---------------------------------------------------------------------------


def test_crystal_parallel_examples():
    g = loops(P1, [P1.wallpaper_element(0, (1, 0)), P1.wallpaper_element(0, (0, 1))])
    v = consistent(check_crystal_parallel(g))
    assert v.target == 3 and v.rank <= 2 and v.decision == "not-robust"
    g = loops(P4, [P4.wallpaper_element(1), P4.wallpaper_element(0, (1, 0))])
    v = consistent(check_crystal_parallel(g))
    assert v.target == 3
    v = consistent(check_crystal_parallel(GainGraph(2, [], P4)))
    assert v.decision == "not-robust" and v.rank == 0


def test_crystal_rigidity_examples():
    g = loops(P1, [P1.wallpaper_element(0, z) for z in ((1, 0), (0, 1), (1, 1))])
    v = consistent(check_crystal_rigidity(g))
    assert v.target == 3 and v.constants["k"] == 4
    v = consistent(check_crystal_rigidity(GainGraph(1, [], P2)))
    assert (v.decision, v.rank, v.target) == ("flexible", 0, 5)
    assert check_crystal_rigidity(GainGraph(1, [], P4)).constants["k"] == 2


def test_explicit_lattice_warns():
    g = loops(P1, [P1.wallpaper_element(0, (1, 0))])
    with pytest.warns(UserWarning):
        v = check_crystal_rigidity(g, explicit_lattice=True)
    assert v.warnings


def test_crystal_needs_wallpaper():
    with pytest.raises(UnsupportedError):
        check_crystal_rigidity(loops(GroupDescriptor.translation(2), [Translation((1, 0))]))


# invariants --------------------------------------------------------------------------------


def random_instance(mode, rng):
    group = {"parallel": rng.choice([TRIVIAL, C2, C3, D3]), "rigidity": rng.choice([TRIVIAL, C2, C3, C4]),
             "bodybar": rng.choice([TRIVIAL, C2, C4]), "crystal-rigidity": P4, "crystal-parallel": P2}[mode]
    return random_graph(group, rng, 3, 5)


@settings(max_examples=25)
@given(seeds, st.sampled_from(["parallel", "rigidity", "bodybar", "crystal-rigidity", "crystal-parallel"]))
def test_verdicts_are_consistent(seed, mode):
    g = random_instance(mode, random.Random(seed))
    consistent(check(mode, g, GenericAssignment(seed=seed % 1000)))


@settings(max_examples=25)
@given(seeds, st.sampled_from(["parallel", "rigidity", "bodybar", "crystal-rigidity"]))
def test_adding_an_edge_keeps_positive_verdicts(seed, mode):
    rng = random.Random(seed)
    g = random_instance(mode, rng)
    ga = GenericAssignment(seed=seed % 1000)
    before = check(mode, g, ga)
    extra = Edge(rng.randrange(g.n), rng.randrange(g.n), g.group.random_element(rng))
    after = check(mode, g.with_edges(list(g.edges) + [extra]), ga)
    assert after.rank >= before.rank
    if before.positive:
        assert after.positive


def test_verdict_serializes():
    d = check_rigidity_Ck(K3).to_dict()
    assert d["decision"] == "rigid"
    assert set(d["certificate"]) == {"independent_set", "violating_subset", "verified"}
