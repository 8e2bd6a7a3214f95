"""Arc covers with dual certificates, the two witness constructors, and
basis-covering matchings."""

from __future__ import annotations

import random

import pytest

from termrank.bigraph import (
    Bigraph,
    DegreeSpec,
    GroundSets,
    fits,
    graph_union,
    matching_number,
)
from termrank.cover import (
    ArcCover,
    construct_brute,
    construct_via_cover,
    covers,
    find_matching_covering_bases,
    matroid_covers,
    min_arc_cover,
    minimalize_cover,
    solve_term_rank,
)
from termrank.errors import InfeasibleError, InstanceError, PreconditionError
from termrank.feasibility import Instance, ViolationCert, check_brualdi, check_msmt
from termrank.harness import (
    FuzzConfig,
    random_brualdi_case,
    random_msmt_instance,
    validate_matching,
    validate_witness,
)
from termrank.matroid import Matroid
from termrank.setfun import (
    SetFunction,
    base_demand,
    constant,
    from_corank,
    full_demand,
    st_independent,
)

from .oracles import is_matching


def grounds(n_s, n_t):
    return GroundSets(
        tuple(f"s{i + 1}" for i in range(n_s)),
        tuple(f"t{j + 1}" for j in range(n_t)),
    )


def demand_on_v(g, positives: dict[int, int]) -> SetFunction:
    vals = [0] * (1 << g.n_v)
    for mask, value in positives.items():
        vals[mask] = value
    return SetFunction(g.s_ids + g.t_ids, tuple(vals))


def test_min_cover_single_positive_set():
    g = grounds(2, 2)
    dem = demand_on_v(g, {g.v_mask(0, 0b01): 1})
    cover, dual = min_arc_cover(dem, g.n_s)
    assert cover.size == 1 and dual.value == 1
    assert dual.sets == (g.v_mask(0, 0b01),)
    assert covers(cover.arcs, dem, g.n_s)


def test_min_cover_trivial_zero_demand():
    g = grounds(2, 2)
    cover, dual = min_arc_cover(constant(g.s_ids + g.t_ids, 0), g.n_s)
    assert cover.arcs == () and dual.value == 0 and dual.sets == ()
    below = SetFunction(g.s_ids + g.t_ids, tuple([-1] * (1 << g.n_v)))
    cover, dual = min_arc_cover(below, g.n_s)
    assert cover.arcs == () and dual.value == 0


def test_min_cover_rejects_uncoverable_demand():
    g = grounds(2, 2)
    # positive on a set with no right node
    with pytest.raises(PreconditionError):
        min_arc_cover(demand_on_v(g, {g.v_mask(0b01, 0): 1}), g.n_s)
    # positive on a set containing the whole left class
    with pytest.raises(PreconditionError):
        min_arc_cover(demand_on_v(g, {g.v_mask(0b11, 0b01): 1}), g.n_s)


def test_min_cover_rejects_unclassified_demand():
    g = grounds(2, 2)
    # two crossing sets whose union misses s2 and whose values break the
    # supermodular inequality: meet {t1} and join {s1,t1,t2} both carry 0
    a = g.v_mask(0b01, 0b01)
    b = g.v_mask(0b00, 0b11)
    dem = demand_on_v(g, {a: 1, b: 1})
    with pytest.raises(PreconditionError):
        min_arc_cover(dem, g.n_s)


def test_min_cover_of_full_lift_equals_degree_total():
    rng = random.Random(50)
    exercised = 0
    for _ in range(80):
        inst = random_msmt_instance(rng, FuzzConfig(max_s=3, max_t=3))
        if check_msmt(inst) is not None:
            continue
        exercised += 1
        lifted = full_demand(
            base_demand(inst.initial, inst.degrees, inst.demand, inst.matroid_s),
            inst.initial,
            inst.degrees,
        )
        cover, dual = min_arc_cover(lifted, inst.grounds.n_s)
        assert cover.size == dual.value == inst.degrees.gamma
        assert st_independent(dual.sets, inst.grounds)
        # minimality: removing any arc breaks coverage
        assert minimalize_cover(cover.arcs, lifted, inst.grounds.n_s) == cover.arcs
        for k in range(cover.size):
            remaining = cover.arcs[:k] + cover.arcs[k + 1 :]
            assert not covers(remaining, lifted, inst.grounds.n_s)
    assert exercised > 20


def test_construct_via_cover_perfect_matching_case():
    g = grounds(2, 2)
    inst = Instance.make(
        g,
        degrees=DegreeSpec(g, (1, 1), (1, 1)),
        demand=constant(g.t_ids, 0),
    )
    built = construct_via_cover(inst)
    assert fits(built, inst.degrees)
    assert built.edge_count == 2
    assert matching_number(built) == 2


def test_construct_via_cover_propagates_infeasibility():
    g = grounds(2, 2)
    inst = Instance.make(
        g,
        initial=Bigraph(g, ((0, 0), (0, 1))),
        degrees=DegreeSpec(g, (2, 0), (1, 1)),
        demand=constant(g.t_ids, 0),
    )
    with pytest.raises(InfeasibleError) as exc_info:
        construct_via_cover(inst)
    assert isinstance(exc_info.value.cert, ViolationCert)


def test_construct_via_cover_postconditions_on_randoms():
    rng = random.Random(51)
    built_count = 0
    for _ in range(60):
        inst = random_msmt_instance(rng, FuzzConfig(max_s=3, max_t=3))
        try:
            built = construct_via_cover(inst)
        except InfeasibleError:
            continue
        built_count += 1
        assert validate_witness(inst, built) == []
        plus = graph_union(built, inst.initial)
        assert plus.simple
        assert matroid_covers(plus, inst.matroid_s, inst.demand)
    assert built_count > 15


def test_construct_brute_zero_degrees():
    g = grounds(2, 2)
    inst = Instance.make(
        g,
        degrees=DegreeSpec(g, (0, 0), (0, 0)),
        demand=constant(g.t_ids, 0),
    )
    built = construct_brute(inst)
    assert built is not None and built.edge_count == 0
    # demand that the empty augmentation cannot satisfy
    inst = Instance.make(
        g,
        degrees=DegreeSpec(g, (0, 0), (0, 0)),
        demand=from_corank(Matroid.uniform(g.t_ids, 1)),
    )
    assert construct_brute(inst) is None


def test_construct_brute_is_lexicographically_first():
    g = grounds(2, 2)
    inst = Instance.make(
        g,
        degrees=DegreeSpec(g, (1, 1), (1, 1)),
        demand=constant(g.t_ids, 0),
    )
    built = construct_brute(inst)
    # the identity matching precedes the crossed one in inclusion-first order
    assert built.edges == ((0, 0), (1, 1))


def test_find_matching_examples():
    g = grounds(2, 2)
    k22 = Bigraph(g, tuple((i, j) for i in range(2) for j in range(2)))
    free_s = Matroid.free(g.s_ids)
    free_t = Matroid.free(g.t_ids)
    m = find_matching_covering_bases(k22, free_s, free_t)
    assert m is not None and len(m) == 2 and is_matching(m)
    empty = Bigraph(g, ())
    assert find_matching_covering_bases(
        empty, Matroid.uniform(g.s_ids, 1), Matroid.uniform(g.t_ids, 1)
    ) is None
    assert find_matching_covering_bases(
        empty, Matroid.uniform(g.s_ids, 0), Matroid.uniform(g.t_ids, 0)
    ) == ()
    with pytest.raises(InstanceError):
        find_matching_covering_bases(k22, free_s, Matroid.uniform(g.t_ids, 1))


def test_find_matching_agrees_with_condition():
    rng = random.Random(52)
    for _ in range(120):
        graph, ms, mt = random_brualdi_case(rng, FuzzConfig(max_s=4, max_t=4))
        feasible = check_brualdi(graph, ms, mt) is None
        matching = find_matching_covering_bases(graph, ms, mt)
        assert feasible == (matching is not None)
        if matching is not None:
            assert validate_matching(graph, ms, mt, matching) == []


def test_solve_term_rank_zero_target():
    g = grounds(2, 2)
    inst = Instance.make(
        g,
        degrees=DegreeSpec(g, (1, 1), (1, 1)),
        matroid_s=Matroid.uniform(g.s_ids, 0),
        matroid_t=Matroid.uniform(g.t_ids, 0),
        target_rank=0,
    )
    result = solve_term_rank(inst)
    assert not isinstance(result, ViolationCert)
    graph, matching = result
    assert matching == ()
    assert fits(graph, inst.degrees)


def test_solve_term_rank_feasible_classic_example():
    g = grounds(3, 3)
    inst = Instance.make(
        g,
        degrees=DegreeSpec(g, (2, 1, 1), (2, 1, 1)),
        matroid_s=Matroid.uniform(g.s_ids, 3),
        matroid_t=Matroid.uniform(g.t_ids, 3),
        target_rank=3,
    )
    result = solve_term_rank(inst)
    assert not isinstance(result, ViolationCert)
    graph, matching = result
    assert fits(graph, inst.degrees)
    assert len(matching) == 3 and is_matching(matching)
    assert matching_number(graph) >= 3


def test_solve_term_rank_infeasible_classic_example():
    g = grounds(3, 3)
    inst = Instance.make(
        g,
        degrees=DegreeSpec(g, (2, 2, 0), (2, 2, 0)),
        matroid_s=Matroid.uniform(g.s_ids, 3),
        matroid_t=Matroid.uniform(g.t_ids, 3),
        target_rank=3,
    )
    result = solve_term_rank(inst)
    assert isinstance(result, ViolationCert)
    assert result.lhs > result.rhs


def test_arc_cover_dataclass_basics():
    cover = ArcCover(((0, 0), (0, 0)))
    assert cover.size == 2
