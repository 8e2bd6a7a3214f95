"""Ground sets, graphs, degree specifications, and their small-instance ops."""

from __future__ import annotations

import random

import pytest

from termrank.bigraph import (
    Bigraph,
    DegreeSpec,
    GroundSets,
    bipartite_complement,
    bits,
    cut_count,
    fits,
    graph_union,
    matching_number,
    neighborhood,
    submasks,
    supermasks,
)
from termrank.errors import InstanceError

from .oracles import naive_cut, naive_matching_number, naive_neighborhood


def grounds22():
    return GroundSets(("s1", "s2"), ("t1", "t2"))


def complete(grounds):
    return Bigraph(
        grounds,
        tuple((i, j) for i in range(grounds.n_s) for j in range(grounds.n_t)),
    )


def all_simple_graphs(grounds):
    cells = [(i, j) for i in range(grounds.n_s) for j in range(grounds.n_t)]
    for pick in range(1 << len(cells)):
        yield Bigraph(grounds, tuple(cells[c] for c in range(len(cells)) if pick >> c & 1))


def test_bit_helpers():
    assert list(bits(0b10110)) == [1, 2, 4]
    assert list(submasks(0b101)) == [0, 1, 4, 5]
    assert list(supermasks(0b001, 0b101)) == [1, 5]


def test_ground_sets_validation():
    with pytest.raises(InstanceError):
        GroundSets((), ("t1",))
    with pytest.raises(InstanceError):
        GroundSets(("a",), ("a",))
    with pytest.raises(InstanceError):
        GroundSets(tuple(f"s{i}" for i in range(9)), tuple(f"t{i}" for i in range(9)))
    small = GroundSets(("s1",), ("t1",), cap=2)
    assert small.n_v == 2


def test_ground_cap_env_override(monkeypatch):
    monkeypatch.setenv("TERMRANK_MAX_GROUND", "4")
    with pytest.raises(InstanceError):
        GroundSets(("s1", "s2", "s3"), ("t1", "t2"))
    monkeypatch.setenv("TERMRANK_MAX_GROUND", "not-a-number")
    with pytest.raises(InstanceError):
        GroundSets(("s1",), ("t1",))


def test_mask_split_roundtrip():
    g = GroundSets(("s1", "s2", "s3"), ("t1", "t2"))
    for s_mask in range(1 << 3):
        for t_mask in range(1 << 2):
            v = g.v_mask(s_mask, t_mask)
            assert g.split(v) == (s_mask, t_mask)


def test_complement_of_complete_is_empty():
    g = grounds22()
    assert bipartite_complement(complete(g)).edge_count == 0


def test_complement_of_empty_is_complete():
    g = grounds22()
    comp = bipartite_complement(Bigraph(g, ()))
    assert comp.edge_count == 4
    assert comp == complete(g)


def test_complement_single_edge():
    g = grounds22()
    comp = bipartite_complement(Bigraph(g, ((0, 0),)))
    assert set(comp.edges) == {(0, 1), (1, 0), (1, 1)}


def test_complement_rejects_multigraph():
    g = grounds22()
    with pytest.raises(InstanceError):
        bipartite_complement(Bigraph(g, ((0, 0), (0, 0))))


def test_complement_involution_all_small_graphs():
    for shape in ((2, 2), (2, 3)):
        g = GroundSets(
            tuple(f"s{i}" for i in range(shape[0])),
            tuple(f"t{j}" for j in range(shape[1])),
        )
        for graph in all_simple_graphs(g):
            assert bipartite_complement(bipartite_complement(graph)) == graph


def test_cut_complement_identity():
    g = GroundSets(("s1", "s2"), ("t1", "t2", "t3"))
    rng = random.Random(5)
    for graph in all_simple_graphs(g):
        comp = bipartite_complement(graph)
        for _ in range(4):
            x = rng.randrange(1 << g.n_s)
            y = rng.randrange(1 << g.n_t)
            assert (
                cut_count(graph, x, y) + cut_count(comp, x, y)
                == x.bit_count() * y.bit_count()
            )


def test_neighborhood_examples():
    g = grounds22()
    k22 = complete(g)
    assert neighborhood(k22, 0) == 0
    assert neighborhood(k22, 0b01) == 0b11
    pm = Bigraph(g, ((0, 0), (1, 1)))
    assert neighborhood(pm, 0b01) == 0b01


def test_neighborhood_union_property_and_oracle():
    g = GroundSets(("s1", "s2", "s3"), ("t1", "t2"))
    rng = random.Random(11)
    for graph in all_simple_graphs(g):
        for _ in range(4):
            y1 = rng.randrange(1 << g.n_t)
            y2 = rng.randrange(1 << g.n_t)
            assert neighborhood(graph, y1 | y2) == neighborhood(graph, y1) | neighborhood(
                graph, y2
            )
        y = rng.randrange(1 << g.n_t)
        want = naive_neighborhood(graph.edges, set(bits(y)))
        assert neighborhood(graph, y) == sum(1 << s for s in want)


def test_cut_count_examples():
    g = grounds22()
    assert cut_count(complete(g), g.s_all, g.t_all) == 4
    assert cut_count(complete(g), 0, g.t_all) == 0
    graph = Bigraph(g, ((0, 0), (0, 1), (1, 0)))
    assert cut_count(graph, 0b01, 0b01) == 1
    assert cut_count(graph, 0b01, 0b01) == naive_cut(graph.edges, {0}, {0})


def test_cut_count_validates_masks():
    g = grounds22()
    with pytest.raises(InstanceError):
        cut_count(complete(g), 0b100, 0)
    with pytest.raises(InstanceError):
        neighborhood(complete(g), 0b100)


def test_matching_number_examples():
    g = grounds22()
    assert matching_number(complete(g)) == 2
    assert matching_number(Bigraph(g, ())) == 0
    star = GroundSets(("s1",), ("t1", "t2", "t3"))
    assert matching_number(Bigraph(star, ((0, 0), (0, 1), (0, 2)))) == 1


def test_matching_number_against_brute_force():
    g = GroundSets(("s1", "s2", "s3"), ("t1", "t2", "t3"))
    rng = random.Random(3)
    for _ in range(60):
        cells = [(i, j) for i in range(3) for j in range(3)]
        edges = tuple(e for e in cells if rng.random() < 0.5)
        graph = Bigraph(g, edges)
        assert matching_number(graph) == naive_matching_number(edges)


def test_matching_number_edge_monotonicity():
    g = GroundSets(("s1", "s2"), ("t1", "t2", "t3"))
    for graph in all_simple_graphs(g):
        nu = matching_number(graph)
        assert nu <= min(g.n_s, g.n_t)
        present = set(graph.edges)
        for i in range(g.n_s):
            for j in range(g.n_t):
                if (i, j) in present:
                    continue
                bigger = Bigraph(g, graph.edges + ((i, j),))
                assert nu <= matching_number(bigger) <= nu + 1


def test_fits_examples():
    g = grounds22()
    pm = Bigraph(g, ((0, 0), (1, 1)))
    assert fits(pm, DegreeSpec(g, (1, 1), (1, 1)))
    assert not fits(complete(g), DegreeSpec(g, (1, 1), (1, 1)))
    assert fits(Bigraph(g, ()), DegreeSpec(g, (0, 0), (0, 0)))


def test_fits_ground_mismatch():
    g = grounds22()
    other = GroundSets(("a", "b"), ("c", "d"))
    with pytest.raises(InstanceError):
        fits(Bigraph(g, ()), DegreeSpec(other, (0, 0), (0, 0)))


def test_degree_spec_totals_enforced():
    g = grounds22()
    with pytest.raises(InstanceError):
        DegreeSpec(g, (1, 1), (3, 0))
    with pytest.raises(InstanceError):
        DegreeSpec(g, (-1, 1), (0, 0))
    spec = DegreeSpec(g, (2, 1), (1, 2))
    assert spec.gamma == 3
    assert spec.sum_s(0b11) == 3
    assert spec.sum_t(0b10) == 2
    s_only = DegreeSpec(g, (2, 1), None)
    assert not s_only.full


def test_graph_union_counts_multiplicity():
    g = grounds22()
    a = Bigraph(g, ((0, 0),))
    b = Bigraph(g, ((0, 0), (1, 1)))
    u = graph_union(a, b)
    assert u.edge_count == 3
    assert not u.simple
    assert u.s_degree(0) == 2
