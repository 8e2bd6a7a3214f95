"""Exhaustive evaluators for the synthesis and augmentation feasibility
conditions, each returning either a pass or a violating certificate.

Every checker scans its whole quantifier family (desk scale keeps this
cheap), tracks the maximum left-hand side, and reports the first subset
combination attaining that maximum, in a fixed iteration order: right-class
subsets ascending, then left-class subsets, then part families in generation
order.  Certificates therefore serve as deterministic goldens.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

from .bigraph import (
    Bigraph,
    DegreeSpec,
    GroundSets,
    bipartite_complement,
    bits,
    cut_count,
    neighborhood,
    submasks,
    supermasks,
)
from .errors import InstanceError, PreconditionError
from .matroid import Matroid
from .setfun import (
    SetFunction,
    classify_supermodular,
    from_corank,
)


@dataclass(frozen=True)
class ViolationCert:
    """A witness that one inequality of a condition family fails.

    Masks are class-local (``x``/``xp`` over S, ``y``/``yp``/``parts`` over
    T).  ``lhs > rhs`` always holds; ``rhs`` is the degree total except for
    the vertex-cover condition, where it is 0.
    """

    which: str
    x: int = 0
    y: int = 0
    parts: tuple[int, ...] = ()
    xp: int | None = None
    yp: int | None = None
    lhs: int = 0
    rhs: int = 0


@dataclass(frozen=True)
class Instance:
    """A validated problem instance; unused fields stay None.

    The same container backs every checker: the augmentation problems use
    ``initial``/``degrees``/``matroid_s``/``demand``; the term-rank forms add
    ``matroid_t`` and ``target_rank``; the matching form reads ``initial`` as
    the graph under test.
    """

    grounds: GroundSets
    initial: Bigraph
    degrees: DegreeSpec | None = None
    matroid_s: Matroid | None = None
    demand: SetFunction | None = None
    matroid_t: Matroid | None = None
    target_rank: int | None = None

    @classmethod
    def make(
        cls,
        grounds: GroundSets,
        *,
        initial: Bigraph | None = None,
        degrees: DegreeSpec | None = None,
        matroid_s: Matroid | None = None,
        demand: SetFunction | None = None,
        matroid_t: Matroid | None = None,
        target_rank: int | None = None,
    ) -> "Instance":
        if initial is None:
            initial = Bigraph(grounds, ())
        if initial.grounds != grounds:
            raise InstanceError("initial graph lives on different ground sets")
        if not initial.simple:
            raise InstanceError("the initial graph must be simple")
        if degrees is not None and degrees.grounds != grounds:
            raise InstanceError("degree specification lives on different ground sets")
        if matroid_s is None:
            matroid_s = Matroid.free(grounds.s_ids)
        if matroid_s.ground != grounds.s_ids:
            raise InstanceError("left matroid ground does not match")
        if matroid_t is not None and matroid_t.ground != grounds.t_ids:
            raise InstanceError("right matroid ground does not match")
        if demand is None and matroid_t is not None:
            demand = from_corank(matroid_t)
        if demand is not None and demand.ground != grounds.t_ids:
            raise InstanceError("demand must be defined on the right class")
        if target_rank is not None and target_rank < 0:
            raise InstanceError("target rank must be non-negative")
        return cls(grounds, initial, degrees, matroid_s, demand, matroid_t, target_rank)

    @cached_property
    def complement(self) -> Bigraph:
        return bipartite_complement(self.initial)

    @cached_property
    def demand_pos_intersecting(self) -> bool:
        if self.demand is None:
            return False
        return classify_supermodular(self.demand, "intersecting", positively=True) is None

    @cached_property
    def demand_fully(self) -> bool:
        if self.demand is None:
            return False
        return classify_supermodular(self.demand, "full") is None

    @cached_property
    def demand_monotone(self) -> bool:
        if self.demand is None:
            return False
        vals = self.demand.values
        for mask in range(len(vals)):
            for j in bits(self.grounds.t_all & ~mask):
                if vals[mask | (1 << j)] < vals[mask]:
                    return False
        return True


def set_partitions(mask: int) -> Iterator[tuple[int, ...]]:
    """All partitions of the bits of ``mask`` into non-empty blocks.

    Generated by restricted growth: each element joins the existing blocks in
    order before opening a new one, so the order is deterministic.
    """
    elems = list(bits(mask))
    if not elems:
        yield ()
        return

    blocks: list[int] = []

    def rec(idx: int) -> Iterator[tuple[int, ...]]:
        if idx == len(elems):
            yield tuple(blocks)
            return
        bit = 1 << elems[idx]
        for i in range(len(blocks)):
            blocks[i] |= bit
            yield from rec(idx + 1)
            blocks[i] ^= bit
        blocks.append(bit)
        yield from rec(idx + 1)
        blocks.pop()

    yield from rec(0)


def subpartitions(mask: int) -> Iterator[tuple[int, ...]]:
    """All families of non-empty pairwise disjoint blocks inside ``mask``.

    The empty family comes first; then partitions of every submask ascending.
    """
    for sub in submasks(mask):
        yield from set_partitions(sub)


def _packings(
    parts: list[int], gains: dict[int, int], avail: int, start: int = 0
) -> Iterator[tuple[tuple[int, ...], int]]:
    """Disjoint families drawn from ``parts`` inside ``avail``, with totals.

    Only parts with strictly positive gain are ever offered, which is sound
    for maximization: dropping a non-positive part never lowers the total.
    """
    yield (), 0
    for idx in range(start, len(parts)):
        p = parts[idx]
        if p & ~avail:
            continue
        for rest, total in _packings(parts, gains, avail & ~p, idx + 1):
            yield (p,) + rest, gains[p] + total


class _Max:
    __slots__ = ("lhs", "payload")

    def __init__(self):
        self.lhs: int | None = None
        self.payload = None

    def offer(self, lhs: int, payload) -> None:
        if self.lhs is None or lhs > self.lhs:
            self.lhs = lhs
            self.payload = payload


def neighborhood_table(g: Bigraph) -> list[int]:
    """S-neighborhood mask of every T-subset of ``g``, indexed by T-mask."""
    table = [0] * (1 << g.grounds.n_t)
    for y in range(1, len(table)):
        low = y & -y
        table[y] = table[y ^ low] | g.t_adj[low.bit_length() - 1]
    return table


def _bump(stats: dict | None, key: str, amount: int = 1) -> None:
    if stats is not None:
        stats[key] = stats.get(key, 0) + amount


def _require_full_degrees(degrees: DegreeSpec | None) -> DegreeSpec:
    if degrees is None or degrees.m_t is None:
        raise InstanceError("this condition needs degrees on both classes")
    return degrees


def check_ore(g0: Bigraph, degrees: DegreeSpec, stats: dict | None = None) -> ViolationCert | None:
    """Degree-specified subgraph existence in a given simple host graph."""
    if not g0.simple:
        raise InstanceError("the host graph must be simple")
    degrees = _require_full_degrees(degrees)
    if degrees.grounds != g0.grounds:
        raise InstanceError("degree specification lives on different ground sets")
    g = g0.grounds
    gamma = degrees.gamma
    cut = g0.cut_table
    best = _Max()
    for y in range(1 << g.n_t):
        ty = degrees.sum_t(y)
        row_fixed = ty
        for x in range(1 << g.n_s):
            lhs = degrees.sum_s(x) + row_fixed - cut[x][y]
            _bump(stats, "ineq_evals")
            best.offer(lhs, (x, y))
    if best.lhs <= gamma:
        return None
    x, y = best.payload
    return ViolationCert("ore", x=x, y=y, lhs=best.lhs, rhs=gamma)


def _useful_parts_by_x(
    inst: Instance, nbr0: list[int]
) -> tuple[list[list[int]], list[dict[int, int]]]:
    g = inst.grounds
    rank = inst.matroid_s.rank
    dem = inst.demand.values
    parts_by_x: list[list[int]] = []
    gains_by_x: list[dict[int, int]] = []
    for x in range(1 << g.n_s):
        parts: list[int] = []
        gains: dict[int, int] = {}
        for part in range(1, 1 << g.n_t):
            gain = dem[part] - rank[x | nbr0[part]]
            if gain > 0:
                parts.append(part)
                gains[part] = gain
        parts_by_x.append(parts)
        gains_by_x.append(gains)
    return parts_by_x, gains_by_x


def check_msmt(inst: Instance, stats: dict | None = None) -> ViolationCert | None:
    """Main augmentation condition: both degree sides, matroid-covered demand.

    Quantifies over a left subset, a right subset, and every subpartition of
    the remaining right nodes; each part contributes its demand minus the
    rank of the left subset joined with the part's initial neighborhood.
    """
    degrees = _require_full_degrees(inst.degrees)
    if inst.demand is None:
        raise InstanceError("this condition needs a demand on the right class")
    if not inst.demand_pos_intersecting:
        raise PreconditionError("demand is not positively intersecting supermodular")
    g = inst.grounds
    gamma = degrees.gamma
    cut = inst.complement.cut_table
    nbr0 = neighborhood_table(inst.initial)
    parts_by_x, gains_by_x = _useful_parts_by_x(inst, nbr0)
    best = _Max()
    for y in range(1 << g.n_t):
        avail = g.t_all ^ y
        ty = degrees.sum_t(y)
        for x in range(1 << g.n_s):
            base = degrees.sum_s(x) + ty - cut[x][y]
            for parts, total in _packings(parts_by_x[x], gains_by_x[x], avail):
                _bump(stats, "ineq_evals")
                best.offer(base + total, (x, y, parts))
    if best.lhs <= gamma:
        return None
    x, y, parts = best.payload
    return ViolationCert("msmt", x=x, y=y, parts=parts, lhs=best.lhs, rhs=gamma)


def check_ms_only(inst: Instance, stats: dict | None = None) -> ViolationCert | None:
    """Variant with degrees prescribed on the left class only.

    Besides the subpartition condition (now over all of T), each left node
    must have room for its new edges next to its initial ones; that per-node
    bound is checked first and reported with the right class size as rhs.
    """
    if inst.degrees is None:
        raise InstanceError("this condition needs left degrees")
    if inst.demand is None:
        raise InstanceError("this condition needs a demand on the right class")
    if not inst.demand_pos_intersecting:
        raise PreconditionError("demand is not positively intersecting supermodular")
    g = inst.grounds
    degrees = inst.degrees
    worst = _Max()
    for i in range(g.n_s):
        lhs = degrees.m_s[i] + inst.initial.s_degree(i)
        _bump(stats, "ineq_evals")
        worst.offer(lhs, i)
    if worst.lhs > g.n_t:
        return ViolationCert(
            "ms_only_degree", x=1 << worst.payload, lhs=worst.lhs, rhs=g.n_t
        )
    gamma = degrees.gamma
    nbr0 = neighborhood_table(inst.initial)
    parts_by_x, gains_by_x = _useful_parts_by_x(inst, nbr0)
    best = _Max()
    for x in range(1 << g.n_s):
        base = degrees.sum_s(x)
        for parts, total in _packings(parts_by_x[x], gains_by_x[x], g.t_all):
            _bump(stats, "ineq_evals")
            best.offer(base + total, (x, parts))
    if best.lhs <= gamma:
        return None
    x, parts = best.payload
    return ViolationCert("ms_only", x=x, parts=parts, lhs=best.lhs, rhs=gamma)


def check_fully(inst: Instance, stats: dict | None = None) -> ViolationCert | None:
    """Simplified condition valid when the demand is fully supermodular.

    Requires the plain degree condition plus a single-part version of the
    subpartition condition; equivalent to the general condition for fully
    supermodular demands.
    """
    degrees = _require_full_degrees(inst.degrees)
    if inst.demand is None:
        raise InstanceError("this condition needs a demand on the right class")
    if not inst.demand_fully:
        raise PreconditionError("demand is not fully supermodular")
    ore = check_ore(inst.complement, degrees, stats=stats)
    if ore is not None:
        return ore
    g = inst.grounds
    gamma = degrees.gamma
    cut = inst.complement.cut_table
    nbr0 = neighborhood_table(inst.initial)
    dem = inst.demand.values
    rank = inst.matroid_s.rank
    best = _Max()
    for y in range(1 << g.n_t):
        ty = degrees.sum_t(y)
        for x in range(1 << g.n_s):
            base = degrees.sum_s(x) + ty - cut[x][y]
            for t0 in submasks(g.t_all ^ y):
                lhs = base + dem[t0] - rank[x | nbr0[t0]]
                _bump(stats, "ineq_evals")
                best.offer(lhs, (x, y, t0))
    if best.lhs <= gamma:
        return None
    x, y, t0 = best.payload
    parts = (t0,) if t0 else ()
    return ViolationCert("fully", x=x, y=y, parts=parts, lhs=best.lhs, rhs=gamma)


def _ore0_max(degrees: DegreeSpec, stats: dict | None = None) -> tuple[int, tuple[int, int]]:
    g = degrees.grounds
    best = _Max()
    for y in range(1 << g.n_t):
        ty = degrees.sum_t(y)
        ny = y.bit_count()
        for x in range(1 << g.n_s):
            lhs = degrees.sum_s(x) + ty - x.bit_count() * ny
            _bump(stats, "ineq_evals")
            best.offer(lhs, (x, y))
    return best.lhs, best.payload


def check_ore0(degrees: DegreeSpec, stats: dict | None = None) -> ViolationCert | None:
    """Realizability of a degree pair by a simple bigraph (complete host)."""
    degrees = _require_full_degrees(degrees)
    lhs, (x, y) = _ore0_max(degrees, stats)
    if lhs <= degrees.gamma:
        return None
    return ViolationCert("ore0", x=x, y=y, lhs=lhs, rhs=degrees.gamma)


def ryser_prefix_max(degrees: DegreeSpec, ell: int) -> int:
    """Largest left-hand side over prefixes of the sorted degree sequences.

    For any subset size the sum is maximized by the largest degree values, so
    this equals the maximum over all subset pairs; the full checker asserts
    that on every call.
    """
    degrees = _require_full_degrees(degrees)
    g = degrees.grounds
    pref_s = [0]
    for v in sorted(degrees.m_s, reverse=True):
        pref_s.append(pref_s[-1] + v)
    pref_t = [0]
    for v in sorted(degrees.m_t, reverse=True):
        pref_t.append(pref_t[-1] + v)
    return max(
        pref_s[i] + pref_t[j] - i * j + (ell - i - j)
        for i in range(g.n_s + 1)
        for j in range(g.n_t + 1)
    )


def check_ryser(degrees: DegreeSpec, ell: int, stats: dict | None = None) -> ViolationCert | None:
    """Classic max term rank condition for a degree pair and matching target.

    Raises a precondition error when the degree pair is not realizable at
    all.  Evaluates both the full quantification over subsets and the
    reduction to sorted-prefix sets and insists they agree.
    """
    degrees = _require_full_degrees(degrees)
    g = degrees.grounds
    if not 0 <= ell <= g.n_t:
        raise InstanceError(f"matching target {ell} out of range for |T| = {g.n_t}")
    gamma = degrees.gamma
    best = _Max()
    for y in range(1 << g.n_t):
        ty = degrees.sum_t(y)
        ny = y.bit_count()
        for x in range(1 << g.n_s):
            nx = x.bit_count()
            lhs = degrees.sum_s(x) + ty - nx * ny + (ell - nx - ny)
            _bump(stats, "ineq_evals")
            best.offer(lhs, (x, y))
    prefix_max = ryser_prefix_max(degrees, ell)
    if prefix_max != best.lhs:
        raise AssertionError(
            f"prefix reduction disagrees with full quantification: {prefix_max} vs {best.lhs}"
        )
    ore0 = check_ore0(degrees, stats)
    if ore0 is not None:
        raise PreconditionError("degree pair is not realizable by any simple bigraph", ore0)
    if best.lhs <= gamma:
        return None
    x, y = best.payload
    return ViolationCert("ryser", x=x, y=y, lhs=best.lhs, rhs=gamma)


def _uncovered_t_table(graph: Bigraph) -> list[int]:
    """For each S-mask: the T-nodes forced into any vertex cover using that mask."""
    table = [0] * (1 << graph.grounds.n_s)
    edge_set = set(graph.edges)
    for xp in range(len(table)):
        needed = 0
        for s, t in edge_set:
            if not xp >> s & 1:
                needed |= 1 << t
        table[xp] = needed
    return table


def check_brualdi(
    graph: Bigraph, matroid_s: Matroid, matroid_t: Matroid, stats: dict | None = None
) -> ViolationCert | None:
    """Existence of a matching covering bases of both matroids.

    Checked over every vertex cover (rank sum must reach the common rank) and
    via the equivalent neighborhood-rank form; the two verdicts are computed
    independently and must agree.
    """
    g = graph.grounds
    if matroid_s.ground != g.s_ids or matroid_t.ground != g.t_ids:
        raise InstanceError("matroids do not live on the graph's ground sets")
    if matroid_s.full_rank != matroid_t.full_rank:
        raise InstanceError(
            f"rank mismatch: {matroid_s.full_rank} on the left vs {matroid_t.full_rank} on the right"
        )
    ell = matroid_s.full_rank
    needed = _uncovered_t_table(graph)
    best = _Max()
    for yp in range(1 << g.n_t):
        for xp in range(1 << g.n_s):
            if needed[xp] & ~yp:
                continue
            lhs = ell - matroid_s.rank[xp] - matroid_t.rank[yp]
            _bump(stats, "ineq_evals")
            best.offer(lhs, (xp, yp))
    verdict_cover = best.lhs <= 0
    nbr = neighborhood_table(graph)
    full_t = g.t_all
    verdict_nbr = True
    for y in range(1 << g.n_t):
        dem = ell - matroid_t.rank[full_t ^ y]
        if matroid_s.rank[nbr[y]] < dem:
            verdict_nbr = False
            break
    if verdict_cover != verdict_nbr:
        raise AssertionError("vertex-cover and neighborhood-rank forms disagree")
    if verdict_cover:
        return None
    xp, yp = best.payload
    return ViolationCert("brualdi", xp=xp, yp=yp, lhs=best.lhs, rhs=0)


def _resolve_common_rank(inst: Instance) -> int:
    if inst.matroid_s is None or inst.matroid_t is None:
        raise InstanceError("this condition needs matroids on both classes")
    rs, rt = inst.matroid_s.full_rank, inst.matroid_t.full_rank
    if inst.target_rank is not None and inst.target_rank > min(rs, rt):
        raise InstanceError(
            f"target rank {inst.target_rank} exceeds the smaller matroid rank {min(rs, rt)}"
        )
    if rs != rt:
        raise InstanceError(f"rank mismatch: {rs} on the left vs {rt} on the right")
    if inst.target_rank is not None and inst.target_rank != rs:
        raise InstanceError(
            f"both matroids must have rank equal to the target {inst.target_rank}, got {rs}"
        )
    return rs


def check_ryser_gen(inst: Instance, stats: dict | None = None) -> ViolationCert | None:
    """Matroidal term rank augmentation condition.

    Quantifies over nested subset pairs whose outer pair covers all initial
    edges.  Internally also evaluates the reduction to the fully supermodular
    condition with the right matroid's complementary rank as demand, and
    insists the two verdicts agree.
    """
    degrees = _require_full_degrees(inst.degrees)
    ell = _resolve_common_rank(inst)
    ore = check_ore(inst.complement, degrees, stats=stats)
    if ore is not None:
        result: ViolationCert | None = ore
    else:
        g = inst.grounds
        gamma = degrees.gamma
        cut = inst.complement.cut_table
        rank_s = inst.matroid_s.rank
        rank_t = inst.matroid_t.rank
        needed = _uncovered_t_table(inst.initial)
        best = _Max()
        for y in range(1 << g.n_t):
            ty = degrees.sum_t(y)
            for x in range(1 << g.n_s):
                base = degrees.sum_s(x) + ty - cut[x][y]
                for yp in supermasks(y, g.t_all):
                    rt = rank_t[yp]
                    for xp in supermasks(x, g.s_all):
                        if needed[xp] & ~yp:
                            continue
                        lhs = base + ell - rank_s[xp] - rt
                        _bump(stats, "ineq_evals")
                        best.offer(lhs, (x, y, xp, yp))
        if best.lhs <= gamma:
            result = None
        else:
            x, y, xp, yp = best.payload
            result = ViolationCert(
                "ryser_gen", x=x, y=y, xp=xp, yp=yp, lhs=best.lhs, rhs=gamma
            )
    reduced = Instance.make(
        inst.grounds,
        initial=inst.initial,
        degrees=inst.degrees,
        matroid_s=inst.matroid_s,
        matroid_t=inst.matroid_t,
    )
    via_fully = check_fully(reduced)
    if (result is None) != (via_fully is None):
        raise AssertionError("nested-pair form disagrees with the demand-lift reduction")
    return result


def check_ryser_novel(
    inst: Instance, ell: int, stats: dict | None = None
) -> ViolationCert | None:
    """Uniform-matroid specialization: ranks replaced by plain cardinalities."""
    degrees = _require_full_degrees(inst.degrees)
    ore = check_ore(inst.complement, degrees, stats=stats)
    if ore is not None:
        return ore
    g = inst.grounds
    gamma = degrees.gamma
    cut = inst.complement.cut_table
    needed = _uncovered_t_table(inst.initial)
    best = _Max()
    for y in range(1 << g.n_t):
        ty = degrees.sum_t(y)
        for x in range(1 << g.n_s):
            base = degrees.sum_s(x) + ty - cut[x][y]
            for yp in supermasks(y, g.t_all):
                for xp in supermasks(x, g.s_all):
                    if needed[xp] & ~yp:
                        continue
                    lhs = base + ell - xp.bit_count() - yp.bit_count()
                    _bump(stats, "ineq_evals")
                    best.offer(lhs, (x, y, xp, yp))
    if best.lhs <= gamma:
        return None
    x, y, xp, yp = best.payload
    return ViolationCert("ryser_novel", x=x, y=y, xp=xp, yp=yp, lhs=best.lhs, rhs=gamma)


def check_ryser_matroid(
    degrees: DegreeSpec,
    matroid_s: Matroid,
    matroid_t: Matroid,
    stats: dict | None = None,
) -> ViolationCert | None:
    """Synthesis specialization (no initial edges) of the matroidal condition."""
    degrees = _require_full_degrees(degrees)
    g = degrees.grounds
    if matroid_s.ground != g.s_ids or matroid_t.ground != g.t_ids:
        raise InstanceError("matroids do not live on the degree spec's ground sets")
    if matroid_s.full_rank != matroid_t.full_rank:
        raise InstanceError("rank mismatch between the two matroids")
    ell = matroid_s.full_rank
    gamma = degrees.gamma
    best = _Max()
    for y in range(1 << g.n_t):
        ty = degrees.sum_t(y)
        ny = y.bit_count()
        rt = matroid_t.rank[y]
        for x in range(1 << g.n_s):
            lhs = degrees.sum_s(x) + ty - x.bit_count() * ny + ell - matroid_s.rank[x] - rt
            _bump(stats, "ineq_evals")
            best.offer(lhs, (x, y))
    if best.lhs <= gamma:
        return None
    x, y = best.payload
    return ViolationCert("ryser_matroid", x=x, y=y, lhs=best.lhs, rhs=gamma)


def check_integrated(
    degrees: DegreeSpec,
    matroid_s: Matroid,
    matroid_t: Matroid,
    stats: dict | None = None,
) -> ViolationCert | None:
    """Single-inequality form folding realizability and the matroid condition.

    The rank slack enters through a positive part, so one family of
    inequalities covers both; the equivalence with the two separate checks is
    asserted on every call.
    """
    degrees = _require_full_degrees(degrees)
    g = degrees.grounds
    if matroid_s.ground != g.s_ids or matroid_t.ground != g.t_ids:
        raise InstanceError("matroids do not live on the degree spec's ground sets")
    if matroid_s.full_rank != matroid_t.full_rank:
        raise InstanceError("rank mismatch between the two matroids")
    ell = matroid_s.full_rank
    gamma = degrees.gamma
    best = _Max()
    for y in range(1 << g.n_t):
        ty = degrees.sum_t(y)
        ny = y.bit_count()
        rt = matroid_t.rank[y]
        for x in range(1 << g.n_s):
            slack = ell - matroid_s.rank[x] - rt
            lhs = degrees.sum_s(x) + ty - x.bit_count() * ny + max(slack, 0)
            _bump(stats, "ineq_evals")
            best.offer(lhs, (x, y))
    verdict = best.lhs <= gamma
    split = (
        check_ore0(degrees) is None
        and check_ryser_matroid(degrees, matroid_s, matroid_t) is None
    )
    if verdict != split:
        raise AssertionError("integrated form disagrees with the two-condition split")
    if verdict:
        return None
    x, y = best.payload
    return ViolationCert("integrated", x=x, y=y, lhs=best.lhs, rhs=gamma)


def check_csak_mon(inst: Instance, stats: dict | None = None) -> ViolationCert | None:
    """Monotone-demand synthesis form: the single part may be taken maximal."""
    degrees = _require_full_degrees(inst.degrees)
    if inst.initial.edge_count:
        raise InstanceError("this form applies only without initial edges")
    if inst.demand is None or not inst.demand_monotone:
        raise PreconditionError("demand must be monotone for the maximal-part form")
    ore0 = check_ore0(degrees, stats)
    if ore0 is not None:
        return ore0
    g = inst.grounds
    gamma = degrees.gamma
    dem = inst.demand.values
    rank = inst.matroid_s.rank
    best = _Max()
    for y in range(1 << g.n_t):
        ty = degrees.sum_t(y)
        ny = y.bit_count()
        rest = dem[g.t_all ^ y]
        for x in range(1 << g.n_s):
            lhs = degrees.sum_s(x) + ty - x.bit_count() * ny + rest - rank[x]
            _bump(stats, "ineq_evals")
            best.offer(lhs, (x, y))
    if best.lhs <= gamma:
        return None
    x, y = best.payload
    return ViolationCert("csak_mon", x=x, y=y, lhs=best.lhs, rhs=gamma)


def recompute_lhs(cert: ViolationCert, inst: Instance) -> int:
    """From-scratch evaluation of a certificate's left-hand side.

    Shares only the primitive graph and rank lookups with the checkers, not
    their enumeration machinery, so a corrupted certificate cannot slip
    through by construction.
    """
    which = cert.which
    g = inst.grounds
    deg = inst.degrees
    if which in ("ore", "msmt", "fully", "ryser_gen", "ryser_novel"):
        g0 = inst.complement
        base = deg.sum_s(cert.x) + deg.sum_t(cert.y) - cut_count(g0, cert.x, cert.y)
    if which == "ore":
        return base
    if which == "ore0":
        return (
            deg.sum_s(cert.x) + deg.sum_t(cert.y) - cert.x.bit_count() * cert.y.bit_count()
        )
    if which in ("msmt", "ms_only"):
        total = 0
        seen = 0
        for part in cert.parts:
            if part == 0 or part & seen or (which == "msmt" and part & cert.y):
                raise InstanceError("certificate parts are not a valid subpartition")
            seen |= part
            gamma_nbr = cert.x | neighborhood(inst.initial, part)
            total += inst.demand.value(part) - inst.matroid_s.rank_of(gamma_nbr)
        if which == "ms_only":
            return deg.sum_s(cert.x) + total
        return base + total
    if which == "ms_only_degree":
        i = cert.x.bit_length() - 1
        return deg.m_s[i] + inst.initial.s_degree(i)
    if which == "fully":
        t0 = cert.parts[0] if cert.parts else 0
        gamma_nbr = cert.x | neighborhood(inst.initial, t0)
        return base + inst.demand.value(t0) - inst.matroid_s.rank_of(gamma_nbr)
    if which == "ryser":
        nx, ny = cert.x.bit_count(), cert.y.bit_count()
        return deg.sum_s(cert.x) + deg.sum_t(cert.y) - nx * ny + (inst.target_rank - nx - ny)
    if which == "ryser_matroid":
        nx, ny = cert.x.bit_count(), cert.y.bit_count()
        ell = inst.matroid_s.full_rank
        return (
            deg.sum_s(cert.x) + deg.sum_t(cert.y) - nx * ny
            + ell - inst.matroid_s.rank_of(cert.x) - inst.matroid_t.rank_of(cert.y)
        )
    if which == "integrated":
        nx, ny = cert.x.bit_count(), cert.y.bit_count()
        ell = inst.matroid_s.full_rank
        slack = ell - inst.matroid_s.rank_of(cert.x) - inst.matroid_t.rank_of(cert.y)
        return deg.sum_s(cert.x) + deg.sum_t(cert.y) - nx * ny + max(slack, 0)
    if which == "brualdi":
        ell = inst.matroid_s.full_rank
        for s, t in inst.initial.edges:
            if not (cert.xp >> s & 1 or cert.yp >> t & 1):
                raise InstanceError("certificate sets do not cover the graph")
        return ell - inst.matroid_s.rank_of(cert.xp) - inst.matroid_t.rank_of(cert.yp)
    if which in ("ryser_gen", "ryser_novel"):
        if cert.x & ~cert.xp or cert.y & ~cert.yp:
            raise InstanceError("certificate outer sets do not contain the inner sets")
        for s, t in inst.initial.edges:
            if not (cert.xp >> s & 1 or cert.yp >> t & 1):
                raise InstanceError("certificate outer sets do not cover the initial edges")
        if which == "ryser_gen":
            ell = inst.matroid_s.full_rank
            return base + ell - inst.matroid_s.rank_of(cert.xp) - inst.matroid_t.rank_of(cert.yp)
        ell = inst.target_rank
        return base + ell - cert.xp.bit_count() - cert.yp.bit_count()
    if which == "csak_mon":
        nx, ny = cert.x.bit_count(), cert.y.bit_count()
        return (
            deg.sum_s(cert.x) + deg.sum_t(cert.y) - nx * ny
            + inst.demand.value(g.t_all ^ cert.y) - inst.matroid_s.rank_of(cert.x)
        )
    raise InstanceError(f"unknown certificate kind {which!r}")
