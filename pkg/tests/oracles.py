"""Independent naive implementations used as test oracles.

Everything here works on plain tuples, sets, and itertools so that a bug in
the package's bitmask machinery cannot hide in its own oracle.
"""

from __future__ import annotations

from itertools import combinations


def subsets(items):
    items = list(items)
    for r in range(len(items) + 1):
        yield from (frozenset(c) for c in combinations(items, r))


def naive_neighborhood(edges, t_subset) -> frozenset:
    return frozenset(s for s, t in edges if t in t_subset)


def naive_cut(edges, s_subset, t_subset) -> int:
    return sum(1 for s, t in edges if s in s_subset and t in t_subset)


def is_matching(edge_list) -> bool:
    left = [s for s, _ in edge_list]
    right = [t for _, t in edge_list]
    return len(set(left)) == len(left) and len(set(right)) == len(right)


def naive_matching_number(edges) -> int:
    edges = sorted(set(edges))
    best = 0
    for r in range(len(edges), 0, -1):
        if r <= best:
            break
        for combo in combinations(edges, r):
            if is_matching(combo):
                best = r
                break
    return best


def naive_bases(rank_of, n) -> list[frozenset]:
    full = rank_of(frozenset(range(n)))
    out = []
    for sub in subsets(range(n)):
        if len(sub) == full and rank_of(sub) == full:
            out.append(sub)
    return out


def naive_corank_via_bases(rank_of, n, t_subset) -> int:
    return min(len(t_subset & basis) for basis in naive_bases(rank_of, n))


def rank_over_names(matroid):
    """Adapt a package matroid to a frozenset-of-indices rank callable."""

    def rank_of(index_set: frozenset) -> int:
        mask = 0
        for i in index_set:
            mask |= 1 << i
        return matroid.rank[mask]

    return rank_of


def naive_base_lift(h0_edges, n_s, n_t, m_t, demand_of, rank_of):
    """Literal evaluation of the both-sided demand lift over frozenset pairs.

    demand_of and rank_of take frozensets of T- and S-indices respectively.
    Returns a dict keyed by (frozenset S-part, frozenset T-part).
    """
    result = {}
    h0_deg_t = {j: sum(1 for _, t in h0_edges if t == j) for j in range(n_t)}
    for s_part in subsets(range(n_s)):
        for t_part in subsets(range(n_t)):
            closed = all(s in s_part for s, t in h0_edges if t in t_part)
            if not closed or not t_part:
                result[(s_part, t_part)] = 0
                continue
            value = demand_of(t_part) - rank_of(s_part)
            if len(t_part) == 1:
                (j,) = t_part
                value = max(value, m_t[j] - len(s_part) + h0_deg_t[j])
            result[(s_part, t_part)] = value
    return result


def naive_source_only_lift(h0_edges, n_s, n_t, demand_of, rank_of):
    result = {}
    for s_part in subsets(range(n_s)):
        for t_part in subsets(range(n_t)):
            closed = all(s in s_part for s, t in h0_edges if t in t_part)
            if closed:
                result[(s_part, t_part)] = demand_of(t_part) - rank_of(s_part)
            else:
                result[(s_part, t_part)] = 0
    return result


def naive_subgraph_exists(
    host_edges, m_s, m_t, *, n_t=None, h0_edges=(), demand_of=None, rank_of=None
):
    """Exhaustive search by edge-count combinations, not by DFS.

    Looks for a subgraph of the host with the exact degrees whose union with
    the initial edges satisfies the neighborhood-rank demand (when given).
    """
    host_edges = sorted(set(host_edges))
    gamma = sum(m_s)
    if m_t is not None and sum(m_t) != gamma:
        return False
    if n_t is None:
        n_t = len(m_t) if m_t is not None else 0
    for combo in combinations(host_edges, gamma):
        ok = True
        for i, want in enumerate(m_s):
            if sum(1 for s, _ in combo if s == i) != want:
                ok = False
                break
        if ok and m_t is not None:
            for j, want in enumerate(m_t):
                if sum(1 for _, t in combo if t == j) != want:
                    ok = False
                    break
        if not ok:
            continue
        if demand_of is not None:
            combined = list(combo) + list(h0_edges)
            for t_part in subsets(range(n_t)):
                nbrs = frozenset(s for s, t in combined if t in t_part)
                if rank_of(nbrs) < demand_of(t_part):
                    ok = False
                    break
        if ok:
            return True
    return False
