"""Matroid rank oracles materialized as full rank tables.

Ground sets are small enough that the table over all subsets fits in memory,
which makes axiom validation and every later supermodularity check exhaustive
instead of sampled.  Instances are immutable once validated.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InstanceError


@dataclass(frozen=True)
class RankViolation:
    """First failed rank axiom, with the witnessing subset masks."""

    axiom: str  # "R1" (normalization/subcardinality), "R2" (monotone), "R3" (submodular)
    masks: tuple[int, ...]
    detail: str

    def __str__(self) -> str:
        return f"{self.axiom} violated at masks {self.masks}: {self.detail}"


def validate_rank_table(n: int, rank: Sequence[int]) -> RankViolation | None:
    """Exhaustively check the rank axioms over every pair of subsets.

    Returns the first violation in a deterministic scan order, or None.
    """
    size = 1 << n
    if len(rank) != size:
        raise InstanceError(f"rank table must have {size} entries, got {len(rank)}")
    if rank[0] != 0:
        return RankViolation("R1", (0,), f"rank of the empty set is {rank[0]}, not 0")
    for a in range(size):
        if rank[a] < 0:
            return RankViolation("R1", (a,), f"rank {rank[a]} is negative")
        if rank[a] > a.bit_count():
            return RankViolation("R1", (a,), f"rank {rank[a]} exceeds the set size {a.bit_count()}")
    for a in range(size):
        ra = rank[a]
        for b in range(size):
            if a & b == a and ra > rank[b]:
                return RankViolation("R2", (a, b), f"rank drops from {ra} to {rank[b]} on a superset")
    for a in range(size):
        ra = rank[a]
        for b in range(a + 1, size):
            if ra + rank[b] < rank[a | b] + rank[a & b]:
                return RankViolation(
                    "R3", (a, b),
                    f"{ra}+{rank[b]} < {rank[a | b]}+{rank[a & b]} for union/intersection",
                )
    return None


@dataclass(frozen=True)
class Matroid:
    """A matroid given by its ground ordering and a validated full rank table."""

    ground: tuple[str, ...]
    rank: tuple[int, ...]
    kind: str = "explicit"

    def __post_init__(self):
        object.__setattr__(self, "ground", tuple(str(x) for x in self.ground))
        object.__setattr__(self, "rank", tuple(int(v) for v in self.rank))
        if len(set(self.ground)) != len(self.ground):
            raise InstanceError("matroid ground elements must be distinct")
        violation = validate_rank_table(len(self.ground), self.rank)
        if violation is not None:
            raise InstanceError(f"invalid rank table ({self.kind}): {violation}")

    @property
    def n(self) -> int:
        return len(self.ground)

    @property
    def full_rank(self) -> int:
        return self.rank[(1 << self.n) - 1]

    def rank_of(self, mask: int) -> int:
        if mask < 0 or mask >= 1 << self.n:
            raise InstanceError("subset is not contained in the matroid ground set")
        return self.rank[mask]

    @classmethod
    def uniform(cls, ground, k: int) -> "Matroid":
        ground = tuple(ground)
        if not 0 <= k <= len(ground):
            raise InstanceError(f"uniform rank {k} out of range for ground of size {len(ground)}")
        table = tuple(min(k, a.bit_count()) for a in range(1 << len(ground)))
        return cls(ground, table, kind=f"uniform({k})")

    @classmethod
    def free(cls, ground) -> "Matroid":
        ground = tuple(ground)
        table = tuple(a.bit_count() for a in range(1 << len(ground)))
        return cls(ground, table, kind="free")

    @classmethod
    def partition(cls, ground, blocks, caps) -> "Matroid":
        """rank(A) = sum over blocks of min(cap, |A inter block|).

        Blocks must be disjoint subsets of the ground set; uncovered elements
        are loops.
        """
        ground = tuple(str(x) for x in ground)
        index = {name: i for i, name in enumerate(ground)}
        if len(blocks) != len(caps):
            raise InstanceError("partition matroid needs one cap per block")
        block_masks: list[int] = []
        seen = 0
        for block in blocks:
            mask = 0
            for name in block:
                if name not in index:
                    raise InstanceError(f"block element {name!r} is not in the ground set")
                bit = 1 << index[name]
                if seen & bit:
                    raise InstanceError(f"element {name!r} appears in two blocks")
                seen |= bit
                mask |= bit
            if mask == 0:
                raise InstanceError("partition matroid blocks must be non-empty")
            block_masks.append(mask)
        caps = [int(c) for c in caps]
        if any(c < 0 for c in caps):
            raise InstanceError("partition matroid caps must be non-negative")
        table = [
            sum(min(c, (a & m).bit_count()) for m, c in zip(block_masks, caps))
            for a in range(1 << len(ground))
        ]
        return cls(ground, tuple(table), kind="partition")

    @classmethod
    def from_bases(cls, ground, bases) -> "Matroid":
        """rank(A) = max over listed bases of |A inter B|; validated afterwards."""
        ground = tuple(str(x) for x in ground)
        index = {name: i for i, name in enumerate(ground)}
        if not bases:
            raise InstanceError("explicit matroid needs at least one basis")
        basis_masks = []
        for basis in bases:
            mask = 0
            for name in basis:
                if name not in index:
                    raise InstanceError(f"basis element {name!r} is not in the ground set")
                mask |= 1 << index[name]
            basis_masks.append(mask)
        sizes = {m.bit_count() for m in basis_masks}
        if len(sizes) != 1:
            raise InstanceError("all bases must have the same cardinality")
        table = [
            max((a & b).bit_count() for b in basis_masks) for a in range(1 << len(ground))
        ]
        return cls(ground, tuple(table), kind="explicit")


def corank(m: Matroid, mask: int) -> int:
    """Complementary rank: how much removing the subset lowers the full rank.

    Equals the minimum overlap of the subset with any basis; monotone and
    fully supermodular.
    """
    if mask < 0 or mask >= 1 << m.n:
        raise InstanceError("subset is not contained in the matroid ground set")
    full = (1 << m.n) - 1
    return m.rank[full] - m.rank[full ^ mask]


def corank_values(m: Matroid) -> tuple[int, ...]:
    full = (1 << m.n) - 1
    top = m.rank[full]
    return tuple(top - m.rank[full ^ mask] for mask in range(1 << m.n))


def enumerate_bases(m: Matroid) -> list[int]:
    """All basis masks, ascending; the independent sets of full rank and size."""
    r = m.full_rank
    return [a for a in range(1 << m.n) if a.bit_count() == r and m.rank[a] == r]


def restrict(m: Matroid, keep_mask: int) -> Matroid:
    """Matroid restriction to the elements of ``keep_mask`` (used by shrinking)."""
    keep = [i for i in range(m.n) if keep_mask >> i & 1]
    ground = tuple(m.ground[i] for i in keep)
    table = []
    for a in range(1 << len(keep)):
        orig = 0
        for pos, i in enumerate(keep):
            if a >> pos & 1:
                orig |= 1 << i
        table.append(m.rank[orig])
    return Matroid(ground, tuple(table), kind="explicit")
