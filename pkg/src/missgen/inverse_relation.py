"""NI blocks, their correspondence with missing-generator blocks, and where
additive inverses of generators land.

For ``p = 1 (mod 4)`` the negative of a generator stays in its own block. For
``p = 3 (mod 4)`` negating a whole block gives exactly one NI block, and
following that through the block/NI correspondence pairs unicycles with
unicycles: the relation S.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import classify
from .digraph import MissingDigraph, MissingPartition
from .errors import StructuralViolation, UnsupportedPrimeClass
from .modmath import PrimeContext, element_order


@dataclass(frozen=True, eq=False)
class NIPartition:
    """NI sets sorted by smallest element; ``f_map[block] -> ni index``."""

    ctx: PrimeContext
    ni_blocks: tuple[tuple[int, ...], ...]
    f_map: tuple[int, ...]
    ni_block_of: dict[int, int]

    def f_inverse(self, ni_index: int) -> int:
        return self.f_map.index(ni_index)


def build_ni_partition(ctx: PrimeContext, partition: MissingPartition) -> NIPartition:
    if not ctx.is_p3:
        raise UnsupportedPrimeClass(f"p={ctx.p} is outside the three-factor class")
    table = classify.ni_table(ctx)
    per_block = []
    for block in partition.blocks:
        first = table.row_of(block[0])
        for g in block[1:]:
            if not np.array_equal(table.row_of(g), first):
                raise StructuralViolation(f"p={ctx.p}: NI differs inside block {block}")
        per_block.append(tuple(np.flatnonzero(first).tolist()))

    ni_blocks = tuple(sorted(set(per_block)))
    if len(ni_blocks) != len(per_block):
        raise StructuralViolation(f"p={ctx.p}: f is not injective")
    size = classify.cardinality_N(ctx.pm1)
    ni_block_of: dict[int, int] = {}
    for idx, nb in enumerate(ni_blocks):
        if len(nb) != size:
            raise StructuralViolation(f"p={ctx.p}: NI block of size {len(nb)}, expected {size}")
        for r in nb:
            if r in ni_block_of:
                raise StructuralViolation(f"p={ctx.p}: NI blocks overlap at {r}")
            ni_block_of[r] = idx
    if len(ni_blocks) != (ctx.q1 - 1) * (ctx.q2 - 1) // 2:
        raise StructuralViolation(f"p={ctx.p}: {len(ni_blocks)} NI blocks")
    f_map = tuple(ni_blocks.index(nb) for nb in per_block)
    return NIPartition(ctx, ni_blocks, f_map, ni_block_of)


def expected_order_counts(ctx: PrimeContext, size: int) -> list[tuple[int, int]]:
    i = ctx.i
    return [(k, size // 2**k if k < i else size // 2 ** (k - 1)) for k in range(1, i + 1)]


def count_generators_by_order(ni_block, ctx: PrimeContext) -> list[tuple[int, int]]:
    """How many elements of an NI block generate the subgroup of order ``(p-1)/2^k``.

    Every element must have such an order for some ``1 <= k <= i``, and the
    counts must halve with ``k`` except that the last two are equal.
    """
    counts = {k: 0 for k in range(1, ctx.i + 1)}
    for r in ni_block:
        d = (ctx.p - 1) // element_order(r, ctx)
        k = d.bit_length() - 1
        if d != 1 << k or k not in counts:
            raise StructuralViolation(f"p={ctx.p}: {r} has order (p-1)/{d}")
        counts[k] += 1
    observed = sorted(counts.items())
    if observed != expected_order_counts(ctx, len(ni_block)):
        raise StructuralViolation(
            f"p={ctx.p}: order counts {observed} != {expected_order_counts(ctx, len(ni_block))}"
        )
    return observed


@dataclass(frozen=True)
class Location:
    """Where ``p - g`` lives: a missing-generator block or an NI block."""

    kind: str  # "block" or "ni"
    index: int
    members: tuple[int, ...]


def inverse_location(
    g: int, ctx: PrimeContext, partition: MissingPartition, ni_partition: NIPartition
) -> Location:
    p = ctx.p
    neg = p - g
    own = partition.block_of[g]
    if p % 4 == 1:
        if partition.block_of.get(neg) != own:
            raise StructuralViolation(f"p={p}: {neg} is not in the block of {g}")
        return Location("block", own, partition.blocks[own])
    idx = ni_partition.ni_block_of.get(neg)
    if idx is None:
        raise StructuralViolation(f"p={p}: {neg} lies in no NI block")
    negated = tuple(sorted(p - x for x in partition.blocks[own]))
    if negated != ni_partition.ni_blocks[idx]:
        raise StructuralViolation(f"p={p}: negated block of {g} is not an NI block")
    return Location("ni", idx, ni_partition.ni_blocks[idx])


class SCharacter(enum.Enum):
    REFLEXIVE = "Reflexive"
    SYMMETRIC = "Symmetric"
    NOT_APPLICABLE = "NotApplicable"


@dataclass(frozen=True)
class RelationS:
    """Pairs of 1-based unicycle labels; the character is derived from them."""

    labels: tuple[int, ...]
    pairs: frozenset[tuple[int, int]]

    @property
    def character(self) -> SCharacter:
        if all(i == j for i, j in self.pairs):
            return SCharacter.REFLEXIVE
        if all((j, i) in self.pairs for i, j in self.pairs):
            return SCharacter.SYMMETRIC
        raise StructuralViolation(f"relation {sorted(self.pairs)} is neither reflexive nor symmetric")


def relation_S(ctx: PrimeContext, digraph: MissingDigraph, ni_partition: NIPartition) -> RelationS:
    """Map each unicycle to the unicycle whose NI sets hold its negated generators.

    Every generator of every cycle is located, so a cycle that splits its
    negatives across two target cycles is reported rather than hidden.
    """
    if not ctx.is_p3 or ctx.p % 4 != 3:
        raise UnsupportedPrimeClass(f"relation S needs a three-factor prime = 3 mod 4, got {ctx.p}")
    part = digraph.partition
    cycle_of_block = {v: label for label, cyc in enumerate(digraph.cycles, start=1) for v in cyc}
    pairs = set()
    for label, cyc in enumerate(digraph.cycles, start=1):
        targets = set()
        for v in cyc:
            for g in part.blocks[v]:
                idx = ni_partition.ni_block_of.get(ctx.p - g)
                if idx is None:
                    raise StructuralViolation(f"p={ctx.p}: -{g} lies in no NI block")
                targets.add(cycle_of_block[ni_partition.f_inverse(idx)])
        if len(targets) != 1:
            raise StructuralViolation(f"p={ctx.p}: cycle {label} negates into cycles {sorted(targets)}")
        pairs.add((label, targets.pop()))
    rel = RelationS(tuple(range(1, len(digraph.cycles) + 1)), frozenset(pairs))
    rel.character  # validates
    return rel


def s_character_predicate(ctx: PrimeContext, n: int) -> SCharacter:
    """Predict S from the cycle length alone.

    Reflexive iff ``2^n = 1 (mod q1 q2)``; symmetric iff ``n`` is odd or
    ``2^n = -1``. Both or neither holding is reported as a violation.
    """
    if not ctx.is_p3 or ctx.p % 4 != 3:
        raise UnsupportedPrimeClass(f"relation S needs a three-factor prime = 3 mod 4, got {ctx.p}")
    m = ctx.q1q2
    t = pow(2, n, m)
    reflexive = t == 1
    symmetric = n % 2 == 1 or t == m - 1
    if reflexive == symmetric:
        raise StructuralViolation(f"p={ctx.p}, n={n}: 2^n = {t} mod {m} fits neither/both cases")
    return SCharacter.REFLEXIVE if reflexive else SCharacter.SYMMETRIC
