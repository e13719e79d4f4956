"""Partition of the generators into missing-generator sets and the digraph on it.

For ``p - 1 = 2^i q1^j1 q2^j2`` the distinct sets ``M(g)`` partition the
generators into blocks of equal size, and mapping a block to ``M`` of any of
its members is a permutation of the blocks. Its cycles all have the same
length, which yields the triplet ``(c, n, e)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import classify
from .errors import StructuralViolation, UnsupportedPrimeClass
from .modmath import PrimeContext, euler_phi, inverse_mod, sqrt4_roots


def _require_p3(ctx: PrimeContext) -> None:
    if not ctx.is_p3:
        raise UnsupportedPrimeClass(
            f"p={ctx.p}: p-1={ctx.pm1.value} does not have exactly three prime factors"
        )


@dataclass(frozen=True)
class MissingPartition:
    """Blocks sorted by their smallest generator; each block is sorted too."""

    ctx: PrimeContext
    blocks: tuple[tuple[int, ...], ...]
    block_of: dict[int, int]

    def __hash__(self):
        return hash((self.ctx, self.blocks))

    @property
    def e(self) -> int:
        return len(self.blocks[0])


def build_partition(ctx: PrimeContext) -> MissingPartition:
    """Group the generators by their (definitionally computed) ``M(g)``."""
    _require_p3(ctx)
    table = classify.missing_table(ctx)
    by_key: dict[bytes, tuple[int, ...]] = {}
    for row in table.rows:
        key = row.tobytes()
        if key not in by_key:
            by_key[key] = tuple(np.flatnonzero(row).tolist())
    blocks = tuple(sorted(by_key.values()))

    block_of: dict[int, int] = {}
    for idx, block in enumerate(blocks):
        for g in block:
            if g in block_of:
                raise StructuralViolation(f"p={ctx.p}: generator {g} lies in two blocks")
            block_of[g] = idx
    gens = table.generators.tolist()
    if sorted(block_of) != gens:
        raise StructuralViolation(f"p={ctx.p}: blocks do not cover the generators")
    e = classify.cardinality_M(ctx.pm1)
    if any(len(b) != e for b in blocks):
        raise StructuralViolation(f"p={ctx.p}: block sizes {sorted({len(b) for b in blocks})} != {e}")
    # every member of a block must have the same missing set
    for block in blocks:
        first = table.row_of(block[0])
        if any(not np.array_equal(table.row_of(g), first) for g in block[1:]):
            raise StructuralViolation(f"p={ctx.p}: members of {block} disagree on M(g)")
    return MissingPartition(ctx, blocks, block_of)


@dataclass(frozen=True)
class MissingDigraph:
    """``edges[u]`` is the successor block of ``u``; cycles list block indices.

    Cycles are ordered by their smallest generator and each one starts at the
    block holding that generator.
    """

    partition: MissingPartition
    edges: tuple[int, ...]
    cycles: tuple[tuple[int, ...], ...]

    def __hash__(self):
        return hash((self.partition, self.edges))

    def cycle_of(self, block: int) -> int:
        for label, cyc in enumerate(self.cycles):
            if block in cyc:
                return label
        raise KeyError(block)


def build_digraph(partition: MissingPartition) -> MissingDigraph:
    ctx = partition.ctx
    table = classify.missing_table(ctx)
    edges = []
    for block in partition.blocks:
        target = table.set_of(block[0])
        v = partition.block_of[min(target)]
        if set(partition.blocks[v]) != target:
            raise StructuralViolation(f"p={ctx.p}: M({block[0]}) is not a block")
        edges.append(v)
    if sorted(edges) != list(range(len(edges))):
        raise StructuralViolation(f"p={ctx.p}: in-degree is not 1 everywhere")

    seen = [False] * len(edges)
    cycles = []
    # blocks are sorted by minimum, so the first unseen block starts the next cycle
    for start in range(len(edges)):
        if seen[start]:
            continue
        cyc = []
        u = start
        while not seen[u]:
            seen[u] = True
            cyc.append(u)
            u = edges[u]
        cycles.append(tuple(cyc))
    lengths = {len(c) for c in cycles}
    if len(lengths) != 1:
        raise StructuralViolation(f"p={ctx.p}: unicycles of different sizes {sorted(lengths)}")
    if lengths == {1}:
        raise StructuralViolation(f"p={ctx.p}: self-loop in the missing-generator digraph")
    return MissingDigraph(partition, tuple(edges), tuple(cycles))


class Triplet(NamedTuple):
    c: int
    n: int
    e: int


NO_TRIPLET = Triplet(0, 0, 0)


def check_triplet(ctx: PrimeContext, t: Triplet) -> None:
    """Raise StructuralViolation unless ``t`` obeys the three triplet relations."""
    if not ctx.is_p3:
        if t != NO_TRIPLET:
            raise StructuralViolation(f"p={ctx.p}: expected (0,0,0), got {tuple(t)}")
        return
    c, n, e = t
    if c * n * e != euler_phi(ctx.pm1):
        raise StructuralViolation(f"p={ctx.p}: c*n*e={c * n * e} != phi(p-1)")
    if e != 2**ctx.i * ctx.q1 ** (ctx.j1 - 1) * ctx.q2 ** (ctx.j2 - 1):
        raise StructuralViolation(f"p={ctx.p}: e={e} has the wrong shape")
    if pow(4, n, ctx.q1q2) != 1:
        raise StructuralViolation(f"p={ctx.p}: 4^{n} != 1 mod {ctx.q1q2}")


def triplet_from_digraph(digraph: MissingDigraph) -> Triplet:
    return Triplet(len(digraph.cycles), len(digraph.cycles[0]), digraph.partition.e)


def triplet(ctx: PrimeContext) -> Triplet:
    """``(c, n, e)`` read off the digraph; ``(0, 0, 0)`` outside the three-factor class."""
    if not ctx.is_p3:
        return NO_TRIPLET
    return triplet_from_digraph(build_digraph(build_partition(ctx)))


def least_pm1_power(x: int, m: int) -> int:
    """Least ``k >= 1`` with ``x^k = +-1 (mod m)``."""
    y, k = x % m, 1
    while y not in (1, m - 1):
        y = y * x % m
        k += 1
        if k > m:
            raise StructuralViolation(f"{x} has no power equal to +-1 mod {m}")
    return k


def triplet_arithmetic(ctx: PrimeContext) -> Triplet:
    """The triplet without enumerating Z_p^*.

    The digraph acts on blocks as multiplication by ``x1`` on
    ``(Z/q1q2)^* / {+-1}``, so ``n`` is the order of ``x1`` there,
    ``c = phi(q1q2) / (2n)`` and ``e = (p-1) / (q1 q2)``.
    """
    if not ctx.is_p3:
        return NO_TRIPLET
    m = ctx.q1q2
    x1, _ = sqrt4_roots(ctx.q1, ctx.q2)
    n = least_pm1_power(x1, m)
    half_phi = (ctx.q1 - 1) * (ctx.q2 - 1) // 2
    return Triplet(half_phi // n, n, (ctx.p - 1) // m)


@dataclass(frozen=True)
class BSets:
    x1: int
    x2: int
    B1: frozenset[int]
    B2: frozenset[int]


def b_sets(ctx: PrimeContext) -> BSets:
    """Exponent sets ``x1 + q1q2*s`` (s even) and ``x2 + q1q2*r`` (r odd) below ``p-1``."""
    _require_p3(ctx)
    x1, x2 = sqrt4_roots(ctx.q1, ctx.q2)
    m = ctx.q1q2
    e = (ctx.p - 1) // m
    return BSets(
        x1,
        x2,
        frozenset(x1 + m * s for s in range(0, e, 2)),
        frozenset(x2 + m * r for r in range(1, e, 2)),
    )


def translate(exponents, j: int, n: int) -> frozenset[int]:
    """``{x*j mod n}``: the exponent set of ``M(g^j)`` given that of ``M(g)``."""
    return frozenset(x * j % n for x in exponents)


@dataclass(frozen=True)
class CycleCheck:
    n: int
    least_power: int
    residue: int
    expected: tuple[int, int]


def cycle_length_check(ctx: PrimeContext, n: int) -> CycleCheck:
    """Verify the congruences tying the cycle length ``n`` to ``q1*q2``.

    Even ``n``: ``2^n = +-1``. Odd ``n``: ``2^(n-1) = +-x1^-1``. Either way
    ``n`` must be the least power with ``x1^n = +-1 (mod q1 q2)``.
    """
    _require_p3(ctx)
    m = ctx.q1q2
    x1, _ = sqrt4_roots(ctx.q1, ctx.q2)
    if n % 2 == 0:
        residue = pow(2, n, m)
        expected = (1, m - 1)
    else:
        residue = pow(2, n - 1, m)
        inv = inverse_mod(x1, m)
        expected = (inv, m - inv)
    least = least_pm1_power(x1, m)
    if residue not in expected:
        raise StructuralViolation(f"p={ctx.p}, n={n}: residue {residue} not in {expected}")
    if least != n:
        raise StructuralViolation(f"p={ctx.p}: cycle length {n} but x1 needs {least} steps")
    return CycleCheck(n, least, residue, expected)


def to_dot(digraph: MissingDigraph) -> str:
    """Graphviz source: one node per block, one cluster per unicycle."""
    part = digraph.partition
    lines = [f"digraph missing_generators_{part.ctx.p} {{"]
    for label, cyc in enumerate(digraph.cycles, start=1):
        lines.append(f"  subgraph cluster_{label} {{")
        lines.append(f'    label="cycle {label}";')
        for v in cyc:
            members = ",".join(map(str, part.blocks[v]))
            lines.append(f'    v{v} [label="{members}"];')
        lines.append("  }")
    for u, v in enumerate(digraph.edges):
        lines.append(f"  v{u} -> v{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
