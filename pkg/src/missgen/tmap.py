"""The triplet map T, recovering q1, q2 from a triplet, and the semiprime demo.

``compute_T`` factors ``p - 1`` internally, so the factoring pipeline here
only demonstrates the mechanics of the reduction; it does not factor anything
that could not be factored directly.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from math import ceil, isqrt, log2

from .digraph import NO_TRIPLET, Triplet, triplet, triplet_arithmetic
from .errors import (
    AssumptionAExhausted,
    InconsistentTriplet,
    InvalidArgument,
    PipelineInconsistency,
)
from .modmath import is_prime, prime_context

# Above this the digraph is not enumerated; T(p) comes from the x1 orbit.
DIGRAPH_LIMIT = 10_000


def compute_T(p: int, method: str = "auto") -> Triplet:
    """``T(p) = (c, n, e)``, or ``(0, 0, 0)`` when ``p - 1`` lacks exactly three prime factors.

    ``method`` is ``"digraph"`` (enumerate Z_p^*), ``"arithmetic"`` (orbit of
    ``x1`` modulo ``q1 q2``) or ``"auto"``, which picks the digraph for small p.
    """
    ctx = prime_context(p)
    if method == "auto":
        method = "digraph" if p <= DIGRAPH_LIMIT else "arithmetic"
    if method == "digraph":
        return triplet(ctx)
    if method == "arithmetic":
        return triplet_arithmetic(ctx)
    raise InvalidArgument(f"unknown method {method!r}")


def recover_factors(p: int, t: Triplet) -> tuple[int, int]:
    """Odd primes ``q1 < q2`` of ``p - 1`` from ``T(p)``.

    ``q1*q2 = (p-1)/e`` and ``(q1-1)(q2-1) = 2*c*n`` give the sum of the two
    primes, and they are the roots of the resulting quadratic.
    """
    c, n, e = t
    if Triplet(c, n, e) == NO_TRIPLET or min(c, n, e) < 1:
        raise InconsistentTriplet(f"no factors encoded in {tuple(t)}")
    if (p - 1) % e:
        raise InconsistentTriplet(f"e={e} does not divide p-1={p - 1}")
    product = (p - 1) // e
    total = product - 2 * c * n + 1
    disc = total * total - 4 * product
    root = isqrt(disc) if disc >= 0 else -1
    if root < 0 or root * root != disc or (total + root) % 2:
        raise InconsistentTriplet(f"{tuple(t)} gives no integer roots for p={p}")
    q1, q2 = (total - root) // 2, (total + root) // 2
    if not (is_prime(q1) and is_prime(q2)) or q1 == q2 or q1 == 2:
        raise InconsistentTriplet(f"{tuple(t)} gives roots {q1}, {q2} for p={p}")
    return q1, q2


def default_bound(N: int) -> int:
    """``ceil(5 * log2 N)``, the search box used for the empirical check."""
    return ceil(5 * log2(N))


def bound_from_k(N: int, k: float) -> int:
    return ceil(log2(N) ** k)


def search_order(bound: int):
    """``(i, j)`` with ``1 <= i, j <= bound`` by ascending ``i + j``, then ``j``.

    Within one diagonal the smaller power of N comes first, i.e. the smaller
    candidate ``2^i N^j + 1``.
    """
    for s in range(2, 2 * bound + 1):
        for j in range(max(1, s - bound), min(bound, s - 1) + 1):
            yield s - j, j


@dataclass(frozen=True)
class TraceEntry:
    i: int
    j: int
    candidate: int
    is_prime: bool


@dataclass
class FactoringReport:
    N: int
    bound: int
    search_trace: list[TraceEntry]
    chosen: tuple[int, int, int]  # (i, j, p)
    triplet: Triplet
    method: str
    recovered: tuple[int, int]
    elapsed: float = field(default=0.0, compare=False)


def factor_semiprime(N: int, bound: int | None = None) -> FactoringReport:
    """Factor an odd squarefree semiprime through a prime ``p = 2^i N^j + 1``."""
    start = time.perf_counter()
    if N < 3 or N % 2 == 0:
        raise InvalidArgument(f"N must be odd and >= 3, got {N}")
    if is_prime(N):
        raise InvalidArgument(f"N={N} is prime")
    if isqrt(N) ** 2 == N:
        raise InvalidArgument(f"N={N} is a square; p-1 would have two prime factors")
    bound = default_bound(N) if bound is None else bound
    trace = []
    for i, j in search_order(bound):
        cand = 2**i * N**j + 1
        ok = is_prime(cand)
        trace.append(TraceEntry(i, j, cand, ok))
        if ok:
            break
    else:
        raise AssumptionAExhausted(f"no prime 2^i*{N}^j+1 with 1 <= i, j <= {bound}")
    i, j, p = trace[-1].i, trace[-1].j, trace[-1].candidate
    method = "digraph" if p <= DIGRAPH_LIMIT else "arithmetic"
    t = compute_T(p, method)
    if t == NO_TRIPLET:
        raise PipelineInconsistency(f"T({p}) = (0,0,0): N={N} is not a product of two distinct primes")
    q1, q2 = recover_factors(p, t)
    if q1 * q2 != N:
        raise PipelineInconsistency(f"recovered {q1}*{q2} != {N}")
    return FactoringReport(
        N, bound, trace, (i, j, p), t, method, (q1, q2), time.perf_counter() - start
    )


@dataclass
class AssumptionAScan:
    """Primes found in the grid ``2^i N^j + 1``.

    ``first_hit`` uses the inclusive box ``i, j <= bound``; ``strict_first_hit``
    the open box ``i, j < bound``. An early-exit scan stops at the first hit
    inside the open box, so ``hits`` is then only a prefix.
    """

    N: int
    bound: int
    hits: list[tuple[int, int]]
    first_hit: tuple[int, int] | None
    strict_first_hit: tuple[int, int] | None
    exhaustive: bool


def scan_assumption_a(
    N: int, k: float | None = None, bound: int | None = None, early_exit: bool = False
) -> AssumptionAScan:
    if N < 3 or N % 2 == 0:
        raise InvalidArgument(f"N must be odd and >= 3, got {N}")
    if bound is None:
        bound = bound_from_k(N, k) if k is not None else default_bound(N)
    hits = []
    for i, j in search_order(bound):
        if is_prime(2**i * N**j + 1):
            hits.append((i, j))
            if early_exit and i < bound and j < bound:
                break
    strict = [h for h in hits if h[0] < bound and h[1] < bound]
    return AssumptionAScan(
        N,
        bound,
        hits,
        hits[0] if hits else None,
        strict[0] if strict else None,
        not early_exit,
    )


def scan_random(count: int, max_n: int, seed: int = 0) -> list[AssumptionAScan]:
    """First-hit scans for ``count`` random odd ``N`` in ``[3, max_n]``."""
    rng = random.Random(seed)
    return [
        scan_assumption_a(2 * rng.randrange(1, (max_n + 1) // 2) + 1, early_exit=True)
        for _ in range(count)
    ]
