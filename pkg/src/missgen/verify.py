"""Exhaustive invariant sweep over all odd primes up to a bound.

Every check is looked up through its module at call time, so a test can
monkeypatch a formula and watch the sweep name the broken invariant.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from . import classify, digraph, inverse_relation, modmath, tmap
from .errors import MissgenError

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Violation:
    p: int | None
    invariant: str
    message: str


@dataclass
class VerifyResult:
    pmax: int
    primes: int = 0
    checks_run: int = 0
    checks_passed: int = 0
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


class _Runner:
    def __init__(self, result: VerifyResult):
        self.result = result

    def check(self, p, name, fn):
        self.result.checks_run += 1
        try:
            outcome = fn()
        except (MissgenError, AssertionError, ArithmeticError) as exc:
            outcome = str(exc) or type(exc).__name__
        # a string or False is a failure; anything else (None, True, a report) passes
        if outcome is not False and not isinstance(outcome, str):
            self.result.checks_passed += 1
            return
        msg = outcome or "check returned False"
        log.warning("p=%s %s: %s", p, name, msg)
        self.result.violations.append(Violation(p, name, msg))


def _prime_checks(run: _Runner, p: int) -> None:
    ctx = modmath.prime_context(p)
    cls = classify.classify_all(ctx)
    half = (p - 1) // 2

    run.check(
        p,
        "classify_cardinalities",
        lambda: len(cls.residues) == half
        and len(cls.nonresidues) == half
        and len(cls.generators) == modmath.euler_phi(ctx.pm1),
    )
    mt = classify.missing_table(ctx)
    nt = classify.ni_table(ctx)
    run.check(p, "cardinality_M", lambda: bool(np.all(mt.rows.sum(axis=1) == classify.cardinality_M(ctx.pm1))))
    run.check(p, "cardinality_N", lambda: bool(np.all(nt.rows.sum(axis=1) == classify.cardinality_N(ctx.pm1))))

    a_exps = classify.exponent_set_A(p - 1).members
    b_exps = classify.exponent_set_B(p - 1).members

    def exponent_image(table, exps):
        for g in table.generators.tolist():
            if table.set_of(g) != {pow(g, x, p) for x in exps}:
                return f"generator {g}"
        return None

    run.check(p, "exponent_image_A", lambda: exponent_image(mt, a_exps))
    run.check(p, "exponent_image_B", lambda: exponent_image(nt, b_exps))
    run.check(p, "corollary_class", lambda: classify.corollary_class(ctx.pm1) is not None)

    if not ctx.is_p3:
        run.check(p, "triplet_sentinel", lambda: tmap.compute_T(p) == digraph.NO_TRIPLET)
        return

    state = {}

    def partition():
        state["part"] = digraph.build_partition(ctx)

    def graph():
        state["dg"] = digraph.build_digraph(state["part"])
        state["t"] = digraph.triplet_from_digraph(state["dg"])

    run.check(p, "partition", partition)
    if "part" not in state:
        return
    run.check(p, "digraph", graph)
    if "dg" not in state:
        return
    t = state["t"]
    run.check(p, "triplet_invariants", lambda: digraph.check_triplet(ctx, t))
    run.check(p, "cycle_length", lambda: digraph.cycle_length_check(ctx, t.n))
    run.check(p, "triplet_arithmetic", lambda: digraph.triplet_arithmetic(ctx) == t)

    def bsets():
        bs = digraph.b_sets(ctx)
        if bs.B1 & bs.B2 or bs.B1 | bs.B2 != set(a_exps):
            return "B1, B2 do not split A(p-1)"
        if any((p - 1 - x) not in bs.B2 for x in bs.B1):
            return "B1 is not mirrored into B2"
        for g in mt.generators.tolist():
            if mt.set_of(g) != {pow(g, x, p) for x in bs.B1 | bs.B2}:
                return f"exponent image differs for {g}"
        return None

    run.check(p, "b_sets", bsets)
    run.check(p, "recover_factors", lambda: tmap.recover_factors(p, t) == (ctx.q1, ctx.q2))

    def ni():
        state["ni"] = inverse_relation.build_ni_partition(ctx, state["part"])

    run.check(p, "ni_partition", ni)
    if "ni" not in state:
        return
    part, nip = state["part"], state["ni"]
    run.check(
        p,
        "order_counts",
        lambda: [inverse_relation.count_generators_by_order(b, ctx) for b in nip.ni_blocks],
    )
    run.check(
        p,
        "additive_inverses",
        lambda: [inverse_relation.inverse_location(g, ctx, part, nip) for g in part.block_of],
    )
    if p % 4 == 3:
        run.check(
            p,
            "relation_S",
            lambda: inverse_relation.relation_S(ctx, state["dg"], nip).character
            == inverse_relation.s_character_predicate(ctx, t.n),
        )


def _exponent_set_checks(run: _Runner, nmax: int) -> None:
    for n in range(2, nmax + 1, 2):
        size = len(classify.exponent_set_A(n))
        run.check(None, "lift_A_cardinality", lambda: classify.lift_A_cardinality(n) == size or f"n={n}")
        f = modmath.factorize(n)
        if all(e == 1 for _, e in f.factors):
            run.check(
                None,
                "inclusion_exclusion",
                lambda: classify.cardinality_A_inclusion_exclusion(f)
                == classify.cardinality_A_closed_form(f)
                == size
                or f"z={n}",
            )


def run_verify(pmax: int) -> VerifyResult:
    result = VerifyResult(pmax)
    run = _Runner(result)
    for p in range(3, pmax + 1, 2):
        if modmath.is_prime(p):
            result.primes += 1
            _prime_checks(run, p)
    _exponent_set_checks(run, pmax)
    return result


def primes_upto(pmax: int) -> list[int]:
    return [p for p in range(3, pmax + 1, 2) if modmath.is_prime(p)]


def p3_primes_upto(pmax: int) -> list[int]:
    return [p for p in primes_upto(pmax) if modmath.prime_context(p).is_p3]
