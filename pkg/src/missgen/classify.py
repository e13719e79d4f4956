"""Residue/generator classification of Z_p^* and the missing-generator sets.

Two independent routes to each set are kept on purpose:

* the *definitional* route (``set_I``, ``set_NI``, ``set_M``) multiplies
  residues by ``g`` and ``g^-1`` and looks at what lands on generators;
* the *exponent* route (``set_M_exponent``, ``set_NI_exponent``) raises ``g``
  to the exponents in ``A(p-1)`` / ``B(p-1)``.

The closed forms for ``|M(g)|`` and ``|NI(g)|`` and the inclusion-exclusion
count of ``A(z)`` live here as well.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import prod

import numpy as np

from . import _kernels
from .errors import InvalidArgument, StructuralViolation
from .modmath import Factorization, PrimeContext, as_factorization, inverse_mod


class Tag(enum.Enum):
    RESIDUE = "Residue"
    GENERATOR = "Generator"
    NON_GEN_NON_RESIDUE = "NonGenNonResidue"


_TAG_CODES = (Tag.RESIDUE, Tag.GENERATOR, Tag.NON_GEN_NON_RESIDUE)


@dataclass(frozen=True, eq=False)
class ElementClassification:
    """Tags for every unit of Z_p^*.

    ``codes[x]`` is the index into ``(RESIDUE, GENERATOR, NON_GEN_NON_RESIDUE)``
    for ``1 <= x < p``; ``codes[0]`` is -1.
    """

    p: int
    codes: np.ndarray

    def tag(self, x: int) -> Tag:
        if not 1 <= x < self.p:
            raise InvalidArgument(f"{x} is not a unit modulo {self.p}")
        return _TAG_CODES[self.codes[x]]

    def _members(self, code):
        return tuple(int(x) for x in np.flatnonzero(self.codes == code))

    @property
    def residues(self) -> tuple[int, ...]:
        return self._members(0)

    @property
    def generators(self) -> tuple[int, ...]:
        return self._members(1)

    @property
    def nongen_nonresidues(self) -> tuple[int, ...]:
        return self._members(2)

    @property
    def nonresidues(self) -> tuple[int, ...]:
        return tuple(int(x) for x in np.flatnonzero(self.codes >= 1))

    @property
    def generator_mask(self) -> np.ndarray:
        return self.codes == 1

    @property
    def ngnr_mask(self) -> np.ndarray:
        return self.codes == 2

    def is_generator(self, g: int) -> bool:
        return 0 < g < self.p and self.codes[g] == 1

    def as_dict(self) -> dict[int, Tag]:
        return {x: _TAG_CODES[c] for x, c in enumerate(self.codes.tolist()) if c >= 0}


@lru_cache(maxsize=64)
def classify_all(ctx: PrimeContext) -> ElementClassification:
    """Tag each unit: Euler's criterion for residues, order ``p-1`` for generators."""
    p = ctx.p
    xs = np.arange(1, p, dtype=np.int64)
    residue = _kernels.powmod_array(xs, (p - 1) // 2, p) == 1
    # order is p-1 iff no x^((p-1)/q) collapses to 1
    generator = ~residue
    for q in ctx.pm1.odd_primes:
        generator &= _kernels.powmod_array(xs, (p - 1) // q, p) != 1
    codes = np.full(p, -1, dtype=np.int8)
    codes[1:] = np.where(residue, 0, np.where(generator, 1, 2))
    codes.setflags(write=False)
    return ElementClassification(p, codes)


def _require_generator(g: int, ctx: PrimeContext) -> ElementClassification:
    cls = classify_all(ctx)
    if not cls.is_generator(g):
        raise InvalidArgument(f"{g} is not a generator modulo {ctx.p}")
    return cls


def _residue_array(cls: ElementClassification) -> np.ndarray:
    return np.flatnonzero(cls.codes == 0).astype(np.int64)


def set_I(g: int, ctx: PrimeContext) -> frozenset[int]:
    """Residues ``r`` with both ``g*r`` and ``g^-1*r`` generators."""
    cls = _require_generator(g, ctx)
    p = ctx.p
    r = _residue_array(cls)
    gm = cls.generator_mask
    keep = gm[g * r % p] & gm[inverse_mod(g, p) * r % p]
    return frozenset(r[keep].tolist())


def set_NI(g: int, ctx: PrimeContext) -> frozenset[int]:
    """Residues ``r`` with both ``g*r`` and ``g^-1*r`` non-generator non-residues."""
    cls = _require_generator(g, ctx)
    row = _kernels.ni_rows(
        ctx.p, cls.ngnr_mask, _residue_array(cls), np.array([g]), np.array([inverse_mod(g, ctx.p)])
    )[0]
    return frozenset(np.flatnonzero(row).tolist())


def set_M(g: int, ctx: PrimeContext) -> frozenset[int]:
    """Missing generators of ``g``, straight from the definition."""
    cls = _require_generator(g, ctx)
    row = _kernels.missing_rows(
        ctx.p, cls.generator_mask, _residue_array(cls), np.array([g]), np.array([inverse_mod(g, ctx.p)])
    )[0]
    return frozenset(np.flatnonzero(row).tolist())


@dataclass(frozen=True, eq=False)
class GeneratorTable:
    """Per-generator rows of M(g) or NI(g) for one prime, computed in bulk."""

    p: int
    generators: np.ndarray
    rows: np.ndarray

    def row_of(self, g: int) -> np.ndarray:
        k = int(np.searchsorted(self.generators, g))
        if k >= len(self.generators) or self.generators[k] != g:
            raise InvalidArgument(f"{g} is not a generator modulo {self.p}")
        return self.rows[k]

    def set_of(self, g: int) -> frozenset[int]:
        return frozenset(np.flatnonzero(self.row_of(g)).tolist())


def _inverses(gens: np.ndarray, p: int) -> np.ndarray:
    return np.array([pow(int(g), -1, p) for g in gens], dtype=np.int64)


@lru_cache(maxsize=8)
def missing_table(ctx: PrimeContext) -> GeneratorTable:
    """M(g) for every generator (definitional route, one kernel call)."""
    cls = classify_all(ctx)
    gens = np.flatnonzero(cls.generator_mask).astype(np.int64)
    rows = _kernels.missing_rows(ctx.p, cls.generator_mask, _residue_array(cls), gens, _inverses(gens, ctx.p))
    rows.setflags(write=False)
    return GeneratorTable(ctx.p, gens, rows)


@lru_cache(maxsize=8)
def ni_table(ctx: PrimeContext) -> GeneratorTable:
    """NI(g) for every generator (definitional route, one kernel call)."""
    cls = classify_all(ctx)
    gens = np.flatnonzero(cls.generator_mask).astype(np.int64)
    rows = _kernels.ni_rows(ctx.p, cls.ngnr_mask, _residue_array(cls), gens, _inverses(gens, ctx.p))
    rows.setflags(write=False)
    return GeneratorTable(ctx.p, gens, rows)


@dataclass(frozen=True)
class ExponentSetA:
    """``A(n)``: units ``x`` of Z_n with ``x-2`` and ``x+2`` both sharing a factor with ``n``."""

    n: int
    members: tuple[int, ...]

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True)
class ExponentSetB:
    """``B(n)``: even ``x`` with ``x-1`` and ``x+1`` both sharing a factor with ``n``."""

    n: int
    members: tuple[int, ...]

    def __len__(self):
        return len(self.members)


def exponent_set_A(n: int) -> ExponentSetA:
    if n < 2:
        raise InvalidArgument(f"A(n) needs n >= 2, got {n}")
    return ExponentSetA(n, tuple(np.flatnonzero(_kernels.exponent_mask(n, "A")).tolist()))


def exponent_set_B(n: int) -> ExponentSetB:
    if n < 2:
        raise InvalidArgument(f"B(n) needs n >= 2, got {n}")
    return ExponentSetB(n, tuple(np.flatnonzero(_kernels.exponent_mask(n, "B")).tolist()))


def _exponent_image(g: int, ctx: PrimeContext, exps) -> frozenset[int]:
    _require_generator(g, ctx)
    return frozenset(pow(g, x, ctx.p) for x in exps)


def set_M_exponent(g: int, ctx: PrimeContext) -> frozenset[int]:
    """``{g^x : x in A(p-1)}``; must coincide with :func:`set_M`."""
    return _exponent_image(g, ctx, exponent_set_A(ctx.p - 1).members)


def set_NI_exponent(g: int, ctx: PrimeContext) -> frozenset[int]:
    """``{g^x : x in B(p-1)}``; must coincide with :func:`set_NI`."""
    return _exponent_image(g, ctx, exponent_set_B(ctx.p - 1).members)


def _even_factorization(pm1: int | Factorization) -> Factorization:
    f = as_factorization(pm1)
    if f.value % 2:
        raise InvalidArgument(f"expected an even value (p-1), got {f.value}")
    return f


def _scaled(f: Factorization, bracket: int) -> int:
    num = f.value * bracket
    den = 2 * prod(f.odd_primes)
    if num % den:
        raise StructuralViolation(f"closed form is not integral for {f.value}")
    return num // den


def cardinality_M(pm1: int | Factorization) -> int:
    """Closed-form ``|M(g)|`` for a prime with ``p - 1 = pm1``."""
    f = _even_factorization(pm1)
    qs = f.odd_primes
    bracket = prod(q - 1 for q in qs) - 2 * prod(q - 2 for q in qs) + prod(q - 3 for q in qs)
    return _scaled(f, bracket)


def cardinality_N(pm1: int | Factorization) -> int:
    """Closed-form ``|NI(g)|`` for a prime with ``p - 1 = pm1``."""
    f = _even_factorization(pm1)
    qs = f.odd_primes
    bracket = prod(qs) - 2 * prod(q - 1 for q in qs) + prod(q - 2 for q in qs)
    return _scaled(f, bracket)


def _squarefree_even(z: int | Factorization) -> Factorization:
    f = _even_factorization(z)
    if any(e > 1 for _, e in f.factors):
        raise InvalidArgument(f"{f.value} is not squarefree")
    return f


def divisor_sum_N(z: int | Factorization, j: int, include_even: bool = False) -> int:
    """Sum of the divisors of ``z`` with exactly ``j`` distinct odd prime factors.

    With ``include_even=False`` (the frozen convention) only the odd divisors
    ``y`` count; ``include_even=True`` adds ``2*y`` as well. ``N(z, 0) = 1``
    in both conventions. Only the odd-divisor variant makes the
    inclusion-exclusion count agree with direct enumeration.
    """
    f = _squarefree_even(z)
    qs = f.odd_primes
    if not 0 <= j <= len(qs):
        raise InvalidArgument(f"j={j} out of range for {len(qs)} odd prime factors")
    if j == 0:
        return 1
    total = sum(prod(c) for c in combinations(qs, j))
    return 3 * total if include_even else total


def cardinality_A_inclusion_exclusion(z: int | Factorization, include_even: bool = False) -> int:
    """``|A(z)|`` for squarefree even ``z`` by the alternating divisor-sum formula."""
    f = _squarefree_even(z)
    k = len(f.odd_primes)
    total = 0
    for j in range(k - 1):
        a_j = 3 ** (k - j) - 2 ** (k - j + 1) + 1
        total += (-1) ** (k - 2 - j) * a_j * divisor_sum_N(f, j, include_even)
    return total


def cardinality_A_closed_form(z: int | Factorization) -> int:
    """``prod(q-1) - 2*prod(q-2) + prod(q-3)`` over the odd primes of ``z``."""
    qs = as_factorization(z).odd_primes
    return prod(q - 1 for q in qs) - 2 * prod(q - 2 for q in qs) + prod(q - 3 for q in qs)


def lift_A_cardinality(pm1: int | Factorization) -> int:
    """``|A(n)| = (n/z) * |A(z)|`` with ``z = 2 * prod(q)`` the radical of even ``n``."""
    f = _even_factorization(pm1)
    z = 2 * prod(f.odd_primes)
    return f.value // z * cardinality_A_inclusion_exclusion(z)


class CorollaryClass(enum.Enum):
    BOTH_ZERO = "BothZero"
    EQUAL_POSITIVE = "EqualPositive"
    N_GREATER = "NGreater"


def corollary_class(pm1: int | Factorization) -> CorollaryClass:
    """Bucket ``p - 1`` by its number of distinct prime factors (<=2, 3, >=4).

    The bucket is cross-checked against the closed forms; a disagreement
    raises :class:`StructuralViolation`.
    """
    f = _even_factorization(pm1)
    m, n = cardinality_M(f), cardinality_N(f)
    if f.omega <= 2:
        cls, ok = CorollaryClass.BOTH_ZERO, m == n == 0
    elif f.omega == 3:
        cls, ok = CorollaryClass.EQUAL_POSITIVE, m == n > 0
    else:
        cls, ok = CorollaryClass.N_GREATER, n > m > 0
    if not ok:
        raise StructuralViolation(f"p-1={f.value}: M={m}, N={n} contradict class {cls.value}")
    return cls
