"""Exact modular arithmetic: powers, primality, factoring, orders, CRT roots."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt, prod

from .errors import InvalidArgument, NotInvertible

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
# Miller-Rabin with the first twelve primes as bases is exact below this bound.
DETERMINISTIC_MR_BOUND = 3_317_044_064_679_887_385_961_981
_RANDOM_MR_ROUNDS = 64
_TRIAL_LIMIT = 1000


def pow_mod(base: int, exp: int, m: int) -> int:
    """Return ``base**exp mod m`` in ``[0, m)``."""
    if m < 2:
        raise InvalidArgument(f"modulus must be >= 2, got {m}")
    if exp < 0:
        raise InvalidArgument(f"exponent must be non-negative, got {exp}")
    return pow(base % m, exp, m)


def inverse_mod(a: int, m: int) -> int:
    if m < 2:
        raise InvalidArgument(f"modulus must be >= 2, got {m}")
    try:
        return pow(a % m, -1, m)
    except ValueError:
        raise NotInvertible(f"{a} has no inverse modulo {m}") from None


def _mr_witness(a: int, d: int, s: int, n: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def is_prime(n: int) -> bool:
    """Miller-Rabin primality test.

    Deterministic below ``DETERMINISTIC_MR_BOUND`` (fixed bases 2..37). Above
    it, 64 extra rounds with bases drawn from an RNG seeded by ``n`` keep the
    answer reproducible with error probability below 2**-128.
    """
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if any(_mr_witness(a, d, s, n) for a in _SMALL_PRIMES):
        return False
    if n < DETERMINISTIC_MR_BOUND:
        return True
    rng = random.Random(n)
    return not any(
        _mr_witness(rng.randrange(2, n - 1), d, s, n) for _ in range(_RANDOM_MR_ROUNDS)
    )


@dataclass(frozen=True)
class Factorization:
    """Prime factorization ``value = prod(prime**exponent)``."""

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.value < 1:
            raise InvalidArgument(f"factorization of non-positive value {self.value}")
        last = 1
        for q, e in self.factors:
            if q <= last or e < 1:
                raise InvalidArgument(f"malformed factor list {self.factors}")
            last = q
        if prod(q**e for q, e in self.factors) != self.value:
            raise InvalidArgument(f"factors {self.factors} do not multiply to {self.value}")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(q for q, _ in self.factors)

    @property
    def odd_primes(self) -> tuple[int, ...]:
        return tuple(q for q, _ in self.factors if q != 2)

    @property
    def omega(self) -> int:
        """Number of distinct prime factors."""
        return len(self.factors)

    @property
    def radical(self) -> int:
        return prod(self.primes)

    def exponent_of(self, q: int) -> int:
        return dict(self.factors).get(q, 0)


def _pollard_brent(n: int) -> int:
    """Return a non-trivial factor of the odd composite ``n``.

    Brent's cycle variant; the polynomial constant walks 1, 2, 3, ... and the
    start value is fixed so every run finds the same factor.
    """
    for c in range(1, 200):
        y, r, q, g = 2, 1, 1, 1
        m = 128
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise RuntimeError(f"Pollard-Brent failed on {n}")


def _split(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = isqrt(n)
    if r * r == n:
        _split(r, out)
        _split(r, out)
        return
    d = _pollard_brent(n)
    _split(d, out)
    _split(n // d, out)


@lru_cache(maxsize=4096)
def factorize(n: int) -> Factorization:
    """Complete factorization: trial division to 1000, then Pollard-Brent."""
    if n < 1:
        raise InvalidArgument(f"cannot factor {n}")
    found: dict[int, int] = {}
    m = n
    q = 2
    while q <= _TRIAL_LIMIT and q * q <= m:
        while m % q == 0:
            found[q] = found.get(q, 0) + 1
            m //= q
        q += 1 if q == 2 else 2
    if m > 1:
        _split(m, found)
    return Factorization(n, tuple(sorted(found.items())))


def as_factorization(n: int | Factorization) -> Factorization:
    return n if isinstance(n, Factorization) else factorize(n)


def euler_phi(f: int | Factorization) -> int:
    f = as_factorization(f)
    return prod((q - 1) * q ** (e - 1) for q, e in f.factors)


@dataclass(frozen=True)
class PrimeContext:
    """An odd prime together with the factorization of ``p - 1``.

    ``is_p3`` marks primes with ``p - 1 = 2**i * q1**j1 * q2**j2`` (exactly
    three distinct prime factors); the component fields are only set then.
    """

    p: int
    pm1: Factorization
    is_p3: bool
    i: int = 0
    j1: int = 0
    j2: int = 0
    q1: int = 0
    q2: int = 0

    @property
    def q1q2(self) -> int:
        return self.q1 * self.q2


@lru_cache(maxsize=4096)
def prime_context(p: int) -> PrimeContext:
    if p < 3 or not is_prime(p):
        raise InvalidArgument(f"{p} is not an odd prime")
    pm1 = factorize(p - 1)
    if pm1.omega != 3:
        return PrimeContext(p, pm1, False)
    (_, i), (q1, j1), (q2, j2) = pm1.factors
    return PrimeContext(p, pm1, True, i=i, j1=j1, j2=j2, q1=q1, q2=q2)


def element_order(g: int, ctx: PrimeContext) -> int:
    """Multiplicative order of ``g`` mod ``p``, by stripping prime factors of p-1."""
    p = ctx.p
    g %= p
    if g == 0:
        raise InvalidArgument(f"0 is not a unit modulo {p}")
    order = p - 1
    for q, e in ctx.pm1.factors:
        for _ in range(e):
            if pow(g, order // q, p) != 1:
                break
            order //= q
    return order


def sqrt4_roots(q1: int, q2: int) -> tuple[int, int]:
    """Non-trivial square roots of 4 modulo ``q1*q2`` as ``(odd, even)``.

    They are the CRT combinations of (+2, -2) and (-2, +2); the two sum to
    ``q1*q2``, so exactly one is odd.
    """
    if q1 == q2:
        raise InvalidArgument("sqrt4_roots needs two distinct primes")
    for q in (q1, q2):
        if q < 3 or not is_prime(q):
            raise InvalidArgument(f"{q} is not an odd prime")
    m = q1 * q2
    # a = 2 (mod q1), a = -2 (mod q2)
    t = (-4 * inverse_mod(q1, q2)) % q2
    a = (2 + q1 * t) % m
    b = m - a
    return (a, b) if a % 2 else (b, a)
