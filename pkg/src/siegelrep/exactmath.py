"""Exact arithmetic primitives used by every other module.

Scalars are plain ints and fractions.Fraction (always in lowest terms with a
positive denominator, so equality is bit-exact); nothing in this module ever
touches floating point.  All functions are pure, and the lru_cache memo
tables behind the slower ones are safe to share between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "Rational",
    "FACTOR_GUARD",
    "Factorization",
    "FundamentalDecomposition",
    "bernoulli",
    "bernoulli_polynomial",
    "zeta_negative",
    "kronecker_symbol",
    "decompose_discriminant",
    "is_fundamental_discriminant",
    "generalized_bernoulli",
    "l_negative",
    "factorize",
    "divisors",
    "prime_divisors",
    "moebius",
    "valuation",
    "gcd3",
    "is_squarefree",
]

Rational = Fraction

# Trial division is exact and entirely sufficient at the scales this package
# works at, but it would crawl on cryptographic-size inputs; refuse those
# outright instead of hanging.
FACTOR_GUARD = 1 << 64


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as (prime, exponent) pairs with primes increasing."""

    pairs: tuple[tuple[int, int], ...]

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.pairs)

    @property
    def value(self) -> int:
        out = 1
        for p, a in self.pairs:
            out *= p**a
        return out


@dataclass(frozen=True)
class FundamentalDecomposition:
    """Split of a negated discriminant, -delta = disc * conductor**2."""

    disc: int
    conductor: int


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n, with the convention B_1 = -1/2."""
    if n < 0:
        raise ValueError("Bernoulli numbers need n >= 0")
    if n == 0:
        return Fraction(1)
    if n > 1 and n % 2 == 1:
        return Fraction(0)
    # recurrence sum_{j=0}^{n} binom(n+1, j) B_j = 0
    acc = Fraction(0)
    for j in range(n):
        acc += math.comb(n + 1, j) * bernoulli(j)
    return -acc / (n + 1)


def bernoulli_polynomial(n: int, x: Fraction) -> Fraction:
    """B_n(x) = sum_j binom(n, j) B_j x^(n - j), evaluated exactly."""
    x = Fraction(x)
    acc = Fraction(0)
    for j in range(n + 1):
        acc += math.comb(n, j) * bernoulli(j) * x ** (n - j)
    return acc


def zeta_negative(k: int) -> Fraction:
    """zeta(1 - k) = -B_k / k.  Intended for even k >= 2."""
    if k <= 0:
        raise ValueError("zeta_negative needs k >= 1")
    return -bernoulli(k) / k


def kronecker_symbol(a: int, m: int) -> int:
    """Kronecker symbol (a / m) for m >= 1, completely multiplicative in m.

    The factor at 2 follows the usual mod 8 rule, so for a fundamental
    discriminant D this is the quadratic character attached to Q(sqrt(D)).
    """
    if m < 1:
        raise ValueError("kronecker_symbol needs m >= 1")
    sign = 1
    if m % 2 == 0:
        if a % 2 == 0:
            return 0
        two = 1 if a % 8 in (1, 7) else -1
        while m % 2 == 0:
            m //= 2
            sign *= two
    # Jacobi symbol (a / m) for the remaining odd m
    a %= m
    while a:
        while a % 2 == 0:
            a //= 2
            if m % 8 in (3, 5):
                sign = -sign
        a, m = m, a
        if a % 4 == 3 and m % 4 == 3:
            sign = -sign
        a %= m
    return sign if m == 1 else 0


@lru_cache(maxsize=None)
def factorize(n: int) -> Factorization:
    """Trial-division factorization; inputs above FACTOR_GUARD are refused."""
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    if n > FACTOR_GUARD:
        raise OverflowError("refusing to trial-divide beyond 2**64")
    pairs = []
    rest = n
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            pairs.append((p, e))
        p += 1 if p == 2 else 2
    if rest > 1:
        pairs.append((rest, 1))
    return Factorization(tuple(pairs))


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    """All positive divisors of n in increasing order."""
    out = [1]
    for p, a in factorize(n).pairs:
        out = [d * p**e for d in out for e in range(a + 1)]
    return tuple(sorted(out))


def prime_divisors(n: int) -> tuple[int, ...]:
    return factorize(n).primes()


def moebius(n: int) -> int:
    fac = factorize(n)
    if any(a > 1 for _, a in fac.pairs):
        return 0
    return -1 if len(fac.pairs) % 2 else 1


def valuation(p: int, n: int) -> int:
    """Exponent of p in n (n >= 1)."""
    if p < 2 or n < 1:
        raise ValueError("valuation needs p >= 2 and n >= 1")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def gcd3(a: int, b: int, c: int) -> int:
    return math.gcd(a, b, c)


def is_squarefree(n: int) -> bool:
    return all(a == 1 for _, a in factorize(n).pairs)


@lru_cache(maxsize=None)
def decompose_discriminant(delta: int) -> FundamentalDecomposition:
    """Split -delta into D * f**2 with D a fundamental discriminant.

    Only delta = 0, 3 mod 4 can occur as 4mn - r**2, and exactly those split
    this way; anything else is rejected as a caller bug.
    """
    if delta <= 0:
        raise ValueError("decompose_discriminant needs delta > 0")
    if delta % 4 in (1, 2):
        raise ValueError("delta must be 0 or 3 mod 4")
    core = 1
    conductor = 1
    for p, a in factorize(delta).pairs:
        conductor *= p ** (a // 2)
        if a % 2:
            core *= p
    if (-core) % 4 == 1:
        return FundamentalDecomposition(-core, conductor)
    # -core is 2 or 3 mod 4, so 4 divides delta / core and the conductor is even
    return FundamentalDecomposition(-4 * core, conductor // 2)


def is_fundamental_discriminant(d: int) -> bool:
    if d == 0:
        return False
    if d % 4 == 1:
        return is_squarefree(abs(d))
    if d % 4 == 0:
        q = d // 4
        return q % 4 in (2, 3) and is_squarefree(abs(q))
    return False


@lru_cache(maxsize=None)
def generalized_bernoulli(n: int, disc: int) -> Fraction:
    """Generalized Bernoulli number for the quadratic character of
    discriminant disc: |D|^(n-1) * sum_a chi(a) B_n(a / |D|)."""
    if n < 1:
        raise ValueError("generalized_bernoulli needs n >= 1")
    if not is_fundamental_discriminant(disc):
        raise ValueError(f"{disc} is not a fundamental discriminant")
    q = abs(disc)
    acc = Fraction(0)
    for a in range(1, q + 1):
        chi = kronecker_symbol(disc, a)
        if chi:
            acc += chi * bernoulli_polynomial(n, Fraction(a, q))
    return q ** (n - 1) * acc


def l_negative(n: int, disc: int) -> Fraction:
    """L(1 - n, chi_disc) = -B_(n, chi) / n."""
    return -generalized_bernoulli(n, disc) / n
