"""Fourier coefficients of the natural basis of degree 2 Eisenstein series.

For squarefree level N the basis is indexed by the ordered factorizations
N = N0 * N1 * N2, one series per 0-cusp; the series for (N, 1, 1) is the one
with constant term 1.  Coefficients are exact rationals indexed by positive
semidefinite half-integral 2x2 matrices.  The closed formula multiplies a
level 1 style divisor sum (of class-number values in the definite case, of
powers in the rank 1 case) by one local factor per prime dividing the level.

raise_level and the Hecke actions give independent evaluation routes; the
verification suites compare them against the closed formula, which is the
strongest internal consistency check this module has.

Everything is a pure function of immutable inputs; the lru_cache tables are
thread-safe, so concurrent use needs no extra care.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .classnumbers import cohen_h_level
from .exactmath import (
    decompose_discriminant,
    divisors,
    is_squarefree,
    kronecker_symbol,
    prime_divisors,
    valuation,
    zeta_negative,
)

__all__ = [
    "HalfIntegralMatrix",
    "LevelPartition",
    "EisensteinSpec",
    "LocalOrders",
    "partitions_of_level",
    "singular_local_factor",
    "definite_local_factor",
    "fourier_coefficient",
    "raise_level",
    "hecke_tp",
    "hecke_up",
    "hecke_u1p2",
    "reduced_representatives",
]


@dataclass(frozen=True)
class HalfIntegralMatrix:
    """Matrix ((m, r/2), (r/2, n)) stored as the integer triple (m, r, n).

    Construction enforces positive semidefiniteness; indefinite input is a
    hard error, never coerced.
    """

    m: int
    r: int
    n: int

    def __post_init__(self) -> None:
        if self.m < 0 or self.n < 0 or 4 * self.m * self.n - self.r * self.r < 0:
            raise ValueError("matrix must be positive semidefinite")

    @property
    def delta(self) -> int:
        """Discriminant 4mn - r^2."""
        return 4 * self.m * self.n - self.r * self.r

    @property
    def content(self) -> int:
        """gcd of m, r, n (0 only for the zero matrix)."""
        return math.gcd(self.m, self.r, self.n)

    @property
    def is_zero(self) -> bool:
        return self.m == 0 and self.r == 0 and self.n == 0

    def scaled(self, c: int) -> "HalfIntegralMatrix":
        return HalfIntegralMatrix(c * self.m, c * self.r, c * self.n)

    def transformed(self, mat: tuple[tuple[int, int], tuple[int, int]]) -> "HalfIntegralMatrix":
        """Congruent matrix under the integral change of basis mat."""
        return HalfIntegralMatrix(*_transform_triple(self, mat))

    def divided_by(self, p: int) -> "HalfIntegralMatrix | None":
        """T / p when that is still half-integral, else None."""
        if self.m % p or self.r % p or self.n % p:
            return None
        return HalfIntegralMatrix(self.m // p, self.r // p, self.n // p)


def _transform_triple(t: HalfIntegralMatrix, mat) -> tuple[int, int, int]:
    (a, b), (c, d) = mat
    m = t.m * a * a + t.r * a * c + t.n * c * c
    n = t.m * b * b + t.r * b * d + t.n * d * d
    r = 2 * t.m * a * b + t.r * (a * d + b * c) + 2 * t.n * c * d
    return m, r, n


@dataclass(frozen=True)
class LevelPartition:
    """Ordered factorization (n0, n1, n2) of a squarefree level."""

    n0: int
    n1: int
    n2: int

    def __post_init__(self) -> None:
        if min(self.n0, self.n1, self.n2) < 1:
            raise ValueError("partition entries must be positive")
        if not is_squarefree(self.n0 * self.n1 * self.n2):
            raise ValueError("the level must be squarefree")

    @property
    def level(self) -> int:
        return self.n0 * self.n1 * self.n2

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.n0, self.n1, self.n2)


@dataclass(frozen=True)
class EisensteinSpec:
    """Weight plus cusp partition, identifying one series of the basis."""

    k: int
    partition: LevelPartition

    def __post_init__(self) -> None:
        if self.k < 4 or self.k % 2:
            raise ValueError("weight must be even and at least 4")


@dataclass(frozen=True)
class LocalOrders:
    """Local data at p for the definite-case factor: u and v are the orders
    of p in the content and in the conductor, chi the character value at p."""

    p: int
    u: int
    v: int
    chi: int


@lru_cache(maxsize=None)
def partitions_of_level(level: int) -> tuple[LevelPartition, ...]:
    """All ordered factorizations of a squarefree level into three parts."""
    if level < 1 or not is_squarefree(level):
        raise ValueError("level must be a squarefree positive integer")
    primes = prime_divisors(level)
    parts = []
    for assign in itertools.product(range(3), repeat=len(primes)):
        slots = [1, 1, 1]
        for p, s in zip(primes, assign):
            slots[s] *= p
        parts.append(LevelPartition(*slots))
    return tuple(sorted(parts, key=lambda q: q.as_tuple()))


@lru_cache(maxsize=None)
def singular_local_factor(i: int, p: int, u: int, k: int) -> Fraction:
    """Factor at p for rank 1 coefficients, by the slot index i of p in the
    partition; u is the order of p in the content."""
    if i == 2:
        return Fraction(0)
    x = p ** (k - 1)
    high = x ** (u + 1)
    if i == 1:
        return Fraction(high * p, p**k - 1)
    if i == 0:
        return Fraction(high - 1, x - 1) - Fraction(high * p, p**k - 1)
    raise ValueError("slot index must be 0, 1 or 2")


def _ipow(p: int, e: int) -> Fraction:
    return Fraction(p**e) if e >= 0 else Fraction(1, p ** (-e))


@lru_cache(maxsize=None)
def definite_local_factor(i: int, orders: LocalOrders, k: int) -> Fraction:
    """Factor at p for definite coefficients, by the slot index i of p."""
    p, u, v, chi = orders.p, orders.u, orders.v, orders.chi
    y = 2 * k - 3
    a = p**y - chi * p ** (k - 2)
    b = chi * p ** (k - 2) - 1
    yv = p ** (v * y)
    cross = _ipow(p, (v - u) * y) * p ** (u * (k - 1))
    if i == 2:
        return a * Fraction(yv * p ** (k + 1), (p ** (2 * k - 2) - 1) * (p**k - 1))
    if i == 1:
        lead = a * (
            yv * Fraction(p ** (k - 1) * (p * p - 1),
                          (p ** (2 * k - 2) - 1) * (p**k - 1) * (p ** (k - 2) - 1))
            - cross * Fraction(p * (p ** (k - 1) - 1),
                               (p**y - 1) * (p**k - 1) * (p ** (k - 2) - 1))
        )
        return lead + b * p ** (u * (k - 1)) * Fraction(p**k, (p**y - 1) * (p**k - 1))
    if i == 0:
        lead = a * (
            yv * Fraction(p ** (k - 2) * (p - 1),
                          (p**y - 1) * (p ** (2 * k - 2) - 1) * (p ** (k - 2) - 1))
            - cross * Fraction(p - 1, (p**y - 1) * (p**k - 1) * (p ** (k - 2) - 1))
        )
        tail = b * (
            p ** (u * (k - 1)) * Fraction(p ** (k - 1) * (p - 1),
                                          (p**y - 1) * (p**k - 1) * (p ** (k - 1) - 1))
            - Fraction(1, (p**y - 1) * (p ** (k - 1) - 1))
        )
        return lead + tail
    raise ValueError("slot index must be 0, 1 or 2")


@lru_cache(maxsize=None)
def fourier_coefficient(spec: EisensteinSpec, mat: HalfIntegralMatrix) -> Fraction:
    """Coefficient of the basis series `spec` at the matrix `mat`.

    Dispatch order: the zero matrix gives 1 exactly for the partition
    (N, 1, 1) and 0 otherwise; rank 1 matrices use the singular local factors
    with a power-divisor sum; definite matrices use the class-number divisor
    sum over divisors of the content coprime to the level.
    """
    k = spec.k
    part = spec.partition
    level = part.level
    if mat.is_zero:
        return Fraction(1) if part.n1 == 1 and part.n2 == 1 else Fraction(0)
    content = mat.content
    if mat.delta == 0:
        factor = Fraction(1)
        for i, block in enumerate(part.as_tuple()):
            for p in prime_divisors(block):
                factor *= singular_local_factor(i, p, valuation(p, content), k)
        power_sum = sum(d ** (k - 1) for d in divisors(content) if math.gcd(d, level) == 1)
        return factor * Fraction(2) / zeta_negative(k) * power_sum
    dec = decompose_discriminant(mat.delta)
    factor = Fraction(1)
    for i, block in enumerate(part.as_tuple()):
        for p in prime_divisors(block):
            orders = LocalOrders(p, valuation(p, content), valuation(p, dec.conductor),
                                 kronecker_symbol(dec.disc, p))
            factor *= definite_local_factor(i, orders, k)
    class_sum = sum(
        d ** (k - 1) * cohen_h_level(level, k, mat.delta // (d * d))
        for d in divisors(content) if math.gcd(d, level) == 1
    )
    return factor * Fraction(2) / (zeta_negative(k) * zeta_negative(2 * k - 2)) * class_sum


def raise_level(a_t, a_pt, a_p2t, p: int, k: int) -> tuple[Fraction, Fraction, Fraction]:
    """Split a level N coefficient triple (a(T), a(pT), a(p^2 T)) into the
    coefficients at T of the three level Np basis series, in slot order.

    The three outputs always sum back to a(T).
    """
    a_t, a_pt, a_p2t = Fraction(a_t), Fraction(a_pt), Fraction(a_p2t)
    den = (p**k - 1) * (p ** (2 * k - 2) - 1)
    low = _ipow(p, 4 - k)
    out0 = (
        (p ** (3 * k - 2) + p ** (2 * k - 1) - p ** (2 * k - 2) + p ** (k + 1) - p**k - p + 1) * a_t
        - (p ** (2 * k - 1) + p ** (k + 1) + p * p - p) * a_pt
        + p * p * a_p2t
    )
    out1 = (
        (-p ** (2 * k - 1) - p ** (k + 1) - p**3 + p) * a_t
        + (p ** (2 * k - 1) + p ** (k + 1) + p**3 + p * p - p + low) * a_pt
        - (p * p + low) * a_p2t
    )
    out2 = p**3 * a_t - (p**3 + low) * a_pt + low * a_p2t
    return (out0 / den, out1 / den, out2 / den)


def _require_divides(spec: EisensteinSpec, p: int, should_divide: bool) -> None:
    divides = spec.partition.level % p == 0
    if divides != should_divide:
        verb = "must" if should_divide else "must not"
        raise ValueError(f"p {verb} divide the level")


def hecke_tp(spec: EisensteinSpec, p: int, mat: HalfIntegralMatrix) -> Fraction:
    """Coefficient at mat of the series after the Hecke operator at p coprime
    to the level, assembled from coefficient values.

    Transform terms that leave the half-integral lattice contribute 0.
    """
    _require_divides(spec, p, False)
    k = spec.k
    total = fourier_coefficient(spec, mat.scaled(p))
    mid = Fraction(0)
    for alpha in range(p):
        w = _scaled_transform(mat, ((1, 0), (alpha, p)), p)
        if w is not None:
            mid += fourier_coefficient(spec, w)
    w = _scaled_transform(mat, ((p, 0), (0, 1)), p)
    if w is not None:
        mid += fourier_coefficient(spec, w)
    total += p ** (k - 2) * mid
    down = mat.divided_by(p)
    if down is not None:
        total += p ** (2 * k - 3) * fourier_coefficient(spec, down)
    return total


def _scaled_transform(t: HalfIntegralMatrix, mat, p: int) -> HalfIntegralMatrix | None:
    m, r, n = _transform_triple(t, mat)
    if m % p or r % p or n % p:
        return None
    return HalfIntegralMatrix(m // p, r // p, n // p)


def hecke_up(spec: EisensteinSpec, p: int, mat: HalfIntegralMatrix) -> Fraction:
    """Coefficient action of U(p) for p dividing the level: a(pT)."""
    _require_divides(spec, p, True)
    return fourier_coefficient(spec, mat.scaled(p))


def hecke_u1p2(spec: EisensteinSpec, p: int, mat: HalfIntegralMatrix) -> Fraction:
    """Coefficient action of U_1(p^2) for p dividing the level: the p + 1
    term sum over the degree p column transforms."""
    _require_divides(spec, p, True)
    total = Fraction(0)
    for alpha in range(p):
        total += fourier_coefficient(spec, mat.transformed(((1, 0), (alpha, p))))
    total += fourier_coefficient(spec, mat.transformed(((p, 0), (0, 1))))
    return total


def reduced_representatives(delta_max: int, singular_content_max: int = 0,
                            include_zero: bool = False,
                            all_classes: bool = False) -> list[HalfIntegralMatrix]:
    """Reduced half-integral representatives: optionally the zero matrix,
    rank 1 forms (e, 0, 0) up to the content bound, and definite forms with
    0 <= r <= m <= n and discriminant at most delta_max.

    all_classes additionally emits the (m, -r, n) twins, which are improperly
    equivalent to their partners.
    """
    out: list[HalfIntegralMatrix] = []
    if include_zero:
        out.append(HalfIntegralMatrix(0, 0, 0))
    for e in range(1, singular_content_max + 1):
        out.append(HalfIntegralMatrix(e, 0, 0))
    m = 1
    while 3 * m * m <= delta_max:
        for r in range(m + 1):
            n = m
            while 4 * m * n - r * r <= delta_max:
                out.append(HalfIntegralMatrix(m, r, n))
                if all_classes and r:
                    out.append(HalfIntegralMatrix(m, -r, n))
                n += 1
        m += 1
    return out
