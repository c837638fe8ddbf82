"""Cohen class-number sums, their prime-to-level restrictions, and the local
correction factors that relate one level to the next.

cohen_h_level(N, k, M) restricts both divisor variables of the classical sum
to integers coprime to N; level 1 recovers the plain value.  Multiplying the
level Np sum by local_correction(p, D, ord_p(f), k) recovers the level N sum,
which is the identity the verification suites exercise.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .exactmath import (
    decompose_discriminant,
    divisors,
    is_squarefree,
    kronecker_symbol,
    l_negative,
    moebius,
)

__all__ = ["cohen_h", "cohen_h_level", "local_correction"]


@lru_cache(maxsize=None)
def cohen_h_level(level: int, k: int, m: int) -> Fraction:
    """Class-number sum with divisors restricted to integers coprime to level.

    m must be positive and 0 or 3 mod 4; hitting anything else indicates a
    caller bug (discriminants of half-integral matrices never are), so it is
    a hard error rather than a silent zero.
    """
    if level < 1 or not is_squarefree(level):
        raise ValueError("level must be a squarefree positive integer")
    if k < 4 or k % 2:
        raise ValueError("weight must be even and at least 4")
    if m <= 0 or m % 4 in (1, 2):
        raise ValueError("argument must be positive and 0 or 3 mod 4")
    dec = decompose_discriminant(m)
    acc = 0
    for g in divisors(dec.conductor):
        if gcd(g, level) > 1:
            continue
        mu = moebius(g)
        if mu == 0:
            continue
        chi = kronecker_symbol(dec.disc, g)
        if chi == 0:
            continue
        inner = sum(h ** (2 * k - 3) for h in divisors(dec.conductor // g) if gcd(h, level) == 1)
        acc += mu * chi * g ** (k - 2) * inner
    return l_negative(k - 1, dec.disc) * acc


def cohen_h(k: int, m: int) -> Fraction:
    """Unrestricted class-number sum (level 1)."""
    return cohen_h_level(1, k, m)


@lru_cache(maxsize=None)
def local_correction(p: int, disc: int, v: int, k: int) -> Fraction:
    """Geometric factor linking the class sums of level Np and level N at p:

        sum_{j<=v} p^(j(2k-3)) - chi_D(p) p^(k-2) sum_{j<=v-1} p^(j(2k-3))

    with empty sums equal to 0.  Negative v is rejected.
    """
    if v < 0:
        raise ValueError("order must be non-negative")
    first = sum(p ** (j * (2 * k - 3)) for j in range(v + 1))
    second = sum(p ** (j * (2 * k - 3)) for j in range(v))
    return Fraction(first - kronecker_symbol(disc, p) * p ** (k - 2) * second)
