"""Exhaustive identity suites with configurable bounds.

Each suite walks a finite grid and compares two independent evaluation
routes with exact equality; a failure message names the offending point.
The CLI `verify` subcommand and the acceptance tests both run these.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .classnumbers import cohen_h, cohen_h_level, local_correction
from .eisenstein import (
    EisensteinSpec,
    LevelPartition,
    LocalOrders,
    definite_local_factor,
    fourier_coefficient,
    hecke_tp,
    hecke_u1p2,
    hecke_up,
    partitions_of_level,
    raise_level,
    reduced_representatives,
    singular_local_factor,
)
from .exactmath import (
    decompose_discriminant,
    is_fundamental_discriminant,
    is_squarefree,
    kronecker_symbol,
    valuation,
)
from .lattice import BUILTIN_NAMES, builtin_lattice, genus_coefficients, genus_rep_number
from .theta import rep_deg2, shells

__all__ = [
    "SuiteReport",
    "CoefficientBounds",
    "ClassSumBounds",
    "LocalSumBounds",
    "HeckeBounds",
    "LatticeBounds",
    "verify_coefficient_identities",
    "verify_class_identities",
    "verify_local_sums",
    "verify_hecke",
    "verify_lattices",
    "run_suites",
    "SUITE_NAMES",
]

# Genus decomposition rows of the built-in lattices, frozen for the table check.
EXPECTED_GENUS_TABLES: dict[str, dict[tuple[int, int, int], Fraction]] = {
    "S1": {(1, 1, 1): Fraction(1)},
    "S2": {(3, 1, 1): Fraction(1), (1, 3, 1): Fraction(1, 3), (1, 1, 3): Fraction(1, 9)},
    "S3": {(2, 1, 1): Fraction(1), (1, 2, 1): Fraction(1, 2), (1, 1, 2): Fraction(1, 4)},
    "S4": {(2, 1, 1): Fraction(1), (1, 2, 1): Fraction(1, 4), (1, 1, 2): Fraction(1, 16)},
    "S5": {(2, 1, 1): Fraction(1), (1, 2, 1): Fraction(1, 8), (1, 1, 2): Fraction(1, 64)},
}


@dataclass(frozen=True)
class SuiteReport:
    name: str
    checks: int
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


class _Tally:
    def __init__(self, name: str, limit: int = 12):
        self.name = name
        self.checks = 0
        self.failures: list[str] = []
        self.limit = limit

    def check(self, condition: bool, message: str) -> None:
        self.checks += 1
        if not condition and len(self.failures) < self.limit:
            self.failures.append(message)

    def report(self) -> SuiteReport:
        return SuiteReport(self.name, self.checks, tuple(self.failures))


def _primes_up_to(limit: int) -> list[int]:
    return [p for p in range(2, limit + 1)
            if all(p % q for q in range(2, isqrt(p) + 1))]


def _squarefree_up_to(limit: int) -> list[int]:
    return [n for n in range(1, limit + 1) if is_squarefree(n)]


@dataclass(frozen=True)
class CoefficientBounds:
    level_max: int = 15
    prime_max: int = 5
    weights: tuple[int, ...] = (4, 6)
    delta_max: int = 50
    singular_content_max: int = 12


def verify_coefficient_identities(bounds: CoefficientBounds = CoefficientBounds()) -> SuiteReport:
    """Level raising against direct evaluation, plus the three-term
    decomposition of each series into the next level's basis."""
    tally = _Tally("identities/coefficients")
    mats = reduced_representatives(bounds.delta_max, bounds.singular_content_max,
                                   include_zero=True)
    primes = _primes_up_to(bounds.prime_max)
    for level in _squarefree_up_to(bounds.level_max):
        for p in primes:
            if level % p == 0:
                continue
            for part in partitions_of_level(level):
                n0, n1, n2 = part.as_tuple()
                raised = (LevelPartition(p * n0, n1, n2),
                          LevelPartition(n0, p * n1, n2),
                          LevelPartition(n0, n1, p * n2))
                for k in bounds.weights:
                    spec = EisensteinSpec(k, part)
                    up_specs = tuple(EisensteinSpec(k, q) for q in raised)
                    for t in mats:
                        base = fourier_coefficient(spec, t)
                        lifted = raise_level(base,
                                             fourier_coefficient(spec, t.scaled(p)),
                                             fourier_coefficient(spec, t.scaled(p * p)),
                                             p, k)
                        direct = tuple(fourier_coefficient(s, t) for s in up_specs)
                        where = f"k={k} {part.as_tuple()} p={p} T=({t.m},{t.r},{t.n})"
                        tally.check(lifted == direct, f"level raise mismatch at {where}")
                        tally.check(sum(direct, Fraction(0)) == base,
                                    f"decomposition sum mismatch at {where}")
    return tally.report()


@dataclass(frozen=True)
class ClassSumBounds:
    level_max: int = 30
    prime_max: int = 7
    m_max: int = 500
    weights: tuple[int, ...] = (4, 6)


def verify_class_identities(bounds: ClassSumBounds = ClassSumBounds()) -> SuiteReport:
    """Level correction and p-squared stability of the class-number sums."""
    tally = _Tally("identities/class-sums")
    ms = [m for m in range(1, bounds.m_max + 1) if m % 4 in (0, 3)]
    primes = _primes_up_to(bounds.prime_max)
    for level in _squarefree_up_to(bounds.level_max):
        for p in primes:
            if level % p == 0:
                continue
            for k in bounds.weights:
                for m in ms:
                    dec = decompose_discriminant(m)
                    corr = local_correction(p, dec.disc, valuation(p, dec.conductor), k)
                    here = f"N={level} p={p} k={k} M={m}"
                    tally.check(
                        cohen_h_level(level * p, k, m) * corr == cohen_h_level(level, k, m),
                        f"level correction fails at {here}")
                    tally.check(
                        cohen_h_level(level * p, k, p * p * m) == cohen_h_level(level * p, k, m),
                        f"p^2 stability fails at {here}")
    for k in bounds.weights:
        for m in range(1, max(bounds.m_max, 1000) + 1):
            if m % 4 in (1, 2):
                continue
            tally.check(cohen_h_level(1, k, m) == cohen_h(k, m),
                        f"level 1 disagrees with plain sum at k={k} M={m}")
    return tally.report()


@dataclass(frozen=True)
class LocalSumBounds:
    prime_max: int = 7
    order_max: int = 4
    weights: tuple[int, ...] = (4, 6, 8)


def _fundamental_with_character(p: int, chi: int) -> int:
    d = -3
    while True:
        if is_fundamental_discriminant(d) and kronecker_symbol(d, p) == chi:
            return d
        d -= 1


def verify_local_sums(bounds: LocalSumBounds = LocalSumBounds()) -> SuiteReport:
    """Sums of the local factors against the correction-factor sums.

    The definite identity needs u <= v, which every genuine matrix satisfies
    because the content divides the conductor.
    """
    tally = _Tally("identities/local-sums")
    for p in _primes_up_to(bounds.prime_max):
        for k in bounds.weights:
            for u in range(bounds.order_max + 1):
                want = sum(p ** (j * (k - 1)) for j in range(u + 1))
                got = sum((singular_local_factor(i, p, u, k) for i in range(3)), Fraction(0))
                tally.check(got == want, f"singular sum fails at p={p} u={u} k={k}")
            for chi in (-1, 0, 1):
                disc = _fundamental_with_character(p, chi)
                for v in range(bounds.order_max + 1):
                    for u in range(v + 1):
                        orders = LocalOrders(p, u, v, chi)
                        got = sum((definite_local_factor(i, orders, k) for i in range(3)),
                                  Fraction(0))
                        want = sum(p ** (j * (k - 1)) * local_correction(p, disc, v - j, k)
                                   for j in range(u + 1))
                        tally.check(got == want,
                                    f"definite sum fails at p={p} chi={chi} u={u} v={v} k={k}")
                    recur = (local_correction(p, disc, v, k)
                             + p ** ((v + 1) * (2 * k - 3))
                             - chi * p ** (k - 2) * p ** (v * (2 * k - 3)))
                    tally.check(local_correction(p, disc, v + 1, k) == recur,
                                f"correction recursion fails at p={p} chi={chi} v={v} k={k}")
    return tally.report()


@dataclass(frozen=True)
class HeckeBounds:
    levels: tuple[int, ...] = (1, 3, 7)
    primes: tuple[int, ...] = (2, 3, 5)
    weights: tuple[int, ...] = (4, 6)
    matrix_count: int = 30


def verify_hecke(bounds: HeckeBounds = HeckeBounds()) -> SuiteReport:
    """Eigenvalue of the good-prime operator, and the triangular systems of
    the two bad-prime operators on the next level's basis."""
    tally = _Tally("hecke")
    mats = reduced_representatives(48, 6, include_zero=True)[:bounds.matrix_count]
    for level in bounds.levels:
        for p in bounds.primes:
            if level % p == 0:
                continue
            pf = Fraction(p)
            for k in bounds.weights:
                eigen = p ** (2 * k - 3) + p ** (k - 1) + p ** (k - 2) + 1
                for part in partitions_of_level(level):
                    spec = EisensteinSpec(k, part)
                    n0, n1, n2 = part.as_tuple()
                    s0 = EisensteinSpec(k, LevelPartition(p * n0, n1, n2))
                    s1 = EisensteinSpec(k, LevelPartition(n0, p * n1, n2))
                    s2 = EisensteinSpec(k, LevelPartition(n0, n1, p * n2))
                    for t in mats:
                        where = f"k={k} {part.as_tuple()} p={p} T=({t.m},{t.r},{t.n})"
                        tally.check(
                            hecke_tp(spec, p, t) == eigen * fourier_coefficient(spec, t),
                            f"eigenvalue fails at {where}")
                        f0 = fourier_coefficient(s0, t)
                        f1 = fourier_coefficient(s1, t)
                        f2 = fourier_coefficient(s2, t)
                        rows = (
                            ("U rank0", hecke_up(s0, p, t),
                             f0 + (1 - 1 / pf) * (f1 + f2)),
                            ("U rank1", hecke_up(s1, p, t),
                             p ** (k - 1) * f1 + (p ** (k - 1) - p ** (k - 3)) * f2),
                            ("U rank2", hecke_up(s2, p, t), p ** (2 * k - 3) * f2),
                            ("U1 rank0", hecke_u1p2(s0, p, t),
                             (p + 1) * f0 + (p ** (k - 1) + 1) * (1 - 1 / pf) * f1
                             + (1 - 1 / pf**2) * f2),
                            ("U1 rank1", hecke_u1p2(s1, p, t),
                             (p ** (2 * k - 2) + p) * f1
                             + (p ** (k - 2) + 1) * (p - 1 / pf) * f2),
                            ("U1 rank2", hecke_u1p2(s2, p, t),
                             (p ** (2 * k - 2) + p ** (2 * k - 3)) * f2),
                        )
                        for label, got, want in rows:
                            tally.check(got == want, f"{label} fails at {where}")
    return tally.report()


@dataclass(frozen=True)
class LatticeBounds:
    delta_max: int = 30
    singular_content_max: int = 10
    workers: int = 1


def verify_lattices(bounds: LatticeBounds = LatticeBounds()) -> SuiteReport:
    """Genus decomposition table, then formula versus enumeration with an
    integrality check, for every built-in lattice."""
    tally = _Tally("lattices")
    mats = reduced_representatives(bounds.delta_max, bounds.singular_content_max,
                                   include_zero=True)
    max_norm = max(2 * max(t.m, t.n) for t in mats)
    for name in BUILTIN_NAMES:
        gram = builtin_lattice(name)
        table = {part.as_tuple(): c for part, c in genus_coefficients(gram).items()}
        tally.check(table == EXPECTED_GENUS_TABLES[name], f"genus table differs for {name}")
        shells(gram, max_norm)
        for t in mats:
            formula = genus_rep_number(gram, t)
            count = rep_deg2(gram, t, workers=bounds.workers)
            where = f"{name} T=({t.m},{t.r},{t.n})"
            tally.check(formula == count,
                        f"formula {formula} != count {count} at {where}")
            tally.check(formula.denominator == 1 and formula >= 0,
                        f"non-integral or negative value {formula} at {where}")
    return tally.report()


SUITE_NAMES = ("identities", "hecke", "lattices", "all")


def run_suites(name: str,
               coefficient_bounds: CoefficientBounds = CoefficientBounds(),
               class_bounds: ClassSumBounds = ClassSumBounds(),
               local_bounds: LocalSumBounds = LocalSumBounds(),
               hecke_bounds: HeckeBounds = HeckeBounds(),
               lattice_bounds: LatticeBounds = LatticeBounds()) -> list[SuiteReport]:
    if name not in SUITE_NAMES:
        raise ValueError(f"unknown suite {name!r}; choose one of {SUITE_NAMES}")
    reports = []
    if name in ("identities", "all"):
        reports.append(verify_local_sums(local_bounds))
        reports.append(verify_class_identities(class_bounds))
        reports.append(verify_coefficient_identities(coefficient_bounds))
    if name in ("hecke", "all"):
        reports.append(verify_hecke(hecke_bounds))
    if name in ("lattices", "all"):
        reports.append(verify_lattices(lattice_bounds))
    return reports
