"""Even lattices presented by Gram matrices: level, determinant, character,
local invariants, and the genus decomposition against the Eisenstein basis.

The five built-in rank 8 single-class lattices S1..S5 are stored as their
lower-triangular tuples and decoded on demand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from .eisenstein import (
    EisensteinSpec,
    HalfIntegralMatrix,
    LevelPartition,
    fourier_coefficient,
    partitions_of_level,
)
from .exactmath import is_squarefree, kronecker_symbol, prime_divisors, valuation

__all__ = [
    "GramMatrix",
    "LatticeProfile",
    "profile",
    "hilbert_symbol",
    "hasse_invariant",
    "genus_coefficients",
    "genus_rep_number",
    "BUILTIN_NAMES",
    "builtin_lattice",
    "parse_gram",
    "format_gram",
    "load_gram",
]


def _bareiss_minors(rows) -> list[int] | None:
    """Leading principal minors by fraction-free elimination; None signals a
    zero pivot, which already rules out positive definiteness."""
    n = len(rows)
    a = [list(row) for row in rows]
    minors = []
    prev = 1
    for k in range(n):
        piv = a[k][k]
        if piv == 0:
            return None
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (piv * a[i][j] - a[i][k] * a[k][j]) // prev
        prev = piv
        minors.append(piv)
    return minors


@dataclass(frozen=True)
class GramMatrix:
    """Symmetric integer matrix with even diagonal, positive definite.

    The genus machinery needs even rank; the plain enumeration helpers do
    not, so rank is not restricted here.
    """

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.rows)
        if n == 0:
            raise ValueError("matrix must be nonempty")
        if any(len(row) != n for row in self.rows):
            raise ValueError("matrix must be square")
        for i in range(n):
            if self.rows[i][i] % 2:
                raise ValueError("diagonal entries must be even")
            for j in range(i):
                if self.rows[i][j] != self.rows[j][i]:
                    raise ValueError("matrix must be symmetric")
        minors = _bareiss_minors(self.rows)
        if minors is None or any(v <= 0 for v in minors):
            raise ValueError("matrix must be positive definite")

    @classmethod
    def from_rows(cls, rows) -> "GramMatrix":
        return cls(tuple(tuple(int(x) for x in row) for row in rows))

    @classmethod
    def from_lower_triangular(cls, values) -> "GramMatrix":
        vals = [int(v) for v in values]
        size = (math.isqrt(8 * len(vals) + 1) - 1) // 2
        if size * (size + 1) // 2 != len(vals):
            raise ValueError("entry count is not a triangular number")
        rows = [[0] * size for _ in range(size)]
        pos = 0
        for i in range(size):
            for j in range(i + 1):
                rows[i][j] = rows[j][i] = vals[pos]
                pos += 1
        return cls.from_rows(rows)

    @property
    def size(self) -> int:
        return len(self.rows)

    @property
    def determinant(self) -> int:
        return _bareiss_minors(self.rows)[-1]

    def lower_triangular(self) -> tuple[int, ...]:
        return tuple(self.rows[i][j] for i in range(self.size) for j in range(i + 1))


@dataclass(frozen=True)
class LatticeProfile:
    """Genus invariants of an even lattice: minimal level, determinant,
    character triviality, and local data at the primes of the level."""

    level: int
    determinant: int
    character_trivial: bool
    hasse: dict[int, int]
    d_powers: dict[int, int]


def _inverse(rows):
    n = len(rows)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(rows)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        scale = 1 / a[col][col]
        a[col] = [v * scale for v in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


@lru_cache(maxsize=None)
def profile(gram: GramMatrix) -> LatticeProfile:
    """Level, determinant, character triviality, plus Hasse invariants and
    determinant p-parts at the primes dividing the level."""
    if gram.size % 2:
        raise ValueError("profile needs even rank")
    det = gram.determinant
    inv = _inverse(gram.rows)
    level = 1
    for i in range(gram.size):
        for j in range(gram.size):
            q = inv[i][j] / 2 if i == j else inv[i][j]
            level = math.lcm(level, q.denominator)
    k = gram.size // 2
    signed = det if k % 2 == 0 else -det
    trivial = signed > 0 and math.isqrt(signed) ** 2 == signed
    hasse = {p: hasse_invariant(gram, p) for p in prime_divisors(level)}
    d_powers = {p: p ** valuation(p, det) for p in prime_divisors(level)}
    return LatticeProfile(level, det, trivial, hasse, d_powers)


def _unit_split(x: Fraction, p: int) -> tuple[int, Fraction]:
    num, den = x.numerator, x.denominator
    order = 0
    while num % p == 0:
        num //= p
        order += 1
    while den % p == 0:
        den //= p
        order -= 1
    return order, Fraction(num, den)


def _unit_residue(u: Fraction, modulus: int) -> int:
    return (u.numerator * pow(u.denominator, -1, modulus)) % modulus


def _legendre_unit(u: Fraction, p: int) -> int:
    return kronecker_symbol(_unit_residue(u, p), p)


def hilbert_symbol(a, b, p) -> int:
    """Hilbert symbol (a, b)_p for nonzero rationals; p is a prime or the
    string "infinity"."""
    a = Fraction(a)
    b = Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("hilbert_symbol needs nonzero arguments")
    if p == "infinity" or p == math.inf:
        return -1 if a < 0 and b < 0 else 1
    p = int(p)
    if p < 2:
        raise ValueError('p must be a prime or "infinity"')
    alpha, u = _unit_split(a, p)
    beta, v = _unit_split(b, p)
    if p == 2:
        eps_u = 0 if _unit_residue(u, 4) == 1 else 1
        eps_v = 0 if _unit_residue(v, 4) == 1 else 1
        omega_u = 0 if _unit_residue(u, 8) in (1, 7) else 1
        omega_v = 0 if _unit_residue(v, 8) in (1, 7) else 1
        expo = eps_u * eps_v + alpha * omega_v + beta * omega_u
        return -1 if expo % 2 else 1
    sign = 1
    if alpha * beta % 2 and p % 4 == 3:
        sign = -sign
    if beta % 2:
        sign *= _legendre_unit(u, p)
    if alpha % 2:
        sign *= _legendre_unit(v, p)
    return sign


def _diagonalize(rows, pivot_order=None) -> list[Fraction]:
    """Congruence-diagonalize a symmetric rational matrix; pivot_order biases
    which index is cleared first (the Hasse product does not depend on it)."""
    n = len(rows)
    a = [[Fraction(x) for x in row] for row in rows]
    remaining = set(range(n))
    preference = list(pivot_order) if pivot_order is not None else list(range(n))
    diag: list[Fraction] = []
    while remaining:
        pick = next((idx for idx in preference if idx in remaining and a[idx][idx] != 0), None)
        if pick is None:
            pair = next(((i, j) for i in remaining for j in remaining if i != j and a[i][j] != 0), None)
            if pair is None:
                raise ValueError("form is degenerate")
            i, j = pair
            for c in range(n):
                a[i][c] += a[j][c]
            for c in range(n):
                a[c][i] += a[c][j]
            continue
        d = a[pick][pick]
        diag.append(d)
        remaining.discard(pick)
        for i in remaining:
            f = a[i][pick] / d
            if f:
                for c in range(n):
                    a[i][c] -= f * a[pick][c]
                for c in range(n):
                    a[c][i] -= f * a[c][pick]
    return diag


def hasse_invariant(gram: GramMatrix, p, pivot_order=None) -> int:
    """Product of hilbert_symbol(a_i, a_j, p) over i < j for a rational
    diagonalization (a_1, ..., a_n) of the matrix.  Independent of the
    diagonalization path; pivot_order exists so tests can confirm that."""
    diag = _diagonalize(gram.rows, pivot_order)
    out = 1
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            out *= hilbert_symbol(diag[i], diag[j], p)
    return out


@lru_cache(maxsize=None)
def _genus_coefficients(gram: GramMatrix) -> dict[LevelPartition, Fraction]:
    prof = profile(gram)
    k = gram.size // 2
    if k % 2 or k < 4:
        raise ValueError("rank must be 2k with k even and at least 4")
    if not is_squarefree(prof.level):
        raise ValueError("level must be squarefree")
    if not prof.character_trivial:
        raise ValueError("character must be trivial")
    for p in prof.d_powers:
        if valuation(p, prof.d_powers[p]) % 2:
            raise ValueError("determinant valuation must be even at primes of the level")
    out = {}
    for part in partitions_of_level(prof.level):
        c = Fraction(1)
        for p in prime_divisors(part.n1):
            c *= Fraction(prof.hasse[p], math.isqrt(prof.d_powers[p]))
        for p in prime_divisors(part.n2):
            c /= prof.d_powers[p]
        out[part] = c
    return out


def genus_coefficients(gram: GramMatrix) -> dict[LevelPartition, Fraction]:
    """Weight of each basis series in the genus average of the lattice's
    degree 2 theta coefficients, one entry per partition of the level."""
    return dict(_genus_coefficients(gram))


def genus_rep_number(gram: GramMatrix, mat: HalfIntegralMatrix) -> Fraction:
    """Genus-average number of 2-column integer matrices X with X' S X = 2T.

    For a single-class genus this is the exact count, hence an integer.
    """
    k = gram.size // 2
    total = Fraction(0)
    for part, weight in _genus_coefficients(gram).items():
        total += weight * fourier_coefficient(EisensteinSpec(k, part), mat)
    return total


# Lower-triangular tuples of the five built-in rank 8 single-class lattices.
_BUILTIN: dict[str, tuple[int, ...]] = {
    "S1": (2, 1, 2, 1, 1, 2, 1, 0, 0, 2, 1, 1, 0, 0, 2, 1, 1, 0, 0, 1, 2,
           1, 0, 1, 0, 0, 0, 2, 1, 1, 0, 1, 1, 1, 0, 2),
    "S2": (2, -1, 2, 0, -1, 2, 0, 0, -1, 2, 0, 0, 0, -1, 2, 0, 0, -1, 0, 0, 2,
           0, 0, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 1, 2),
    "S3": (2, 1, 2, -1, -1, 2, 1, 1, 0, 2, 1, 1, 0, 1, 2, 1, 1, 0, 1, 1, 2,
           1, 1, 0, 1, 1, 1, 2, 1, 1, 0, 1, 1, 1, 1, 2),
    "S4": (2, 0, 2, 0, 0, 2, 1, 1, 1, 2, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 2,
           0, 0, 0, 0, 0, 0, 2, 0, 0, 0, 0, 1, 1, 1, 2),
    "S5": (2, 0, 2, 0, 0, 2, 1, -1, 1, 4, 0, 0, 0, 1, 2, 0, 0, 0, -1, 0, 2,
           0, 0, 0, -1, 0, 0, 2, 0, 0, 0, 1, 0, 0, 0, 2),
}

BUILTIN_NAMES = tuple(_BUILTIN)


@lru_cache(maxsize=None)
def builtin_lattice(name: str) -> GramMatrix:
    """One of the built-in lattices S1..S5."""
    try:
        values = _BUILTIN[name]
    except KeyError:
        raise ValueError(f"unknown lattice {name!r}; choose one of {BUILTIN_NAMES}") from None
    return GramMatrix.from_lower_triangular(values)


def parse_gram(text: str) -> GramMatrix:
    """Read the plain-text Gram format: first the size, then the
    lower-triangular entries row by row.  '#' starts a comment."""
    tokens: list[str] = []
    for line in text.splitlines():
        tokens.extend(line.split("#", 1)[0].split())
    if not tokens:
        raise ValueError("empty gram file")
    size = int(tokens[0])
    body = tokens[1:]
    need = size * (size + 1) // 2
    if len(body) != need:
        raise ValueError(f"expected {need} entries for size {size}, got {len(body)}")
    return GramMatrix.from_lower_triangular(int(t) for t in body)


def format_gram(gram: GramMatrix) -> str:
    vals = gram.lower_triangular()
    lines = [str(gram.size)]
    pos = 0
    for i in range(gram.size):
        lines.append(" ".join(str(v) for v in vals[pos:pos + i + 1]))
        pos += i + 1
    return "\n".join(lines) + "\n"


def load_gram(path) -> GramMatrix:
    return parse_gram(Path(path).read_text())
