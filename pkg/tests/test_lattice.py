import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from siegelrep.eisenstein import HalfIntegralMatrix
from siegelrep.lattice import (
    BUILTIN_NAMES,
    GramMatrix,
    builtin_lattice,
    format_gram,
    genus_coefficients,
    genus_rep_number,
    hasse_invariant,
    hilbert_symbol,
    load_gram,
    parse_gram,
    profile,
)

EXPECTED_PROFILES = {
    "S1": (1, 1),
    "S2": (3, 9),
    "S3": (2, 4),
    "S4": (2, 16),
    "S5": (2, 64),
}

EXPECTED_TABLES = {
    "S1": {(1, 1, 1): Fraction(1)},
    "S2": {(3, 1, 1): Fraction(1), (1, 3, 1): Fraction(1, 3), (1, 1, 3): Fraction(1, 9)},
    "S3": {(2, 1, 1): Fraction(1), (1, 2, 1): Fraction(1, 2), (1, 1, 2): Fraction(1, 4)},
    "S4": {(2, 1, 1): Fraction(1), (1, 2, 1): Fraction(1, 4), (1, 1, 2): Fraction(1, 16)},
    "S5": {(2, 1, 1): Fraction(1), (1, 2, 1): Fraction(1, 8), (1, 1, 2): Fraction(1, 64)},
}


def a_series(n):
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = 2
        if i + 1 < n:
            rows[i][i + 1] = rows[i + 1][i] = -1
    return rows


def block_sum(*blocks):
    size = sum(len(b) for b in blocks)
    rows = [[0] * size for _ in range(size)]
    at = 0
    for b in blocks:
        for i in range(len(b)):
            for j in range(len(b)):
                rows[at + i][at + j] = b[i][j]
        at += len(b)
    return rows


def nonzero_fractions():
    ints = st.integers(min_value=-12, max_value=12).filter(lambda v: v != 0)
    return st.builds(Fraction, ints, st.integers(min_value=1, max_value=12))


class TestGramMatrix:
    def test_builtin_decode(self):
        for name in BUILTIN_NAMES:
            g = builtin_lattice(name)
            assert g.size == 8
            for i in range(8):
                assert g.rows[i][i] % 2 == 0
                for j in range(8):
                    assert g.rows[i][j] == g.rows[j][i]

    def test_validation(self):
        with pytest.raises(ValueError):
            GramMatrix.from_rows([[2, 1], [0, 2]])
        with pytest.raises(ValueError):
            GramMatrix.from_rows([[1, 0], [0, 2]])
        with pytest.raises(ValueError):
            GramMatrix.from_rows([[2, 3], [3, 2]])
        with pytest.raises(ValueError):
            GramMatrix.from_lower_triangular([2, 1])

    def test_lower_triangular_round_trip(self):
        g = builtin_lattice("S4")
        assert GramMatrix.from_lower_triangular(g.lower_triangular()) == g


class TestProfile:
    @pytest.mark.parametrize("name", BUILTIN_NAMES)
    def test_builtin_profiles(self, name):
        prof = profile(builtin_lattice(name))
        assert (prof.level, prof.determinant) == EXPECTED_PROFILES[name]
        assert prof.character_trivial
        assert all(s == 1 for s in prof.hasse.values())

    def test_nontrivial_character_detected(self):
        gram = GramMatrix.from_rows(block_sum(a_series(6), a_series(2)))
        prof = profile(gram)
        assert prof.level == 21 and prof.determinant == 21
        assert not prof.character_trivial
        with pytest.raises(ValueError):
            genus_coefficients(gram)

    def test_odd_rank_rejected(self):
        with pytest.raises(ValueError):
            profile(GramMatrix.from_rows(a_series(3)))


class TestHilbertSymbol:
    def test_spot_values(self):
        assert hilbert_symbol(-1, -1, 2) == -1
        assert hilbert_symbol(2, 3, 3) == -1
        for b, p in [(5, 2), (-7, 3), (Fraction(3, 4), 5), (11, "infinity")]:
            assert hilbert_symbol(1, b, p) == 1

    def test_minus_one_pair_via_mod8_search(self):
        # x^2 + y^2 + z^2 = 0 mod 8 forces x, y, z all even, so the form
        # x^2 + y^2 = -1 has no 2-adic solution and the symbol must be -1.
        solvable = any(
            (x * x + y * y + z * z) % 8 == 0
            for x in range(8) for y in range(8) for z in range(8)
            if x % 2 or y % 2 or z % 2
        )
        assert not solvable
        assert hilbert_symbol(-1, -1, 2) == -1

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            hilbert_symbol(0, 3, 5)

    @given(nonzero_fractions(), nonzero_fractions(), nonzero_fractions(),
           st.sampled_from([2, 3, 5, 7, "infinity"]))
    @settings(max_examples=200, deadline=None)
    def test_symmetric_and_bimultiplicative(self, a, b, c, p):
        assert hilbert_symbol(a, b, p) == hilbert_symbol(b, a, p)
        assert hilbert_symbol(a, b * c, p) == hilbert_symbol(a, b, p) * hilbert_symbol(a, c, p)

    @given(nonzero_fractions(), nonzero_fractions(),
           st.integers(min_value=1, max_value=10),
           st.sampled_from([2, 3, 5, "infinity"]))
    @settings(max_examples=100, deadline=None)
    def test_square_invariance(self, a, b, t, p):
        assert hilbert_symbol(a * t * t, b, p) == hilbert_symbol(a, b, p)

    def test_product_formula(self):
        rng = random.Random(0)
        primes = [p for p in range(2, 200) if all(p % q for q in range(2, p))]
        for _ in range(100):
            a = Fraction(rng.choice([-1, 1]) * rng.randint(1, 50), rng.randint(1, 50))
            b = Fraction(rng.choice([-1, 1]) * rng.randint(1, 50), rng.randint(1, 50))
            support = a.numerator * a.denominator * b.numerator * b.denominator * 2
            product = hilbert_symbol(a, b, "infinity")
            for p in primes:
                if support % p == 0:
                    product *= hilbert_symbol(a, b, p)
            assert product == 1


class TestHasse:
    def test_diagonal_twos_at_odd_primes(self):
        gram = GramMatrix.from_rows([[2 * (i == j) for j in range(8)] for i in range(8)])
        for p in (3, 5, 7):
            assert hasse_invariant(gram, p) == 1

    def test_pivot_order_independence(self):
        rng = random.Random(1)
        grams = [builtin_lattice(name) for name in BUILTIN_NAMES]
        while len(grams) < 25:
            diag = [2 * rng.randint(1, 4) for _ in range(4)]
            rows = [[0] * 4 for _ in range(4)]
            for i in range(4):
                rows[i][i] = diag[i]
                for j in range(i):
                    rows[i][j] = rows[j][i] = rng.randint(-1, 1)
            try:
                grams.append(GramMatrix.from_rows(rows))
            except ValueError:
                continue
        for gram in grams:
            orders = [None, list(reversed(range(gram.size)))]
            shuffled = list(range(gram.size))
            rng.shuffle(shuffled)
            orders.append(shuffled)
            for p in (2, 3, 5):
                values = {hasse_invariant(gram, p, pivot_order=o) for o in orders}
                assert len(values) == 1


class TestGenus:
    @pytest.mark.parametrize("name", BUILTIN_NAMES)
    def test_tables(self, name):
        table = {part.as_tuple(): c for part, c in genus_coefficients(builtin_lattice(name)).items()}
        assert table == EXPECTED_TABLES[name]

    def test_rep_number_spots(self):
        g1 = builtin_lattice("S1")
        assert genus_rep_number(g1, HalfIntegralMatrix(0, 0, 0)) == 1
        assert genus_rep_number(g1, HalfIntegralMatrix(1, 1, 1)) == 13440

    def test_small_rank_rejected(self):
        gram = GramMatrix.from_rows([[2, 0], [0, 2]])
        with pytest.raises(ValueError):
            genus_coefficients(gram)


class TestGramFiles:
    def test_round_trip(self, tmp_path):
        g = builtin_lattice("S2")
        path = tmp_path / "s2.gram"
        path.write_text(format_gram(g))
        assert load_gram(path) == g

    def test_parse_layout_and_comments(self):
        text = "# toy rank 2 lattice\n2\n2\n1 2\n"
        assert parse_gram(text) == GramMatrix.from_rows([[2, 1], [1, 2]])

    def test_parse_errors(self):
        with pytest.raises(ValueError):
            parse_gram("")
        with pytest.raises(ValueError):
            parse_gram("2\n2\n1")
        with pytest.raises(ValueError):
            parse_gram("2\n2\n1 2 5")
