import csv
import io
import json
from fractions import Fraction

from siegelrep.cli import main
from siegelrep.lattice import builtin_lattice, format_gram

COEFF_KEYS = ["k", "n0", "n1", "n2", "m", "r", "n", "delta", "content",
              "disc", "conductor", "value"]


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def json_lines(out):
    return [json.loads(line) for line in out.splitlines() if line]


class TestCoeff:
    def test_single_matrix(self, capsys):
        code, out = run(capsys, "coeff", "-k", "4", "-p", "1,1,1", "-T", "1,1,1")
        assert code == 0
        (rec,) = json_lines(out)
        assert list(rec.keys()) == COEFF_KEYS
        assert rec["value"] == "13440/1"
        assert rec["disc"] == -3 and rec["conductor"] == 1

    def test_constant_terms(self, capsys):
        code, out = run(capsys, "coeff", "-k", "4", "-p", "3,1,1", "-T", "0,0,0")
        assert code == 0 and json_lines(out)[0]["value"] == "1/1"
        code, out = run(capsys, "coeff", "-k", "4", "-p", "1,3,1", "-T", "0,0,0")
        assert code == 0 and json_lines(out)[0]["value"] == "0/1"

    def test_range_mode(self, capsys):
        code, out = run(capsys, "coeff", "-k", "4", "-p", "1,1,1", "--delta-max", "8")
        assert code == 0
        recs = json_lines(out)
        assert all(r["delta"] <= 8 for r in recs)
        assert any(r["value"] == "13440/1" for r in recs)

    def test_values_round_trip(self, capsys):
        _, out = run(capsys, "coeff", "-k", "6", "-p", "2,3,1", "--delta-max", "11")
        for rec in json_lines(out):
            value = Fraction(rec["value"])
            assert rec["value"] == f"{value.numerator}/{value.denominator}"

    def test_csv_lossless(self, capsys):
        code, out = run(capsys, "coeff", "-k", "4", "-p", "1,1,1", "-T", "1,1,1",
                        "--format", "csv")
        assert code == 0
        (row,) = list(csv.DictReader(io.StringIO(out)))
        assert row["value"] == "13440/1"
        assert Fraction(row["value"]) == 13440

    def test_exit_codes(self, capsys):
        assert run(capsys, "coeff", "-k", "5", "-p", "1,1,1", "-T", "0,0,0")[0] == 2
        assert run(capsys, "coeff", "-k", "4", "-p", "4,1,1", "-T", "0,0,0")[0] == 2
        assert run(capsys, "coeff", "-k", "4", "-p", "1,1,1", "-T", "1,5,1")[0] == 3
        assert run(capsys, "coeff", "-k", "4", "-p", "1,1,1", "-T", "1,2")[0] == 3
        assert run(capsys, "coeff", "-k", "4", "-p", "1,1,1")[0] == 2


class TestRep:
    def test_formula_mode(self, capsys):
        code, out = run(capsys, "rep", "--lattice", "S1", "-T", "0,0,0")
        assert code == 0
        rec = json_lines(out)[0]
        assert rec["value"] == "1/1" and rec["count"] is None

    def test_both_mode_matches(self, capsys):
        code, out = run(capsys, "rep", "--lattice", "S3", "-T", "1,0,1",
                        "--mode", "both")
        assert code == 0
        rec = json_lines(out)[0]
        assert rec["match"] is True
        assert rec["value"] == f"{rec['count']}/1"

    def test_gram_file(self, capsys, tmp_path):
        path = tmp_path / "s4.gram"
        path.write_text(format_gram(builtin_lattice("S4")))
        code, out = run(capsys, "rep", "--gram", str(path), "-T", "1,1,1",
                        "--mode", "enumerate")
        assert code == 0
        assert isinstance(json_lines(out)[0]["count"], int)

    def test_enumerate_works_without_profile(self, capsys, tmp_path):
        path = tmp_path / "toy3.gram"
        path.write_text("3\n2\n1 2\n0 1 4\n")
        code, out = run(capsys, "rep", "--gram", str(path), "-T", "1,1,1",
                        "--mode", "enumerate")
        assert code == 0
        rec = json_lines(out)[0]
        assert rec["level"] is None and isinstance(rec["count"], int)
        assert run(capsys, "rep", "--gram", str(path), "-T", "1,1,1")[0] == 2

    def test_exit_codes(self, capsys):
        assert run(capsys, "rep", "-T", "0,0,0")[0] == 2
        assert run(capsys, "rep", "--gram", "/nonexistent.gram", "-T", "0,0,0")[0] == 2
        assert run(capsys, "rep", "--lattice", "S1", "-T", "1,9,1")[0] == 3


class TestBasis:
    def test_level_six(self, capsys):
        code, out = run(capsys, "basis", "-N", "6")
        assert code == 0
        recs = json_lines(out)
        assert len(recs) == 9
        assert sum(r["constant_term"] for r in recs) == 1
        top = next(r for r in recs if r["constant_term"] == 1)
        assert (top["n0"], top["n1"], top["n2"]) == (6, 1, 1)
        assert top["cusp_ranks"] == "2:0;3:0"

    def test_bad_level(self, capsys):
        assert run(capsys, "basis", "-N", "12")[0] == 2


class TestVerify:
    def test_small_suite_passes(self, capsys):
        code, out = run(capsys, "verify", "identities", "--delta-max", "10",
                        "--level-max", "3", "--prime-max", "3", "--m-max", "40")
        assert code == 0
        assert "0 failures" in out

    def test_unknown_suite_is_usage_error(self, capsys):
        assert run(capsys, "verify", "nonsense")[0] == 2
