"""Tests for the symavoid command line."""

import csv
import io
import json
from pathlib import Path

import pytest

from src.cli import EXIT_BUDGET, EXIT_FAILS, EXIT_OK, EXIT_USAGE, main, run
from src.verification.report_writer import parse_machine

DATA_DIR = Path(__file__).parent.parent / "data"
KNUTH = str(DATA_DIR / "patterns" / "knuth4.txt")


@pytest.fixture
def cli(tmp_path):
    """Run main with a private Kostka cache and one worker."""

    def invoke(*argv):
        return main([*argv, "--threads", "1", "--cache-path", str(tmp_path / "kostka.json")])

    return invoke


class TestSetCommands:
    """Test avoid, qsym, check-sym and check-schur."""

    def test_check_sym(self, cli, capsys):
        """Test the Knuth class is symmetric."""
        assert cli("check-sym", "4", "--set", KNUTH) == EXIT_OK
        assert capsys.readouterr().out == "symmetric: true\n"

    def test_check_sym_false(self, cli, capsys, tmp_path):
        """Test a single non-monotone permutation is not symmetric."""
        path = tmp_path / "one.txt"
        path.write_text("[2,1,3]\n", encoding="utf-8")
        assert cli("check-sym", "3", "--set", str(path)) == EXIT_FAILS
        assert "symmetric: false" in capsys.readouterr().out

    def test_check_schur_saves_cache(self, cli, capsys, tmp_path):
        """Test the size-5 set is not Schur-positive and Kostka numbers are saved."""
        path = str(DATA_DIR / "patterns" / "non_positive_n5.txt")
        assert cli("check-schur", "5", "--set", path) == EXIT_FAILS
        assert "schur-positive: false" in capsys.readouterr().out
        assert (tmp_path / "kostka.json").exists()

    def test_wrong_shape_cache_is_replaced(self, cli, capsys, tmp_path):
        """Test a cache file of the wrong shape is ignored and rewritten."""
        cache_file = tmp_path / "kostka.json"
        cache_file.write_text("[]", encoding="utf-8")
        assert cli("check-schur", "4", "--set", KNUTH) == EXIT_OK
        assert "schur-positive: true" in capsys.readouterr().out
        assert "values" in json.loads(cache_file.read_text(encoding="utf-8"))

    def test_check_sym_machine(self, cli, capsys):
        """Test --format machine gives a parseable report for check-sym."""
        assert cli("check-sym", "4", "--set", KNUTH, "--format", "machine") == EXIT_OK
        report = parse_machine(capsys.readouterr().out)
        assert report.check_name == "check-sym"
        assert report.holds
        assert report.witnesses == [["[3,4,1,2]", "[3,1,4,2]"]]

    def test_check_schur_csv(self, cli, capsys):
        """Test --format csv gives one row per sub-verdict for check-schur."""
        path = str(DATA_DIR / "patterns" / "non_positive_n5.txt")
        assert cli("check-schur", "5", "--set", path, "--format", "csv") == EXIT_FAILS
        rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
        assert [(r["label"], r["sub_verdict"]) for r in rows] == [
            ("symmetric", "holds"),
            ("Schur-positive", "fails"),
        ]

    def test_qsym_machine(self, cli, capsys):
        """Test machine output lists (basis, composition, coefficient)."""
        assert cli("qsym", "4", "--set", KNUTH, "--format", "machine") == EXIT_OK
        triples = json.loads(capsys.readouterr().out)
        assert triples[0] == ["M", "(2,2)", 1]
        assert triples[-1] == ["M", "(1,1,1,1)", 2]

    def test_qsym_csv(self, cli, capsys):
        """Test CSV output has a header row."""
        assert cli("qsym", "4", "--set", KNUTH, "--format", "csv") == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "basis,composition,coefficient"
        assert lines[1] == 'M,"(2,2)",1'

    def test_degree_mismatch(self, cli, capsys):
        """Test a set of the wrong degree is a usage error."""
        assert cli("qsym", "5", "--set", KNUTH) == EXIT_USAGE
        assert "mismatch" in capsys.readouterr().err

    def test_malformed_file(self, cli, capsys, tmp_path):
        """Test a malformed file reports path and line."""
        path = tmp_path / "bad.txt"
        path.write_text("[1,2,3]\n[1,2]\n", encoding="utf-8")
        assert cli("check-sym", "3", "--set", str(path)) == EXIT_USAGE
        assert f"{path}:2:" in capsys.readouterr().err

    def test_avoid_empty(self, cli, capsys):
        """Test S_5 avoiding both monotone patterns prints nothing."""
        path = str(DATA_DIR / "patterns" / "monotone3.txt")
        assert cli("avoid", "5", "--patterns", path) == EXIT_OK
        assert capsys.readouterr().out == ""

    def test_avoid_catalan(self, cli, capsys, tmp_path):
        """Test S_4(132) has 14 members."""
        path = tmp_path / "p.txt"
        path.write_text("[1,3,2]\n", encoding="utf-8")
        assert cli("avoid", "4", "--patterns", str(path)) == EXIT_OK
        assert len(capsys.readouterr().out.splitlines()) == 14


class TestFamilyCommands:
    """Test family extract, classify and search."""

    def test_extract(self, cli, capsys):
        """Test the Knuth class extracts to {1},{2},{1} over [2]."""
        assert cli("family", "extract", "--set", KNUTH) == EXIT_OK
        assert capsys.readouterr().out == "n=2\n1\n2\n1\n"

    def test_extract_machine(self, cli, capsys):
        """Test --format machine carries the extracted family."""
        assert cli("family", "extract", "--set", KNUTH, "--format", "machine") == EXIT_OK
        report = parse_machine(capsys.readouterr().out)
        assert report.witnesses == [{"n": 2, "family": [[1], [2], [1]]}]
        assert [s.label for s in report.sub_verdicts] == ["A_1", "A_2", "A_3"]

    def test_classify(self, cli, capsys):
        """Test the profile of the five-set prefix."""
        path = str(DATA_DIR / "families" / "case2_prefix.txt")
        assert cli("family", "classify", path) == EXIT_OK
        out = capsys.readouterr().out
        assert "uniform_k: 2" in out
        assert "distant_l2: 1" in out

    def test_search_found(self, cli, capsys):
        """Test a five-set (0,1)-family on [5] is found."""
        args = ["--n", "5", "--k", "2", "--l1", "0", "--l2", "1", "--m", "5"]
        assert cli("family", "search", *args) == EXIT_OK
        assert capsys.readouterr().out == "n=5\n1,2\n3,4\n1,5\n2,3\n1,4\n"

    def test_search_absent(self, cli, capsys):
        """Test a six-set family on [5] does not exist."""
        args = ["--n", "5", "--k", "2", "--l1", "0", "--l2", "1", "--m", "6", "--prune"]
        assert cli("family", "search", *args) == EXIT_FAILS
        assert capsys.readouterr().out == "no family\n"

    def test_search_budget(self, cli, capsys):
        """Test a tiny budget exits 3, or reports partial with --partial."""
        args = ["--n", "5", "--k", "2", "--l1", "0", "--l2", "1", "--m", "6", "--budget", "3"]
        assert cli("family", "search", *args) == EXIT_BUDGET
        assert cli("family", "search", *args, "--partial") == EXIT_OK
        assert "out of budget" in capsys.readouterr().out


class TestToolCommands:
    """Test tridiag, kostka, inverse-descent and respects."""

    def test_tridiag(self, cli, capsys):
        """Test d_2(1/2) = 3/4 and d_5(-1) = 0."""
        assert cli("tridiag", "2", "1/2") == EXIT_OK
        assert capsys.readouterr().out == "d_2(1/2) = 3/4\n"
        assert cli("tridiag", "5", "-1", "--format", "machine") == EXIT_OK
        assert json.loads(capsys.readouterr().out) == {"m": 5, "alpha": "-1", "det": "0"}

    def test_tridiag_matrix(self, cli, capsys):
        """Test --matrix prints the rows after the determinant."""
        assert cli("tridiag", "2", "1/3", "--matrix") == EXIT_OK
        assert capsys.readouterr().out.splitlines() == ["d_2(1/3) = 8/9", "1 1/3", "1/3 1"]

    def test_tridiag_bad_alpha(self, cli):
        """Test a non-numeric α is a usage error."""
        assert cli("tridiag", "2", "half") == EXIT_USAGE

    def test_kostka(self, cli, capsys):
        """Test K_(3,1),(2,1,1) = 2."""
        assert cli("kostka", "3,1", "2,1,1") == EXIT_OK
        assert capsys.readouterr().out == "K_(3,1),(2,1,1) = 2\n"
        assert cli("kostka", "2,2", "1,1,1,1", "--format", "machine") == EXIT_OK
        assert json.loads(capsys.readouterr().out)["kostka"] == 2

    def test_kostka_not_a_partition(self, cli):
        """Test increasing parts and size mismatches exit 2."""
        assert cli("kostka", "1,3", "2,2") == EXIT_USAGE
        assert cli("kostka", "3", "2,2") == EXIT_USAGE

    def test_inverse_descent(self, cli, capsys):
        """Test D⁻¹ of {3} in S_4."""
        assert cli("inverse-descent", "4", "3") == EXIT_OK
        assert capsys.readouterr().out == "[1,2,4,3]\n[1,4,2,3]\n[4,1,2,3]\n"
        assert cli("inverse-descent", "3", "-") == EXIT_OK
        assert capsys.readouterr().out == "[1,2,3]\n"

    def test_inverse_descent_out_of_range(self, cli):
        """Test subsets outside [k-1] exit 2."""
        assert cli("inverse-descent", "4", "4") == EXIT_USAGE
        assert cli("inverse-descent", "4", "x") == EXIT_USAGE

    def test_respects(self, cli, capsys):
        """Test [4,2,5,6,1,3] respects (1,3,2) and [2,5,4,6,1,3] does not."""
        assert cli("respects", "4,2,5,6,1,3", "1,3,2") == EXIT_OK
        assert capsys.readouterr().out == "respects: true\n"
        assert cli("respects", "2,5,4,6,1,3", "1,3,2") == EXIT_FAILS
        assert cli("respects", "1,2,3", "2,2") == EXIT_USAGE


class TestVerify:
    """Test the verify subcommand."""

    def test_list(self, cli, capsys):
        """Test the registry listing."""
        assert cli("verify", "list") == EXIT_OK
        assert "main-theorem:" in capsys.readouterr().out

    def test_holds(self, cli, capsys):
        """Test a holding check exits 0."""
        assert cli("verify", "classical-sanity", "--n-max", "6") == EXIT_OK
        assert "verdict: holds" in capsys.readouterr().out

    def test_fails(self, cli, capsys):
        """Test a failing check exits 1."""
        assert cli("verify", "min-symmetric-size", "--n", "4", "--max-size", "2") == EXIT_FAILS
        assert "known exception at n=4" in capsys.readouterr().out

    def test_precondition(self, cli):
        """Test a violated precondition exits 2."""
        assert cli("verify", "main-theorem", "--k", "4", "--p", "3") == EXIT_USAGE

    def test_budget(self, cli, capsys):
        """Test over-budget runs exit 3 unless partial."""
        args = ["verify", "main-theorem", "--k", "5", "--p", "3", "--budget", "1000"]
        assert cli(*args) == EXIT_BUDGET
        assert cli(*args, "--partial") == EXIT_OK
        assert "coverage: partial" in capsys.readouterr().out

    def test_sample_uses_config(self, cli, capsys, tmp_path):
        """Test --sample without a count takes sample_count from the config file."""
        config_file = tmp_path / "config.yaml"
        config_file.write_text("run:\n  sample_count: 40\n", encoding="utf-8")
        args = ["verify", "main-theorem", "--k", "5", "--p", "3", "--format", "machine"]
        assert cli(*args, "--config", str(config_file), "--sample") == EXIT_OK
        report = parse_machine(capsys.readouterr().out)
        assert report.coverage == "sampled"
        assert report.stats.candidates_tested == 40

    def test_patterns_file(self, cli, capsys):
        """Test symmetrically-avoided reads a pattern file."""
        path = str(DATA_DIR / "patterns" / "inverse_descent_4.txt")
        args = ["verify", "symmetrically-avoided", "--patterns", path, "--n-to", "5"]
        assert cli(*args) == EXIT_OK

    def test_machine_output_file(self, cli, capsys, tmp_path):
        """Test machine output written to a file parses back."""
        output = tmp_path / "report.json"
        args = ["verify", "knuth-exception", "--format", "machine", "--output", str(output)]
        assert cli(*args) == EXIT_OK
        assert capsys.readouterr().out == ""
        assert parse_machine(output.read_text(encoding="utf-8")).holds

    def test_unknown_check(self, cli):
        """Test unknown check names exit 2."""
        assert cli("verify", "no-such-check") == EXIT_USAGE


class TestCensusAndParsing:
    """Test census and argument handling."""

    def test_census(self, cli, capsys, tmp_path):
        """Test the S_3 singleton census."""
        output_dir = tmp_path / "census"
        args = ["census", "3", "--size", "1", "--window", "1:5", "--output-dir", str(output_dir)]
        assert cli(*args) == EXIT_OK
        summary = json.loads(capsys.readouterr().out)
        assert summary["symmetric_on_window"] == ["[1,2,3]", "[3,2,1]"]
        assert (output_dir / "metadata.json").exists()

    def test_bad_window(self, cli):
        """Test a malformed window exits 2."""
        assert cli("census", "3", "--size", "1", "--window", "5") == EXIT_USAGE

    def test_no_arguments(self):
        """Test a missing subcommand exits 2."""
        assert main([]) == EXIT_USAGE

    def test_run_alias(self, tmp_path):
        """Test run is main."""
        assert run(["verify", "list", "--cache-path", str(tmp_path / "k.json")]) == EXIT_OK
