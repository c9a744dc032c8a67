"""Tests for permutation-set and family file formats."""

from pathlib import Path

import pytest

from src.combinatorics.family import SetFamily
from src.combinatorics.formats import (
    format_family,
    parse_family,
    parse_perm_set,
    read_family,
    read_perm_set,
    write_family,
    write_perm_set,
)
from src.combinatorics.perm import PermSet, inverse_descent_class, knuth_class_n4
from src.errors import FileFormatError

DATA_DIR = Path(__file__).parent.parent / "data"


class TestPermSetFormat:
    """Test reading and writing permutation sets."""

    def test_comments_and_spellings(self):
        """Test comments, blank lines and notation variants."""
        text = "# header\n\n[3,4,1,2]  # first\n3 1 4 2\n"
        assert parse_perm_set(text) == knuth_class_n4()

    def test_degree_mismatch_reports_line(self):
        """Test the offending line number is reported."""
        with pytest.raises(FileFormatError) as exc_info:
            parse_perm_set("[1,2,3]\n[1,2]\n")
        assert exc_info.value.line == 2
        assert "line 2: degree mismatch" in str(exc_info.value)

    def test_duplicate(self):
        """Test duplicates are refused."""
        with pytest.raises(FileFormatError, match="duplicate"):
            parse_perm_set("[1,2]\n[1,2]\n")

    def test_not_a_permutation(self, tmp_path):
        """Test bad entries carry the path and line."""
        path = tmp_path / "bad.txt"
        path.write_text("[1,2,3]\n[1,1,3]\n", encoding="utf-8")
        with pytest.raises(FileFormatError) as exc_info:
            read_perm_set(path)
        assert f"{path}:2:" in str(exc_info.value)

    def test_empty_file(self):
        """Test a file without permutations is refused."""
        with pytest.raises(FileFormatError, match="no permutations"):
            parse_perm_set("# nothing\n")

    def test_missing_file(self, tmp_path):
        """Test unreadable paths become format errors."""
        with pytest.raises(FileFormatError):
            read_perm_set(tmp_path / "absent.txt")

    def test_write_then_read(self, tmp_path):
        """Test a written set reads back in the same order."""
        perms = inverse_descent_class(5, {4})
        path = tmp_path / "sets" / "d5.txt"
        write_perm_set(perms, path)
        assert read_perm_set(path) == perms

    def test_shipped_files(self):
        """Test the bundled pattern files parse."""
        assert read_perm_set(DATA_DIR / "patterns" / "knuth4.txt") == knuth_class_n4()
        assert read_perm_set(DATA_DIR / "patterns" / "inverse_descent_4.txt").as_set() == (
            inverse_descent_class(4, {3}).as_set()
        )
        assert read_perm_set(DATA_DIR / "patterns" / "monotone3.txt") == PermSet(
            3, [[1, 2, 3], [3, 2, 1]]
        )


class TestFamilyFormat:
    """Test reading and writing set families."""

    def test_parse(self):
        """Test header, sets and the empty set."""
        family = parse_family("n=4\n1,2\n{}\n{3, 4}\n")
        assert family == SetFamily(4, [[1, 2], [], [3, 4]])

    def test_format_empty_set(self):
        """Test the empty set is written as {}."""
        assert format_family(SetFamily(2, [[1], []])) == "n=2\n1\n{}\n"

    @pytest.mark.parametrize(
        "text,message,line",
        [
            ("1,2\n", "expected 'n=<int>' header", 1),
            ("n=3\n1,x\n", "non-integer element", 2),
            ("n=3\n1,4\n", "element 4 is outside [3]", 2),
            ("n=3\n\n2,2\n", "repeated element", 3),
        ],
    )
    def test_errors(self, text, message, line):
        """Test malformed family files report the line."""
        with pytest.raises(FileFormatError) as exc_info:
            parse_family(text)
        assert message in str(exc_info.value)
        assert exc_info.value.line == line

    def test_missing_header(self):
        """Test an empty file is refused."""
        with pytest.raises(FileFormatError, match="missing"):
            parse_family("# only a comment\n")

    def test_write_then_read(self, tmp_path):
        """Test a written family reads back unchanged."""
        family = SetFamily(5, [[1, 2], [3, 4], [1, 5], [2, 3], [1, 4]])
        path = tmp_path / "family.txt"
        write_family(family, path)
        assert read_family(path) == family
        assert read_family(DATA_DIR / "families" / "case2_prefix.txt") == family
