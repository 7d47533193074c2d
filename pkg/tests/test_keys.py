import pytest

from flatbst.errors import InputFormatError, UnsortedInputError
from flatbst.implicit import KeySequence, search
from flatbst.keys import check_sorted, parse_keys, read_keys


class TestParseKeys:
    def test_lf_and_crlf(self):
        assert parse_keys("1\n2\n3\n") == [1, 2, 3]
        assert parse_keys("1\r\n2\r\n3") == [1, 2, 3]

    def test_empty(self):
        assert parse_keys("") == []

    def test_negative_and_bounds(self):
        assert parse_keys("-9223372036854775808\n9223372036854775807\n") == [-(1 << 63), (1 << 63) - 1]
        with pytest.raises(InputFormatError):
            parse_keys("9223372036854775808\n")

    def test_garbage(self):
        with pytest.raises(InputFormatError):
            parse_keys("1\nabc\n")


class TestReadKeys:
    def test_unsorted_reports_line(self, tmp_path):
        path = tmp_path / "keys.txt"
        path.write_text("1\n5\n3\n")
        with pytest.raises(UnsortedInputError) as excinfo:
            read_keys(path)
        assert excinfo.value.line == 3

    def test_sort_on_request(self, tmp_path):
        path = tmp_path / "keys.txt"
        path.write_text("5\n1\n3\n1\n")
        assert read_keys(path, sort=True).keys == (1, 1, 3, 5)

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            read_keys(tmp_path / "nope.txt")

    def test_returns_key_sequence(self, tmp_path):
        path = tmp_path / "keys.txt"
        path.write_text("10\n20\n20\n30\n")
        keys = read_keys(path)
        assert isinstance(keys, KeySequence)
        assert len(keys) == 4
        assert search(keys, 30).index == 3

    def test_not_utf8(self, tmp_path):
        path = tmp_path / "keys.txt"
        path.write_bytes(b"1\n\xff\xfe\n3\n")
        with pytest.raises(InputFormatError, match="UTF-8"):
            read_keys(path)


class TestCheckSorted:
    def test_duplicates_are_sorted(self):
        check_sorted([1, 1, 2, 2])
        check_sorted([])

    def test_first_descent_line(self):
        with pytest.raises(UnsortedInputError) as excinfo:
            check_sorted([1, 2, 2, 1, 0])
        assert excinfo.value.line == 4
