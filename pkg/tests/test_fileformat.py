import pytest

from tiltlab.fileformat import (FIXTURES, FormatError, field_from_flag, fixture_text, format_algebra,
                                load_fixture, parse_algebra, parse_module)
from tiltlab.repmod import hom_dim


@pytest.mark.parametrize("name", FIXTURES)
def test_round_trip(name):
    a = load_fixture(name)
    b = parse_algebra(format_algebra(a))
    assert b.dim == a.dim and b.n == a.n
    assert b.cartan() == a.cartan()


def test_comments_and_blank_lines_ignored():
    text = fixture_text("a4_cluster")
    noisy = "\n\n".join(line + "   # note" for line in text.splitlines())
    assert parse_algebra(noisy).dim == parse_algebra(text).dim


@pytest.mark.parametrize("text,line", [
    ("vertices 1 2\narrow a 1\n", 2),
    ("vertices 1 2\narrow a 1 2\nrel +1\n", 3),
    ("vertices 1 2\narrow a 1 2\nfrobnicate\n", 3),
    ("vertices 1 2\narrow a 1 2\nrel +1 a*b\n", 3),
    ("vertices 1 2\narrow a 1 2\nrel x a\n", None),
])
def test_errors_carry_line_numbers(text, line):
    with pytest.raises(FormatError) as e:
        parse_algebra(text)
    if line:
        assert e.value.line == line
        assert str(e.value).startswith(f"line {line}:")


def test_missing_vertices():
    with pytest.raises(FormatError):
        parse_algebra("algebra empty\n")


def test_field_override():
    a = load_fixture("d4_cluster", field=field_from_flag("Fp:7"))
    assert a.field.p == 7
    assert "field Fp 7" in format_algebra(a)
    assert a.dim == load_fixture("d4_cluster").dim


def test_module_parsing():
    a = parse_algebra("vertices 1 2\narrow a 1 2\n")
    M = parse_module("module M over A\ndim 1 1\nmap a [[1]]\n", a)
    assert M.dims == (1, 1) or list(M.dims) == [1, 1]
    assert hom_dim(M, M) == 1
    with pytest.raises(FormatError):
        parse_module("dim 1 1\nmap a [[1, 2]]\n", a)
    with pytest.raises(FormatError):
        parse_module("dim 1\n", a)
    with pytest.raises(FormatError):
        parse_module("dim 1 1\nmap a [[1\n", a)
