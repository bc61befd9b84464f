from fractions import Fraction
from pathlib import Path

import pytest

from nilmult.catalog import (
    ParseError,
    SpecError,
    abelian,
    build,
    default_manifest,
    filiform,
    freenil,
    heisenberg,
    load_file,
    parse_file,
    serialize,
)
from nilmult.lie_core import JacobiViolation, series_profile

DATA = Path(__file__).parent / "data"


def test_build_heisenberg_table():
    L = build("heisenberg:1")
    assert L.table == {(0, 1): {2: Fraction(1)}}
    assert L.name == "heisenberg:1"


def test_build_filiform_table():
    L = build("filiform:4")
    assert L.table == {(0, 1): {2: Fraction(1)}, (0, 2): {3: Fraction(1)}}


def test_build_dirsum():
    L = build("dirsum:heisenberg:1+abelian:1")
    assert L.dim == 4
    assert L.name == "dirsum:heisenberg:1+abelian:1"
    assert L.table == {(0, 1): {2: Fraction(1)}}


def test_build_nested_sum_of_three():
    L = build("dirsum:abelian:1+heisenberg:1+abelian:2")
    assert L.dim == 6


@pytest.mark.parametrize("bad", [
    "abelian", "abelian:x", "heisenberg:0", "filiform:2", "unknown:3",
    "freenil:2", "freenil:0,2", "dirsum:abelian:1", "abelian:200",
    "freenil:4,4",
])
def test_bad_specs_rejected(bad):
    with pytest.raises(SpecError):
        build(bad)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_heisenberg_profile(k):
    prof = series_profile(heisenberg(k))
    assert (2 * k + 1, prof.derived_dim, prof.nilpotency_class) == (2 * k + 1, 1, 2)


@pytest.mark.parametrize("n", range(3, 8))
def test_filiform_profile(n):
    prof = series_profile(filiform(n))
    assert prof.derived_dim == n - 2
    assert prof.nilpotency_class == n - 1


@pytest.mark.parametrize("d,c", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3)])
def test_freenil_profile(d, c):
    prof = series_profile(freenil(d, c))
    assert prof.gen_count == d
    assert prof.nilpotency_class == c


def test_abelian_profile():
    prof = series_profile(abelian(5))
    assert prof.derived_dim == 0
    assert prof.gen_count == 5


def test_corpus_composition():
    manifest = default_manifest()
    algebras = manifest.algebras()
    nonabelian = [L for L in algebras if not L.is_abelian]
    assert len(nonabelian) >= 20
    assert list(manifest.specs) == sorted(manifest.specs)
    assert "freenil:3,3" in manifest.specs
    big = [L for L in algebras if L.dim > 8]
    assert [L.name for L in big] == ["freenil:3,3"]


def test_corpus_max_dim_filter():
    manifest = default_manifest(max_dim=5)
    assert all(build(s).dim <= 5 for s in manifest.specs)


def test_corpus_deterministic():
    assert default_manifest().specs == default_manifest().specs


def test_parse_good_file():
    L = load_file(str(DATA / "good_heisenberg.lie"))
    assert L.name == "h3-from-file"
    assert L == build("heisenberg:1")


@pytest.mark.parametrize("name,lineno,fragment", [
    ("bad_pair_order.lie", 4, "i < j"),
    ("bad_coefficient.lie", 4, "non-rational"),
    ("bad_index.lie", 3, "undeclared basis index"),
])
def test_malformed_files(name, lineno, fragment):
    text = (DATA / name).read_text()
    with pytest.raises(ParseError) as info:
        parse_file(text)
    assert info.value.line == lineno
    assert fragment in str(info.value)
    assert f"line {lineno}:" in str(info.value)


def test_parse_rejects_jacobi_failure():
    text = "algebra bad\ndim 3\nbracket 1 2 -> 1*3\nbracket 1 3 -> 1*1\nend\n"
    with pytest.raises(JacobiViolation):
        parse_file(text)


@pytest.mark.parametrize("text,fragment", [
    ("dim 3\nend\n", "'dim' before 'algebra'"),
    ("algebra a\ndim 3\n", "missing 'end'"),
    ("algebra a\ndim 3\nend\nbracket 1 2 -> 1*3\n", "after 'end'"),
    ("algebra a\ndim 3\nbracket 1 2 -> 1*3 2*3\nend\n", "repeated basis index"),
    ("algebra a\ndim 3\nbracket 1 2 -> 1*3\nbracket 1 2 -> 1*3\nend\n",
     "duplicate bracket pair"),
    ("algebra a\ndim 3\nwibble\nend\n", "unknown keyword"),
    ("algebra a\ndim 3\nbracket 1 2 -> 1/0*3\nend\n", "non-rational"),
])
def test_more_malformed_cases(text, fragment):
    with pytest.raises(ParseError) as info:
        parse_file(text)
    assert fragment in str(info.value)


def test_round_trip_whole_corpus():
    for spec in default_manifest().specs:
        L = build(spec)
        again = parse_file(serialize(L))
        assert again == L, spec
        assert again.name == L.name, spec


def test_round_trip_rational_coefficients():
    text = "algebra q\ndim 3\nbracket 1 2 -> 1/2*3 -2/7*1\nend\n"
    L = parse_file(text)
    assert parse_file(serialize(L)) == L
    assert L.bracket_basis(0, 1) == (Fraction(-2, 7), Fraction(0), Fraction(1, 2))


def test_file_spec_reads_from_disk():
    L = build(f"file:{DATA / 'good_heisenberg.lie'}")
    assert L.dim == 3


def test_file_spec_missing_path():
    with pytest.raises(SpecError):
        build("file:/nonexistent/nowhere.lie")


def test_trailing_newline_optional():
    text = "algebra t\ndim 2\nend"
    assert parse_file(text).dim == 2
