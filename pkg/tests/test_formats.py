"""File formats: parsing, serialization, source resolution."""

import numpy as np
import pytest

from blackburn.catalog import CATALOG, builtin, symmetric
from blackburn.errors import NotPermutation, OrderCap, ParseError
from blackburn.formats import (
    dump_cayley,
    parse_cayley,
    parse_permgen,
    resolve_source,
)


def test_parse_cayley_c2():
    g = parse_cayley("cayley 1\norder 2\n0 1\n1 0\n")
    assert g.order == 2
    assert g.mul(1, 1) == 0


def test_parse_cayley_comments_and_names():
    text = """# a comment
cayley 1
order 2   # trailing comment
names e t
0 1
1 0
"""
    g = parse_cayley(text)
    assert g.names == ("e", "t")


def test_parse_cayley_row_count_mismatch():
    with pytest.raises(ParseError) as err:
        parse_cayley("cayley 1\norder 3\n0 1 2\n1 2 0\n")
    assert err.value.line == 4


def test_parse_cayley_bad_header():
    with pytest.raises(ParseError) as err:
        parse_cayley("order 2\n0 1\n1 0\n")
    assert err.value.line == 1


def test_parse_cayley_entry_errors():
    with pytest.raises(ParseError):
        parse_cayley("cayley 1\norder 2\n0 x\n1 0\n")
    with pytest.raises(ParseError):
        parse_cayley("cayley 1\norder 2\n0 7\n1 0\n")


def test_s3_file_roundtrip():
    s3 = symmetric(3)
    text = dump_cayley(s3)
    back = parse_cayley(text)
    assert np.array_equal(back.table, s3.table)
    assert back.names == s3.names
    assert sorted(len(c) for c in back.conjugacy_classes()) == [1, 2, 3]


def test_roundtrip_all_catalog():
    for entry in CATALOG:
        if entry.order > 64:
            continue
        g = entry.build()
        back = parse_cayley(dump_cayley(g))
        assert np.array_equal(back.table, g.table), entry.name
        assert back.names == g.names, entry.name


def test_parse_permgen_s3():
    g = parse_permgen("permgen 1\ndegree 3\ngen 1 2 0\ngen 1 0 2\n")
    assert g.order == 6
    assert sorted(len(c) for c in g.conjugacy_classes()) == [1, 2, 3]


def test_parse_permgen_c4():
    g = parse_permgen("permgen 1\ndegree 4\ngen 1 2 3 0\n")
    assert g.order == 4
    assert g.order_of(1) == 4


def test_parse_permgen_not_permutation():
    with pytest.raises(NotPermutation):
        parse_permgen("permgen 1\ndegree 3\ngen 0 0 1\n")


def test_parse_permgen_cap():
    with pytest.raises(OrderCap):
        parse_permgen("permgen 1\ndegree 5\ngen 1 2 3 4 0\ngen 1 0 2 3 4\n", cap=100)


def test_parse_permgen_identity_is_index_zero():
    g = parse_permgen("permgen 1\ndegree 3\ngen 1 2 0\n")
    assert g.order == 3
    assert g.names[0] == "012"


def test_resolve_source(tmp_path):
    path = tmp_path / "c2.cayley"
    path.write_text("cayley 1\norder 2\n0 1\n1 0\n")
    src = resolve_source(str(path))
    assert src.kind == "cayley"
    assert src.load().order == 2

    perm = tmp_path / "c3.perm"
    perm.write_text("permgen 1\ndegree 3\ngen 1 2 0\n")
    assert resolve_source(str(perm)).load().order == 3

    assert resolve_source("q16").kind == "builtin"
    assert resolve_source("q16").load().order == 16

    bad = tmp_path / "junk.txt"
    bad.write_text("hello\n")
    with pytest.raises(ParseError):
        resolve_source(str(bad))


def test_builtin_resolution_matches_catalog():
    for entry in CATALOG:
        assert builtin(entry.name).order == entry.order
