from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given

from chainpoly import corpus
from chainpoly.errors import ParseError
from chainpoly.textio import (format_family, format_poset, format_weights, fraction_str,
                              parse_family, parse_poset, parse_weights, read_poset)
from conftest import small_posets


@given(small_posets(8))
def test_poset_roundtrip(P):
    assert parse_poset(format_poset(P)) == P


def test_comments_and_blank_lines(tmp_path):
    text = "# two elements\n\np 2\nc 1 2  # the only cover\n"
    path = tmp_path / "tiny.poset"
    path.write_text(text)
    P = read_poset(path)
    assert P.size == 2 and P.covers == {(1, 2)}


@pytest.mark.parametrize("text", ["c 1 2\n", "p 2\np 3\n", "p x\n", "p 2\nq 1 2\n", "p 2\nc 1\n"])
def test_bad_poset_text(text):
    with pytest.raises(ParseError):
        parse_poset(text)


def test_family_roundtrip():
    P = corpus.load("p3")
    F = P.maximal_chains()
    assert parse_family(P, format_family(F)) == F
    with pytest.raises(ParseError):
        parse_family(P, "1,4,x\n")


def test_weights():
    w = parse_weights("1 3/2\n2 -1\n# note\n3 0.25\n")
    assert w == {1: Fraction(3, 2), 2: Fraction(-1), 3: Fraction(1, 4)}
    assert parse_weights(format_weights(w)) == w
    assert fraction_str(Fraction(4, 2)) == "2"
    for bad in ("1\n", "1 1/0\n", "a 1\n"):
        with pytest.raises(ParseError):
            parse_weights(bad)
