import pytest
from hypothesis import given, strategies as st

from amenalg.words import Alphabet, AlphabetMismatch, concat, factors_of, occurs_in, reverse, shortlex_key

AB = Alphabet(("a", "b"))
X123 = Alphabet(("x1", "x2", "x3"))

words_ab = st.lists(st.integers(0, 1), max_size=12).map(tuple)
words_x = st.lists(st.integers(0, 2), max_size=12).map(tuple)


@given(words_ab)
def test_format_parse_roundtrip_single_char(w):
    assert AB.parse(AB.format(w)) == w


@given(words_x)
def test_format_parse_roundtrip_multichar(w):
    assert X123.parse(X123.format(w)) == w
    assert X123.parse("".join(X123.format(w))) == w


def test_parse_rejects_unknown_symbol():
    with pytest.raises(AlphabetMismatch):
        AB.parse("abc")
    with pytest.raises(AlphabetMismatch):
        X123.parse("x1x4")


def test_show_empty_word():
    assert AB.show(()) == "ε"
    assert AB.show((0, 1)) == "ab"


def test_shortlex_order():
    ws = [AB.parse(s) for s in ["b", "aa", "a", "ab", ""]]
    assert [AB.format(w) for w in sorted(ws, key=shortlex_key)] == ["", "a", "b", "aa", "ab"]


@given(words_ab, words_ab)
def test_concat_and_reverse(u, v):
    assert concat(u, v) == u + v
    assert reverse(concat(u, v)) == concat(reverse(v), reverse(u))


@given(words_ab, st.integers(0, 5))
def test_factors_of(w, n):
    fs = factors_of(w, n)
    assert all(len(f) == n and occurs_in(f, w) for f in fs)
    assert len(fs) <= max(0, len(w) - n + 1) or n == 0


def test_words_enumeration_is_shortlex():
    assert list(AB.words(2)) == [(0, 0), (0, 1), (1, 0), (1, 1)]
