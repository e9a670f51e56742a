import pytest
from hypothesis import given

from biorder import freeword as fw
from strategies import letters, words


def stack_reduce(seq):
    """Reference reducer written independently of the library."""
    out = []
    for ch in seq:
        if out and out[-1] != ch and out[-1].lower() == ch.lower():
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


@pytest.mark.parametrize("raw, expected", [("aA", ""), ("abAB", "abAB"), ("abBA", "")])
def test_reduce_examples(raw, expected):
    assert fw.reduce(raw) == expected


@pytest.mark.parametrize("u, v, expected", [("a", "A", ""), ("ab", "BA", ""), ("aB", "b", "a")])
def test_multiply_examples(u, v, expected):
    assert fw.multiply(u, v) == expected


def test_invert_and_conjugate_examples():
    assert fw.invert("abA") == "aBA"
    assert fw.conjugate("b", "a") == "abA"
    assert fw.conjugate("a", "a") == "a"


def test_parse_and_fmt_identity():
    for text in ("", "e", "1"):
        assert fw.parse(text) == ""
    assert fw.fmt("") == "e"
    with pytest.raises(ValueError):
        fw.parse("abc")


def test_enumerate_examples():
    assert fw.enumerate_words(1) == [""]
    assert fw.enumerate_words(5) == ["", "a", "A", "b", "B"]
    assert sum(len(w) == 2 for w in fw.enumerate_words(17)) == 12


def test_ball_is_shortlex_and_counts():
    ball = fw.ball(4)
    assert len(ball) == 1 + 4 + 12 + 36 + 108
    assert list(ball) == sorted(ball, key=fw.shortlex_key)
    assert all(fw.is_reduced(w) for w in ball)
    assert [fw.count_of_length(n) for n in range(5)] == [1, 4, 12, 36, 108]


def test_shortlex_index_roundtrip():
    for i, w in enumerate(fw.ball(4)):
        assert fw.shortlex_index(w) == i
        assert fw.word_at(i) == w


@given(letters)
def test_reduce_matches_stack_reducer(raw):
    assert fw.reduce(raw) == stack_reduce(raw)


@given(letters)
def test_reduce_idempotent(raw):
    assert fw.reduce(fw.reduce(raw)) == fw.reduce(raw)


@given(words, words, words)
def test_multiply_associative(u, v, w):
    assert fw.multiply(fw.multiply(u, v), w) == fw.multiply(u, fw.multiply(v, w))


@given(words)
def test_inverse_laws(w):
    assert fw.multiply(w, fw.invert(w)) == ""
    assert fw.invert(fw.invert(w)) == w


@given(words, words)
def test_conjugate_definition(w, g):
    assert fw.conjugate(w, g) == stack_reduce(g + w + fw.invert(g))


@given(words)
def test_canonical_is_shortlex_min(w):
    c = fw.canonical(w)
    assert c in (w, fw.invert(w))
    assert fw.shortlex_key(c) <= fw.shortlex_key(fw.invert(c))
