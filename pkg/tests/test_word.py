import pytest

from quadthurston.word import (ALPHA, BETA, DELTA, GAMMA, ONE, Word, WordSyntaxError,
                               cyclic_decompose, format_family, format_word, invert,
                               make_family, match_family, multiply, parse_family, parse_member,
                               parse_word, power, reduce)

a, A, b, B = 1, -1, 2, -2


def w(text):
    return parse_word(text)


def test_reduce_cancels_inverse_pair():
    assert reduce([a, A]) == ONE


def test_reduce_keeps_reduced_word():
    assert reduce([B, A]) == GAMMA


def test_reduce_inner_cancellation():
    assert reduce([a, b, B, a]) == w("aa")


@pytest.mark.parametrize("u, v, expected", [
    ("a", "A", "1"),
    ("BA", "a", "B"),
    ("AB", "b", "A"),
])
def test_multiply(u, v, expected):
    assert multiply(w(u), w(v)) == w(expected)


@pytest.mark.parametrize("u, expected", [("1", "1"), ("BA", "ab"), ("abb", "BBA")])
def test_invert(u, expected):
    assert invert(w(u)) == w(expected)


def test_cyclic_decompose_conjugate_of_b():
    conj, core = cyclic_decompose(w("Aba"))
    assert (conj, core) == (ALPHA, BETA)


def test_cyclic_decompose_delta():
    conj, core = cyclic_decompose(DELTA)
    assert (conj, core) == (ALPHA, GAMMA)
    # delta = A (BA) a by direct multiplication
    assert multiply(multiply(invert(ALPHA), GAMMA), ALPHA) == DELTA


def test_cyclic_decompose_cyclically_reduced():
    assert cyclic_decompose(BETA) == (ONE, BETA)


@pytest.mark.parametrize("word, family, n", [
    ("bbbbb", "b^n", 5),
    ("abbb", "a b^n", 3),
    ("abbb", "b^n", None),
    ("1", "b^n", 0),
    ("BBB", "b^n", -3),
])
def test_match_family(word, family, n):
    assert match_family(w(word), parse_family(family)) == n


def test_family_with_cancelling_suffix():
    fam = parse_family("a^2 b^n A")
    assert fam.at(0) == w("a")
    assert match_family(w("a"), fam) == 0
    assert match_family(w("aabbbA"), fam) == 3


def test_parse_and_format_round_trip():
    for text in ["1", "a", "AB", "a^3 B", "(ab)^2"]:
        u = parse_word(text)
        assert parse_word(format_word(u)) == u
    assert parse_word("(ab)^2") == w("abab")
    assert parse_word("a^-2") == w("AA")


def test_parse_member_distinguishes_families():
    assert isinstance(parse_member("a b^n"), type(parse_family("b^n")))
    assert isinstance(parse_member("ab"), Word)


def test_format_family_round_trip():
    fam = make_family(w("a"), BETA, ONE)
    assert parse_family(format_family(fam)).at(4) == fam.at(4)


@pytest.mark.parametrize("text", ["ac", "a^", "(ab", "b^n^n"])
def test_parse_rejects_malformed(text):
    with pytest.raises(WordSyntaxError):
        parse_member(text)


def test_power_negative():
    assert power(w("ab"), -2) == w("BABA")
    assert power(w("ab"), 0) == ONE


def test_shortlex_order():
    assert sorted([w("b"), w("A"), w("a"), w("B"), ONE], key=Word.sort_key) == \
        [ONE, w("a"), w("A"), w("b"), w("B")]
