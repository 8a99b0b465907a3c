"""Randomised invariants, at least a thousand examples per property."""
from functools import lru_cache

from hypothesis import given, settings
from hypothesis import strategies as st

from quadthurston import portraits as pt
from quadthurston import tables
from quadthurston.curves import phihat
from quadthurston.fixtures import load_fixtures
from quadthurston.twist import VirtualEndomorphism, phi, phibar, phibar_by_cases
from quadthurston.word import (ALPHA, ONE, Word, conjugate, cyclic_decompose, invert, make_family,
                               match_family, multiply, power, reduce)
from quadthurston.wreath import act, perm_image, perm_of, restrict

CASES = settings(max_examples=1000, deadline=None)

BUNDLE = load_fixtures()
RECORDS = BUNDLE.recursions

letters = st.sampled_from([1, -1, 2, -2])
raw_words = st.lists(letters, max_size=64)
words = st.lists(letters, max_size=20).map(reduce)
short_words = st.lists(letters, max_size=12).map(reduce)
records = st.sampled_from(RECORDS)
vertices = st.text(alphabet="12", min_size=0, max_size=10)


# ---------------------------------------------------------------- words


@CASES
@given(raw_words)
def test_reduce_is_idempotent(raw):
    once = reduce(raw)
    assert reduce(once.letters) == once
    assert all(x != -y for x, y in zip(once.letters, once.letters[1:]))


@CASES
@given(words, words, words)
def test_group_laws(u, v, w):
    assert multiply(multiply(u, v), w) == multiply(u, multiply(v, w))
    assert multiply(u, invert(u)) == ONE == multiply(invert(u), u)


@CASES
@given(words.filter(lambda w: not w.is_identity()))
def test_cyclic_decompose_round_trip(u):
    conj, core = cyclic_decompose(u)
    assert conjugate(core, conj) == u


@CASES
@given(short_words.filter(lambda w: not w.is_identity()), short_words, short_words,
       st.integers(-12, 12))
def test_family_matching_recovers_exponent(base, prefix, suffix, n):
    fam = make_family(prefix, base, suffix)
    assert match_family(fam.at(n), fam) == n


# ---------------------------------------------------------------- wreath recursions


@CASES
@given(records, words, words, st.sampled_from([1, 2]))
def test_product_rule(record, u, v, x):
    rec = record.recursion()
    uv = multiply(u, v)
    assert restrict(rec, uv, x) == multiply(restrict(rec, u, x), restrict(rec, v, perm_image(rec, u, x)))
    assert perm_of(rec, uv) == (perm_of(rec, u) != perm_of(rec, v))


@lru_cache(maxsize=None)
def _letter_action(rec, letter, vertex):
    # generator-level interpreter: read the recursion of one letter at a time
    if not vertex:
        return vertex
    (rs, swaps) = rec.generator(abs(letter))
    x = int(vertex[0])
    if letter > 0:
        image = 3 - x if swaps else x
        return str(image) + _word_action(rec, rs[x - 1].letters, vertex[1:])
    source = 3 - x if swaps else x
    return str(source) + _word_action(rec, invert(rs[source - 1]).letters, vertex[1:])


def _word_action(rec, letters, vertex):
    for letter in letters:
        vertex = _letter_action(rec, letter, vertex)
    return vertex


@CASES
@given(records, short_words, short_words, vertices)
def test_action_matches_letter_interpreter(record, u, v, vertex):
    rec = record.recursion()
    assert act(rec, u, vertex) == _word_action(rec, u.letters, vertex)
    # the left factor acts first
    assert act(rec, multiply(u, v), vertex) == act(rec, v, act(rec, u, vertex))


@CASES
@given(records, short_words, st.sampled_from("12"), st.text(alphabet="12", max_size=9))
def test_restriction_compatibility(record, w, x, rest):
    rec = record.recursion()
    expected = str(perm_image(rec, w, int(x))) + act(rec, restrict(rec, w, int(x)), rest)
    assert act(rec, w, x + rest) == expected


@CASES
@given(records, short_words, st.integers(1, 6))
def test_parity_of_conjugated_powers(record, w, n):
    rec = record.recursion()
    for core in (ALPHA, Word([2]), Word([-2, -1])):
        assert perm_of(rec, conjugate(power(core, n), w)) == (perm_of(rec, core) and n % 2 == 1)


# ---------------------------------------------------------------- twisting and pullback


def oracle_phibar(rec, w):
    """phibar from restrictions of w and of a^-1 w, using a|1 = 1."""
    h = multiply(invert(ALPHA), w)
    if perm_of(rec, w):
        return multiply(ALPHA, restrict(rec, w, 1)), multiply(ALPHA, restrict(rec, h, 2))
    return restrict(rec, w, 1), restrict(rec, h, 2)


@CASES
@given(records, words)
def test_phibar_four_cases(record, w):
    ve = VirtualEndomorphism(record.recursion())
    direct, shifted = oracle_phibar(ve.rec, w)
    assert direct == shifted == phibar(ve, w)
    assert phibar_by_cases(ve, w) == (direct, shifted)


@CASES
@given(records, words)
def test_phibar_cosets(record, w):
    ve = VirtualEndomorphism(record.recursion())
    image = phibar(ve, w)
    if ve.in_domain(w):
        assert image == phi(ve, w)
    else:
        assert multiply(invert(ALPHA), image) == phi(ve, multiply(w, invert(ALPHA)))


def _landing(record):
    N, report = tables.row_nucleus(record)
    return N, report.k


@CASES
@given(records, words)
def test_phibar_orbits_land(record, w):
    N, k0 = _landing(record)
    ve = VirtualEndomorphism(record.recursion())
    u = w
    for _ in range(len(w) + k0):
        if u in N or multiply(invert(ALPHA), u) in N:
            break
        u = phibar(ve, u)
    assert u in N or multiply(invert(ALPHA), u) in N


@CASES
@given(records, words)
def test_phihat_orbits_land(record, w):
    N, k0 = _landing(record)
    ve = VirtualEndomorphism(record.recursion())
    u = w
    for _ in range(len(w) + k0):
        if u in N:
            break
        u = phihat(ve, u)
    assert u in N


# ---------------------------------------------------------------- portraits

LABELS = ["p", "q", "r", "s", "t", "u"]
PORTRAITS = [c.portrait for c in pt.enumerate_q4(BUNDLE.gmaps)]


def relabel(p, names):
    mapping = dict(zip(p.vertices, names))
    return pt.Portrait.from_edges((mapping[v], mapping[w], d) for v, w, d in p.edges)


@CASES
@given(st.sampled_from(PORTRAITS), st.permutations(LABELS), st.permutations(LABELS))
def test_portrait_equivalence_under_relabelling(p, first, second):
    q, r = relabel(p, first), relabel(p, second)
    assert pt.portraits_equivalent(p, q)
    assert pt.portraits_equivalent(q, p)
    assert pt.portraits_equivalent(q, r)
