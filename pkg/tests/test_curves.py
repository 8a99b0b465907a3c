from fractions import Fraction

import pytest

from quadthurston import tables
from quadthurston.curves import (Curve, NotParabolic, canonical_cycle, check_obstruction,
                                 curve_from_word, curve_name, format_curve, mu, parse_curve,
                                 phihat, pullback_curve)
from quadthurston.twist import VirtualEndomorphism, phi
from quadthurston.word import ALPHA, BETA, DELTA, GAMMA, ONE, parse_word, power


def ve_of(row, key):
    return VirtualEndomorphism(row(key).recursion())


def test_delta_is_gamma_conjugated():
    assert curve_from_word(DELTA) == Curve(GAMMA, ALPHA)
    assert curve_from_word(DELTA).element() == DELTA


def test_conjugate_of_b():
    assert curve_from_word(parse_word("Aba")) == Curve(BETA, ALPHA)


def test_inverted_core_normalises():
    assert curve_from_word(parse_word("ABa")) == curve_from_word(parse_word("Aba"))
    assert curve_from_word(power(GAMMA, 3)) == Curve(GAMMA, ONE)


def test_gamma_and_delta_are_distinct():
    assert curve_from_word(GAMMA) != curve_from_word(DELTA)


def test_not_parabolic():
    with pytest.raises(NotParabolic):
        curve_from_word(parse_word("aB"))
    with pytest.raises(ValueError):
        curve_from_word(ONE)


def test_names():
    assert [curve_name(parse_curve(n)) for n in ["o", "alpha", "beta", "gamma", "delta"]] == \
        ["o", "alpha", "beta", "gamma", "delta"]
    assert format_curve(Curve(BETA, ALPHA)) == "b^(a)"


def test_phihat(row):
    ve = ve_of(row, "q4-1m2z-sq")
    assert phihat(ve, BETA) == phi(ve, BETA) == ALPHA
    assert phihat(ve, ALPHA) == ONE
    assert phihat(ve, ONE) == ONE


def test_three_cycle(row):
    ve = ve_of(row, "q4-inv-1m-z-sq-lower")
    alpha, beta, delta = (parse_curve(n) for n in ("alpha", "beta", "delta"))
    assert mu(ve, alpha) == delta
    assert mu(ve, delta) == beta
    assert mu(ve, beta) == alpha


def test_everything_falls_to_null(row):
    ve = ve_of(row, "q4-1m2z-sq")
    first = pullback_curve(ve, parse_curve("beta"))
    assert first.image == parse_curve("alpha") and first.power == 1
    second = pullback_curve(ve, parse_curve("alpha"))
    assert second.image is None and second.power == 2
    assert mu(ve, None) is None


def test_pullback_deterministic_on_representatives(row):
    ve = ve_of(row, "q4-inv-1m-z-sq-lower")
    assert mu(ve, curve_from_word(parse_word("Aba"))) == mu(ve, curve_from_word(parse_word("ABa")))


def test_fga_golden_row(row):
    result = tables.row_fga(row("q4-1m-z-sq-pos"))
    want = {canonical_cycle([parse_curve(n) for n in c])
            for c in (["o"], ["alpha", "beta"], ["gamma", "delta"])}
    assert result.closed and set(result.cycles) == want


def test_fga_inverse_z_sq_upper(row):
    result = tables.row_fga(row("q4-inv-z-sq-upper"))
    want = {canonical_cycle([parse_curve(n) for n in c]) for c in (["o"], ["alpha", "delta"])}
    assert result.closed and set(result.cycles) == want


def test_fga_z_sq_not_closed(bundle):
    record = bundle.row("q4-z-sq")
    result = tables.row_fga(record)
    assert not result.closed
    patterns = bundle.fga[record.row]["infinite"]
    assert tables.infinite_pattern_diff(result, patterns, 64) == []


def test_obstruction_certificate(row):
    found = check_obstruction(ve_of(row, "q4-z-sq"), [parse_curve("alpha"), parse_curve("beta")])
    assert found == (parse_curve("beta"), Fraction(1))


def test_no_certificate(row):
    ve = ve_of(row, "q4-1m2z-sq")
    assert check_obstruction(ve, [parse_curve(n) for n in ("alpha", "beta", "gamma", "delta")]) is None


def test_fixed_curve_with_double_cover_is_not_obstructing(row):
    # in the z^2 row alpha^2 = <a, a>, so alpha is fixed with multiplier 1/2
    ve = ve_of(row, "q4-z-sq")
    r = pullback_curve(ve, parse_curve("alpha"))
    assert r.image == parse_curve("alpha") and r.multiplier == Fraction(1, 2)
    assert check_obstruction(ve, [parse_curve("alpha")]) is None
