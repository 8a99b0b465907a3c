import pytest

from quadthurston import tables
from quadthurston.twist import (OrbitCapExceeded, VirtualEndomorphism, canonical_word_cycle,
                                equivalence_identity_check, orbit_cap, phi, phibar,
                                phibar_by_cases, phibar_orbit, twist_solve)
from quadthurston.word import ALPHA, BETA, DELTA, GAMMA, ONE, invert, parse_family, parse_word, power

ROW_QUARTER = "q4-1m2z-sq"
ROW_COMPLEX_LOWER = "q4-inv-1m-z-sq-lower"


def ve_of(row, key, coordinate=1):
    return VirtualEndomorphism(row(key).recursion(), coordinate)


def w(text):
    return parse_word(text)


def test_phi_values_row_quarter(row):
    ve = ve_of(row, ROW_QUARTER)
    assert phi(ve, power(ALPHA, 2)) == ONE
    assert phi(ve, BETA) == ALPHA
    assert phi(ve, w("Aba")) == BETA


def test_phi_values_complex_row(row):
    ve = ve_of(row, ROW_COMPLEX_LOWER)
    assert phi(ve, power(ALPHA, 2)) == DELTA
    assert phi(ve, BETA) == ALPHA
    assert phi(ve, w("Aba")) == ONE


def test_phi_undefined_off_domain(bundle):
    for record in bundle.recursions:
        assert phi(VirtualEndomorphism(record.recursion()), ALPHA) is None


def test_phibar_odd_powers(row):
    ve = ve_of(row, ROW_QUARTER)
    assert phibar(ve, power(BETA, 3)) == power(ALPHA, 3)
    assert phibar(ve, ONE) == ONE


def test_phibar_fixes_family(row):
    ve = ve_of(row, ROW_QUARTER)
    fam = parse_family("a b^n")
    for n in range(-8, 9):
        assert phibar(ve, fam.at(n)) == fam.at(n)


def test_phibar_cases_agree(row):
    ve = ve_of(row, ROW_COMPLEX_LOWER)
    for text in ["a", "b", "ab", "BAb", "aabAB"]:
        direct, shifted = phibar_by_cases(ve, w(text))
        assert direct == shifted == phibar(ve, w(text))


def test_orbit_even_power(row):
    tail, cycle = phibar_orbit(ve_of(row, ROW_QUARTER), power(BETA, 4))
    assert tail == [power(BETA, 4), power(ALPHA, 4)]
    assert cycle == [ONE]


def test_orbit_two_cycle(row):
    tail, cycle = phibar_orbit(ve_of(row, "q4-inv-1m-1m2z-sq-upper"), invert(GAMMA))
    assert tail == []
    assert set(cycle) == {invert(GAMMA), w("aBA")}


def test_orbit_of_identity(row):
    assert phibar_orbit(ve_of(row, ROW_QUARTER), ONE) == ([], [ONE])


def test_orbit_cap():
    assert orbit_cap(w("abab")) == 80
    with pytest.raises(ValueError):
        phibar_orbit(VirtualEndomorphism(None), ONE, max_iter=0)


def test_orbit_cap_exceeded(row):
    ve = ve_of(row, ROW_QUARTER)
    with pytest.raises(OrbitCapExceeded):
        phibar_orbit(ve, power(BETA, 4), max_iter=1)


def test_attractor_row_quarter(row):
    att = tables.row_attractor(row(ROW_QUARTER))
    assert [list(c) for c in att.cycles] == [[ONE]]
    assert [str(f) for f in att.families] == ["a b^n"]


def test_attractor_three_cycle(row):
    att = tables.row_attractor(row("q4-inv-1m-z-sq-real"))
    cycles = {canonical_word_cycle(list(c)) for c in att.cycles}
    assert canonical_word_cycle([DELTA, invert(GAMMA), power(ALPHA, 2)]) in cycles
    assert (ONE,) in cycles and (ALPHA,) in cycles
    # the cycle runs delta -> gamma^-1 -> a^2 -> delta
    ve = ve_of(row, "q4-inv-1m-z-sq-real")
    assert phibar(ve, DELTA) == invert(GAMMA)
    assert phibar(ve, invert(GAMMA)) == power(ALPHA, 2)
    assert phibar(ve, power(ALPHA, 2)) == DELTA


def test_attractor_z_sq_families(row):
    att = tables.row_attractor(row("q4-z-sq"))
    names = sorted(str(f) for f in att.families)
    assert len(names) == 2
    assert any(tables._same(parse_family("b^n"), f) for f in att.families)
    assert any(tables._same(parse_family("a^2 b^n A"), f) for f in att.families)


def test_twist_solve_odd_power(row):
    record = row(ROW_QUARTER)
    ve = VirtualEndomorphism(record.recursion())
    result = twist_solve(ve, tables.row_attractor(record), power(BETA, 7))
    assert result.trace == [power(BETA, 7), power(ALPHA, 7), ALPHA]
    assert result.kind == "family" and result.exponent == 0


def test_twist_solve_identity(row):
    record = row(ROW_QUARTER)
    result = twist_solve(VirtualEndomorphism(record.recursion()), tables.row_attractor(record), ONE)
    assert result.kind == "cycle" and result.label == "1"


def test_twist_solve_family_exponent(row):
    record = row("q4-z-sq")
    result = twist_solve(VirtualEndomorphism(record.recursion()), tables.row_attractor(record),
                         w("aabbbA"))
    assert result.kind == "family" and result.exponent == 3
    assert tables._same(result.family, parse_family("a^2 b^n A"))


def test_twist_solve_prefix(row):
    record = row(ROW_QUARTER)
    ve = VirtualEndomorphism(record.recursion())
    plain = twist_solve(ve, tables.row_attractor(record), w("ab"))
    prefixed = twist_solve(ve, tables.row_attractor(record), BETA, prefix=ALPHA)
    assert plain.trace == prefixed.trace


@pytest.mark.parametrize("key, c", [("q4-z-sq", "a"), ("q4-1m-z-sq-pos", "b"), (ROW_QUARTER, "1")])
def test_equivalence_identity(row, key, c):
    rec = row(key).recursion()
    assert equivalence_identity_check(rec, power(ALPHA, 2), BETA, w(c))


def test_equivalence_identity_rejects_odd_power(row):
    assert not equivalence_identity_check(row("q4-z-sq").recursion(), ALPHA, BETA, ONE)


def test_coordinate_validation(row):
    with pytest.raises(ValueError):
        VirtualEndomorphism(row(1).recursion(), 3)
