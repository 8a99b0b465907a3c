import pytest

from quadthurston.word import ALPHA, BETA, ONE, invert, parse_word, power
from quadthurston.wreath import (StateBoundExceeded, act, acts_trivially, faithful_order,
                                 format_recursion, identity_recursion, make_recursion,
                                 parse_assignment, perm_of, restrict, restriction_closure)

ROW1 = make_recursion("<1,1>s", "<a,b>")
Z_SQ = make_recursion("<1,a>s", "<b,1>")


def test_permutations_row1():
    assert perm_of(ROW1, ALPHA) is True
    assert perm_of(ROW1, BETA) is False
    assert perm_of(ROW1, parse_word("ab")) is True
    assert perm_of(ROW1, parse_word("aa")) is False


def test_restrictions_row1():
    assert restrict(ROW1, BETA, 1) == ALPHA
    # product rule: (ab)|1 = a|1 b|2 = b
    assert restrict(ROW1, parse_word("ab"), 1) == BETA
    assert restrict(ROW1, ONE, 1) == ONE


def test_inverse_restriction():
    # (u^-1)|x = (u|pi_u^-1(x))^-1
    u = parse_word("ab")
    for x in (1, 2):
        y = 3 - x if perm_of(ROW1, u) else x
        assert restrict(ROW1, parse_word("BA"), x) == invert(restrict(ROW1, u, y))


def test_restrict_rejects_bad_letter():
    with pytest.raises(ValueError):
        restrict(ROW1, ALPHA, 3)


def test_act_first_level():
    assert act(ROW1, ALPHA, "1") == "2"


def test_adding_machine():
    assert act(Z_SQ, ALPHA, "111") == "211"
    assert act(Z_SQ, ALPHA, "211") == "121"
    assert act(Z_SQ, ALPHA, "221") == "112"


def test_identity_acts_trivially_on_vertices():
    assert act(ROW1, ONE, "12122") == "12122"


def test_acts_trivially():
    assert acts_trivially(Z_SQ, BETA)
    assert restriction_closure(Z_SQ, BETA) == {BETA, ONE}
    assert acts_trivially(ROW1, power(ALPHA, 2))
    assert not acts_trivially(ROW1, ALPHA)
    assert not acts_trivially(Z_SQ, ALPHA)


def test_faithful_order():
    assert faithful_order(ROW1, ALPHA) == 2
    assert faithful_order(Z_SQ, BETA) == 1
    assert faithful_order(ROW1, ONE) == 1
    assert faithful_order(Z_SQ, ALPHA, bound=8) is None


def test_faithful_order_bound_validation():
    with pytest.raises(ValueError):
        faithful_order(ROW1, ALPHA, bound=0)


def test_state_bound():
    # the adding machine has unbounded closure for large powers of a b
    with pytest.raises(StateBoundExceeded):
        restriction_closure(make_recursion("<1,b>s", "<a,a>"), parse_word("ab" * 40), bound=3)


def test_text_form():
    assert parse_assignment("<a, BA>s") == ((ALPHA, parse_word("BA")), True)
    assert format_recursion(ROW1) == "a = <1,1>s, b = <a,b>"
    with pytest.raises(ValueError):
        parse_assignment("<a>")


def test_all_rows_have_trivial_first_coordinate_for_alpha(bundle):
    for record in bundle.recursions:
        rec = record.recursion()
        assert rec.alpha_swaps
        assert rec.alpha[0] == ONE


def test_identity_recursion():
    rec = identity_recursion()
    assert acts_trivially(rec, parse_word("abAB"))
