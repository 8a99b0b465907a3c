import pytest

from quadthurston import portraits as pt
from quadthurston import tables

ONE_CRIT = "one_critical_postcritical"
TWO_CRIT = "two_critical_postcritical"


def rows_of(bundle, key):
    return [pt.Portrait.from_edges(r["edges"]) for r in bundle.portraits[key]]


def relabel(p, mapping):
    return pt.Portrait.from_edges((mapping[v], mapping[w], d) for v, w, d in p.edges)


def test_relabelled_portrait_is_equivalent(bundle):
    p = pt.compose_portrait(bundle.gmap("1m2z-sq"), "0")
    q = relabel(p, {"1/2": "x", "*": "y", "0": "z", "inf": "u", "1": "v"})
    assert pt.portraits_equivalent(p, q)


def test_fixed_critical_points_differ_from_two_cycle():
    fixed = pt.parse_portrait("0 -2-> 0, inf -2-> inf")
    swapped = pt.parse_portrait("0 -2-> inf, inf -2-> 0")
    assert not pt.portraits_equivalent(fixed, swapped)


def test_different_cycle_lengths_are_inequivalent(bundle):
    one = rows_of(bundle, ONE_CRIT)
    assert not pt.portraits_equivalent(one[0], one[2])


def test_compose_one_critical(bundle):
    p = pt.compose_portrait(bundle.gmap("1m2z-sq"), "0")
    assert pt.portraits_equivalent(p, pt.parse_portrait(
        "1/2 -2-> *, * -1-> 0, 0 -1-> inf, inf -2-> 1, 1 -1-> inf"))


def test_compose_two_critical(bundle):
    p = pt.compose_portrait(bundle.gmap("inv-z-sq"), "0")
    assert pt.portraits_equivalent(p, pt.parse_portrait("0 -2-> 1, 1 -1-> inf, inf -2-> *, * -1-> 0"))


def test_compose_rejects_three_postcritical_points(bundle):
    with pytest.raises(pt.InvalidPortrait, match="postcritical"):
        pt.compose_portrait(bundle.gmap("z-sq"), "1")


def test_enumeration_counts(bundle):
    classes = pt.enumerate_q4(bundle.gmaps)
    assert len(classes) == 13
    assert sum(c.critical_postcritical == 1 for c in classes) == 9
    assert sum(c.critical_postcritical == 2 for c in classes) == 4


def test_enumerated_portraits_are_well_formed(bundle):
    for c in pt.enumerate_q4(bundle.gmaps):
        p = c.portrait
        assert len(p.postcritical()) == 4
        assert len(p.vertices) <= 6
        assert len(p.critical()) == 2


def test_critical_points_of_composite_are_those_of_the_gmap(bundle):
    for g in bundle.gmaps:
        for slot in pt.SLOTS:
            try:
                p = pt.compose_portrait(g, slot)
            except pt.InvalidPortrait:
                continue
            assert set(p.critical()) == set(g["critical"])


def test_action_examples(bundle):
    acts = bundle.portraits["actions"]
    one, two = rows_of(bundle, ONE_CRIT), rows_of(bundle, TWO_CRIT)
    assert pt.action_images(one, acts[ONE_CRIT]["mobius"])[0] == 3
    assert pt.action_images(two, acts[TWO_CRIT]["mobius"])[0] == 2


@pytest.mark.parametrize("key, order", [(ONE_CRIT, 3), (TWO_CRIT, 2)])
def test_action_order(bundle, key, order):
    perm = bundle.portraits["actions"][key]["mobius"]
    for p in rows_of(bundle, key):
        q = p
        for _ in range(order):
            q = pt.act(q, perm)
        assert pt.portraits_equivalent(p, q)


def test_invalid_portraits():
    with pytest.raises(pt.InvalidPortrait):
        pt.parse_portrait("0 -2-> 0")
    with pytest.raises(pt.InvalidPortrait):
        pt.parse_portrait("0 -3-> 0, 1 -2-> 1")
    with pytest.raises(pt.InvalidPortrait):
        pt.parse_portrait("0 -2-> 1, 1 -2-> 2")
    with pytest.raises(pt.InvalidPortrait):
        pt.parse_portrait("0 => 1")


def test_slot_permutation_is_involution():
    for slot in pt.SLOTS:
        perm = pt.slot_permutation(slot)
        assert all(perm[perm[k]] == k for k in perm)
    with pytest.raises(pt.InvalidPortrait):
        pt.slot_permutation("2")


def test_all_portrait_checks_pass(bundle):
    assert all(c.ok for c in tables.check_portraits(bundle))
