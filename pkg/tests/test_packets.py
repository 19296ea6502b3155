import pytest
from hypothesis import given, settings, strategies as st

from arthur_packets.families import parameters, two_wide_family
from arthur_packets.groth import ExplicitIrr, GrothElement, PiSymbol, Segment
from arthur_packets.jacquet import normalize_tower
from arthur_packets.packets import (
    complementary_count,
    independence_check,
    injectivity_check,
    multiplicity_free_check,
    pi_explicit,
    pi_recursive,
    pi_standard,
    standard_independence_check,
    unrolled_explicit,
)
from arthur_packets.params import MINUS, PLUS, TRIVIAL, Block, HalfInt, all_sign_chars, signed

R = TRIVIAL


def blk(top, bottom, orient=PLUS):
    return Block(R, HalfInt(top), HalfInt(bottom), orient)


def sym(*pairs):
    p, e = signed([(blk(t, t, o), s) for t, o, s in pairs])
    return PiSymbol(p, e)


def seg(a, b):
    return Segment(R, HalfInt(a), HalfInt(b))


# --- signed recursion ------------------------------------------------------


def test_gap_one_with_minus_sign_has_only_eta_terms():
    p, e = signed([(blk(1, 0), MINUS)])
    want = GrothElement.of(sym((1, PLUS, PLUS), (0, PLUS, MINUS))) + GrothElement.of(sym((1, PLUS, MINUS), (0, PLUS, PLUS)))
    for mode in ("prefix", "tower", "evaluate"):
        assert pi_recursive(p, e, mode=mode) == want


def test_gap_one_with_plus_sign():
    p, e = signed([(blk(1, 0), PLUS)])
    want = (
        GrothElement.of(sym(), gl=[seg(0, -1)])
        - GrothElement.of(sym((1, PLUS, PLUS), (0, PLUS, PLUS)))
        - GrothElement.of(sym((1, PLUS, MINUS), (0, PLUS, MINUS)))
    )
    assert pi_recursive(p, e, mode="prefix") == want
    assert pi_standard(p, e) == want


def test_elementary_parameter_is_its_own_symbol():
    p, e = signed([(blk(0, 0), PLUS), (blk(2, 2), MINUS)])
    assert pi_recursive(p, e) == GrothElement.of(PiSymbol(p, e))


def test_choice_must_be_a_wide_block():
    p, e = signed([(blk(0, 0), PLUS), (blk(2, 1), MINUS)])
    with pytest.raises(ValueError):
        pi_recursive(p, e, blk(0, 0))


def test_overlapping_parameter_is_rejected():
    p, e = signed([(blk(2, 0), PLUS), (blk(1, 1), PLUS)])
    with pytest.raises(ValueError):
        pi_recursive(p, e)


# --- explicit constituents -------------------------------------------------


def test_gap_one_explicit():
    p, e = signed([(blk(1, 0), PLUS)])
    assert list(pi_explicit(p, e)) == [ExplicitIrr((seg(0, -1),), sym())]
    p, e = signed([(blk(1, 0), MINUS)])
    got = pi_explicit(p, e)
    assert len(got) == 2 and all(not c.tower for c in got)


def test_gap_two_explicit():
    # one socle tower plus one alternating complementary chain
    p, e = signed([(blk(2, 0), PLUS)])
    got = list(pi_explicit(p, e))
    assert got == sorted(
        [ExplicitIrr((), sym((0, PLUS, MINUS), (1, PLUS, PLUS), (2, PLUS, MINUS))), ExplicitIrr((seg(0, -2),), sym((1, PLUS, PLUS)))],
        key=ExplicitIrr.key,
    )


def test_complementary_count_values():
    assert complementary_count(2, 0, PLUS) == 1
    assert complementary_count(2, 0, MINUS) == 1
    assert complementary_count(1, 0, MINUS) == 2
    assert complementary_count(1, 0, PLUS) == 0
    with pytest.raises(ValueError):
        complementary_count(1, 1, PLUS)


@given(st.integers(0, 6), st.integers(1, 6), st.booleans(), st.sampled_from([PLUS, MINUS]))
def test_complementary_count_parity_law(bottom2, gap, half, e0):
    bottom = HalfInt.from_twice(2 * bottom2 + (1 if half else 0))
    n = complementary_count(bottom + gap, bottom, e0)
    if gap % 2 == 0:
        assert n == 1
    else:
        assert n in (0, 2)


def test_normalize_tower_orders_nested_segments():
    base = sym((0, PLUS, PLUS))
    inner, outer = seg(2, -3), seg(1, -4)
    t = normalize_tower(ExplicitIrr((inner, outer), base))
    assert normalize_tower(t) == t
    assert set(t.tower) == {inner, outer}
    single = ExplicitIrr((seg(1, -2),), base)
    assert normalize_tower(single) == single


# --- properties on families ------------------------------------------------


def test_independence_examples():
    p, e = signed([(blk(2, 1), PLUS), (blk(5, 4), MINUS)])
    assert independence_check(p, e)
    p, e = signed([(blk(1, 0), MINUS), (blk(3, 2, MINUS), PLUS)])
    assert independence_check(p, e)
    p, e = signed([(blk(1, 0), MINUS)])
    with pytest.raises(ValueError):
        independence_check(p, e)


WIDE = [(p, e) for p in two_wide_family(2, 2, 0) for e in all_sign_chars(p)]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(WIDE))
def test_independence_on_sampled_parameters(pe):
    p, e = pe
    assert independence_check(p, e)
    assert standard_independence_check(p, e)


def test_multiplicity_free_examples():
    p, e = signed([(blk(0, 0), PLUS)])
    assert multiplicity_free_check(p, e)
    p, e = signed([(blk(1, 0), MINUS)])
    assert multiplicity_free_check(p, e)


def test_injectivity_examples():
    p, _ = signed([(blk(0, 0), PLUS), (blk(1, 1), PLUS)])
    assert injectivity_check([(p, e) for e in all_sign_chars(p)])
    p, e = signed([(blk(1, 0), PLUS)])
    _, f = signed([(blk(1, 0), MINUS)])
    assert injectivity_check([(p, e), (p, f)])
    assert not injectivity_check([(p, e), (p, e)])


SMALL = [(p, e) for p in parameters(2, 2, 3) for e in all_sign_chars(p)]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL))
def test_unrolled_matches_recursive(pe):
    p, e = pe
    a, b = unrolled_explicit(p, e), pi_explicit(p, e)
    assert a.as_set() == b.as_set() and len(a) == len(b)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL))
def test_tower_mode_leaves_no_prefix(pe):
    p, e = pe
    x = pi_recursive(p, e, mode="tower")
    for t, _ in x.items():
        assert not t.prefix
    assert multiplicity_free_check(p, e)
