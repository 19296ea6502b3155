import pytest
from hypothesis import given, settings, strategies as st

from arthur_packets.families import parameters
from arthur_packets.groth import GrothElement, PiSymbol, Segment
from arthur_packets.params import MINUS, PLUS, TRIVIAL, Block, HalfInt, Parameter, SignChar, all_sign_chars, is_elementary, signed
from arthur_packets.stability import (
    StableSum,
    character_sign,
    formal_stable_sum,
    grouping_check,
    sign_identity_checks,
    stable_sum,
)

R = TRIVIAL


def blk(top, bottom, orient=PLUS):
    return Block(R, HalfInt(top), HalfInt(bottom), orient)


def test_elementary_pair_has_four_characters():
    p = Parameter((blk(0, 0), blk(1, 1)))
    s = stable_sum(p)
    assert len(s.signs) == 4
    # b = 1 for every elementary block, so every sign is +
    assert set(s.signs.values()) == {PLUS}
    assert len(s.value.items()) == 4


def test_gap_one_sign_is_epsilon():
    # (1, 0, +) has b = 2, so the coefficient is e(block)
    p = Parameter((blk(1, 0),))
    for e in all_sign_chars(p):
        assert character_sign(p, e) == e[p.blocks[0]]


def test_gap_one_stable_sum():
    # the + member contributes the induced term, both members contribute
    # minus the two elementary symbols they contain
    p = Parameter((blk(1, 0),))
    want = GrothElement.of(PiSymbol(Parameter(()), SignChar()), gl=[Segment(R, HalfInt(0), HalfInt(-1))])
    for s1 in (PLUS, MINUS):
        for s0 in (PLUS, MINUS):
            q, f = signed([(blk(1, 1), s1), (blk(0, 0), s0)])
            want -= GrothElement.of(PiSymbol(q, f))
    assert stable_sum(p, mode="prefix").value == want


def test_empty_parameter_has_one_term():
    s = stable_sum(Parameter(()))
    assert len(s.signs) == 1 and len(s.value.items()) == 1


def test_coefficients_must_be_signs():
    with pytest.raises(ValueError):
        StableSum(GrothElement.zero(), {SignChar(): 0})


def test_center_only_filters_characters():
    p = Parameter((blk(0, 0), blk(1, 1), blk(2, 2)), "symplectic", PLUS)
    full = stable_sum(p, center_only=False)
    center = stable_sum(p, center_only=True)
    assert len(center.signs) == len(full.signs) // 2


def test_formal_sum_on_elementary_equals_evaluated_sum():
    for p in parameters(2, 0, 2):
        if is_elementary(p):
            assert formal_stable_sum(p) == stable_sum(p).value


def test_sign_identities():
    rep = sign_identity_checks(limit=12)
    assert rep.ok, str(rep)
    assert set(rep.checked) == {"(i)", "(ii)", "(iii)"}


WIDE = [p for p in parameters(2, 2, 2) if any(b.gap > 0 for b in p.blocks)]


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(WIDE))
def test_one_level_regroups_into_stable_sums(p):
    assert grouping_check(p)


def test_grouping_needs_a_wide_block():
    with pytest.raises(ValueError):
        grouping_check(Parameter((blk(0, 0),)))
