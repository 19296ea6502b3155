from hypothesis import given, strategies as st

from arthur_packets.groth import (
    GrothElement,
    JacQuery,
    PiSymbol,
    Segment,
    Term,
    induct,
    make_term,
    normalize_prefix,
    parse,
    queries,
    render,
)
from arthur_packets.params import PLUS, MINUS, TRIVIAL, Block, HalfInt, signed

R = TRIVIAL


def seg(a, b):
    return Segment(R, HalfInt(a), HalfInt(b))


def pi(*pairs):
    p, e = signed([(Block(R, HalfInt(t), HalfInt(t), o), s) for t, o, s in pairs])
    return PiSymbol(p, e)


BASES = [pi(), pi((0, PLUS, PLUS)), pi((1, PLUS, MINUS)), pi((0, PLUS, PLUS), (2, PLUS, PLUS))]

segments = st.tuples(st.integers(-3, 3), st.integers(-3, 3)).map(lambda ab: seg(*ab))
terms = st.builds(
    lambda gl, base: Term(tuple(gl), (), base),
    st.lists(segments, max_size=2),
    st.sampled_from(BASES),
)
elements = st.lists(st.tuples(terms, st.integers(-3, 3)), max_size=4).map(GrothElement.from_terms)


@given(elements, elements, elements)
def test_addition_is_commutative_and_associative(x, y, z):
    assert x + y == y + x
    assert (x + y) + z == x + (y + z)


@given(elements)
def test_negation_and_scaling(x):
    assert (x + x.scale(-1)).is_zero()
    assert x.scale(0).is_zero()
    assert x + x == x.scale(2)
    assert x - x == GrothElement.zero()


@given(elements)
def test_render_parse_round_trip(x):
    assert parse(render(x)) == x
    assert render(parse(render(x))) == render(x)


@given(elements, segments, segments)
def test_induction_is_linear_and_commutative(x, s1, s2):
    assert induct([], x) == x
    assert induct([s1], induct([s2], x)) == induct([s2], induct([s1], x))
    y = GrothElement.of(BASES[1])
    assert induct([s1], x + y) == induct([s1], x) + induct([s1], y)


def test_dual_segments_share_a_class():
    base = BASES[0]
    assert make_term(base, [seg(2, 0)]) == make_term(base, [seg(0, -2)])


def test_gl_factors_are_sorted():
    base = BASES[0]
    assert make_term(base, [seg(3, 1), seg(0, 0)]) == make_term(base, [seg(0, 0), seg(3, 1)])


def test_prefix_normal_form():
    assert normalize_prefix(queries(R, [4, 1])) == tuple(queries(R, [1, 4]))
    assert normalize_prefix(queries(R, [2, 1])) == tuple(queries(R, [2, 1]))
    assert normalize_prefix(queries(R, [1, 2])) == tuple(queries(R, [1, 2]))


@given(st.lists(st.integers(-4, 4), max_size=6), st.integers(0, 5))
def test_prefix_normal_form_is_invariant_under_legal_swaps(xs, i):
    qs = queries(R, xs)
    if len(qs) >= 2:
        i %= len(qs) - 1
        a, b = qs[i], qs[i + 1]
        if abs(a.x.twice - b.x.twice) != 2:
            swapped = qs[:i] + [b, a] + qs[i + 2 :]
            assert normalize_prefix(swapped) == normalize_prefix(qs)
    assert normalize_prefix(normalize_prefix(qs)) == normalize_prefix(qs)


def test_equality_detects_extra_terms():
    x = GrothElement.of(BASES[1])
    assert x == GrothElement.of(BASES[1])
    assert x != x + GrothElement.of(BASES[2])


def test_render_of_zero_and_coefficients():
    assert render(GrothElement.zero()) == "0"
    x = GrothElement.of(BASES[1], 2, gl=[seg(1, 0)])
    # <1..0> is stored as its dual <0..-1>
    assert render(x) == "2*<1:0..-1> x pi{1:0,0,+,+}"
    assert parse(render(x)) == x


def test_symbol_ignores_group_data():
    p, e = signed([(Block(R, 1, 1), PLUS)], group_kind="symplectic")
    q, f = signed([(Block(R, 1, 1), PLUS)])
    assert PiSymbol(p, e) == PiSymbol(q, f)


def test_jac_query_key_orders_by_value():
    assert JacQuery(R, HalfInt(1)).key() < JacQuery(R, HalfInt(2)).key()
