"""Jacquet operators as rewrite rules on Grothendieck-group terms.

Three kinds of rules are used:

* the three-term rule for a single segment times anything,
* rules for elementary packet symbols (peeling the lowest admissible block),
* strip rules for socle towers (removing or lowering a whole segment).

Whenever a rule would need information that the calculus does not carry,
``Unsupported`` is raised instead of guessing.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from .groth import (
    ExplicitIrr,
    GrothElement,
    JacQuery,
    PiSymbol,
    Segment,
    Term,
    induct,
    segment_queries,
)
from .params import (
    MINUS,
    PLUS,
    Block,
    CuspLabel,
    HalfInt,
    Parameter,
    pivot_dimension,
)


class Unsupported(Exception):
    """A Jacquet computation outside the rules this calculus can justify."""


# ---------------------------------------------------------------------------
# Segments
# ---------------------------------------------------------------------------


def segment_shrinks(q: JacQuery, s: Segment) -> list[Segment | None]:
    """Segments left after removing ``q.x`` from either end of ``s``.

    The front end matches when ``s.first == x``; the far end matches through
    the dual when ``-s.last == x``.  ``None`` stands for the empty segment.
    """
    if s.rho != q.rho:
        return []
    d = s.direction
    out: list[Segment | None] = []
    if s.first == q.x:
        out.append(None if d == 0 else Segment(s.rho, s.first - d, s.last))
    if -s.last == q.x:
        out.append(None if d == 0 else Segment(s.rho, s.first, s.last + d))
    return out


def jac_segment_step(q: JacQuery, s: Segment, rest: Term) -> GrothElement:
    """``Jac_x (s x rest)``: up to two shrink terms plus the pass-through term.

    The pass-through term keeps ``Jac_x`` pending on ``rest``.
    """
    pairs = []
    for s2 in segment_shrinks(q, s):
        gl = rest.gl if s2 is None else (s2,) + rest.gl
        pairs.append((Term(gl, rest.prefix, rest.base), 1))
    pairs.append((Term((s,) + rest.gl, rest.prefix + (q,), rest.base), 1))
    return GrothElement.from_terms(pairs)


# ---------------------------------------------------------------------------
# Elementary symbols
# ---------------------------------------------------------------------------


def _block_at(p: Parameter, rho: CuspLabel, bottom: HalfInt) -> Block | None:
    for b in p.blocks:
        if b.rho == rho and b.bottom == bottom:
            return b
    return None


def jac_elementary(q: JacQuery, base: PiSymbol) -> GrothElement:
    """``Jac_x`` of an elementary symbol.

    Non-zero only when ``x = orient * bottom`` for a block at or above the
    pivot dimension.  If the block just below is absent the block is lowered
    by one (deleted when it sits at 1/2); if it is present with the opposite
    sign the result is zero; with the same sign the answer is one of two
    submodules and ``Unsupported`` is raised.
    """
    if not base.is_elementary:
        raise ValueError("jac_elementary needs an elementary symbol")
    p, e = base.param, base.signs
    x = q.x
    if x == 0:
        return GrothElement.zero()
    blk = _block_at(p, q.rho, abs(x))
    if blk is None:
        return GrothElement.zero()
    a = blk.bottom.twice + 1
    pivot = pivot_dimension(p, e, q.rho)
    if pivot is None or a < pivot:
        return GrothElement.zero()
    if (PLUS if x > 0 else MINUS) != blk.orient:
        return GrothElement.zero()
    if a == 2:
        # only reachable with sign +, in which case the block disappears
        new = PiSymbol(p.replace(remove=[blk]), e.replace(remove=[blk]))
        return GrothElement.of(new)
    lower = _block_at(p, q.rho, blk.bottom - 1)
    if lower is None:
        nb = blk.with_range(blk.top - 1, blk.bottom - 1)
        new = PiSymbol(p.replace(remove=[blk], add=[nb]), e.replace(remove=[blk], add=[(nb, e[blk])]))
        return GrothElement.of(new)
    lower_free = lower.bottom.twice + 1 < pivot
    if lower.orient == blk.orient or lower_free:
        if e[lower] != e[blk]:
            return GrothElement.zero()
        raise Unsupported(
            f"Jac at {x} of {base}: the block below carries the same sign, two submodules"
        )
    raise Unsupported(f"Jac at {x} of {base}: neighbouring blocks have opposite orientation")


# ---------------------------------------------------------------------------
# Socle towers: structure
# ---------------------------------------------------------------------------


def _sgn(x: HalfInt) -> int:
    return (x.twice > 0) - (x.twice < 0)


def segment_shape(s: Segment) -> tuple[str, int, HalfInt, HalfInt] | None:
    """Classify a tower segment as ``("cross", orient, bottom, top)`` for
    ``[orient*bottom, -orient*top]`` or ``("same", orient, bottom, top)`` for
    ``[orient*bottom, orient*top]``; ``None`` if neither fits."""
    f, l = s.first, s.last
    if abs(l) <= abs(f):
        return None
    if f == 0 or _sgn(f) == -_sgn(l):
        return ("cross", -_sgn(l), abs(f), abs(l))
    return ("same", _sgn(l), abs(f), abs(l))


def tower_parameter(irr: ExplicitIrr) -> Parameter | None:
    """A parameter of which the tower is a constituent, rebuilt from its data.

    Segments are absorbed from the shortest to the longest: a crossing
    segment ``[o*B, -o*A]`` replaces what lies strictly inside ``[B, A]`` by
    the block ``(A, B, o)``; a same-side segment ``[o*B, o*A]`` replaces the
    block on ``[B-1, A-1]``.  Returns ``None`` when the data do not fit.
    """
    blocks = list(irr.base.param.blocks)
    shapes = []
    for s in irr.tower:
        sh = segment_shape(s)
        if sh is None:
            return None
        shapes.append((s, sh))
    shapes.sort(key=lambda item: (item[1][3] - item[1][2]).twice)
    for s, (kind, orient, bottom, top) in shapes:
        if kind == "cross":
            lo, hi = bottom + 1, top - 1
            inside = [b for b in blocks if b.rho == s.rho and lo <= b.bottom and b.top <= hi]
            for b in inside:
                blocks.remove(b)
        else:
            lo, hi = bottom - 1, top - 1
            inside = [b for b in blocks if b.rho == s.rho and b.bottom == lo and b.top == hi]
            if len(inside) != 1:
                return None
            blocks.remove(inside[0])
        blocks.append(Block(s.rho, top, bottom, orient if bottom != 0 else PLUS))
    return Parameter(tuple(blocks))


def covered(p: Parameter, rho: CuspLabel, y: HalfInt) -> bool:
    """Whether ``|y|`` lies on the run ``[bottom, top]`` of some block on ``rho``."""
    v = abs(y)
    return any(
        b.rho == rho and b.bottom <= v <= b.top and (v - b.bottom).is_integer for b in p.blocks
    )


def strip_vanishes(s: Segment, irr: ExplicitIrr) -> bool:
    """Certify ``Jac_{z, ..., s.last} irr = 0`` for every ``z`` on ``s``.

    Uses the criterion: if ``|y|`` is off every block run, then
    ``Jac_{x, ..., y}`` vanishes for all ``|x| <= |y|``.
    """
    if any(abs(z) > abs(s.last) for z in (s.first, s.last)):
        return False
    p = tower_parameter(irr)
    if p is None:
        return False
    return not covered(p, s.rho, s.last)


def _strictly_inside(inner: Segment, outer: Segment) -> bool:
    return (
        outer.contains(inner.first)
        and outer.contains(inner.last)
        and not inner.contains(outer.first)
        and not inner.contains(outer.last)
    )


def can_exchange(upper: Segment, lower: Segment, rest: ExplicitIrr) -> bool:
    """Whether ``<upper, <lower, rest>> = <lower, <upper, rest>>`` is certified."""
    if upper.rho != lower.rho:
        return True
    if _strictly_inside(upper, lower):
        small, big = upper, lower
    elif _strictly_inside(lower, upper):
        small, big = lower, upper
    else:
        return False
    for s in (small, big):
        if s.contains(-s.last):
            return False
    return strip_vanishes(small, rest) and strip_vanishes(big, rest)


def normalize_tower(irr: ExplicitIrr) -> ExplicitIrr:
    """Sort neighbouring segments by key wherever the exchange is certified."""
    tower = list(irr.tower)
    changed = True
    while changed:
        changed = False
        for i in range(len(tower) - 1):
            a, b = tower[i], tower[i + 1]
            if b.key() < a.key():
                rest = ExplicitIrr(tuple(tower[i + 2:]), irr.base)
                if can_exchange(a, b, rest):
                    tower[i], tower[i + 1] = b, a
                    changed = True
    return ExplicitIrr(tuple(tower), irr.base)


def _bubble_to_top(irr: ExplicitIrr, idx: int) -> ExplicitIrr | None:
    tower = list(irr.tower)
    while idx > 0:
        rest = ExplicitIrr(tuple(tower[idx + 1:]), irr.base)
        if not can_exchange(tower[idx - 1], tower[idx], rest):
            return None
        tower[idx - 1], tower[idx] = tower[idx], tower[idx - 1]
        idx -= 1
    return ExplicitIrr(tuple(tower), irr.base)


# ---------------------------------------------------------------------------
# Socle towers: strips
# ---------------------------------------------------------------------------


def _irr_element(irr: ExplicitIrr) -> GrothElement:
    return GrothElement.of(normalize_tower(irr))


def strip_cross(irr: ExplicitIrr, rho: CuspLabel, orient: int, bottom: HalfInt, top: HalfInt) -> GrothElement:
    """``Jac_{o*B, ..., -o*A}`` on a tower: remove the matching outer segment.

    A tower without the segment belongs to the complementary part and is
    sent to zero; a segment that cannot be brought to the top is unsupported.
    """
    target = Segment(rho, orient * bottom, -orient * top)
    for idx, s in enumerate(irr.tower):
        if s == target:
            moved = _bubble_to_top(irr, idx)
            if moved is None:
                raise Unsupported(f"segment {target} is buried in {irr}")
            return _irr_element(ExplicitIrr(moved.tower[1:], moved.base))
    return GrothElement.zero()


def strip_same(irr: ExplicitIrr, rho: CuspLabel, orient: int, bottom: HalfInt, top: HalfInt) -> GrothElement:
    """``Jac_{o*B, ..., o*A}``: lower everything carried by the block by one.

    Needs ``B >= 1`` and no block ending at ``B - 1``; crossing segments and
    base blocks lying on ``[B, A]`` with orientation ``o`` move one step down.
    A bare elementary symbol is handled by the elementary rules instead.
    """
    p = tower_parameter(irr)
    if p is None:
        raise Unsupported(f"cannot read a parameter off {irr}")
    if bottom < 1:
        raise Unsupported("same-side strip needs bottom >= 1")
    if any(b.rho == rho and b.top == bottom - 1 for b in p.blocks):
        raise Unsupported("same-side strip needs the run below to be free")
    if not irr.tower:
        qs = segment_queries(rho, orient * bottom, orient * top)
        return jac_seq(qs, GrothElement.of(irr.base), evaluate=True)
    # a block reaching bottom 0 carries orient +, and so does all it owns
    new_orient = PLUS if bottom == 1 else orient
    tower = []
    for s in irr.tower:
        sh = segment_shape(s)
        if (
            s.rho == rho
            and sh is not None
            and sh[0] == "cross"
            and sh[1] == orient
            and bottom <= sh[2]
            and sh[3] <= top
        ):
            tower.append(Segment(rho, new_orient * (sh[2] - 1), -new_orient * (sh[3] - 1)))
        else:
            tower.append(s)
    base_p, base_e = irr.base.param, irr.base.signs
    remove, add = [], []
    for b in base_p.blocks:
        if b.rho == rho and bottom <= b.bottom <= top and b.orient == orient:
            nb = Block(rho, b.top - 1, b.bottom - 1, new_orient if b.bottom > 1 else PLUS)
            remove.append(b)
            add.append((nb, base_e[b]))
    new_base = PiSymbol(
        base_p.replace(remove=remove, add=[b for b, _ in add]),
        base_e.replace(remove=remove, add=add),
    )
    return _irr_element(ExplicitIrr(tuple(tower), new_base))


def jac_tower(query: JacQuery | Sequence[JacQuery], irr: ExplicitIrr) -> GrothElement:
    """Jacquet operator on a socle tower.

    Supported: the two full-segment strips of a block of the tower's
    parameter, and single points that are not ``orient * bottom`` of any
    block (these vanish).  Everything else is ``Unsupported``.
    """
    p = tower_parameter(irr)
    if p is None:
        raise Unsupported(f"cannot read a parameter off {irr}")
    if isinstance(query, JacQuery):
        q = query
        starts = {o * b.bottom for b in p.blocks if b.rho == q.rho for o in (b.orient,)}
        if q.x not in starts:
            return GrothElement.zero()
        if not irr.tower:
            return jac_elementary(q, irr.base)
        raise Unsupported(f"single Jac at {q.x} on tower {irr}")
    qs = list(query)
    if len(qs) == 1:
        return jac_tower(qs[0], irr)
    rho = qs[0].rho
    xs = [q.x for q in qs]
    seg = Segment(rho, xs[0], xs[-1])
    sh = segment_shape(seg)
    if any(q.rho != rho for q in qs) or [q.x for q in segment_queries(rho, xs[0], xs[-1])] != xs or sh is None:
        raise Unsupported(f"query {[str(q) for q in qs]} is not a full-segment strip")
    kind, o, bottom, top = sh
    if kind == "cross":
        return strip_cross(irr, rho, o, bottom, top)
    return strip_same(irr, rho, o, bottom, top)


# ---------------------------------------------------------------------------
# General application
# ---------------------------------------------------------------------------


def _expand(sym: PiSymbol) -> GrothElement:
    from .packets import pi_standard

    return pi_standard(sym.param, sym.signs)


@lru_cache(maxsize=None)
def _jac_symbol(q: JacQuery, sym: PiSymbol) -> GrothElement:
    if sym.is_elementary:
        return jac_elementary(q, sym)
    return jac_apply(q, _expand(sym), evaluate=True)


def _jac_base(q: JacQuery, t: Term, evaluate: bool) -> GrothElement:
    """``Jac_x`` of the ``prefix/base`` part of a term (no GL factors)."""
    if not evaluate:
        return GrothElement.of(t.base, prefix=t.prefix + (q,))
    if t.prefix:
        inner = jac_seq(list(t.prefix), GrothElement.of(t.base), evaluate=True)
        return jac_apply(q, inner, evaluate=True)
    if isinstance(t.base, PiSymbol):
        return _jac_symbol(q, t.base)
    return jac_tower(q, t.base)


def jac_apply(q: JacQuery, x: GrothElement, evaluate: bool = True) -> GrothElement:
    """Linear ``Jac_x``: Leibniz over the GL factors, then the base.

    With ``evaluate=False`` the query is left pending in the prefix.
    """
    pairs: list[tuple[Term, int]] = []
    for t, n in x.items():
        for i, s in enumerate(t.gl):
            for s2 in segment_shrinks(q, s):
                gl = t.gl[:i] + ((s2,) if s2 is not None else ()) + t.gl[i + 1:]
                pairs.append((Term(gl, t.prefix, t.base), n))
        inner = _jac_base(q, Term((), t.prefix, t.base), evaluate)
        for t2, m in induct(t.gl, inner).items():
            pairs.append((t2, n * m))
    return GrothElement.from_terms(pairs)


def jac_seq(qs: Iterable[JacQuery], x: GrothElement, evaluate: bool = True) -> GrothElement:
    """``Jac_{x1, x2, ...}``: apply ``x1`` first."""
    for q in qs:
        if x.is_zero():
            return x
        x = jac_apply(q, x, evaluate)
    return x


def jac_strip(x: GrothElement, block: Block, kind: str) -> GrothElement:
    """Apply the ``"cross"`` strip ``[o*B, ..., -o*A]`` or the ``"same"`` strip
    ``[o*B, ..., o*A]`` of ``block`` to every tower in ``x``."""
    strip = {"cross": strip_cross, "same": strip_same}[kind]
    pairs = []
    for t, n in x.items():
        if t.gl or t.prefix:
            raise Unsupported("strips act on bare socle towers only")
        base = t.base if isinstance(t.base, ExplicitIrr) else ExplicitIrr((), t.base)
        for t2, m in strip(base, block.rho, block.orient, block.bottom, block.top).items():
            pairs.append((t2, n * m))
    return GrothElement.from_terms(pairs)


__all__ = [
    "Unsupported",
    "segment_shrinks",
    "jac_segment_step",
    "jac_elementary",
    "segment_shape",
    "tower_parameter",
    "covered",
    "strip_vanishes",
    "can_exchange",
    "normalize_tower",
    "strip_cross",
    "strip_same",
    "jac_tower",
    "jac_apply",
    "jac_seq",
    "jac_strip",
]
