"""Packets for diagonal-discrete parameters.

Two constructions are provided:

* ``pi_recursive`` / ``pi_standard``: the signed recursion on one block with
  ``A > B``, either left with pending Jacquet prefixes, resolved into socle
  towers, or fully evaluated into GL multisegments times elementary symbols;
* ``pi_explicit``: the irreducible constituents as socle towers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator

from .groth import (
    ExplicitIrr,
    GrothElement,
    PiSymbol,
    Segment,
    Term,
    induct,
    segment_queries,
)
from .jacquet import jac_seq, normalize_tower
from .params import (
    MINUS,
    PLUS,
    Block,
    HalfInt,
    Parameter,
    SignChar,
    TRIVIAL,
    is_diagonal_discrete,
    jord_of_diagonal_restriction,
    parity_sign,
    power_sign,
)

MODES = ("prefix", "tower", "evaluate")


# ---------------------------------------------------------------------------
# Shared helpers
# ---------------------------------------------------------------------------


def floor_sign(c: HalfInt) -> int:
    """``(-1)^[c]`` with ``[c]`` the integer part."""
    return parity_sign(c.floor())


def wide_blocks(p: Parameter) -> list[Block]:
    return [b for b in p.blocks if b.top > b.bottom]


def canonical_block(p: Parameter) -> Block | None:
    """The largest block with ``A > B`` under the block order, or ``None``."""
    wide = wide_blocks(p)
    return max(wide, key=Block.sort_key) if wide else None


def _require(p: Parameter, e: SignChar) -> None:
    if not is_diagonal_discrete(p):
        raise ValueError(f"parameter is not diagonal-discrete: {p}")
    if set(e.keys()) != set(p.blocks):
        raise ValueError("sign character must be defined on every block")


def _swap(p: Parameter, e: SignChar, blk: Block, new: Iterable[tuple[Block, int]]) -> PiSymbol:
    new = list(new)
    return PiSymbol(
        p.replace(remove=[blk], add=[b for b, _ in new]),
        e.replace(remove=[blk], add=new),
    )


def _raised(p: Parameter, e: SignChar, blk: Block) -> PiSymbol | None:
    """The symbol with ``blk = (A, B)`` replaced by ``(A, B+2)``.

    For ``A = B+1`` it is the symbol without the block when the sign is +
    and absent otherwise.
    """
    e0 = e[blk]
    if blk.top == blk.bottom + 1:
        return _swap(p, e, blk, []) if e0 == PLUS else None
    nb = Block(blk.rho, blk.top, blk.bottom + 2, blk.orient)
    return _swap(p, e, blk, [(nb, e0)])


def _delta(blk: Block, c: HalfInt) -> Segment:
    return Segment(blk.rho, blk.orient * blk.bottom, -blk.orient * c)


def _jac_queries(blk: Block, c: HalfInt):
    """``Jac_{o(B+2), ..., oC}``; empty for ``C = B+1``."""
    if c < blk.bottom + 2:
        return []
    return segment_queries(blk.rho, blk.orient * (blk.bottom + 2), blk.orient * c)


def eta_terms(p: Parameter, e: SignChar, blk: Block) -> list[tuple[int, PiSymbol]]:
    """The two signed symbols with ``blk`` split into ``(A, B+1)`` and ``(B, B)``."""
    e0 = e[blk]
    gap = int(blk.top - blk.bottom)
    out = []
    for eta in (PLUS, MINUS):
        coeff = parity_sign((gap + 1) // 2) * power_sign(eta, gap + 1) * power_sign(e0, gap)
        upper = Block(blk.rho, blk.top, blk.bottom + 1, blk.orient)
        lower = blk.with_range(blk.bottom, blk.bottom)
        out.append((coeff, _swap(p, e, blk, [(upper, eta), (lower, eta * e0)])))
    return out


def delta_range(blk: Block) -> list[HalfInt]:
    """``C`` over ``]B, A]``."""
    return [blk.bottom + k for k in range(1, int(blk.top - blk.bottom) + 1)]


# ---------------------------------------------------------------------------
# Signed recursion
# ---------------------------------------------------------------------------


def _expand_prefix(sym: PiSymbol, blk: Block, depth: int | None) -> GrothElement:
    p, e = sym.param, sym.signs
    pairs: list[tuple[Term, int]] = []
    raised = _raised(p, e, blk)
    if raised is not None:
        inner = _recurse_prefix(raised, None if depth is None else depth - 1)
        for c in delta_range(blk):
            sign = parity_sign(int(blk.top - c))
            x = jac_seq(_jac_queries(blk, c), inner, evaluate=False)
            pairs.extend((t, sign * n) for t, n in induct([_delta(blk, c)], x).items())
    for coeff, s in eta_terms(p, e, blk):
        inner = _recurse_prefix(s, None if depth is None else depth - 1)
        pairs.extend((t, coeff * n) for t, n in inner.items())
    return GrothElement.from_terms(pairs)


def _recurse_prefix(sym: PiSymbol, depth: int | None) -> GrothElement:
    blk = canonical_block(sym.param)
    if blk is None or depth == 0:
        return GrothElement.of(sym)
    return _expand_prefix(sym, blk, depth)


def _recurse_tower(sym: PiSymbol, blk: Block) -> GrothElement:
    p, e = sym.param, sym.signs
    pairs: list[tuple[Term, int]] = []
    e0 = e[blk]
    if blk.top == blk.bottom + 1:
        inners = list(_explicit(_swap(p, e, blk, []))) if e0 == PLUS else []
    else:
        mid = Block(blk.rho, blk.top - 1, blk.bottom + 1, blk.orient)
        inners = list(_explicit(_swap(p, e, blk, [(mid, e0)])))
    for c in delta_range(blk):
        sign = parity_sign(int(blk.top - c))
        for y in inners:
            if c < blk.top:
                y = y.push(Segment(blk.rho, blk.orient * (c + 1), blk.orient * blk.top))
            pairs.append((Term((_delta(blk, c),), (), y), sign))
    for coeff, s in eta_terms(p, e, blk):
        nb = canonical_block(s.param)
        inner = GrothElement.of(s) if nb is None else _recurse_tower(s, nb)
        pairs.extend((t, coeff * n) for t, n in inner.items())
    return GrothElement.from_terms(pairs)


def pi_recursive(
    p: Parameter,
    e: SignChar,
    choice: Block | None = None,
    mode: str = "tower",
    depth: int | None = None,
) -> GrothElement:
    """The signed recursion for the packet of ``(p, e)`` on block ``choice``.

    ``mode``:
      * ``"prefix"``: Jacquet factors stay pending; ``depth`` limits how many
        levels are expanded (``None`` expands down to elementary symbols);
      * ``"tower"``: each Jacquet factor is rewritten as socle towers carrying
        the same-side segment ``[o(C+1), ..., oA]``;
      * ``"evaluate"``: full expansion into GL segments times elementary symbols.

    Deeper levels always use the canonical block.
    """
    _require(p, e)
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    sym = PiSymbol(p, e)
    if choice is None:
        choice = canonical_block(sym.param)
        if choice is None:
            return GrothElement.of(sym)
    if choice not in sym.param.blocks or choice.top <= choice.bottom:
        raise ValueError(f"choice must be a block with A > B: {choice}")
    if mode == "prefix":
        return _expand_prefix(sym, choice, depth)
    if mode == "tower":
        return _recurse_tower(sym, choice)
    return _standard(sym, choice)


@lru_cache(maxsize=None)
def _standard(sym: PiSymbol, blk: Block | None) -> GrothElement:
    if blk is None:
        return GrothElement.of(sym)
    p, e = sym.param, sym.signs
    pairs: list[tuple[Term, int]] = []
    raised = _raised(p, e, blk)
    if raised is not None:
        inner = _standard(raised, canonical_block(raised.param))
        for c in delta_range(blk):
            sign = parity_sign(int(blk.top - c))
            x = jac_seq(_jac_queries(blk, c), inner, evaluate=True)
            pairs.extend((t, sign * n) for t, n in induct([_delta(blk, c)], x).items())
    for coeff, s in eta_terms(p, e, blk):
        inner = _standard(s, canonical_block(s.param))
        pairs.extend((t, coeff * n) for t, n in inner.items())
    return GrothElement.from_terms(pairs)


def pi_standard(p: Parameter, e: SignChar, choice: Block | None = None) -> GrothElement:
    """Full expansion as an integer combination of GL segments times
    elementary symbols; Jacquet factors are evaluated exactly or raise
    ``Unsupported``."""
    sym = PiSymbol(p, e)
    if choice is None:
        choice = canonical_block(sym.param)
    return _standard(sym, choice)


# ---------------------------------------------------------------------------
# Explicit constituents
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PacketExplicit:
    """Constituents as socle towers, sorted; repeats are kept so that
    multiplicity can be checked rather than assumed."""

    constituents: tuple[ExplicitIrr, ...]

    def __post_init__(self):
        object.__setattr__(self, "constituents", tuple(sorted(self.constituents, key=ExplicitIrr.key)))

    def __iter__(self) -> Iterator[ExplicitIrr]:
        return iter(self.constituents)

    def __len__(self):
        return len(self.constituents)

    @property
    def multiplicity_free(self) -> bool:
        return len(set(self.constituents)) == len(self.constituents)

    def as_set(self) -> frozenset:
        return frozenset(self.constituents)

    def as_groth(self) -> GrothElement:
        return GrothElement.from_terms((Term((), (), c), 1) for c in self.constituents)

    def __str__(self):
        return "\n".join(str(c) for c in self.constituents) or "0"


def complementary_signs(blk: Block, e0: int) -> list[int]:
    """Values of ``eta`` with ``e0 = eta^(A-B+1) * prod (-1)^[C]`` over ``[B, A]``."""
    gap = int(blk.top - blk.bottom)
    prod = 1
    for k in range(gap + 1):
        prod *= floor_sign(blk.bottom + k)
    return [eta for eta in (PLUS, MINUS) if power_sign(eta, gap + 1) * prod == e0]


def complementary_count(top, bottom, e0: int) -> int:
    """Number of complementary families of a block ``(A, B)`` with sign ``e0``."""
    top, bottom = HalfInt(top), HalfInt(bottom)
    gap = top - bottom
    if not gap.is_integer or gap <= 0:
        raise ValueError("need A - B a positive integer")
    return len(complementary_signs(Block(TRIVIAL, top, bottom), e0))


def chain_blocks(blk: Block, lo: HalfInt, hi: HalfInt, eta: int) -> list[tuple[Block, int]]:
    """``(C, C, o, (-1)^[C] eta)`` for ``C`` in ``[lo, hi]``."""
    out = []
    c = lo
    while c <= hi:
        out.append((blk.with_range(c, c), floor_sign(c) * eta))
        c = c + 1
    return out


@lru_cache(maxsize=None)
def _explicit(sym: PiSymbol) -> tuple[ExplicitIrr, ...]:
    p, e = sym.param, sym.signs
    blk = canonical_block(p)
    if blk is None:
        return (ExplicitIrr((), sym),)
    e0 = e[blk]
    out: list[ExplicitIrr] = []
    seg = Segment(blk.rho, blk.orient * blk.bottom, -blk.orient * blk.top)
    if blk.top == blk.bottom + 1:
        inner = _explicit(_swap(p, e, blk, [])) if e0 == PLUS else ()
    else:
        mid = Block(blk.rho, blk.top - 1, blk.bottom + 1, blk.orient)
        inner = _explicit(_swap(p, e, blk, [(mid, e0)]))
    out.extend(normalize_tower(y.push(seg)) for y in inner)
    for eta in complementary_signs(blk, e0):
        out.extend(_explicit(_swap(p, e, blk, chain_blocks(blk, blk.bottom, blk.top, eta))))
    return tuple(out)


def pi_explicit(p: Parameter, e: SignChar, strict: bool = True) -> PacketExplicit:
    """Irreducible constituents of the packet as normalized socle towers.

    With ``strict`` a repeated constituent raises ``AssertionError``.
    """
    _require(p, e)
    packet = PacketExplicit(_explicit(PiSymbol(p, e)))
    if strict and not packet.multiplicity_free:
        raise AssertionError(f"repeated constituent in packet of {PiSymbol(p, e)}")
    return packet


def unrolled_explicit(p: Parameter, e: SignChar) -> PacketExplicit:
    """Constituents from the closed form: for each depth ``l`` the towers
    ``[oB, -oA], ..., [o(B+l-1), -o(A-l+1)]`` over the alternating chain on
    ``[B+l, A-l]``.  When ``A - B`` is odd the deepest level has no chain and
    appears only for sign +."""
    _require(p, e)
    return PacketExplicit(tuple(_unrolled(PiSymbol(p, e))))


def _unrolled(sym: PiSymbol) -> list[ExplicitIrr]:
    p, e = sym.param, sym.signs
    blk = canonical_block(p)
    if blk is None:
        return [ExplicitIrr((), sym)]
    e0 = e[blk]
    gap = int(blk.top - blk.bottom)
    out = []
    for depth in range((gap + 1) // 2 + 1):
        segs = tuple(
            Segment(blk.rho, blk.orient * (blk.bottom + j), -blk.orient * (blk.top - j))
            for j in range(depth)
        )
        lo, hi = blk.bottom + depth, blk.top - depth
        if lo > hi:
            bases = [_swap(p, e, blk, [])] if e0 == PLUS else []
        else:
            prod = 1
            c = lo
            while c <= hi:
                prod *= floor_sign(c)
                c = c + 1
            etas = [eta for eta in (PLUS, MINUS) if power_sign(eta, int(hi - lo) + 1) * prod == e0]
            bases = [_swap(p, e, blk, chain_blocks(blk, lo, hi, eta)) for eta in etas]
        for base in bases:
            for y in _unrolled(base):
                out.append(normalize_tower(ExplicitIrr(segs + y.tower, y.base)))
    return out


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------


def _expand_block_in(x: GrothElement, rho, bottom, top, orient) -> GrothElement:
    """Expand one level on the block ``(rho, top, bottom, orient)`` wherever
    it occurs in a base symbol, pushing pending prefixes through."""
    pairs: list[tuple[Term, int]] = []
    for t, n in x.items():
        sym = t.base
        target = None
        if isinstance(sym, PiSymbol):
            for b in sym.param.blocks:
                if (b.rho, b.bottom, b.top, b.orient) == (rho, bottom, top, orient):
                    target = b
        if target is None:
            pairs.append((t, n))
            continue
        inner = _expand_prefix(sym, target, 1)
        inner = jac_seq(list(t.prefix), inner, evaluate=False)
        pairs.extend((t2, n * m) for t2, m in induct(t.gl, inner).items())
    return GrothElement.from_terms(pairs)


def two_level(p: Parameter, e: SignChar, first: Block, second: Block) -> GrothElement:
    """Expand on ``first``, then on ``second`` inside every resulting symbol."""
    x = pi_recursive(p, e, first, mode="prefix", depth=1)
    return _expand_block_in(x, second.rho, second.bottom, second.top, second.orient)


def independence_check(p: Parameter, e: SignChar) -> bool:
    """Two-level expansions agree for every ordered pair of blocks with ``A > B``."""
    _require(p, e)
    wide = wide_blocks(p)
    if len(wide) < 2:
        raise ValueError("independence needs at least two blocks with A > B")
    for b1, b2 in combinations(wide, 2):
        if two_level(p, e, b1, b2) != two_level(p, e, b2, b1):
            return False
    return True


def standard_independence_check(p: Parameter, e: SignChar) -> bool:
    """Full evaluated expansions agree for every choice of first block."""
    _require(p, e)
    results = [pi_standard(p, e, b) for b in wide_blocks(p)]
    return all(r == results[0] for r in results[1:])


def multiplicity_free_check(p: Parameter, e: SignChar) -> bool:
    return pi_explicit(p, e, strict=False).multiplicity_free


def injectivity_check(pairs: list[tuple[Parameter, SignChar]]) -> bool:
    """Constituent sets are pairwise disjoint across the listed pairs."""
    if not pairs:
        return True
    restrictions = {tuple(jord_of_diagonal_restriction(p)) for p, _ in pairs}
    if len(restrictions) != 1:
        raise ValueError("all parameters must share the diagonal restriction")
    sets = [pi_explicit(p, e, strict=False).as_set() for p, e in pairs]
    for s1, s2 in combinations(sets, 2):
        if s1 & s2:
            return False
    return True


__all__ = [
    "MODES",
    "floor_sign",
    "wide_blocks",
    "canonical_block",
    "eta_terms",
    "delta_range",
    "pi_recursive",
    "pi_standard",
    "PacketExplicit",
    "complementary_signs",
    "complementary_count",
    "chain_blocks",
    "pi_explicit",
    "unrolled_explicit",
    "normalize_tower",
    "two_level",
    "independence_check",
    "standard_independence_check",
    "multiplicity_free_check",
    "injectivity_check",
]
