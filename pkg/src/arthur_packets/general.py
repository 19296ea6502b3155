"""Packets for discrete parameters whose diagonal restriction is not discrete.

A dominating diagonal-discrete parameter is built by shifting blocks upward;
the packet is then pulled back by the transfer Jacquet operators.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from dataclasses import dataclass, field
from typing import Iterator

from .groth import GrothElement, JacQuery, normalize_prefix, segment_queries
from .jacquet import Unsupported, jac_seq, jac_strip
from .packets import pi_explicit, pi_recursive, pi_standard
from .params import (
    MINUS,
    PLUS,
    TRIVIAL,
    Block,
    HalfInt,
    Parameter,
    SignChar,
    all_sign_chars,
    is_diagonal_discrete,
    order_blocks_rho,
    validate_parameter,
)


def _shifted(b: Block, k: int) -> Block:
    return Block(b.rho, b.top + k, b.bottom + k, b.orient)


@dataclass(frozen=True)
class Domination:
    """``source`` dominates ``target``; ``pairs`` lists ``(source_block, target_block)``
    in ascending order of the target blocks."""

    source: Parameter
    target: Parameter
    pairs: tuple[tuple[Block, Block], ...]

    def __post_init__(self):
        if sorted(t for _, t in self.pairs) != sorted(self.target.blocks):
            raise ValueError("domination must match every target block once")
        if sorted(s for s, _ in self.pairs) != sorted(self.source.blocks):
            raise ValueError("domination must match every source block once")
        for s, t in self.pairs:
            if s.rho != t.rho or s.orient != t.orient:
                raise ValueError(f"matched blocks must share label and orient: {s} -> {t}")
            if s.top - t.top != s.bottom - t.bottom or s.bottom < t.bottom:
                raise ValueError(f"matched blocks must be a non-negative shift: {s} -> {t}")
        for rho in self.target.rhos():
            src = [s for s, t in self.pairs if t.rho == rho]
            if src != order_blocks_rho(self.source, rho):
                raise ValueError("matching must preserve the block order")
        if not is_diagonal_discrete(self.source):
            raise ValueError("dominating parameter must be diagonal-discrete")

    def shifts(self) -> list[int]:
        return [int(s.bottom - t.bottom) for s, t in self.pairs]

    def transport(self, e: SignChar) -> SignChar:
        return SignChar.of((s, e[t]) for s, t in self.pairs)

    def __str__(self):
        return ", ".join(f"{t}<-{s}" for s, t in self.pairs)


def _ordered_targets(p: Parameter) -> list[Block]:
    out = []
    for rho in p.rhos():
        out.extend(order_blocks_rho(p, rho))
    return out


def dominating(p: Parameter, extra: list[int] | None = None) -> Domination:
    """Greedy ascending packing; ``extra[i]`` adds to the minimal shift of the
    ``i``-th block (in ascending order) before later blocks are placed."""
    report = validate_parameter(p, "discrete")
    if not report.ok:
        raise ValueError(f"parameter is not discrete: {report}")
    targets = _ordered_targets(p)
    extra = extra or [0] * len(targets)
    if len(extra) != len(targets) or any(k < 0 for k in extra):
        raise ValueError("need one non-negative extra shift per block")
    pairs = []
    last_top: dict = {}
    for b, more in zip(targets, extra):
        k = 0
        prev = last_top.get(b.rho)
        if prev is not None and b.bottom <= prev:
            k = int(prev - b.bottom) + 1
        s = _shifted(b, k + more)
        last_top[b.rho] = s.top
        pairs.append((s, b))
    source = Parameter(tuple(s for s, _ in pairs), p.group_kind, p.sharp)
    return Domination(source, p, tuple(pairs))


def from_shifts(p: Parameter, shifts: list[int]) -> Domination:
    """Domination with the given absolute shifts, in ascending block order."""
    targets = _ordered_targets(p)
    if len(shifts) != len(targets):
        raise ValueError("need one shift per block")
    pairs = tuple((_shifted(b, k), b) for b, k in zip(targets, shifts))
    source = Parameter(tuple(s for s, _ in pairs), p.group_kind, p.sharp)
    return Domination(source, p, pairs)


def minimal_dominating(p: Parameter) -> Domination:
    return dominating(p)


def extra_dominations(p: Parameter, max_extra: int = 2) -> Iterator[Domination]:
    """Dominations with nondecreasing extra shifts bounded by ``max_extra``."""
    n = len(p.blocks)
    for extra in itertools.combinations_with_replacement(range(max_extra + 1), n):
        yield dominating(p, list(extra))


def transfer_queries(source: Block, target: Block) -> list[JacQuery]:
    """Union over ``l = 1 .. A'-A`` of ``[o(B'-l+1), ..., o(A'-l+1)]``, in order."""
    out: list[JacQuery] = []
    for step in range(int(source.bottom - target.bottom)):
        lo, hi = source.bottom - step, source.top - step
        out.extend(segment_queries(source.rho, source.orient * lo, source.orient * hi))
    return out


def transfer_jac(d: Domination, matched: tuple[Block, Block], x: GrothElement) -> GrothElement:
    if matched not in d.pairs:
        raise ValueError("blocks are not matched under this domination")
    return jac_seq(transfer_queries(*matched), x, evaluate=True)


def pi_via(d: Domination, e: SignChar) -> GrothElement:
    """Packet of ``(d.target, e)`` computed from ``d.source``; smallest block
    transferred first."""
    x = pi_standard(d.source, d.transport(e))
    for pair in d.pairs:
        if x.is_zero():
            break
        x = transfer_jac(d, pair, x)
    return x


def pi_general(p: Parameter, e: SignChar) -> GrothElement:
    if is_diagonal_discrete(p):
        return pi_recursive(p, e, mode="evaluate")
    return pi_via(minimal_dominating(p), e)


def transfer_word(d: Domination) -> list[JacQuery]:
    """All transfer queries of ``d`` in application order."""
    out: list[JacQuery] = []
    for s, t in d.pairs:
        out.extend(transfer_queries(s, t))
    return out


def common_refinement(d1: Domination, d2: Domination) -> Domination:
    if d1.target != d2.target:
        raise ValueError("dominations of different parameters")
    return from_shifts(d1.target, [max(a, b) for a, b in zip(d1.shifts(), d2.shifts())])


def _descent(big: tuple, small: tuple) -> list[tuple[tuple, int]]:
    cur = list(big)
    goal = list(small)
    if any(c < g for c, g in zip(cur, goal)):
        raise ValueError("first domination must dominate the second")
    steps = []
    while cur != goal:
        i = next(k for k, (c, g) in enumerate(zip(cur, goal)) if c > g)
        steps.append((tuple(cur), i))
        cur[i] -= 1
    return steps


def descent(big: Domination, small: Domination) -> list[tuple[Domination, int]]:
    """Unit steps from ``big`` down to ``small``, always lowering the smallest
    block that still has excess shift.  Each entry is ``(upper, index)``; every
    intermediate source stays diagonal-discrete."""
    return [
        (from_shifts(big.target, list(s)), i)
        for s, i in _descent(tuple(big.shifts()), tuple(small.shifts()))
    ]


def _lower_shifts(shifts: tuple, idx: int) -> tuple:
    return shifts[:idx] + (shifts[idx] - 1,) + shifts[idx + 1 :]


def word_factorizes(upper: Domination, lower: Domination, idx: int) -> bool:
    """The transfer word of ``upper`` equals, up to commuting letters, the
    full strip of its ``idx``-th source block followed by the word of ``lower``."""
    return _word_ok(upper.target, tuple(upper.shifts()), tuple(lower.shifts()), idx)


@lru_cache(maxsize=None)
def _word_ok(p: Parameter, upper: tuple, lower: tuple, idx: int) -> bool:
    up, low = from_shifts(p, list(upper)), from_shifts(p, list(lower))
    s, _ = up.pairs[idx]
    strip = segment_queries(s.rho, s.orient * s.bottom, s.orient * s.top)
    return normalize_prefix(transfer_word(up)) == normalize_prefix(strip + transfer_word(low))


def strip_lowers(upper: Domination, lower: Domination, idx: int, e: SignChar) -> bool:
    """The same-side strip of the ``idx``-th source block takes the explicit
    packet member of ``upper.source`` to that of ``lower.source``."""
    x = pi_explicit(upper.source, upper.transport(e)).as_groth()
    y = pi_explicit(lower.source, lower.transport(e)).as_groth()
    return jac_strip(x, upper.pairs[idx][0], "same") == y


@lru_cache(maxsize=None)
def _step_ok(p: Parameter, e: SignChar, upper: tuple, idx: int) -> bool:
    lower = _lower_shifts(upper, idx)
    if not _word_ok(p, upper, lower, idx):
        return False
    return strip_lowers(from_shifts(p, list(upper)), from_shifts(p, list(lower)), idx, e)


def domination_independence_check(p: Parameter, e: SignChar, d1: Domination, d2: Domination) -> bool:
    """Results through ``d1`` and ``d2`` agree.

    Both are compared with their common refinement one unit step at a time:
    the transfer words must factor through the strip of the lowered block,
    and that strip must carry one explicit packet member onto the next.
    Raises ``Unsupported`` if a strip cannot be evaluated.
    """
    if d1.target != p or d2.target != p:
        raise ValueError("dominations must target the given parameter")
    s1, s2 = tuple(d1.shifts()), tuple(d2.shifts())
    top = tuple(max(a, b) for a, b in zip(s1, s2))
    for goal in (s1, s2):
        for upper, idx in _descent(top, goal):
            if not _step_ok(p, e, upper, idx):
                return False
    return True


def evaluated_agreement(e: SignChar, d1: Domination, d2: Domination) -> bool | None:
    """Direct comparison of the two evaluated results, ``None`` if unsupported."""
    try:
        return pi_via(d1, e) == pi_via(d2, e)
    except Unsupported:
        return None


@dataclass
class DominationCensus:
    """Outcome of comparing extra-shift dominations with the minimal one."""

    compared: int = 0
    unsupported: int = 0
    evaluated: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def domination_census(params, max_extra: int = 2, evaluate: bool = True, max_failures: int = 10) -> DominationCensus:
    """Run ``domination_independence_check`` between the minimal domination and
    every domination with nondecreasing extra shifts up to ``max_extra``; with
    ``evaluate`` also compare fully evaluated results where supported."""
    out = DominationCensus()
    for p in params:
        base = minimal_dominating(p)
        others = [d for d in extra_dominations(p, max_extra) if d.shifts() != base.shifts()]
        for e in all_sign_chars(p):
            for d in others:
                try:
                    ok = domination_independence_check(p, e, base, d)
                except Unsupported:
                    out.unsupported += 1
                    continue
                out.compared += 1
                if ok and evaluate:
                    agree = evaluated_agreement(e, base, d)
                    if agree is not None:
                        out.evaluated += 1
                        ok = agree
                if not ok and len(out.failures) < max_failures:
                    out.failures.append((p, e, d))
    return out


def so9_example() -> tuple[Parameter, SignChar]:
    """Odd orthogonal rank-4 parameter whose packet member is zero."""
    half = HalfInt.from_twice
    blocks = [
        (Block(TRIVIAL, half(3), half(3), PLUS), MINUS),
        (Block(TRIVIAL, half(1), half(1), PLUS), PLUS),
        (Block(TRIVIAL, half(1), half(1), MINUS), MINUS),
    ]
    p = Parameter(tuple(b for b, _ in blocks), "odd-orthogonal")
    return p, SignChar.of(blocks)


__all__ = [
    "Domination",
    "dominating",
    "from_shifts",
    "minimal_dominating",
    "extra_dominations",
    "transfer_queries",
    "transfer_jac",
    "pi_via",
    "pi_general",
    "transfer_word",
    "common_refinement",
    "descent",
    "word_factorizes",
    "strip_lowers",
    "domination_independence_check",
    "evaluated_agreement",
    "DominationCensus",
    "domination_census",
    "so9_example",
]
