"""Enumeration of small parameter families used by the checks and the CLI."""

from __future__ import annotations

import itertools
from typing import Callable, Iterator

from .params import (
    MINUS,
    PLUS,
    TRIVIAL,
    Block,
    CuspLabel,
    HalfInt,
    Parameter,
    SignChar,
    all_sign_chars,
    is_diagonal_discrete,
)


def candidate_blocks(
    rho: CuspLabel, half_integral: bool, max_bottom, max_gap: int, orients=(PLUS, MINUS)
) -> list[Block]:
    """Blocks on ``rho`` with ``bottom <= max_bottom`` and ``top - bottom <= max_gap``."""
    start = HalfInt.from_twice(1 if half_integral else 0)
    out = []
    bottom = start
    while bottom <= HalfInt(max_bottom):
        for gap in range(max_gap + 1):
            for o in orients:
                if bottom == 0 and o == MINUS:
                    continue
                out.append(Block(rho, bottom + gap, bottom, o))
        bottom = bottom + 1
    return out


def disjoint_sets(candidates: list[Block], max_blocks: int, min_blocks: int = 1) -> Iterator[tuple[Block, ...]]:
    """Sets of candidates with pairwise disjoint runs, in increasing order."""
    cands = sorted(candidates, key=Block.sort_key)

    def rec(start: int, chosen: list[Block]):
        if len(chosen) >= min_blocks:
            yield tuple(chosen)
        if len(chosen) == max_blocks:
            return
        for i in range(start, len(cands)):
            b = cands[i]
            if chosen and b.bottom <= chosen[-1].top:
                continue
            chosen.append(b)
            yield from rec(i + 1, chosen)
            chosen.pop()

    yield from rec(0, [])


def parameters(
    max_blocks: int,
    max_bottom,
    max_gap: int,
    rho: CuspLabel = TRIVIAL,
    parities=(False, True),
    keep: Callable[[Parameter], bool] | None = None,
    min_blocks: int = 1,
) -> Iterator[Parameter]:
    """Diagonal-discrete parameters on one ``rho``, both integralities."""
    for half_integral in parities:
        cands = candidate_blocks(rho, half_integral, max_bottom, max_gap)
        for blocks in disjoint_sets(cands, max_blocks, min_blocks):
            p = Parameter(blocks)
            if keep is None or keep(p):
                yield p


def signed_parameters(*args, **kwargs) -> Iterator[tuple[Parameter, SignChar]]:
    for p in parameters(*args, **kwargs):
        for e in all_sign_chars(p):
            yield p, e


def wide_count(p: Parameter) -> int:
    return sum(1 for b in p.blocks if b.top > b.bottom)


def overlapping_parameters(
    max_blocks: int, max_bottom, max_gap: int, rho: CuspLabel = TRIVIAL, parities=(False, True)
) -> Iterator[Parameter]:
    """Discrete parameters on one ``rho`` whose runs are not pairwise disjoint."""
    for half_integral in parities:
        cands = sorted(candidate_blocks(rho, half_integral, max_bottom, max_gap), key=Block.sort_key)
        for n in range(2, max_blocks + 1):
            for blocks in itertools.combinations(cands, n):
                p = Parameter(blocks)
                if not is_diagonal_discrete(p):
                    yield p


def elementary_family(max_blocks: int = 4, max_bottom="7/2"):
    return parameters(max_blocks, max_bottom, 0)


def gap_one_family(max_bottom=3, spectators: int = 2):
    """One block with ``A = B + 1`` and up to ``spectators`` elementary blocks."""
    return parameters(1 + spectators, max_bottom, 1, keep=lambda p: wide_count(p) == 1)


def two_wide_family(max_gap: int = 2, max_bottom=3, spectators: int = 0):
    """Exactly two blocks with ``A > B``, plus optional elementary spectators."""
    return parameters(2 + spectators, max_bottom, max_gap, keep=lambda p: wide_count(p) == 2)


__all__ = [
    "candidate_blocks",
    "disjoint_sets",
    "parameters",
    "signed_parameters",
    "wide_count",
    "overlapping_parameters",
    "elementary_family",
    "gap_one_family",
    "two_wide_family",
]
