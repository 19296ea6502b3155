"""Exhaustive property suites over enumerated parameter families.

Every suite returns a ``Census``: how many cases were checked, how many were
outside the supported rule set, and the first few counterexamples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from .families import (
    elementary_family,
    overlapping_parameters,
    parameters,
    wide_count,
)
from .general import domination_census, minimal_dominating, pi_general, so9_example
from .groth import GrothElement, JacQuery
from .jacquet import Unsupported, jac_seq, jac_strip
from .packets import (
    complementary_count,
    independence_check,
    injectivity_check,
    multiplicity_free_check,
    pi_explicit,
    pi_standard,
    standard_independence_check,
    unrolled_explicit,
)
from .params import PLUS, Block, HalfInt, Parameter, SignChar, all_sign_chars
from .stability import grouping_check, sign_identity_checks


@dataclass
class Census:
    name: str
    checked: int = 0
    unsupported: int = 0
    failures: list[str] = field(default_factory=list)
    notes: dict = field(default_factory=dict)
    max_failures: int = 10

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, ok: bool, case: Callable[[], str]):
        self.checked += 1
        if not ok and len(self.failures) < self.max_failures:
            self.failures.append(case())

    def as_dict(self) -> dict:
        return {
            "suite": self.name,
            "ok": self.ok,
            "checked": self.checked,
            "unsupported": self.unsupported,
            "failures": list(self.failures),
            **self.notes,
        }

    def summary(self) -> str:
        extra = "".join(f", {k}={v}" for k, v in self.notes.items())
        status = "pass" if self.ok else "FAIL"
        return f"{self.name}: {status} ({self.checked} checked, {self.unsupported} unsupported{extra})"


@dataclass(frozen=True)
class Bounds:
    """Family bounds: number of blocks, largest ``A - B``, largest ``B``."""

    blocks: int = 2
    gap: int = 2
    bottom: HalfInt = HalfInt(3)

    @classmethod
    def parse(cls, text: str) -> "Bounds":
        vals = {}
        for item in filter(None, (s.strip() for s in text.split(","))):
            key, _, value = item.partition("=")
            key = key.strip()
            if key not in ("blocks", "gap", "b"):
                raise ValueError(f"unknown bound {key!r}; expected blocks, gap or b")
            vals[key] = value.strip()
        return cls(
            int(vals.get("blocks", cls.blocks)),
            int(vals.get("gap", cls.gap)),
            HalfInt(vals.get("b", cls.bottom)),
        )


def _desc(p: Parameter, e: SignChar, extra: str = "") -> str:
    return f"{p} {e}{' ' + extra if extra else ''}"


def elementary_suite(max_blocks: int = 4, max_bottom="7/2") -> Census:
    """One constituent per sign, and distinct signs give distinct members."""
    c = Census("elementary")
    for p in elementary_family(max_blocks, max_bottom):
        es = all_sign_chars(p)
        for e in es:
            c.record(len(pi_explicit(p, e)) == 1, lambda: _desc(p, e))
        c.record(injectivity_check([(p, e) for e in es]), lambda: f"{p} not injective")
    return c


def gap_one_suite(max_bottom=3, spectators: int = 2) -> Census:
    """A block with ``A = B + 1``: one constituent for sign +, two for sign -."""
    c = Census("gap-one")
    fam = parameters(1 + spectators, max_bottom, 1, keep=lambda p: wide_count(p) == 1)
    for p in fam:
        blk = next(b for b in p.blocks if b.gap == 1)
        for e in all_sign_chars(p):
            want = 1 if e[blk] == PLUS else 2
            c.record(len(pi_explicit(p, e)) == want, lambda: _desc(p, e))
    return c


def _is_complementary(irr, blk: Block) -> bool:
    o = blk.orient
    return not any(s.first == o * blk.bottom and s.last == -o * blk.top for s in irr.tower)


def complementary_suite(max_gap: int = 4, max_bottom=3) -> Census:
    """Constituents without the full crossing segment are counted by the
    closed formula."""
    c = Census("complementary")
    for p in parameters(1, max_bottom, max_gap, keep=lambda p: wide_count(p) == 1):
        blk = p.blocks[0]
        for e in all_sign_chars(p):
            got = sum(1 for irr in pi_explicit(p, e) if _is_complementary(irr, blk))
            want = complementary_count(blk.top, blk.bottom, e[blk])
            c.record(got == want, lambda: _desc(p, e, f"got {got} want {want}"))
    return c


def two_wide(bounds: Bounds):
    return parameters(
        bounds.blocks, bounds.bottom, bounds.gap, keep=lambda p: wide_count(p) == 2, min_blocks=2
    )


def independence_suite(bounds: Bounds = Bounds(2, 2, HalfInt(3))) -> Census:
    """Expanding along either wide block gives the same element."""
    c = Census("independence")
    for p in two_wide(bounds):
        for e in all_sign_chars(p):
            ok = independence_check(p, e) and standard_independence_check(p, e)
            c.record(ok, lambda: _desc(p, e))
    return c


def _points(p: Parameter) -> list[HalfInt]:
    parity = p.blocks[0].bottom.twice % 2
    top = max(b.top.twice for b in p.blocks)
    return [HalfInt.from_twice(k) for k in range(-top - 4, top + 5) if k % 2 == parity]


def vanishing_suite(bounds: Bounds = Bounds(2, 2, HalfInt(3))) -> Census:
    """``Jac_x`` vanishes unless ``x`` starts a block, and ``Jac_{x,x}`` always
    vanishes.  Only points whose evaluation is supported are asserted."""
    c = Census("vanishing")
    single = double = 0
    for p in two_wide(bounds):
        rho = p.blocks[0].rho
        starts = {b.orient * b.bottom for b in p.blocks}
        for e in all_sign_chars(p):
            pi = pi_standard(p, e)
            for x in _points(p):
                q = JacQuery(rho, x)
                words = [[q, q]] if x in starts else [[q], [q, q]]
                for w in words:
                    try:
                        r = jac_seq(w, pi)
                    except Unsupported:
                        c.unsupported += 1
                        continue
                    if len(w) == 1:
                        single += 1
                    else:
                        double += 1
                    c.record(r.is_zero(), lambda: _desc(p, e, f"Jac at {[str(v.x) for v in w]}"))
    c.notes.update(single=single, double=double)
    return c


def _lowered(p: Parameter, e: SignChar, blk: Block, top, bottom) -> GrothElement:
    nb = blk.with_range(top, bottom)
    return pi_explicit(p.replace(remove=[blk], add=[nb]), e.replace(remove=[blk], add=[(nb, e[blk])])).as_groth()


def strip_suite(max_blocks: int = 3, max_gap: int = 3, max_bottom=3) -> Census:
    """The crossing strip shrinks a block from both ends; the same-side strip
    lowers a block whose run below is free."""
    c = Census("strips")
    cross = same = 0
    for p in parameters(max_blocks, max_bottom, max_gap, keep=lambda p: wide_count(p) >= 1):
        for e in all_sign_chars(p):
            x = pi_explicit(p, e).as_groth()
            for blk in p.blocks:
                if blk.top > blk.bottom:
                    if blk.top == blk.bottom + 1:
                        if e[blk] == PLUS:
                            want = pi_explicit(p.replace(remove=[blk]), e.replace(remove=[blk])).as_groth()
                        else:
                            want = GrothElement.zero()
                    else:
                        want = _lowered(p, e, blk, blk.top - 1, blk.bottom + 1)
                    try:
                        got = jac_strip(x, blk, "cross")
                        cross += 1
                        c.record(got == want, lambda: _desc(p, e, f"cross strip of {blk}"))
                    except Unsupported:
                        c.unsupported += 1
                if blk.bottom >= 1 and not any(b.rho == blk.rho and b.top == blk.bottom - 1 for b in p.blocks):
                    want = _lowered(p, e, blk, blk.top - 1, blk.bottom - 1)
                    try:
                        got = jac_strip(x, blk, "same")
                        same += 1
                        c.record(got == want, lambda: _desc(p, e, f"same strip of {blk}"))
                    except Unsupported:
                        c.unsupported += 1
    c.notes.update(cross=cross, same=same)
    return c


def multiplicity_suite(bounds: Bounds = Bounds(3, 2, HalfInt(3))) -> Census:
    c = Census("multiplicity")
    for p in parameters(bounds.blocks, bounds.bottom, bounds.gap):
        for e in all_sign_chars(p):
            c.record(multiplicity_free_check(p, e), lambda: _desc(p, e))
    return c


def unrolled_suite(max_blocks: int = 2, max_gap: int = 4, max_bottom=3) -> Census:
    """The closed-form constituent list matches the recursive one."""
    c = Census("unrolled")
    for p in parameters(max_blocks, max_bottom, max_gap):
        for e in all_sign_chars(p):
            a, b = unrolled_explicit(p, e), pi_explicit(p, e)
            c.record(a.as_set() == b.as_set() and len(a) == len(b), lambda: _desc(p, e))
    return c


def signs_suite(limit: int = 20, bounds: Bounds = Bounds(2, 2, HalfInt(3))) -> Census:
    """The sign identities, plus regrouping of stable sums one level down."""
    c = Census("signs")
    rep = sign_identity_checks(limit)
    for name, n in rep.checked.items():
        c.notes[f"identity {name}"] = n
    c.checked += sum(rep.checked.values())
    c.failures.extend(rep.failures[: c.max_failures])
    for p in parameters(bounds.blocks, bounds.bottom, bounds.gap, keep=lambda p: wide_count(p) >= 1):
        c.record(grouping_check(p), lambda: f"grouping {p}")
    return c


def domination_suite(bounds: Bounds = Bounds(3, 1, HalfInt(2)), max_extra: int = 2) -> Census:
    """Results do not depend on the dominating parameter; the rank-four odd
    orthogonal example vanishes."""
    c = Census("domination")
    p, e = so9_example()
    want = ("5/2", "3/2", "1/2")
    got = tuple(str(s.top) for s, _ in reversed(minimal_dominating(p).pairs))
    c.record(got == want, lambda: f"dominator {got}")
    c.record(pi_general(p, e).is_zero(), lambda: "rank-four example is not zero")
    fam = overlapping_parameters(bounds.blocks, bounds.bottom, bounds.gap)
    dc = domination_census(fam, max_extra)
    c.checked += dc.compared
    c.unsupported += dc.unsupported
    c.failures.extend(_desc(p, e, f"via {d}") for p, e, d in dc.failures)
    c.notes["evaluated"] = dc.evaluated
    return c


SUITES: dict[str, Callable[[Bounds | None], Census]] = {
    "independence": lambda b: independence_suite(b or Bounds(2, 2, HalfInt(3))),
    "jacquet": lambda b: vanishing_suite(b or Bounds(2, 2, HalfInt(3))),
    "multiplicity": lambda b: multiplicity_suite(b or Bounds(3, 2, HalfInt(3))),
    "signs": lambda b: signs_suite(20, b or Bounds(2, 2, HalfInt(3))),
    "domination": lambda b: domination_suite(b or Bounds(3, 1, HalfInt(2))),
}


def run_suites(names: Iterable[str], bounds: Bounds | None = None) -> list[Census]:
    return [SUITES[n](bounds) for n in names]


__all__ = [
    "Census",
    "Bounds",
    "elementary_suite",
    "gap_one_suite",
    "complementary_suite",
    "independence_suite",
    "vanishing_suite",
    "strip_suite",
    "multiplicity_suite",
    "unrolled_suite",
    "signs_suite",
    "domination_suite",
    "SUITES",
    "run_suites",
]
