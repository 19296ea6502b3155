"""Signed sums over sign characters and the sign identities behind them."""

from __future__ import annotations

from dataclasses import dataclass, field

from .groth import GrothElement, PiSymbol, Term, induct
from .jacquet import jac_seq
from .packets import (
    _delta,
    _jac_queries,
    _raised,
    canonical_block,
    delta_range,
    pi_recursive,
)
from .params import (
    MINUS,
    PLUS,
    Block,
    Parameter,
    SignChar,
    all_sign_chars,
    parity_sign,
    power_sign,
    rep_triple_from_block,
    validate_sign_char,
)

SIGNS = (PLUS, MINUS)


@dataclass
class StableSum:
    """``sum_e coeff(e) * pi(p, e)`` with ``coeff(e) = prod e(block)^(b-1)``."""

    value: GrothElement
    signs: dict[SignChar, int]

    def __post_init__(self):
        if any(c not in (PLUS, MINUS) for c in self.signs.values()):
            raise ValueError("stable-sum coefficients are signs")


def character_sign(p: Parameter, e: SignChar) -> int:
    """``prod e(block)^(b-1)`` with ``b`` the second SL(2) dimension."""
    out = 1
    for blk in p.blocks:
        out *= power_sign(e[blk], rep_triple_from_block(blk).b - 1)
    return out


def _characters(p: Parameter, center_only: bool) -> list[SignChar]:
    chars = all_sign_chars(p)
    if center_only:
        chars = [e for e in chars if validate_sign_char(p, e, check_center=True).ok]
    return chars


def stable_sum(p: Parameter, mode: str = "tower", center_only: bool = False) -> StableSum:
    """Stable combination; each packet is built by ``pi_recursive`` in ``mode``."""
    signs: dict[SignChar, int] = {}
    pairs: list[tuple[Term, int]] = []
    for e in _characters(p, center_only):
        c = character_sign(p, e)
        signs[e] = c
        pairs.extend((t, c * n) for t, n in pi_recursive(p, e, mode=mode).items())
    return StableSum(GrothElement.from_terms(pairs), signs)


def formal_stable_sum(p: Parameter) -> GrothElement:
    """The same sum with every packet left as an unexpanded symbol."""
    return GrothElement.from_terms(
        (Term((), (), PiSymbol(p, e)), character_sign(p, e)) for e in all_sign_chars(p)
    )


def grouping_check(p: Parameter, blk: Block | None = None) -> bool:
    """One level of the recursion, summed against the stable signs, regroups
    into stable sums of the smaller parameters.

    Left side: ``sum_e sign(e) * (one-level expansion of pi(p, e))``.
    Right side: ``sum_C (-1)^(A-C) delta_C x Jac(stable sum of p'')`` plus
    ``(-1)^[(A-B+1)/2]`` times the stable sum of the split parameter.
    """
    if blk is None:
        blk = canonical_block(p)
    if blk is None:
        raise ValueError("grouping needs a block with A > B")
    lhs_pairs: list[tuple[Term, int]] = []
    for e in all_sign_chars(p):
        c = character_sign(p, e)
        x = pi_recursive(p, e, blk, mode="prefix", depth=1)
        lhs_pairs.extend((t, c * n) for t, n in x.items())
    lhs = GrothElement.from_terms(lhs_pairs)

    rest = p.replace(remove=[blk])
    rhs_pairs: list[tuple[Term, int]] = []
    # delta part: the raised parameter keeps the parity of b
    probe = SignChar.of([(b, PLUS) for b in p.blocks])
    raised = _raised(p, probe, blk)
    if raised is not None:
        inner = formal_stable_sum(raised.param)
        for c in delta_range(blk):
            sign = parity_sign(int(blk.top - c))
            x = jac_seq(_jac_queries(blk, c), inner, evaluate=False)
            rhs_pairs.extend((t, sign * n) for t, n in induct([_delta(blk, c)], x).items())
    upper = Block(blk.rho, blk.top, blk.bottom + 1, blk.orient)
    lower = blk.with_range(blk.bottom, blk.bottom)
    split = rest.replace(add=[upper, lower])
    const = parity_sign((int(blk.top - blk.bottom) + 1) // 2)
    rhs_pairs.extend((t, const * n) for t, n in formal_stable_sum(split).items())
    return lhs == GrothElement.from_terms(rhs_pairs)


@dataclass
class IdentityReport:
    checked: dict[str, int] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __str__(self):
        lines = [f"{name}: {n} cases" for name, n in self.checked.items()]
        lines += [f"FAIL {f}" for f in self.failures]
        return "\n".join(lines)


def sign_identity_checks(limit: int = 20) -> IdentityReport:
    """Exhaustive check of the three sign identities for ``a, b <= limit``."""
    rep = IdentityReport()

    def tally(name: str, ok: bool, case: str):
        rep.checked[name] = rep.checked.get(name, 0) + 1
        if not ok:
            rep.failures.append(f"{name} {case}")

    for b in range(2, limit + 1):
        for zeta in SIGNS:
            for eta in SIGNS:
                lhs = power_sign(eta, b - zeta - 1) * power_sign(eta, b - 2)
                tally("(i)", lhs == PLUS, f"b={b} zeta={zeta} eta={eta}")
    for a in range(2, limit + 1):
        for b in range(2, limit + 1):
            for zeta in SIGNS:
                for eta in SIGNS:
                    for e0 in SIGNS:
                        up = max(b - a, 0)
                        lo = min(a, b)
                        lhs = power_sign(eta, b - zeta - 1) * power_sign(eta, up) * power_sign(e0, up)
                        rhs = power_sign(eta, lo) * power_sign(e0, lo - 1) * power_sign(e0, b - 1)
                        tally("(ii)", lhs == rhs, f"a={a} b={b} zeta={zeta} eta={eta} e0={e0}")
    for n in range(limit + 1):
        lhs = parity_sign((n + 1) // 2 + n // 2)
        tally("(iii)", lhs == parity_sign(n), f"A-B={n}")
    return rep


__all__ = [
    "StableSum",
    "character_sign",
    "stable_sum",
    "formal_stable_sum",
    "grouping_check",
    "IdentityReport",
    "sign_identity_checks",
]
