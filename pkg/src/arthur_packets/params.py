"""Exact core types: half-integers, cuspidal labels, Jordan blocks, parameters.

A parameter is a multiset of blocks ``(rho, top, bottom, orient)``; a sign
character assigns +1 or -1 to each block.  Everything here is an immutable
value and every function is pure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, fields
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Iterator, Mapping

PLUS = 1
MINUS = -1

GROUP_KINDS = ("symplectic", "odd-orthogonal", "even-orthogonal")
LABEL_KINDS = ("orthogonal", "symplectic")


def sign_str(s: int) -> str:
    return "+" if s > 0 else "-"


def parse_sign(text) -> int:
    if isinstance(text, int):
        if text in (1, -1):
            return text
        raise ValueError(f"bad sign {text!r}")
    t = str(text).strip()
    if t in ("+", "+1", "1"):
        return PLUS
    if t in ("-", "-1"):
        return MINUS
    raise ValueError(f"bad sign {text!r}")


def power_sign(base: int, exponent: int) -> int:
    """``base ** exponent`` for a sign base and any integer exponent."""
    return 1 if base > 0 or exponent % 2 == 0 else -1


def parity_sign(n: int) -> int:
    """``(-1) ** n``."""
    return -1 if n % 2 else 1


def cached_hash(cls):
    """Memoize the field hash of a frozen dataclass; these values are hashed
    constantly as cache and dictionary keys."""
    names = [f.name for f in fields(cls)]

    def __hash__(self):
        try:
            return self.__dict__["_hash"]
        except KeyError:
            h = hash(tuple(getattr(self, n) for n in names))
            object.__setattr__(self, "_hash", h)
            return h

    cls.__hash__ = __hash__
    return cls


# ---------------------------------------------------------------------------
# HalfInt
# ---------------------------------------------------------------------------


@total_ordering
class HalfInt:
    """Exact number with denominator 1 or 2, stored as twice its value."""

    __slots__ = ("twice",)

    def __init__(self, value=0):
        if isinstance(value, HalfInt):
            twice = value.twice
        elif isinstance(value, bool):
            raise TypeError("bool is not a half-integer")
        elif isinstance(value, int):
            twice = 2 * value
        elif isinstance(value, (Fraction, float)):
            f = Fraction(value) * 2
            if f.denominator != 1:
                raise ValueError(f"{value!r} is not a half-integer")
            twice = int(f)
        elif isinstance(value, str):
            f = Fraction(value.strip()) * 2
            if f.denominator != 1:
                raise ValueError(f"{value!r} is not a half-integer")
            twice = int(f)
        else:
            raise TypeError(f"cannot make a half-integer from {value!r}")
        object.__setattr__(self, "twice", twice)

    def __setattr__(self, name, value):
        raise AttributeError("HalfInt is immutable")

    @classmethod
    def from_twice(cls, twice: int) -> "HalfInt":
        h = cls.__new__(cls)
        object.__setattr__(h, "twice", int(twice))
        return h

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def floor(self) -> int:
        return self.twice // 2

    def to_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __int__(self) -> int:
        if not self.is_integer:
            raise ValueError(f"{self} is not an integer")
        return self.twice // 2

    def _coerce(self, other) -> "HalfInt | None":
        if isinstance(other, HalfInt):
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return HalfInt.from_twice(2 * other)
        if isinstance(other, Fraction):
            try:
                return HalfInt(other)
            except ValueError:
                return None
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return HalfInt.from_twice(self.twice + o.twice)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return HalfInt.from_twice(self.twice - o.twice)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return HalfInt.from_twice(o.twice - self.twice)

    def __mul__(self, other):
        # only integer scaling is meaningful (signs, small multiples)
        if isinstance(other, int) and not isinstance(other, bool):
            return HalfInt.from_twice(self.twice * other)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return HalfInt.from_twice(-self.twice)

    def __abs__(self):
        return HalfInt.from_twice(abs(self.twice))

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.twice == o.twice

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.twice < o.twice

    def __hash__(self):
        if self.twice % 2 == 0:
            return hash(self.twice // 2)
        return hash(Fraction(self.twice, 2))

    def __bool__(self):
        return self.twice != 0

    def __str__(self):
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __repr__(self):
        return f"HalfInt({str(self)!r})"


def half(value) -> HalfInt:
    """Coerce ints, strings like ``"3/2"`` and fractions to ``HalfInt``."""
    return value if isinstance(value, HalfInt) else HalfInt(value)


def half_range(start: HalfInt, stop: HalfInt) -> list[HalfInt]:
    """Inclusive integer-step run from ``start`` towards ``stop``."""
    diff = stop.twice - start.twice
    if diff % 2:
        raise ValueError(f"{start} and {stop} differ by a non-integer")
    step = 2 if diff >= 0 else -2
    return [HalfInt.from_twice(t) for t in range(start.twice, stop.twice + step, step)]


# ---------------------------------------------------------------------------
# Labels and blocks
# ---------------------------------------------------------------------------


@cached_hash
@dataclass(frozen=True, order=True)
class CuspLabel:
    """Formal self-dual cuspidal label."""

    name: str = "1"
    dim: int = 1
    kind: str = "orthogonal"

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("label dimension must be positive")
        if self.kind not in LABEL_KINDS:
            raise ValueError(f"label kind must be one of {LABEL_KINDS}")

    def __str__(self):
        if self.dim == 1 and self.kind == "orthogonal":
            return self.name
        return f"{self.name}.d{self.dim}.{self.kind[0]}"

    @classmethod
    def parse(cls, text: str) -> "CuspLabel":
        parts = text.split(".")
        if len(parts) == 1:
            return cls(parts[0])
        if len(parts) == 3 and parts[1].startswith("d"):
            kind = {"o": "orthogonal", "s": "symplectic"}[parts[2]]
            return cls(parts[0], int(parts[1][1:]), kind)
        raise ValueError(f"bad label {text!r}")


TRIVIAL = CuspLabel()


@cached_hash
@dataclass(frozen=True)
class Block:
    """Jordan block: ``rho`` twisted over the integer run ``[bottom, top]``.

    ``orient`` is +1 or -1 and selects which of the two SL(2) factors carries
    the larger dimension.
    """

    rho: CuspLabel
    top: HalfInt
    bottom: HalfInt
    orient: int = PLUS

    def __post_init__(self):
        object.__setattr__(self, "top", half(self.top))
        object.__setattr__(self, "bottom", half(self.bottom))
        if self.orient not in (PLUS, MINUS):
            raise ValueError("orient must be +1 or -1")
        gap = self.top - self.bottom
        if not gap.is_integer or gap < 0:
            raise ValueError(f"top - bottom must be a non-negative integer: {self}")
        if self.bottom < 0:
            raise ValueError(f"bottom must be non-negative: {self}")
        if self.bottom == 0 and self.orient != PLUS:
            raise ValueError(f"bottom 0 forces orient +: {self}")

    @property
    def gap(self) -> int:
        return int(self.top - self.bottom)

    @property
    def is_elementary(self) -> bool:
        return self.top == self.bottom

    def sort_key(self):
        return (self.rho, self.bottom.twice, self.top.twice, self.orient)

    def __lt__(self, other: "Block") -> bool:
        return self.sort_key() < other.sort_key()

    def interval(self) -> tuple[HalfInt, HalfInt]:
        return (self.bottom, self.top)

    def with_range(self, top, bottom) -> "Block":
        top, bottom = half(top), half(bottom)
        orient = PLUS if bottom == 0 else self.orient
        return Block(self.rho, top, bottom, orient)

    def __str__(self):
        return f"({self.rho},{self.top},{self.bottom},{sign_str(self.orient)})"


@dataclass(frozen=True)
class RepTriple:
    """Block in ``(rho, a, b)`` form: the two SL(2) dimensions."""

    rho: CuspLabel
    a: int
    b: int

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise ValueError("a and b must be positive")


def block_from_rep_triple(t: RepTriple) -> Block:
    top = HalfInt.from_twice(t.a + t.b - 2)
    bottom = HalfInt.from_twice(abs(t.a - t.b))
    orient = PLUS if t.a >= t.b else MINUS
    return Block(t.rho, top, bottom, orient)


def rep_triple_from_block(b: Block) -> RepTriple:
    big = (b.top.twice + b.bottom.twice) // 2 + 1
    small = (b.top.twice - b.bottom.twice) // 2 + 1
    if b.orient == PLUS:
        return RepTriple(b.rho, big, small)
    return RepTriple(b.rho, small, big)


def b_dim(b: Block) -> int:
    """Dimension of the second SL(2) factor (the ``b`` of the triple)."""
    return rep_triple_from_block(b).b


# ---------------------------------------------------------------------------
# Parameters and sign characters
# ---------------------------------------------------------------------------


@cached_hash
@dataclass(frozen=True)
class Parameter:
    """Multiset of blocks plus the ambient group data."""

    blocks: tuple[Block, ...] = ()
    group_kind: str | None = None
    sharp: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(sorted(self.blocks, key=Block.sort_key)))
        if self.group_kind is not None and self.group_kind not in GROUP_KINDS:
            raise ValueError(f"group kind must be one of {GROUP_KINDS}")
        if self.sharp not in (None, PLUS, MINUS):
            raise ValueError("sharp must be +1, -1 or None")

    def __iter__(self) -> Iterator[Block]:
        return iter(self.blocks)

    def __len__(self):
        return len(self.blocks)

    def rhos(self) -> list[CuspLabel]:
        return sorted({b.rho for b in self.blocks})

    def replace(self, remove: Iterable[Block] = (), add: Iterable[Block] = ()) -> "Parameter":
        blocks = list(self.blocks)
        for b in remove:
            blocks.remove(b)
        blocks.extend(add)
        return Parameter(tuple(blocks), self.group_kind, self.sharp)

    def gl_dimension(self) -> int:
        total = 0
        for b in self.blocks:
            t = rep_triple_from_block(b)
            total += b.rho.dim * t.a * t.b
        return total

    def __str__(self):
        return "{" + ", ".join(str(b) for b in self.blocks) + "}"


@cached_hash
@dataclass(frozen=True)
class SignChar:
    """Map from blocks to signs, stored as a sorted tuple of pairs."""

    items: tuple[tuple[Block, int], ...] = ()

    def __post_init__(self):
        seen = set()
        for b, s in self.items:
            if b in seen:
                raise ValueError(f"block {b} has two signs")
            if s not in (PLUS, MINUS):
                raise ValueError("signs must be +1 or -1")
            seen.add(b)
        object.__setattr__(
            self, "items", tuple(sorted(self.items, key=lambda kv: kv[0].sort_key()))
        )

    @classmethod
    def of(cls, mapping: Mapping[Block, int] | Iterable[tuple[Block, int]]) -> "SignChar":
        pairs = mapping.items() if isinstance(mapping, Mapping) else mapping
        return cls(tuple(pairs))

    def __getitem__(self, b: Block) -> int:
        for k, s in self.items:
            if k == b:
                return s
        raise KeyError(b)

    def get(self, b: Block, default=None):
        for k, s in self.items:
            if k == b:
                return s
        return default

    def keys(self) -> list[Block]:
        return [k for k, _ in self.items]

    def as_dict(self) -> dict[Block, int]:
        return dict(self.items)

    def replace(self, remove: Iterable[Block] = (), add: Iterable[tuple[Block, int]] = ()) -> "SignChar":
        d = self.as_dict()
        for b in remove:
            del d[b]
        for b, s in add:
            if b in d:
                raise ValueError(f"block {b} already signed")
            d[b] = s
        return SignChar.of(d)

    def product(self) -> int:
        out = 1
        for _, s in self.items:
            out *= s
        return out

    def __str__(self):
        return "{" + ", ".join(f"{b}:{sign_str(s)}" for b, s in self.items) + "}"


def signed(pairs: Iterable[tuple[Block, int]], group_kind=None, sharp=None) -> tuple[Parameter, SignChar]:
    """Build a parameter and its sign character from ``(block, sign)`` pairs."""
    pairs = list(pairs)
    return Parameter(tuple(b for b, _ in pairs), group_kind, sharp), SignChar.of(pairs)


def all_sign_chars(p: Parameter) -> list[SignChar]:
    blocks = list(dict.fromkeys(p.blocks))
    return [
        SignChar.of(zip(blocks, signs))
        for signs in itertools.product((PLUS, MINUS), repeat=len(blocks))
    ]


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


@dataclass
class Report:
    """Outcome of a validation: ``ok`` plus a list of human-readable violations."""

    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def __str__(self):
        return "ok" if self.ok else "; ".join(self.violations)


def _required_integrality(rho: CuspLabel, group_kind: str | None) -> bool | None:
    """Whether blocks on ``rho`` must carry integer coordinates, if known."""
    if group_kind is None:
        return None
    # the dual group is orthogonal unless the group is odd orthogonal
    dual_orthogonal = group_kind != "odd-orthogonal"
    return (rho.kind == "orthogonal") == dual_orthogonal


def intervals_overlap(b1: Block, b2: Block) -> bool:
    return not (b1.bottom > b2.top or b2.bottom > b1.top)


def validate_parameter(p: Parameter, level: str = "discrete") -> Report:
    """Check multiplicity-freeness, parity and (optionally) disjointness."""
    if level not in ("discrete", "diagonal-discrete"):
        raise ValueError(f"unknown level {level!r}")
    rep = Report()
    counts: dict[Block, int] = {}
    for b in p.blocks:
        counts[b] = counts.get(b, 0) + 1
    for b, n in counts.items():
        if n > 1:
            rep.violations.append(f"block {b} occurs {n} times")
    for rho in p.rhos():
        on_rho = [b for b in p.blocks if b.rho == rho]
        kinds = {b.top.is_integer for b in on_rho}
        if len(kinds) > 1:
            rep.violations.append(f"blocks on {rho} mix integer and half-integer coordinates")
        need = _required_integrality(rho, p.group_kind)
        if need is not None:
            for b in on_rho:
                if b.top.is_integer != need:
                    want = "integer" if need else "half-integer"
                    rep.violations.append(f"block {b} must have {want} coordinates for {p.group_kind}")
    if level == "diagonal-discrete":
        uniq = list(counts)
        for b1, b2 in itertools.combinations(uniq, 2):
            if b1.rho == b2.rho and intervals_overlap(b1, b2):
                rep.violations.append(f"blocks {b1} and {b2} have overlapping intervals")
    return rep


def is_diagonal_discrete(p: Parameter) -> bool:
    return validate_parameter(p, "diagonal-discrete").ok


def validate_sign_char(p: Parameter, e: SignChar, check_center: bool | None = None) -> Report:
    """Domain exactness, plus the center condition when ``p.sharp`` is declared."""
    rep = Report()
    keys = set(e.keys())
    blocks = set(p.blocks)
    for b in sorted(blocks - keys, key=Block.sort_key):
        rep.violations.append(f"block {b} has no sign")
    for b in sorted(keys - blocks, key=Block.sort_key):
        rep.violations.append(f"sign given for foreign block {b}")
    if check_center is None:
        check_center = p.sharp is not None
    if check_center and rep.ok and p.sharp is not None:
        if e.product() != p.sharp:
            rep.violations.append(
                f"product of signs is {sign_str(e.product())} but the group requires {sign_str(p.sharp)}"
            )
    return rep


# ---------------------------------------------------------------------------
# Derived data
# ---------------------------------------------------------------------------


def jord_of_diagonal_restriction(p: Parameter) -> list[tuple[CuspLabel, int]]:
    """Jordan set after restricting to the diagonal SL(2), as a sorted multiset."""
    out = []
    for b in p.blocks:
        t = rep_triple_from_block(b)
        lo, hi = abs(t.a - t.b) + 1, t.a + t.b - 1
        out.extend((b.rho, c) for c in range(lo, hi + 1, 2))
    return sorted(out)


def is_elementary(p: Parameter) -> bool:
    return all(b.is_elementary for b in p.blocks)


def s_psi(p: Parameter) -> int:
    return sum(b.gap for b in p.blocks)


def order_blocks_rho(p: Parameter, rho: CuspLabel) -> list[Block]:
    """Blocks on ``rho``: bottom ascending, then top ascending, orient - before +."""
    return sorted((b for b in p.blocks if b.rho == rho), key=Block.sort_key)


def elementary_jord(p: Parameter, e: SignChar, rho: CuspLabel) -> dict[int, tuple[int, int]]:
    """For an elementary parameter: ``a -> (sign, orient)`` with ``a = 2*bottom + 1``."""
    out = {}
    for b in p.blocks:
        if b.rho == rho:
            out[b.bottom.twice + 1] = (e[b], b.orient)
    return out


def pivot_dimension(p: Parameter, e: SignChar, rho: CuspLabel) -> int | None:
    """Smallest ``a`` from which an elementary packet member can be peeled.

    ``a`` qualifies when ``a - 2`` is absent (and ``a >= 3``), when ``a - 2``
    is present with the same sign, or when ``a = 2`` carries the sign +.
    ``None`` means the labels on ``rho`` form a cuspidal chain.
    """
    jord = elementary_jord(p, e, rho)
    for a in sorted(jord):
        sgn = jord[a][0]
        if a == 1:
            continue
        if a == 2:
            if sgn == PLUS:
                return a
            continue
        below = jord.get(a - 2)
        if below is None or below[0] == sgn:
            return a
    return None


def elementary_canonical(p: Parameter, e: SignChar) -> tuple[Parameter, SignChar]:
    """For an elementary parameter, set orient + on every block below the
    pivot dimension (all blocks on ``rho`` when there is no pivot); the
    packet member does not depend on those orientations."""
    if not is_elementary(p):
        return p, e
    remove, add = [], []
    for rho in p.rhos():
        pivot = pivot_dimension(p, e, rho)
        for b in p.blocks:
            if b.rho != rho or b.orient == PLUS:
                continue
            if pivot is None or b.bottom.twice + 1 < pivot:
                remove.append(b)
                add.append(Block(rho, b.top, b.bottom, PLUS))
    if not remove:
        return p, e
    return (
        p.replace(remove=remove, add=add),
        e.replace(remove=remove, add=[(nb, e[b]) for b, nb in zip(remove, add)]),
    )


# ---------------------------------------------------------------------------
# Cuspidal support
# ---------------------------------------------------------------------------


def _removals(state: tuple[int, ...], signs: dict[int, int], zero_used: bool):
    """Admissible single removals from a sorted tuple of remaining dimensions."""
    for i in range(len(state) - 1):
        lo, hi = state[i], state[i + 1]
        if signs[lo] == signs[hi]:
            yield state[:i] + state[i + 2:], zero_used
    if not zero_used and state:
        lo = state[0]
        if lo % 2 == 0 and signs[lo] == PLUS:
            yield state[1:], True


def _minimal_remaining(dims: tuple[int, ...], signs: dict[int, int], exhaustive: bool) -> tuple[int, ...]:
    if not exhaustive:
        state, zero_used = dims, False
        while True:
            options = list(_removals(state, signs, zero_used))
            if not options:
                return state
            # largest-first: remove the pair with the largest top element
            def removed_top(opt):
                gone = set(state) - set(opt[0])
                return max(gone)
            state, zero_used = max(options, key=removed_top)
    best = dims
    seen = set()
    stack = [(dims, False)]
    while stack:
        state, zero_used = stack.pop()
        if (state, zero_used) in seen:
            continue
        seen.add((state, zero_used))
        if len(state) < len(best) or (len(state) == len(best) and state < best):
            best = state
        stack.extend(_removals(state, signs, zero_used))
    return best


def cuspidal_support(p: Parameter, e: SignChar, exhaustive_limit: int = 12) -> tuple[Parameter, SignChar]:
    """Cuspidal datum of an elementary parameter read as a discrete parameter.

    Pairs of consecutive dimensions with equal signs are removed (an even
    lowest dimension with sign + may be removed alone once) until the number
    of survivors is minimal.  The survivors' count, parity and lowest sign
    fix the returned chain, whose signs alternate.
    """
    if not is_elementary(p):
        raise ValueError("cuspidal support needs an elementary parameter")
    out_pairs: list[tuple[Block, int]] = []
    for rho in p.rhos():
        jord = elementary_jord(p, e, rho)
        dims = tuple(sorted(jord))
        signs = {a: jord[a][0] for a in dims}
        remaining = _minimal_remaining(dims, signs, len(dims) <= exhaustive_limit)
        count = len(remaining)
        if count == 0:
            continue
        parity = remaining[0] % 2
        lowest_sign = signs[remaining[0]]
        for k in range(count):
            alpha = parity + 2 * k if parity else 2 + 2 * k
            sgn = parity_sign((alpha + parity) // 2 + 1) * lowest_sign
            out_pairs.append((Block(rho, HalfInt.from_twice(alpha - 1), HalfInt.from_twice(alpha - 1)), sgn))
    q, f = signed(out_pairs, p.group_kind, p.sharp)
    return q, f


__all__ = [
    "PLUS",
    "MINUS",
    "HalfInt",
    "half",
    "half_range",
    "CuspLabel",
    "TRIVIAL",
    "Block",
    "RepTriple",
    "Parameter",
    "SignChar",
    "Report",
    "signed",
    "all_sign_chars",
    "block_from_rep_triple",
    "rep_triple_from_block",
    "b_dim",
    "validate_parameter",
    "is_diagonal_discrete",
    "validate_sign_char",
    "jord_of_diagonal_restriction",
    "is_elementary",
    "s_psi",
    "order_blocks_rho",
    "pivot_dimension",
    "cuspidal_support",
    "power_sign",
    "parity_sign",
    "sign_str",
    "parse_sign",
]
