"""Formal Grothendieck-group algebra over segments and base symbols.

A ``Term`` stands for ``seg_1 x ... x seg_k x Jac_{prefix} base``; a
``GrothElement`` is a finite integer combination of terms kept in a canonical
normal form so that equality is structural.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Union

from .params import (
    Block,
    CuspLabel,
    HalfInt,
    Parameter,
    SignChar,
    cached_hash,
    elementary_canonical,
    half,
    half_range,
    is_elementary,
    parse_sign,
    sign_str,
)


# ---------------------------------------------------------------------------
# Segments and queries
# ---------------------------------------------------------------------------


@cached_hash
@dataclass(frozen=True)
class Segment:
    """The run ``rho|.|^first, ..., rho|.|^last`` (either direction)."""

    rho: CuspLabel
    first: HalfInt
    last: HalfInt

    def __post_init__(self):
        object.__setattr__(self, "first", half(self.first))
        object.__setattr__(self, "last", half(self.last))
        if not (self.first - self.last).is_integer:
            raise ValueError(f"segment ends must differ by an integer: {self}")

    @property
    def direction(self) -> int:
        d = self.first.twice - self.last.twice
        return (d > 0) - (d < 0)

    def __len__(self):
        return abs(self.first.twice - self.last.twice) // 2 + 1

    def values(self) -> list[HalfInt]:
        return half_range(self.first, self.last)

    def contains(self, x: HalfInt) -> bool:
        lo, hi = min(self.first, self.last), max(self.first, self.last)
        return lo <= x <= hi and (x - self.first).is_integer

    def dual(self) -> "Segment":
        return Segment(self.rho, -self.last, -self.first)

    def key(self):
        return (self.rho, self.first.twice, self.last.twice)

    def shifted(self, first_delta: int, last_delta: int) -> "Segment":
        return Segment(self.rho, self.first + first_delta, self.last + last_delta)

    def __str__(self):
        return f"<{self.rho}:{self.first}..{self.last}>"


def segment_or_none(rho: CuspLabel, first: HalfInt, last: HalfInt, direction: int) -> Segment | None:
    """Segment running from ``first`` to ``last`` in ``direction``; None if empty."""
    span = (first.twice - last.twice) * (direction if direction else 1)
    if span < 0:
        return None
    return Segment(rho, first, last)


def gl_canonical(s: Segment) -> Segment:
    """Representative of ``{s, dual(s)}``; both induce the same class."""
    d = s.dual()
    return s if s.key() <= d.key() else d


class JacQuery(NamedTuple):
    rho: CuspLabel
    x: HalfInt

    def key(self):
        return (self.rho, self.x.twice)

    def __str__(self):
        return f"{self.rho}:{self.x}"


def queries(rho: CuspLabel, xs: Iterable) -> list[JacQuery]:
    return [JacQuery(rho, half(x)) for x in xs]


def segment_queries(rho: CuspLabel, first, last) -> list[JacQuery]:
    """Queries ``Jac_{first, ..., last}`` in application order."""
    return queries(rho, half_range(half(first), half(last)))


def commute(q1: JacQuery, q2: JacQuery) -> bool:
    if q1.rho != q2.rho:
        return True
    return abs(q1.x.twice - q2.x.twice) != 2


def normalize_prefix(prefix: Iterable[JacQuery]) -> tuple[JacQuery, ...]:
    """Lexicographically least word reachable by swapping commuting neighbours."""
    rest = list(prefix)
    out = []
    while rest:
        best = None
        for i, q in enumerate(rest):
            if all(commute(p, q) for p in rest[:i]):
                if best is None or q.key() < rest[best].key():
                    best = i
        out.append(rest.pop(best))
    return tuple(out)


# ---------------------------------------------------------------------------
# Base symbols
# ---------------------------------------------------------------------------


@cached_hash
@dataclass(frozen=True)
class PiSymbol:
    """Opaque packet symbol for a parameter with its sign character."""

    param: Parameter
    signs: SignChar

    def __post_init__(self):
        # the ambient group data does not affect the symbol
        if self.param.group_kind is not None or self.param.sharp is not None:
            object.__setattr__(self, "param", Parameter(self.param.blocks))
        # orientations below the pivot are immaterial
        if self.param.blocks:
            p, e = elementary_canonical(self.param, self.signs)
            object.__setattr__(self, "param", p)
            object.__setattr__(self, "signs", e)

    @property
    def is_elementary(self) -> bool:
        return is_elementary(self.param)

    def pairs(self) -> list[tuple[Block, int]]:
        return [(b, self.signs[b]) for b in self.param.blocks]

    def key(self):
        return tuple(
            (b.rho, b.bottom.twice, b.top.twice, b.orient, self.signs[b]) for b in self.param.blocks
        )

    def __str__(self):
        inner = "; ".join(
            f"{b.rho}:{b.top},{b.bottom},{sign_str(b.orient)},{sign_str(self.signs[b])}"
            for b in self.param.blocks
        )
        return "pi{" + inner + "}"


@cached_hash
@dataclass(frozen=True)
class ExplicitIrr:
    """Socle tower ``<seg_1, <seg_2, ... <seg_k, base>>>`` (outermost first)."""

    tower: tuple[Segment, ...]
    base: PiSymbol

    def __post_init__(self):
        object.__setattr__(self, "tower", tuple(self.tower))
        if not self.base.is_elementary:
            raise ValueError("a socle tower sits on an elementary symbol")

    def push(self, seg: Segment) -> "ExplicitIrr":
        return ExplicitIrr((seg,) + self.tower, self.base)

    def key(self):
        return (tuple(s.key() for s in self.tower), self.base.key())

    def __str__(self):
        if not self.tower:
            return str(self.base)
        return "soc[" + "; ".join(str(s) for s in self.tower) + "]" + str(self.base)


BaseSymbol = Union[PiSymbol, ExplicitIrr]


def base_key(b: BaseSymbol):
    if isinstance(b, PiSymbol):
        return (0, b.key())
    return (1, b.key())


# ---------------------------------------------------------------------------
# Terms and elements
# ---------------------------------------------------------------------------


@cached_hash
@dataclass(frozen=True)
class Term:
    gl: tuple[Segment, ...]
    prefix: tuple[JacQuery, ...]
    base: BaseSymbol

    def key(self):
        return (tuple(s.key() for s in self.gl), tuple(q.key() for q in self.prefix), base_key(self.base))

    def __str__(self):
        parts = [str(s) for s in self.gl]
        if self.prefix:
            parts.append("Jac[" + ",".join(str(q) for q in self.prefix) + "]")
        parts.append(str(self.base))
        return " x ".join(parts)


def normalize_term(t: Term) -> Term:
    gl = tuple(sorted((gl_canonical(s) for s in t.gl), key=Segment.key))
    prefix = normalize_prefix(t.prefix)
    base = t.base
    if isinstance(base, ExplicitIrr) and not base.tower:
        base = base.base
    return Term(gl, prefix, base)


def make_term(base: BaseSymbol, gl: Iterable[Segment] = (), prefix: Iterable[JacQuery] = ()) -> Term:
    return normalize_term(Term(tuple(gl), tuple(prefix), base))


class GrothElement:
    """Integer combination of normalized terms; no zero coefficients stored."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: dict[Term, int] | None = None, *, _trusted: bool = False):
        if _trusted:
            self._coeffs = coeffs
            return
        out: dict[Term, int] = {}
        for t, n in (coeffs or {}).items():
            t = normalize_term(t)
            out[t] = out.get(t, 0) + n
        self._coeffs = {t: n for t, n in out.items() if n}

    @classmethod
    def zero(cls) -> "GrothElement":
        return cls({}, _trusted=True)

    @classmethod
    def of(cls, base: BaseSymbol, coeff: int = 1, gl: Iterable[Segment] = (), prefix: Iterable[JacQuery] = ()):
        return cls({Term(tuple(gl), tuple(prefix), base): coeff})

    @classmethod
    def from_terms(cls, pairs: Iterable[tuple[Term, int]]) -> "GrothElement":
        acc: dict[Term, int] = {}
        for t, n in pairs:
            t = normalize_term(t)
            acc[t] = acc.get(t, 0) + n
        return cls({t: n for t, n in acc.items() if n}, _trusted=True)

    def items(self) -> list[tuple[Term, int]]:
        return sorted(self._coeffs.items(), key=lambda kv: kv[0].key())

    def terms(self) -> list[Term]:
        return [t for t, _ in self.items()]

    def coeff(self, t: Term) -> int:
        return self._coeffs.get(normalize_term(t), 0)

    def __iter__(self) -> Iterator[tuple[Term, int]]:
        return iter(self.items())

    def __len__(self):
        return len(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self):
        return bool(self._coeffs)

    def __add__(self, other: "GrothElement") -> "GrothElement":
        if not isinstance(other, GrothElement):
            return NotImplemented
        out = dict(self._coeffs)
        for t, n in other._coeffs.items():
            m = out.get(t, 0) + n
            if m:
                out[t] = m
            else:
                out.pop(t, None)
        return GrothElement(out, _trusted=True)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other: "GrothElement") -> "GrothElement":
        if not isinstance(other, GrothElement):
            return NotImplemented
        return self + other.scale(-1)

    def scale(self, n: int) -> "GrothElement":
        if n == 0:
            return GrothElement.zero()
        return GrothElement({t: n * c for t, c in self._coeffs.items()}, _trusted=True)

    def __rmul__(self, n: int):
        if isinstance(n, int):
            return self.scale(n)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, GrothElement):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    def map_terms(self, fn) -> "GrothElement":
        """Linear extension of ``fn: Term -> GrothElement``."""
        acc = GrothElement.zero()
        for t, n in self._coeffs.items():
            acc = acc + fn(t).scale(n)
        return acc

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"GrothElement({render(self)!r})"


def add(x: GrothElement, y: GrothElement) -> GrothElement:
    return x + y


def scale(n: int, x: GrothElement) -> GrothElement:
    return x.scale(n)


def equal(x: GrothElement, y: GrothElement) -> bool:
    return x == y


def induct(segments: Iterable[Segment], x: GrothElement) -> GrothElement:
    segs = tuple(segments)
    if not segs:
        return x
    return GrothElement.from_terms(
        (Term(segs + t.gl, t.prefix, t.base), n) for t, n in x.items()
    )


def total_sum(elements: Iterable[GrothElement]) -> GrothElement:
    acc = GrothElement.zero()
    for e in elements:
        acc = acc + e
    return acc


# ---------------------------------------------------------------------------
# Canonical text form
# ---------------------------------------------------------------------------


def render(x: GrothElement) -> str:
    if x.is_zero():
        return "0"
    out = []
    for i, (t, n) in enumerate(x.items()):
        sign = "-" if n < 0 else "+"
        mag = abs(n)
        body = str(t) if mag == 1 else f"{mag}*{t}"
        if i == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


_SEG = re.compile(r"<([^:<>]+):([-0-9/]+)\.\.([-0-9/]+)>")
_PI = re.compile(r"pi\{([^}]*)\}")


def _parse_pi(body: str) -> PiSymbol:
    pairs = []
    for chunk in filter(None, (c.strip() for c in body.split(";"))):
        label, rest = chunk.split(":", 1)
        top, bottom, orient, sgn = rest.split(",")
        b = Block(CuspLabel.parse(label), HalfInt(top), HalfInt(bottom), parse_sign(orient))
        pairs.append((b, parse_sign(sgn)))
    return PiSymbol(Parameter(tuple(b for b, _ in pairs)), SignChar.of(pairs))


def _parse_term(text: str) -> Term:
    text = text.strip()
    gl: list[Segment] = []
    prefix: list[JacQuery] = []
    base: BaseSymbol | None = None
    for factor in (f.strip() for f in text.split(" x ")):
        if factor.startswith("<"):
            m = _SEG.fullmatch(factor)
            if not m:
                raise ValueError(f"bad segment {factor!r}")
            gl.append(Segment(CuspLabel.parse(m.group(1)), HalfInt(m.group(2)), HalfInt(m.group(3))))
        elif factor.startswith("Jac["):
            inner = factor[4:-1]
            for q in filter(None, inner.split(",")):
                label, x = q.rsplit(":", 1)
                prefix.append(JacQuery(CuspLabel.parse(label), HalfInt(x)))
        elif factor.startswith("soc["):
            close = factor.index("]")
            tower = [
                Segment(CuspLabel.parse(m.group(1)), HalfInt(m.group(2)), HalfInt(m.group(3)))
                for m in _SEG.finditer(factor[4:close])
            ]
            m = _PI.fullmatch(factor[close + 1:])
            if not m:
                raise ValueError(f"bad tower base {factor!r}")
            base = ExplicitIrr(tuple(tower), _parse_pi(m.group(1)))
        else:
            m = _PI.fullmatch(factor)
            if not m:
                raise ValueError(f"bad factor {factor!r}")
            base = _parse_pi(m.group(1))
    if base is None:
        raise ValueError(f"term without base symbol: {text!r}")
    return Term(tuple(gl), tuple(prefix), base)


def parse(text: str) -> GrothElement:
    """Inverse of ``render``."""
    text = text.strip()
    if text == "0":
        return GrothElement.zero()
    chunks = re.split(r" ([+-]) ", text)
    signs = [1] + [1 if s == "+" else -1 for s in chunks[1::2]]
    bodies = chunks[0::2]
    pairs = []
    for sgn, body in zip(signs, bodies):
        body = body.strip()
        if body.startswith("-"):
            sgn, body = -sgn, body[1:]
        m = re.match(r"(\d+)\*(.*)", body)
        n = 1
        if m:
            n, body = int(m.group(1)), m.group(2)
        pairs.append((_parse_term(body), sgn * n))
    return GrothElement.from_terms(pairs)


__all__ = [
    "Segment",
    "segment_or_none",
    "gl_canonical",
    "JacQuery",
    "queries",
    "segment_queries",
    "commute",
    "normalize_prefix",
    "PiSymbol",
    "ExplicitIrr",
    "BaseSymbol",
    "Term",
    "make_term",
    "normalize_term",
    "GrothElement",
    "add",
    "scale",
    "equal",
    "induct",
    "total_sum",
    "render",
    "parse",
]
