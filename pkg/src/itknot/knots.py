"""Iterated torus knots as validated cabling tuples.

A knot is stored in whichever framing it was given in, but the preferred
framing coefficients ``P_i`` are always computed at construction; every
other module reads them from :attr:`IteratedTorusKnot.big_p`.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

from .errors import DomainError, ParseError, ValidationError


class Frame(enum.Enum):
    C = "C"
    CPRIME = "C'"

    @classmethod
    def parse(cls, text: str) -> Frame:
        key = text.strip().replace("′", "'")
        if key in ("C", "c"):
            return cls.C
        if key in ("C'", "c'", "Cprime", "cprime", "Cp"):
            return cls.CPRIME
        raise ParseError(f"unknown frame {text!r}; expected C or Cprime")


@dataclass(frozen=True)
class CablingPair:
    first: int
    q: int

    def __iter__(self):
        return iter((self.first, self.q))

    def __str__(self):
        return f"({self.first},{self.q})"


def _check_pair(first: int, q: int, index: int) -> None:
    if q <= 1:
        raise ValidationError(f"has q = {q}; need q > 1", index)
    if first == 0:
        raise ValidationError("has first coordinate 0", index)
    if gcd(first, q) != 1:
        raise ValidationError("not coprime", index)


def _convert(firsts: Sequence[int], qs: Sequence[int], source: Frame) -> list[int]:
    """Map cabling coefficients into the other framing.

    Uses ``P_i = p_i + q_i A_{i-1}`` with ``A_{i-1} = P_{i-1} q_{i-1}`` and
    ``A_0 = 0``.
    """
    out = []
    a_prev = 0
    for first, q in zip(firsts, qs):
        if source is Frame.C:
            big = first
            out.append(first - q * a_prev)
        else:
            big = first + q * a_prev
            out.append(big)
        a_prev = big * q
    return out


@dataclass(frozen=True)
class IteratedTorusKnot:
    frame: Frame
    pairs: tuple[CablingPair, ...]
    big_p: tuple[int, ...] = field(init=False, repr=False, compare=False)
    small_p: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        pairs = tuple(CablingPair(int(a), int(b)) for a, b in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if not pairs:
            raise ValidationError("knot needs at least one cabling pair")
        for i, (first, q) in enumerate(pairs, start=1):
            _check_pair(first, q, i)
        if abs(pairs[0].first) <= 1:
            raise ValidationError("is a degenerate base; need |p_1| > 1", 1)
        firsts = [pr.first for pr in pairs]
        other = _convert(firsts, self.qs, self.frame)
        big, small = (firsts, other) if self.frame is Frame.C else (other, firsts)
        object.__setattr__(self, "big_p", tuple(big))
        object.__setattr__(self, "small_p", tuple(small))

    @property
    def r(self) -> int:
        return len(self.pairs)

    @property
    def qs(self) -> tuple[int, ...]:
        return tuple(pr.q for pr in self.pairs)

    @property
    def all_positive(self) -> bool:
        return all(P > 0 for P in self.big_p)

    def __len__(self):
        return self.r

    def __str__(self):
        return format_knot(self)


def validate(raw_pairs: Iterable[Sequence[int]], frame: Frame | str = Frame.C) -> IteratedTorusKnot:
    if isinstance(frame, str):
        frame = Frame.parse(frame)
    return IteratedTorusKnot(frame, tuple(tuple(p) for p in raw_pairs))


def to_frame(k: IteratedTorusKnot, target: Frame) -> IteratedTorusKnot:
    if target is k.frame:
        return k
    firsts = k.big_p if target is Frame.C else k.small_p
    return IteratedTorusKnot(target, tuple(zip(firsts, k.qs)))


def prefix(k: IteratedTorusKnot, i: int) -> IteratedTorusKnot:
    if not 1 <= i <= k.r:
        raise DomainError(f"prefix index {i} outside 1..{k.r}")
    return IteratedTorusKnot(k.frame, k.pairs[:i])


def format_knot(k: IteratedTorusKnot) -> str:
    return f"{k.frame.value}:" + ",".join(str(p) for p in k.pairs)


_KNOT_RE = re.compile(r"^(C'|C′|Cprime|C):(.*)$")
_PAIR_RE = re.compile(r"\(([+-]?\d+),([+-]?\d+)\)")


def parse_knot(text: str) -> IteratedTorusKnot:
    """Parse ``C:(2,3),(7,2)`` or ``C':(2,3),(-5,2)``; whitespace is ignored."""
    compact = re.sub(r"\s+", "", text)
    m = _KNOT_RE.match(compact)
    if not m:
        raise ParseError(f"cannot parse knot {text!r}; expected e.g. C:(2,3),(7,2)")
    frame = Frame.parse(m.group(1))
    body = m.group(2)
    pairs = _PAIR_RE.findall(body)
    if not pairs or ",".join(f"({a},{b})" for a, b in pairs) != body:
        raise ParseError(f"malformed pair list {body!r}")
    return validate([(int(a), int(b)) for a, b in pairs], frame)
