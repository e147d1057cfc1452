"""Exact slope arithmetic on a torus.

A slope is written longitudes over meridians.  Curves are treated as column
vectors ``(meridians, longitudes)`` when a change of basis acts on them, so the
shear taking the cabling framing to the preferred framing of a knot with
cabling product ``n = P*q`` is ``[[1, n], [0, 1]]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DomainError, InvalidSlopeError, ParseError


def _normalise_sign(lam: int, mu: int) -> tuple[int, int]:
    if mu < 0 or (mu == 0 and lam < 0):
        return -lam, -mu
    return lam, mu


@dataclass(frozen=True)
class Slope:
    """Reduced slope ``longitudes/meridians``; ``Slope(1, 0)`` is infinity.

    The constructor reduces and fixes the sign, much like ``Fraction``, so any
    nonzero integer pair is accepted.
    """

    longitudes: int
    meridians: int

    def __post_init__(self):
        lam, mu = int(self.longitudes), int(self.meridians)
        if lam == 0 and mu == 0:
            raise InvalidSlopeError("slope 0/0 is undefined")
        g = gcd(lam, mu)
        lam, mu = _normalise_sign(lam // g, mu // g)
        object.__setattr__(self, "longitudes", lam)
        object.__setattr__(self, "meridians", mu)

    @classmethod
    def infinity(cls) -> Slope:
        return cls(1, 0)

    @property
    def is_infinite(self) -> bool:
        return self.meridians == 0

    def as_fraction(self) -> Fraction:
        if self.is_infinite:
            raise DomainError("infinite slope has no rational value")
        return Fraction(self.longitudes, self.meridians)

    def _cmp_key(self, other: Slope) -> tuple[int, int]:
        if not isinstance(other, Slope):
            return NotImplemented
        if self.is_infinite or other.is_infinite:
            raise DomainError("slopes are ordered only on the affine line; got inf")
        # meridians > 0 on both sides, so one cross-multiplication decides.
        return self.longitudes * other.meridians, other.longitudes * self.meridians

    def __lt__(self, other):
        a, b = self._cmp_key(other)
        return a < b

    def __le__(self, other):
        a, b = self._cmp_key(other)
        return a <= b

    def __gt__(self, other):
        a, b = self._cmp_key(other)
        return a > b

    def __ge__(self, other):
        a, b = self._cmp_key(other)
        return a >= b

    def __str__(self):
        return format_slope(self)


@dataclass(frozen=True)
class UnreducedSlope:
    """Slope that remembers its common factor.

    Used for intersection boundary slopes, where ``multiplicity`` is half the
    number of dividing curves.  Only the sign is normalised.
    """

    longitudes: int
    meridians: int

    def __post_init__(self):
        lam, mu = int(self.longitudes), int(self.meridians)
        if lam == 0 and mu == 0:
            raise InvalidSlopeError("slope 0/0 is undefined")
        lam, mu = _normalise_sign(lam, mu)
        object.__setattr__(self, "longitudes", lam)
        object.__setattr__(self, "meridians", mu)

    @property
    def multiplicity(self) -> int:
        return gcd(self.longitudes, self.meridians)

    def reduced(self) -> Slope:
        return Slope(self.longitudes, self.meridians)

    def __str__(self):
        return f"{self.longitudes}/{self.meridians}"


@dataclass(frozen=True)
class UnimodularMap:
    """2x2 integer matrix ``[[a, b], [c, d]]`` with determinant +-1."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.det not in (1, -1):
            raise DomainError(f"matrix {self.rows} is not unimodular (det {self.det})")

    @classmethod
    def shear(cls, n: int) -> UnimodularMap:
        """Cabling framing to preferred framing for a knot with ``P*q = n``."""
        return cls(1, n, 0, 1)

    @classmethod
    def identity(cls) -> UnimodularMap:
        return cls(1, 0, 0, 1)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def rows(self):
        return ((self.a, self.b), (self.c, self.d))

    def inverse(self) -> UnimodularMap:
        e = self.det
        return UnimodularMap(e * self.d, -e * self.b, -e * self.c, e * self.a)

    def __matmul__(self, other: UnimodularMap) -> UnimodularMap:
        return UnimodularMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )


def reduce(s: UnreducedSlope) -> tuple[Slope, int]:
    """Return the reduced slope together with the stripped common factor."""
    return s.reduced(), s.multiplicity


def apply_map(m: UnimodularMap, s):
    """Transform ``s`` as the column vector (meridians, longitudes).

    Returns the same kind as the input; multiplicity is preserved for
    unreduced slopes because ``m`` is invertible over the integers.
    """
    mu = m.a * s.meridians + m.b * s.longitudes
    lam = m.c * s.meridians + m.d * s.longitudes
    return type(s)(lam, mu)


def geometric_intersection(s1, s2) -> int:
    """``|lam1*mu2 - lam2*mu1|``.  Accepts reduced or unreduced slopes."""
    return abs(s1.longitudes * s2.meridians - s2.longitudes * s1.meridians)


def farey_adjacent(s1: Slope, s2: Slope) -> bool:
    return geometric_intersection(s1, s2) == 1


def farey_mediant(s1: Slope, s2: Slope) -> Slope:
    if not farey_adjacent(s1, s2):
        raise DomainError(f"{s1} and {s2} are not Farey neighbours")
    # Canonical representatives have meridians >= 0, which picks the arc
    # through the finite slopes between them.
    return Slope(s1.longitudes + s2.longitudes, s1.meridians + s2.meridians)


def bezout_complement(p: int, q: int) -> tuple[int, int]:
    """Return ``(p', q')`` with ``p*q' - p'*q == 1``.

    Normalised by ``0 <= q' < q`` when ``q > 1``; for ``q == 1`` the pair is
    ``(p - 1, 1)``.
    """
    if q < 1:
        raise DomainError(f"q must be positive, got {q}")
    if gcd(p, q) != 1:
        raise DomainError(f"({p}, {q}) is not a coprime pair")
    if q == 1:
        return p - 1, 1
    qq = pow(p, -1, q)
    pp, rem = divmod(p * qq - 1, q)
    assert rem == 0
    return pp, qq


def format_slope(s: Slope) -> str:
    if s.is_infinite:
        return "inf"
    if s.longitudes == 0:
        return "0"
    return f"{s.longitudes}/{s.meridians}"


_SLOPE_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+)\s*)?$")


def _parse_pair(text: str) -> tuple[int, int]:
    if text.strip().lower() in ("inf", "infinity", "∞"):
        return 1, 0
    m = _SLOPE_RE.match(text)
    if not m:
        raise ParseError(f"cannot parse slope {text!r}")
    lam = int(m.group(1))
    mu = int(m.group(2)) if m.group(2) is not None else 1
    return lam, mu


def parse_slope(text: str) -> Slope:
    return Slope(*_parse_pair(text))


def parse_unreduced(text: str) -> UnreducedSlope:
    return UnreducedSlope(*_parse_pair(text))
