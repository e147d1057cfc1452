"""Brute-force verifiers.

Each oracle works on raw integer tuples with its own arithmetic and shares no
helper with the code it checks: cabling coefficients are converted with an
explicit inverse shear, ``A_r``/``B_r`` are literal term-by-term sums, and the
Euler characteristic comes from the Birman-Williams closed form.  Library
functions are reached through module attributes so a test can swap one out
and watch the corresponding check fail.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from . import invariants, knots, legendrian, solid_tori
from .errors import DomainError, ItkError, ParseError, UnsupportedRegimeError

Pair = tuple[int, int]


@dataclass
class OracleReport:
    check: str
    inputs: dict
    expected: object
    actual: object
    verdict: bool = field(init=False)

    def __post_init__(self):
        self.verdict = self.expected == self.actual

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "inputs": _stringify(self.inputs),
            "expected": _stringify(self.expected),
            "actual": _stringify(self.actual),
            "verdict": "pass" if self.verdict else "fail",
        }


def _stringify(x):
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _stringify(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_stringify(v) for v in x]
    return str(x)


def _raw(k) -> list[Pair]:
    if isinstance(k, knots.IteratedTorusKnot):
        return list(zip(k.small_p, k.qs))
    return [tuple(p) for p in k]


def _product(xs: Iterable[int]) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


def ab_by_summation(k) -> Pair:
    """``(A_r, B_r)`` as literal sums; ``k`` is a knot or a cabling-framing tuple.

    Empty products equal 1.
    """
    pairs = _raw(k)
    r = len(pairs)
    p = [pr[0] for pr in pairs]
    q = [pr[1] for pr in pairs]
    a = 0
    b = 0
    for al in range(r):
        tail_after = _product(q[be] for be in range(al + 1, r))
        tail_from = _product(q[be] for be in range(al, r))
        a += p[al] * tail_after * tail_from
        b += p[al] * tail_after
    b += _product(q)
    return a, b


def cprime_by_matrix(c_pairs: Sequence[Pair]) -> list[Pair]:
    """Preferred framing to cabling framing by applying ``[[1, -A], [0, 1]]`` to ``(P, q)``."""
    out: list[Pair] = []
    for big, q in c_pairs:
        a_prev = ab_by_summation(out)[0] if out else 0
        # (meridians, longitudes) = (P, q); inverse shear subtracts A * longitudes.
        m = ((1, -a_prev), (0, 1))
        mer = m[0][0] * big + m[0][1] * q
        lon = m[1][0] * big + m[1][1] * q
        out.append((mer, lon))
    return out


def c_by_matrix(cp_pairs: Sequence[Pair]) -> list[Pair]:
    out: list[Pair] = []
    for i, (small, q) in enumerate(cp_pairs):
        a_prev = ab_by_summation(cp_pairs[:i])[0] if i else 0
        out.append((small + a_prev * q, q))
    return out


def utp_by_sign_scan(cp_pairs: Sequence[Pair]) -> bool:
    """Fails the UTP iff every preferred-framing coefficient is positive."""
    for big, _ in c_by_matrix(cp_pairs):
        if big <= 0:
            return False
    return True


def chi_by_bw_formula(c_pairs: Sequence[Pair]) -> int:
    """Euler characteristic from the Birman-Williams closed form.

    Their cabling pair ``(p_i, q_i)`` is our ``(q_i, P_i)`` for ``i > 1``; the
    base pair enters symmetrically so its order does not matter.  Worked
    example for ``((2,3),(7,2))``: their pairs are ``(2,3),(2,7)`` and
    ``chi = 2*2 - [3*(2-1)*2 + 7*(2-1)] = 4 - 13 = -9``.
    """
    c_pairs = [tuple(p) for p in c_pairs]
    if any(big <= 0 for big, _ in c_pairs):
        raise UnsupportedRegimeError("closed-form chi needs every P_i > 0")
    bw = [c_pairs[0]] + [(q, big) for big, q in c_pairs[1:]]
    r = len(bw)
    chi = _product(p for p, _ in bw)
    for i, (p_i, q_i) in enumerate(bw):
        chi -= q_i * (p_i - 1) * _product(bw[j][0] for j in range(i + 1, r))
    return chi


def _euclid(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def gcd_reduction_check(a: int, b: int, k_range: Iterable[int]) -> OracleReport:
    """``gcd(k+1, A k + B) == gcd(k+1, A - B)`` on every ``k`` in range."""
    ks = list(k_range)
    brute = [_euclid(k + 1, a * k + b) for k in ks]
    reduced = [_euclid(k + 1, a - b) for k in ks]
    return OracleReport(
        "gcd_reduction", {"A": a, "B": b, "k": [ks[0], ks[-1]] if ks else []}, brute, reduced
    )


def _window_brute(a: int, b: int, k: int) -> bool:
    den = a * k + b
    if den <= 0 or a <= 1:
        return False
    s = Fraction(-(k + 1), den)
    return Fraction(-1, a - 1) < s < Fraction(-1, a)


def interval_membership_check(a: int, b: int, k_range: Iterable[int]) -> OracleReport:
    """Cross-multiplied window test against the ``k + 1 > A - B`` criterion used by the enumerator."""
    ks = list(k_range)
    brute = [_window_brute(a, b, k) for k in ks]
    crit = [legendrian.in_cabling_window(a, b, k) for k in ks]
    return OracleReport(
        "interval_membership",
        {"A": a, "B": b, "k": [ks[0], ks[-1]] if ks else []},
        brute,
        crit,
    )


def framing_roundtrip_check(tuples: Iterable[Sequence[Pair]]) -> list[OracleReport]:
    reports = []
    for c_pairs in tuples:
        c_pairs = [tuple(p) for p in c_pairs]
        k = knots.validate(c_pairs, knots.Frame.C)
        expected = cprime_by_matrix(c_pairs)
        kc = knots.to_frame(k, knots.Frame.CPRIME)
        actual = [tuple(p) for p in kc.pairs]
        back = [tuple(p) for p in knots.to_frame(kc, knots.Frame.C).pairs]
        reports.append(
            OracleReport(
                "framing_roundtrip",
                {"knot": knots.format_knot(k)},
                [expected, c_pairs],
                [actual, back],
            )
        )
    return reports


# ---------------------------------------------------------------------------
# sampling and the full verification run


@dataclass(frozen=True)
class Ranges:
    r: int = 4
    q: int = 5
    p: int = 9
    k: int = 100
    samples: int = 300
    seed: int = 0

    def as_dict(self) -> dict:
        return {
            "r": self.r,
            "q": self.q,
            "p": self.p,
            "k": self.k,
            "samples": self.samples,
            "seed": self.seed,
        }


_RANGE_RE = re.compile(r"^\s*(r|q|p|k|samples|seed)\s*(<=|=)\s*(\d+)\s*$")


def parse_ranges(text: str | None) -> Ranges:
    """Parse ``r<=5,q<=4,p<=9`` (also ``k<=``, ``samples=``, ``seed=``)."""
    if not text:
        return Ranges()
    vals = Ranges().as_dict()
    for part in text.split(","):
        m = _RANGE_RE.match(part)
        if not m:
            raise ParseError(f"bad range term {part!r}; expected e.g. r<=5")
        vals[m.group(1)] = int(m.group(3))
    rg = Ranges(**vals)
    if rg.r < 1 or rg.q < 2 or rg.p < 2 or rg.samples < 1:
        raise DomainError("ranges need r >= 1, q >= 2, p >= 2, samples >= 1")
    return rg


def random_cprime_tuple(rng: random.Random, r_max: int, q_max: int, p_max: int) -> list[Pair]:
    """Valid tuple in the cabling framing with coefficients of either sign."""
    r = rng.randint(1, r_max)
    out = []
    for i in range(r):
        q = rng.randint(2, q_max)
        while True:
            p = rng.randint(-p_max, p_max)
            if p != 0 and gcd(p, q) == 1 and (i or abs(p) > 1):
                break
        out.append((p, q))
    return out


def random_positive_c_tuple(rng: random.Random, r_max: int, q_max: int, p_max: int) -> list[Pair]:
    """Valid preferred-framing tuple with every ``P_i > 0``."""
    r = rng.randint(1, r_max)
    out = []
    for i in range(r):
        q = rng.randint(2, q_max)
        while True:
            big = rng.randint(1, p_max)
            if gcd(big, q) == 1 and (i or big > 1):
                break
        out.append((big, q))
    return out


@dataclass
class VerifyResult:
    ranges: Ranges
    reports: list[OracleReport]

    @property
    def ok(self) -> bool:
        return all(r.verdict for r in self.reports)

    def summary(self) -> dict:
        out: dict[str, dict[str, int]] = {}
        for r in self.reports:
            s = out.setdefault(r.check, {"pass": 0, "fail": 0})
            s["pass" if r.verdict else "fail"] += 1
        return out

    def failures(self) -> list[OracleReport]:
        return [r for r in self.reports if not r.verdict]


def _guarded(check: str, inputs: dict, expected_fn, actual_fn) -> OracleReport:
    # A library error inside one check becomes a failing report for that
    # check; the rest of the run still executes.
    try:
        expected = expected_fn()
    except ItkError as e:
        return OracleReport(check, inputs, f"oracle error: {e}", None)
    try:
        actual = actual_fn()
    except ItkError as e:
        actual = f"{type(e).__name__}: {e}"
    return OracleReport(check, inputs, expected, actual)


def run_verify(ranges: Ranges | None = None) -> VerifyResult:
    rg = ranges or Ranges()
    rng = random.Random(rg.seed)
    reports: list[OracleReport] = []
    ks = range(0, rg.k + 1)

    for _ in range(rg.samples):
        cp = random_cprime_tuple(rng, rg.r, rg.q, rg.p)
        k = knots.validate(cp, knots.Frame.CPRIME)
        inp = {"knot": knots.format_knot(k)}
        reports.append(
            _guarded(
                "ab_summation",
                inp,
                lambda: [ab_by_summation(cp)] * 2,
                lambda: [invariants.compute_ab_recursive(k)[-1], invariants.compute_ab_closed(k)[-1]],
            )
        )
        reports.append(
            _guarded("utp_sign_scan", inp, lambda: utp_by_sign_scan(cp), lambda: invariants.fails_utp(k))
        )

    positives = [random_positive_c_tuple(rng, rg.r, rg.q, rg.p) for _ in range(rg.samples)]
    mixed = [c_by_matrix(random_cprime_tuple(rng, rg.r, rg.q, rg.p)) for _ in range(rg.samples)]
    for c_pairs in positives + mixed:
        try:
            reports.extend(framing_roundtrip_check([c_pairs]))
        except ItkError as e:
            reports.append(OracleReport("framing_roundtrip", {"knot": str(c_pairs)}, c_pairs, str(e)))

    for cpos in positives:
        k = knots.validate(cpos, knots.Frame.C)
        inp = {"knot": knots.format_knot(k)}
        a, b = ab_by_summation(cprime_by_matrix(cpos))
        reports.append(
            _guarded(
                "chi_bw",
                inp,
                lambda: [chi_by_bw_formula(cpos)] * 2,
                lambda: [invariants.euler_characteristic(k), b - a],
            )
        )
        reports.append(gcd_reduction_check(a, b, ks))
        reports.append(
            _guarded(
                "dividing_curves",
                {**inp, "k": [0, rg.k]},
                lambda: [2 * _euclid(kk + 1, a * kk + b) for kk in ks],
                lambda: _library_dividing_curves(k, ks),
            )
        )
        reports.append(interval_membership_check(a, b, ks))
    return VerifyResult(rg, reports)


def _library_dividing_curves(k, ks) -> list[int]:
    tables = (invariants.compute_ab_recursive(k), solid_tori.thresholds(k))
    return [solid_tori.torus_class(k, k.r, kk, _tables=tables).dividing_curves for kk in ks]
