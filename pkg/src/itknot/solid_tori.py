"""Candidate non-thickenable solid tori N_r^k and the edge-rounding slope pipeline.

``N_r^k`` has intersection boundary slope ``-(k+1)/(A_r k + B_r)`` in the
cabling framing.  The catalog reports the sufficiency thresholds ``C_r``;
nothing here claims those thresholds are minimal.
"""

from __future__ import annotations

import csv
import enum
import io
import json
from dataclasses import dataclass
from math import gcd
from typing import Optional

from .errors import DomainError, InternalInvariantError, UnsupportedRegimeError
from .invariants import Case, compute_ab_recursive, width_tb_recursion
from .knots import Frame, IteratedTorusKnot, to_frame
from .slopes import (
    Slope,
    UnimodularMap,
    UnreducedSlope,
    apply_map,
    bezout_complement,
    geometric_intersection,
)


class TorusStatus(enum.Enum):
    YES = "Yes"
    STANDARD_NEIGHBORHOOD = "StandardNeighborhood"
    BELOW_THRESHOLD = "BelowThreshold"


class ThresholdRule(enum.Enum):
    TORUS_KNOT_BASE = "TorusKnotBase"
    CASE_I = "CaseI"
    CASE_II = "CaseII"


@dataclass(frozen=True)
class TorusClass:
    r: int
    k: int
    slope_cprime: UnreducedSlope
    slope_c: UnreducedSlope
    n: int
    dividing_curves: int
    status: TorusStatus


@dataclass(frozen=True)
class ThresholdRow:
    C: int
    rule: ThresholdRule


def _require_positive(k: IteratedTorusKnot) -> None:
    if not k.all_positive:
        raise UnsupportedRegimeError(
            "solid torus catalog requires every P_i > 0 (knot satisfies the UTP)"
        )


def _check_index(k: IteratedTorusKnot, i: int) -> None:
    if not 1 <= i <= k.r:
        raise DomainError(f"prefix index {i} outside 1..{k.r}")


def thresholds(k: IteratedTorusKnot) -> list[ThresholdRow]:
    """Sufficiency thresholds: ``N_i^k`` exists and fails to thicken for ``k >= C_i``."""
    _require_positive(k)
    ab = compute_ab_recursive(k)
    steps = width_tb_recursion(k)
    rows = [ThresholdRow(0, ThresholdRule.TORUS_KNOT_BASE)]
    for i in range(1, k.r):
        q, p = k.qs[i], k.small_p[i]
        a_prev, b_prev = ab[i - 1]
        c_prev = rows[-1].C
        kp = max(1, -(-c_prev // q))
        if steps[i].case is Case.CASE_I:
            rows.append(ThresholdRow(kp, ThresholdRule.CASE_I))
            continue
        # q(A k + B) + p(k + 1) with k = k'q is A_i k' + B_i, increasing in k'.
        a_i, b_i = ab[i]
        kp = max(kp, (-b_i) // a_i + 1)
        kk = kp * q
        if q * (a_prev * kk + b_prev) + p * (kk + 1) <= 0:
            raise InternalInvariantError(f"Case II threshold {kp} fails its slope condition")
        rows.append(ThresholdRow(kp, ThresholdRule.CASE_II))
    return rows


def torus_class(
    k: IteratedTorusKnot, i: int, kk: int, *, _tables=None
) -> TorusClass:
    """Catalog entry for ``N_i^kk``."""
    _require_positive(k)
    _check_index(k, i)
    if kk < 0:
        raise DomainError(f"k must be nonnegative, got {kk}")
    ab, cs = _tables if _tables is not None else (compute_ab_recursive(k), thresholds(k))
    a, b = ab[i - 1]
    cprime = UnreducedSlope(-(kk + 1), a * kk + b)
    c = apply_map(UnimodularMap.shear(a), cprime)
    n = gcd(kk + 1, a * kk + b)
    if c.multiplicity != n:
        raise InternalInvariantError("framing change altered the dividing-curve count")
    if kk == 0:
        status = TorusStatus.STANDARD_NEIGHBORHOOD
    elif kk >= cs[i - 1].C:
        status = TorusStatus.YES
    else:
        status = TorusStatus.BELOW_THRESHOLD
    return TorusClass(
        r=i, k=kk, slope_cprime=cprime, slope_c=c, n=n, dividing_curves=2 * n, status=status
    )


def catalog(k: IteratedTorusKnot, i: Optional[int] = None, k_max: int = 10) -> list[TorusClass]:
    _require_positive(k)
    i = k.r if i is None else i
    _check_index(k, i)
    tables = (compute_ab_recursive(k), thresholds(k))
    return [torus_class(k, i, kk, _tables=tables) for kk in range(k_max + 1)]


def slope_sequence(
    k: IteratedTorusKnot, i: int, k_max: int, k_min: int = 1
) -> list[Slope]:
    """Slopes of ``N_i^k`` for ``k_min <= k <= k_max``, strictly increasing toward ``-1/A_i``."""
    _require_positive(k)
    _check_index(k, i)
    a, b = compute_ab_recursive(k)[i - 1]
    out = []
    for kk in range(k_min, k_max + 1):
        den = a * kk + b
        if den <= 0:
            raise DomainError(f"denominator A_{i}*{kk} + B_{i} = {den} is not positive")
        s = Slope(-(kk + 1), den)
        if out and not out[-1] < s:
            raise InternalInvariantError(f"slope sequence not increasing at k = {kk}")
        if not s < Slope(-1, a):
            raise InternalInvariantError(f"slope {s} not below -1/{a}")
        out.append(s)
    return out


@dataclass(frozen=True)
class EdgeRounding:
    """Every intermediate of the edge-rounding computation for ``N_{r+1}``."""

    k_prime: int
    m: int
    intersection_outer: int
    intersection_inner: int
    bezout: tuple[int, int]
    slope_nrk_cpp: UnreducedSlope
    slope_nlr_cpp: UnreducedSlope
    result_cprime: UnreducedSlope

    @property
    def closed_form(self) -> UnreducedSlope:
        return UnreducedSlope(-(self.k_prime + 1), self.slope_nrk_cpp.meridians)


def edge_rounding_slope(
    k: IteratedTorusKnot, kk: int, bezout: Optional[tuple[int, int]] = None
) -> EdgeRounding:
    """Boundary slope of the solid torus rebuilt around ``N_r^kk`` and ``N(L_r)``.

    ``k`` is the (r+1)-iterated knot; the last pair is the cable being
    studied, and ``kk`` must be a positive multiple of its ``q``.
    """
    if k.r < 2:
        raise DomainError("edge rounding needs a knot with at least two cablings")
    _require_positive(k)
    kc = to_frame(k, Frame.CPRIME)
    p, q = kc.pairs[-1]
    a, b = compute_ab_recursive(kc)[-2]
    if kk <= 0 or kk % q:
        raise DomainError(f"k = {kk} is not a positive multiple of q = {q}")
    kp = kk // q
    # Both edges of the annulus must meet the dividing set equally often.
    outer = p * (kk + 1) + q * (a * kk + b)
    if outer <= 0:
        raise DomainError(
            f"cabling slope {q}/{p} is not below the N_r^{kk} slope; edge rounding does not apply"
        )
    m, rem = divmod(outer - p, q)
    if rem:
        raise InternalInvariantError("twisting m is not an integer")
    gamma_nrk = UnreducedSlope(-(kk + 1), a * kk + b)
    gamma_nlr = UnreducedSlope(-1, m)
    cable = UnreducedSlope(q, p)
    inner = geometric_intersection(cable, gamma_nlr)
    if inner != geometric_intersection(cable, gamma_nrk) or inner != outer:
        raise InternalInvariantError("intersection balance failed")

    pp, qq = bezout if bezout is not None else bezout_complement(p, q)
    if p * qq - pp * q != 1:
        raise DomainError(f"({pp}, {qq}) is not a Bezout complement of ({p}, {q})")
    # Sends (p, q) to the meridian (0, 1)-curve and (p', q') to (-1, 0).
    to_cpp = UnimodularMap(q, -p, qq, -pp)
    s8 = _raw_map(to_cpp, a * kk + b, -(kk + 1))
    s9 = _raw_map(to_cpp, m, -1)
    if s8[1] != s9[1] or s8[1] != outer:
        raise InternalInvariantError("C'' denominators disagree")
    result = UnreducedSlope(s8[0] - s9[0] - 1, outer)
    return EdgeRounding(
        k_prime=kp,
        m=m,
        intersection_outer=outer,
        intersection_inner=inner,
        bezout=(pp, qq),
        slope_nrk_cpp=UnreducedSlope(*s8),
        slope_nlr_cpp=UnreducedSlope(*s9),
        result_cprime=result,
    )


def _raw_map(m: UnimodularMap, mu: int, lam: int) -> tuple[int, int]:
    # Raw vectors, not UnreducedSlope: the two dividing sets must share the
    # denominator ``outer`` before they are subtracted, so no sign flips here.
    return m.c * mu + m.d * lam, m.a * mu + m.b * lam


TSV_COLUMNS = ("r", "k", "slope_cprime", "slope_c", "n", "dividing_curves", "status")


def row_fields(t: TorusClass) -> dict:
    return {
        "r": str(t.r),
        "k": str(t.k),
        "slope_cprime": str(t.slope_cprime),
        "slope_c": str(t.slope_c),
        "n": str(t.n),
        "dividing_curves": str(t.dividing_curves),
        "status": t.status.value,
    }


def rows_to_json(rows: list[TorusClass]) -> str:
    return json.dumps([row_fields(t) for t in rows], indent=2)


def rows_to_tsv(rows: list[TorusClass], render=str) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, delimiter="\t", lineterminator="\n")
    w.writerow(TSV_COLUMNS)
    for t in rows:
        f = row_fields(t)
        w.writerow([render(f[c]) for c in TSV_COLUMNS])
    return buf.getvalue()
