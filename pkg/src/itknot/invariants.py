"""A_r/B_r, Euler characteristic, UTP classification and the tb/width recursion."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import prod
from typing import Optional

from .errors import InternalInvariantError, UnsupportedRegimeError
from .knots import IteratedTorusKnot, prefix


class Case(enum.Enum):
    BASE = "Base"
    CASE_I = "CaseI"
    CASE_II = "CaseII"


def _require_positive(k: IteratedTorusKnot, what: str) -> None:
    if not k.all_positive:
        bad = next(i for i, P in enumerate(k.big_p, start=1) if P <= 0)
        raise UnsupportedRegimeError(
            f"{what} is only established when every P_i > 0 (P_{bad} = {k.big_p[bad - 1]})"
        )


def compute_ab_recursive(k: IteratedTorusKnot) -> list[tuple[int, int]]:
    """Per-prefix ``(A_i, B_i)`` from ``A_0 = 0, B_0 = 1``."""
    out = []
    a, b = 0, 1
    for p, q in zip(k.small_p, k.qs):
        a = q * q * a + p * q
        b = q * b + p
        out.append((a, b))
    return out


def compute_ab_closed(k: IteratedTorusKnot) -> list[tuple[int, int]]:
    """Per-prefix ``(A_i, B_i)`` by direct summation over the cabling framing."""
    p, q = k.small_p, k.qs
    out = []
    for r in range(1, k.r + 1):
        a = sum(p[al] * prod(q[al + 1 : r]) * prod(q[al:r]) for al in range(r))
        b = sum(p[al] * prod(q[al + 1 : r]) for al in range(r)) + prod(q[:r])
        out.append((a, b))
    return out


def euler_characteristic(k: IteratedTorusKnot) -> int:
    """Euler characteristic of a minimal genus Seifert surface."""
    _require_positive(k, "the Euler characteristic recursion")
    (p1, q1) = k.big_p[0], k.qs[0]
    chi = -(p1 * q1 - p1 - q1)
    for P, q in zip(k.big_p[1:], k.qs[1:]):
        chi = q * chi - P * q + P
    a, b = compute_ab_recursive(k)[-1]
    if chi != -(a - b):
        raise InternalInvariantError(f"chi recursion gave {chi}, closed form {b - a}")
    return chi


def genus(k: IteratedTorusKnot) -> int:
    g2 = 1 - euler_characteristic(k)
    if g2 % 2:
        raise InternalInvariantError(f"Euler characteristic {1 - g2} is even")
    return g2 // 2


def fails_utp(k: IteratedTorusKnot) -> bool:
    return all(P > 0 for P in k.big_p)


def supports_standard_structure(k: IteratedTorusKnot) -> bool:
    """Whether the open book of ``k`` supports the standard contact structure."""
    return fails_utp(k)


@dataclass(frozen=True)
class WidthStep:
    tbbar: int
    width: int
    tbar: int
    case: Case


def width_tb_recursion(k: IteratedTorusKnot) -> list[WidthStep]:
    _require_positive(k, "the tb/width recursion")
    steps = []
    ab = compute_ab_recursive(k)
    w = None
    for i, ((a, b), P, q) in enumerate(zip(ab, k.big_p, k.qs)):
        if i == 0:
            w, case = a - b, Case.BASE
        else:
            # P/q against w as integers; equality is impossible since gcd(P, q) = 1.
            if P == q * w:
                raise InternalInvariantError(f"P_{i + 1}/q_{i + 1} equals the width {w}")
            if P > q * w:
                w, case = a - (P - q * w), Case.CASE_I
            else:
                w, case = a, Case.CASE_II
        tbar = w - a
        if not (0 < w <= a and -a < tbar <= 0):
            raise InternalInvariantError(f"width {w} outside (0, A_{i + 1} = {a}]")
        steps.append(WidthStep(tbbar=w, width=w, tbar=tbar, case=case))
    return steps


def max_self_linking(k: IteratedTorusKnot) -> int:
    return -euler_characteristic(k)


@dataclass(frozen=True)
class InvariantRow:
    i: int
    A: int
    B: int
    P: int
    p: int
    q: int
    chi: Optional[int] = None
    genus: Optional[int] = None
    tbbar: Optional[int] = None
    width: Optional[int] = None
    tbar: Optional[int] = None
    C: Optional[int] = None
    case: Optional[Case] = None


@dataclass(frozen=True)
class InvariantTable:
    rows: tuple[InvariantRow, ...]

    def __getitem__(self, i):
        return self.rows[i]

    def __len__(self):
        return len(self.rows)


def invariant_table(k: IteratedTorusKnot) -> InvariantTable:
    """Every per-prefix quantity.  Positive-only columns are None once some P_i <= 0."""
    from .solid_tori import thresholds

    ab = compute_ab_recursive(k)
    n_pos = 0
    while n_pos < k.r and k.big_p[n_pos] > 0:
        n_pos += 1
    steps, cs = [], []
    if n_pos:
        head = prefix(k, n_pos)
        steps = width_tb_recursion(head)
        cs = thresholds(head)
    rows = []
    for i in range(k.r):
        a, b = ab[i]
        extra = {}
        if i < n_pos:
            chi = euler_characteristic(prefix(k, i + 1))
            extra = dict(
                chi=chi,
                genus=(1 - chi) // 2,
                tbbar=steps[i].tbbar,
                width=steps[i].width,
                tbar=steps[i].tbar,
                C=cs[i].C,
                case=steps[i].case,
            )
        rows.append(
            InvariantRow(i=i + 1, A=a, B=b, P=k.big_p[i], p=k.small_p[i], q=k.qs[i], **extra)
        )
    return InvariantTable(tuple(rows))
