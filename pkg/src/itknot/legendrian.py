"""Legendrian and transverse bookkeeping for cables of positive iterated torus knots.

Only classical invariants are computed here.  Distinctness of the witness
pairs is a certified fact carried as a flag, never re-derived.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from math import gcd

from .errors import DomainError, InternalInvariantError, UnsupportedRegimeError
from .invariants import compute_ab_recursive
from .knots import CablingPair, Frame, IteratedTorusKnot
from .solid_tori import thresholds


@dataclass(frozen=True)
class LegendrianClass:
    tb: int
    rot: int
    label: str = ""


@dataclass(frozen=True)
class TransverseClass:
    sl: int
    label: str = ""


def _sign(sign) -> int:
    if sign in (1, "+"):
        return 1
    if sign in (-1, "-"):
        return -1
    raise DomainError(f"sign must be + or -, got {sign!r}")


def stabilize(L: LegendrianClass, sign) -> LegendrianClass:
    s = _sign(sign)
    return LegendrianClass(L.tb - 1, L.rot + s, L.label)


def destabilize(L: LegendrianClass, sign) -> LegendrianClass:
    s = _sign(sign)
    return LegendrianClass(L.tb + 1, L.rot - s, L.label)


def transverse_pushoff(L: LegendrianClass, sign) -> TransverseClass:
    """``sl(T_+-(L)) = tb(L) -+ rot(L)``."""
    s = _sign(sign)
    tag = "+" if s > 0 else "-"
    return TransverseClass(L.tb - s * L.rot, f"T_{tag}({L.label})" if L.label else "")


def ruling_rotation(P: int, q: int, rot_meridian: int, rot_longitude: int) -> int:
    """Rotation number of a ``(P, q)`` ruling from those of a meridian disc and Seifert surface."""
    return P * rot_meridian + q * rot_longitude


def _positive_ab(k: IteratedTorusKnot, what: str) -> tuple[int, int]:
    if not k.all_positive:
        raise UnsupportedRegimeError(f"{what} requires every P_i > 0")
    return compute_ab_recursive(k)[-1]


def mountain_range_slice(k: IteratedTorusKnot) -> list[LegendrianClass]:
    """The known points of the mountain range, ordered by tb descending then rot ascending."""
    a, b = _positive_ab(k, "the mountain range slice")
    r = k.r
    pts = [
        LegendrianClass(0, a - b, f"L_{r}^+"),
        LegendrianClass(0, -(a - b), f"L_{r}^-"),
    ]
    if r >= 2:
        P, q = k.big_p[-1], k.qs[-1]
        a_prev, b_prev = compute_ab_recursive(k)[-2]
        rot = q * (a_prev - b_prev)
        if rot != P - b:
            raise InternalInvariantError(f"ruling rotation {rot} != P_r - B_r = {P - b}")
        tb = a - P
        pts += [
            LegendrianClass(tb, rot, f"Ltilde_{r}^+"),
            LegendrianClass(tb, -rot, f"Ltilde_{r}^-"),
        ]
        # The chain down to L_r^+- must have positive length.
        if tb <= 0:
            raise InternalInvariantError(f"A_r - P_r = {tb} is not positive")
    return sorted(pts, key=lambda L: (-L.tb, L.rot))


def stabilization_chains(k: IteratedTorusKnot) -> list[LegendrianClass]:
    """Classes strictly between Ltilde^+- and L^+- on the two chains; empty for torus knots."""
    if k.r < 2:
        _positive_ab(k, "the stabilization chain")
        return []
    pts = {L.label: L for L in mountain_range_slice(k)}
    r = k.r
    out = []
    for tag in "+-":
        L = pts[f"Ltilde_{r}^{tag}"]
        end = pts[f"L_{r}^{tag}"]
        step = 0
        while L.tb > end.tb:
            L = stabilize(L, tag)
            step += 1
            if L.tb > end.tb:
                out.append(
                    LegendrianClass(L.tb, L.rot, f"S_{tag}^{step}(Ltilde_{r}^{tag})")
                )
        if (L.tb, L.rot) != (end.tb, end.rot):
            raise InternalInvariantError(f"chain from Ltilde_{r}^{tag} misses L_{r}^{tag}")
    return sorted(out, key=lambda L: (-L.tb, L.rot))


def in_cabling_window(a: int, b: int, k: int) -> bool:
    """``-1/(A-1) < -(k+1)/(Ak+B) < -1/A`` for positive knots, as ``k + 1 > A - B``."""
    return k + 1 > a - b


@dataclass(frozen=True)
class NonSimpleCabling:
    base: IteratedTorusKnot
    k: int
    cable_c: CablingPair
    cable_cprime: CablingPair
    tbbar: int
    rot: int
    slbar: int
    chi_cable: int

    @property
    def rot_pair(self) -> tuple[int, int]:
        return (self.rot, -self.rot)

    def cable_knot(self) -> IteratedTorusKnot:
        """The (r+1)-iterated knot in the preferred framing."""
        return IteratedTorusKnot(
            Frame.C, tuple(zip(self.base.big_p, self.base.qs)) + (tuple(self.cable_c),)
        )


def _cabling_record(base: IteratedTorusKnot, a: int, b: int, k: int) -> NonSimpleCabling:
    d = a - b
    return NonSimpleCabling(
        base=base,
        k=k,
        cable_c=CablingPair(d, k + 1),
        cable_cprime=CablingPair(-(a * k + b), k + 1),
        tbbar=(k + 1) * d,
        rot=k * d,
        slbar=(2 * k + 1) * d,
        chi_cable=-(2 * k + 1) * d,
    )


def enumerate_nonsimple_cablings(k: IteratedTorusKnot, k_max: int) -> list[NonSimpleCabling]:
    """Cables ``(A_r - B_r, k + 1)`` for ``k <= k_max`` certified transversally non-simple.

    A ``k`` qualifies when the cabling slope sits strictly between
    ``-1/(A_r - 1)`` and ``-1/A_r``, the torus ``N_r^k`` has two dividing
    curves, and ``k`` is at least the failure threshold ``C_r``.  The result
    is a sublist of the full family, never a superset.
    """
    a, b = _positive_ab(k, "non-simple cabling enumeration")
    if k_max < 1:
        raise DomainError(f"k_max must be at least 1, got {k_max}")
    c_r = thresholds(k)[-1].C
    d = a - b
    out = []
    for kk in range(max(1, c_r, d), k_max + 1):
        if not in_cabling_window(a, b, kk):
            continue
        if gcd(kk + 1, a * kk + b) != 1:
            continue
        out.append(_cabling_record(k, a, b, kk))
    return out


@dataclass(frozen=True)
class WitnessPairs:
    """Two Legendrian classes at each of ``(tbbar, +-rot)``.

    ``divides`` sit on the non-thickenable ``N_r^k``; ``thickenable`` sit on
    a torus of the same slope that thickens.  ``distinct`` is certified, not
    computed.
    """

    divides: tuple[LegendrianClass, LegendrianClass]
    thickenable: tuple[LegendrianClass, LegendrianClass]
    pushoffs: dict
    distinct: bool = True


def witness_pairs(c: NonSimpleCabling) -> WitnessPairs:
    r1 = c.base.r + 1
    k = c.k
    divides = (
        LegendrianClass(c.tbbar, c.rot, f"L_{r1}^+ (divide on N_{r1 - 1}^{k})"),
        LegendrianClass(c.tbbar, -c.rot, f"L_{r1}^- (divide on N_{r1 - 1}^{k})"),
    )
    thick = (
        LegendrianClass(c.tbbar, c.rot, f"Lhat_{r1}^+ (divide on thickenable Nhat_{r1 - 1})"),
        LegendrianClass(c.tbbar, -c.rot, f"Lhat_{r1}^- (divide on thickenable Nhat_{r1 - 1})"),
    )
    pushoffs = {}
    for L in divides + thick:
        name = L.label.split(" ")[0]
        pushoffs[name] = {
            "+": transverse_pushoff(L, "+").sl,
            "-": transverse_pushoff(L, "-").sl,
        }
    if pushoffs[f"L_{r1}^+"]["-"] != c.slbar or pushoffs[f"L_{r1}^-"]["+"] != c.slbar:
        raise InternalInvariantError("witness push-off does not reach the maximal self-linking")
    return WitnessPairs(divides=divides, thickenable=thick, pushoffs=pushoffs)


def tb_one_rotations(k: IteratedTorusKnot) -> list[int]:
    """Rotation numbers at ``tb = 1`` reachable by stabilizing known classes.

    For ``r >= 2`` the sources are the slice points ``Ltilde_r^+-``.  For a
    torus knot the source is the classical peak ``(A_1 - B_1, 0)``.
    """
    a, b = _positive_ab(k, "tb = 1 rotation numbers")
    if k.r == 1:
        sources = [(a - b, 0)]
    else:
        sources = [(L.tb, L.rot) for L in mountain_range_slice(k) if L.tb > 0]
    rots = set()
    for tb, rot in sources:
        n = tb - 1
        if n < 0:
            continue
        rots.update(rot + j for j in range(-n, n + 1, 2))
    return sorted(rots)


def rotation_numbers_at_width_boundary(c: NonSimpleCabling) -> set[int]:
    """Rotation numbers of divides on tori thickening to slope ``-1/(A_r - 1)``."""
    a, _ = compute_ab_recursive(c.base)[-1]
    p, q = c.cable_cprime
    out = set()
    for rl in tb_one_rotations(c.base):
        v = p + (a - 1) * q + q * rl
        out.update((v, -v))
    return out


SLICE_COLUMNS = ("tb", "rot", "label")


def points_to_tsv(points: list[LegendrianClass], render=str) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, delimiter="\t", lineterminator="\n")
    w.writerow(SLICE_COLUMNS)
    for L in points:
        w.writerow([render(str(L.tb)), render(str(L.rot)), L.label])
    return buf.getvalue()
