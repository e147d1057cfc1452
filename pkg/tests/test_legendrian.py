import random

import pytest
from hypothesis import given, settings, strategies as st

from itknot import Frame, validate
from itknot.errors import DomainError, UnsupportedRegimeError
from itknot.invariants import compute_ab_recursive, euler_characteristic, max_self_linking
from itknot.knots import to_frame
from itknot.legendrian import (
    LegendrianClass,
    destabilize,
    enumerate_nonsimple_cablings,
    mountain_range_slice,
    points_to_tsv,
    rotation_numbers_at_width_boundary,
    ruling_rotation,
    stabilization_chains,
    stabilize,
    tb_one_rotations,
    transverse_pushoff,
    witness_pairs,
)
from itknot.oracle import random_positive_c_tuple
from itknot.slopes import Slope
from itknot.solid_tori import thresholds, torus_class

from conftest import positive_knots

K23 = validate([(2, 3)])
K2372 = validate([(2, 3), (7, 2)])
K3452 = validate([(3, 4), (5, 2)])


def tb_rot(points):
    return [(L.tb, L.rot) for L in points]


def test_stabilize_examples():
    L = LegendrianClass(7, 2)
    for _ in range(7):
        L = stabilize(L, "+")
    assert (L.tb, L.rot) == (0, 9)
    assert tb_rot([stabilize(LegendrianClass(0, -1), "-")]) == [(-1, -2)]
    with pytest.raises(DomainError):
        stabilize(L, "x")


def test_pushoff_examples():
    assert transverse_pushoff(LegendrianClass(7, 2), "-").sl == 9
    assert transverse_pushoff(LegendrianClass(0, 0), "+").sl == 0
    assert transverse_pushoff(LegendrianClass(0, 0), "-").sl == 0
    assert transverse_pushoff(LegendrianClass(5, -10), "+").sl == 15


def test_ruling_rotation():
    assert ruling_rotation(5, 3, 0, 0) == 0
    # Base ruling: meridian disc rot q1*k, Seifert surface rot 0.
    p1, q1, k = 2, 3, 4
    assert ruling_rotation(p1, q1, q1 * k, 0) == p1 * q1 * k
    d, kk = 9, 5
    assert ruling_rotation(d, kk + 1, kk, 0) == kk * d


def test_slice_examples():
    assert tb_rot(mountain_range_slice(K23)) == [(0, -1), (0, 1)]
    assert tb_rot(mountain_range_slice(K2372)) == [(7, -2), (7, 2), (0, -9), (0, 9)]
    assert tb_rot(mountain_range_slice(K3452)) == [(5, -10), (5, 10), (0, -15), (0, 15)]
    with pytest.raises(UnsupportedRegimeError):
        mountain_range_slice(validate([(-2, 3)]))


def test_slice_tsv_deterministic():
    a = points_to_tsv(mountain_range_slice(K2372))
    assert a == points_to_tsv(mountain_range_slice(K2372))
    assert a.splitlines()[0] == "tb\trot\tlabel"


def test_chains():
    assert stabilization_chains(K23) == []
    ch = stabilization_chains(K2372)
    assert len(ch) == 12
    assert (6, 3) in tb_rot(ch) and (1, -8) in tb_rot(ch)


def test_cabling_examples():
    cabs = enumerate_nonsimple_cablings(K23, 3)
    assert [c.k for c in cabs] == [1, 2, 3]
    assert [tuple(c.cable_c) for c in cabs] == [(1, 2), (1, 3), (1, 4)]
    c = cabs[0]
    assert (c.tbbar, c.rot_pair, c.slbar, c.chi_cable) == (2, (1, -1), 3, -3)

    cabs = enumerate_nonsimple_cablings(K2372, 12)
    assert [c.k for c in cabs] == [9, 10, 12]
    c = cabs[0]
    assert tuple(c.cable_c) == (9, 10)
    assert (c.tbbar, c.rot_pair, c.slbar) == (90, (81, -81), 171)
    assert enumerate_nonsimple_cablings(K2372, 8) == []
    with pytest.raises(DomainError):
        enumerate_nonsimple_cablings(K23, 0)


def test_witness_examples():
    c = enumerate_nonsimple_cablings(K23, 1)[0]
    w = witness_pairs(c)
    assert tb_rot(w.divides) == [(2, 1), (2, -1)] == tb_rot(w.thickenable)
    assert w.pushoffs["L_2^+"]["-"] == 3 == -euler_characteristic(c.cable_knot())
    assert w.distinct
    # Mirror labels.
    assert w.divides[0].label.replace("^+", "^-") == w.divides[1].label

    c = enumerate_nonsimple_cablings(K2372, 9)[0]
    w = witness_pairs(c)
    assert tb_rot(w.divides) == [(90, 81), (90, -81)]
    assert c.slbar == 171 == -euler_characteristic(c.cable_knot())


def test_width_boundary_rotations():
    c = enumerate_nonsimple_cablings(K23, 1)[0]
    assert tuple(c.cable_cprime) == (-11, 2)
    assert rotation_numbers_at_width_boundary(c) == {1, -1}
    c = enumerate_nonsimple_cablings(K2372, 9)[0]
    out = rotation_numbers_at_width_boundary(c)
    assert 81 in out and -81 in out
    assert tb_one_rotations(K23) == [0]


@given(st.integers(-50, 50), st.integers(-50, 50), st.sampled_from("+-"))
def test_stabilize_destabilize(tb, rot, s):
    L = LegendrianClass(tb, rot)
    assert destabilize(stabilize(L, s), s) == L


@given(st.integers(-50, 50), st.integers(-50, 50), st.sampled_from("+-"))
def test_pushoff_invariant_under_opposite_stabilization(tb, rot, s):
    L = LegendrianClass(tb, rot)
    opp = "-" if s == "+" else "+"
    assert transverse_pushoff(stabilize(L, opp), s).sl == transverse_pushoff(L, s).sl


@settings(max_examples=100, deadline=None)
@given(positive_knots())
def test_slice_pushoffs_reach_max_self_linking(k):
    pts = {L.label: L for L in mountain_range_slice(k)}
    r = k.r
    sl = max_self_linking(k)
    assert transverse_pushoff(pts[f"L_{r}^+"], "-").sl == sl
    if r >= 2:
        assert transverse_pushoff(pts[f"Ltilde_{r}^+"], "-").sl == sl
        assert transverse_pushoff(pts[f"Ltilde_{r}^-"], "+").sl == sl
    for L in pts.values():
        assert L.tb + abs(L.rot) <= sl


@settings(max_examples=60, deadline=None)
@given(positive_knots(r_max=3, p_max=15))
def test_cablings_consistent_across_modules(k):
    a, b = compute_ab_recursive(k)[-1]
    cabs = enumerate_nonsimple_cablings(k, (a - b) + 12)
    for c in cabs:
        lo, hi = Slope(-1, a - 1) if a > 1 else None, Slope(-1, a)
        s = Slope(-(c.k + 1), a * c.k + b)
        assert s < hi and (lo is None or lo < s)
        assert torus_class(k, k.r, c.k).dividing_curves == 2
        ck = c.cable_knot()
        assert compute_ab_recursive(ck)[-1][0] == c.tbbar
        assert -euler_characteristic(ck) == c.slbar == -c.chi_cable
        assert c.slbar == c.tbbar + c.rot
        assert tuple(to_frame(ck, Frame.CPRIME).pairs[-1]) == tuple(c.cable_cprime)
        assert set(c.rot_pair) <= rotation_numbers_at_width_boundary(c)


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def test_family_unbounded_bertrand():
    # A prime k+1 in (d, 2d] with d = A - B is coprime to d, so it qualifies
    # once k also clears C_r.
    rng = random.Random(7)
    for _ in range(50):
        k = validate(random_positive_c_tuple(rng, 4, 5, 15), Frame.C)
        a, b = compute_ab_recursive(k)[-1]
        d = a - b
        lo = max(d, thresholds(k)[-1].C, 1)
        bound = 2 * lo + 2
        primes = [n - 1 for n in range(lo + 1, bound + 1) if _is_prime(n) and n - 1 >= lo]
        assert primes, (k, lo)
        found = {c.k for c in enumerate_nonsimple_cablings(k, bound)}
        assert set(primes) <= found
