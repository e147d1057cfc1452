from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from itknot.errors import DomainError, InvalidSlopeError, ParseError
from itknot.slopes import (
    Slope,
    UnimodularMap,
    UnreducedSlope,
    apply_map,
    bezout_complement,
    farey_adjacent,
    farey_mediant,
    format_slope,
    geometric_intersection,
    parse_slope,
    parse_unreduced,
    reduce,
)

small = st.integers(-40, 40)
nonzero_pairs = st.tuples(small, small).filter(lambda t: t != (0, 0))


@st.composite
def unimodular(draw):
    # Products of elementary shears and the swap generate GL(2, Z).
    m = UnimodularMap.identity()
    for _ in range(draw(st.integers(0, 4))):
        kind = draw(st.sampled_from("uls"))
        n = draw(st.integers(-5, 5))
        g = {
            "u": UnimodularMap(1, n, 0, 1),
            "l": UnimodularMap(1, 0, n, 1),
            "s": UnimodularMap(0, 1, 1, 0),
        }[kind]
        m = m @ g
    return m


def test_reduce_examples():
    assert reduce(UnreducedSlope(-3, 33)) == (Slope(-1, 11), 3)
    assert reduce(UnreducedSlope(5, 1)) == (Slope(5, 1), 1)
    s, n = reduce(UnreducedSlope(2, 0))
    assert s.is_infinite and n == 2


def test_zero_zero_rejected():
    with pytest.raises(InvalidSlopeError):
        Slope(0, 0)
    with pytest.raises(InvalidSlopeError):
        UnreducedSlope(0, 0)


def test_canonical_sign():
    assert Slope(2, -5) == Slope(-2, 5)
    assert Slope(-1, 0) == Slope.infinity()
    assert Slope(0, -7) == Slope(0, 1)


def test_cprime_to_c_on_ntk():
    # N_1^1 of (2,3): A = 6, B = 5.
    a, b, k = 6, 5, 1
    s = apply_map(UnimodularMap.shear(a), UnreducedSlope(-(k + 1), a * k + b))
    assert str(s) == "2/1"
    assert s.reduced() == Slope(k + 1, a - b)


def test_identity_map():
    s = Slope(-2, 11)
    assert apply_map(UnimodularMap.identity(), s) == s


def test_non_unimodular_rejected():
    with pytest.raises(DomainError):
        UnimodularMap(2, 0, 0, 1)


def test_intersection_examples():
    assert geometric_intersection(Slope(2, -5), Slope(-1, 12)) == 19
    assert geometric_intersection(Slope(3, 7), Slope(3, 7)) == 0
    assert geometric_intersection(Slope(0, 1), Slope.infinity()) == 1


def test_farey_examples():
    assert farey_adjacent(Slope(0, 1), Slope(1, 0))
    assert farey_adjacent(Slope(-2, 11), Slope(-1, 6))
    assert farey_adjacent(Slope(-2, 11), Slope(-1, 5))
    assert not farey_adjacent(Slope(-1, 5), Slope(-1, 7))
    assert farey_mediant(Slope(-1, 5), Slope(-1, 6)) == Slope(-2, 11)
    assert farey_mediant(Slope(0, 1), Slope(1, 0)) == Slope(1, 1)
    with pytest.raises(DomainError):
        farey_mediant(Slope(-1, 5), Slope(-1, 7))


def test_mediant_strictly_between():
    lo, hi = Slope(-1, 5), Slope(-1, 6)
    m = farey_mediant(lo, hi)
    assert lo < m < hi


def test_bezout_examples():
    assert bezout_complement(-5, 2) == (-3, 1)
    assert bezout_complement(-19, 2) == (-10, 1)
    assert bezout_complement(1, 1) == (0, 1)
    assert bezout_complement(7, 1) == (6, 1)
    with pytest.raises(DomainError):
        bezout_complement(4, 6)


def test_comparison_refuses_infinity():
    with pytest.raises(DomainError):
        Slope(1, 2) < Slope.infinity()


def test_format_and_parse():
    assert format_slope(Slope.infinity()) == "inf"
    assert format_slope(Slope(0, 3)) == "0"
    assert format_slope(Slope(-3, 33)) == "-1/11"
    assert parse_slope("-1/11") == Slope(-1, 11)
    assert parse_slope("inf").is_infinite
    assert parse_slope("4") == Slope(4, 1)
    assert parse_unreduced("-3/33").multiplicity == 3
    with pytest.raises(ParseError):
        parse_slope("1/2/3")


@given(nonzero_pairs)
def test_parse_inverts_format(t):
    s = Slope(*t)
    assert parse_slope(format_slope(s)) == s


@given(nonzero_pairs, unimodular())
def test_apply_map_inverse_roundtrip(t, m):
    s = UnreducedSlope(*t)
    back = apply_map(m.inverse(), apply_map(m, s))
    assert back == s
    assert apply_map(m, s).multiplicity == s.multiplicity
    r = Slope(*t)
    assert apply_map(m.inverse(), apply_map(m, r)) == r


@given(nonzero_pairs)
def test_reduce_idempotent(t):
    s, n = reduce(UnreducedSlope(*t))
    assert t[0] % n == 0 and t[1] % n == 0
    s2, n2 = reduce(UnreducedSlope(s.longitudes, s.meridians))
    assert s2 == s and n2 == 1


@given(nonzero_pairs, nonzero_pairs)
def test_adjacent_iff_intersection_one(a, b):
    s1, s2 = Slope(*a), Slope(*b)
    assert farey_adjacent(s1, s2) == (geometric_intersection(s1, s2) == 1)
    assert geometric_intersection(s1, s2) == geometric_intersection(s2, s1)


@given(nonzero_pairs, nonzero_pairs)
def test_mediant_adjacent_to_parents(a, b):
    s1, s2 = Slope(*a), Slope(*b)
    if not farey_adjacent(s1, s2):
        return
    m = farey_mediant(s1, s2)
    assert farey_adjacent(m, s1) and farey_adjacent(m, s2)


@given(st.integers(-500, 500), st.integers(1, 60))
def test_bezout_identity(p, q):
    from math import gcd

    if gcd(p, q) != 1:
        return
    pp, qq = bezout_complement(p, q)
    assert p * qq - pp * q == 1
    if q > 1:
        assert 0 <= qq < q


@given(nonzero_pairs, nonzero_pairs)
def test_order_matches_fraction(a, b):
    s1, s2 = Slope(*a), Slope(*b)
    if s1.is_infinite or s2.is_infinite:
        return
    assert (s1 < s2) == (Fraction(*a) < Fraction(*b))
