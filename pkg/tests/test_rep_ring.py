import cmath
import math

import pytest
from hypothesis import given, strategies as st

from slicetower.rep_ring import (
    NullEulerClass, RepError, VirtualRep, canonicalize_irrep, euler_divides, family_of,
    fixed_subspace_dim, format_rep, parse_rep, restrict_rep,
)


def character(V, t):
    """Character of V at gamma^t, computed from eigenvalues."""
    n = V.n
    out = V.trivial + V.sign * (-1) ** t
    for k, c in enumerate(V.rot, start=1):
        out += c * 2 * math.cos(2 * math.pi * k * t / n)
    return out


ORDERS = st.sampled_from([1, 2, 3, 4, 6, 8, 12])


@st.composite
def reps(draw, n=None, actual=False):
    n = n or draw(ORDERS)
    lo = 0 if actual else -3
    sign = draw(st.integers(lo, 3)) if n % 2 == 0 else 0
    width = len([k for k in range(1, n) if 2 * k < n])
    rot = tuple(draw(st.lists(st.integers(lo, 3), min_size=width, max_size=width)))
    return VirtualRep(n, draw(st.integers(lo, 3)), sign, rot)


def test_canonical_forms():
    assert canonicalize_irrep(5, 4) == canonicalize_irrep(1, 4)
    assert canonicalize_irrep(2, 4) == VirtualRep(4, sign=2)
    assert canonicalize_irrep(0, 4) == VirtualRep(4, trivial=2)
    assert canonicalize_irrep(3, 4) == canonicalize_irrep(1, 4)


def test_restriction_examples():
    assert restrict_rep(VirtualRep.lam(1, 4), 2) == VirtualRep(2, sign=2)
    assert restrict_rep(VirtualRep.sigma(4), 2) == VirtualRep(2, trivial=1)
    assert restrict_rep(VirtualRep.sigma(2), 2) == VirtualRep.sigma(2)


def test_family_of_lambda_two_in_c8():
    assert family_of(VirtualRep.lam(2, 8)) == {1, 2}


def test_odd_order_has_no_sign():
    with pytest.raises(RepError):
        VirtualRep(3, sign=1)


@given(reps(), st.data())
def test_restriction_matches_characters(V, data):
    n = V.n
    d = data.draw(st.sampled_from([d for d in range(1, n + 1) if n % d == 0]))
    W = restrict_rep(V, d)
    for t in range(d):
        assert math.isclose(character(W, t), character(V, (n // d) * t), abs_tol=1e-9)


@given(reps(), st.data())
def test_fixed_dimension_is_character_average(V, data):
    n = V.n
    d = data.draw(st.sampled_from([d for d in range(1, n + 1) if n % d == 0]))
    avg = sum(character(V, (n // d) * t) for t in range(d)) / d
    assert math.isclose(fixed_subspace_dim(V, d), avg, abs_tol=1e-9)


@given(reps(), reps())
def test_dimension_is_additive(V, W):
    if V.n != W.n:
        return
    assert (V + W).dim == V.dim + W.dim
    assert (V - V).is_zero()


@given(reps())
def test_text_round_trip(V):
    assert parse_rep(format_rep(V), V.n) == V


@given(reps())
def test_parts_are_actual(V):
    pos, neg = V.parts()
    assert pos.is_actual() and neg.is_actual()
    assert pos - neg == V


def test_parse_grammar():
    V = parse_rep("2 - 1*L(1)", 4)
    assert V == VirtualRep(4, trivial=2) - VirtualRep.lam(1, 4)
    assert parse_rep("-2 + 1*s", 4) == VirtualRep(4, -2, 1)
    assert parse_rep("L(6)", 8) == VirtualRep.lam(2, 8)
    for bad in ["", "2 +", "2 3", "L(x)"]:
        with pytest.raises(RepError):
            parse_rep(bad, 4)


def test_euler_divisibility_examples():
    w = euler_divides(1, 2, 4)
    assert w.mechanism == "power-map" and w.exponent == 2
    assert euler_divides(1, 3, 4).mechanism == "gcd-equivalence"
    assert euler_divides(1, 3, 4).local_equivalence
    assert euler_divides(2, 1, 4) is None
    with pytest.raises(NullEulerClass):
        euler_divides(4, 1, 4)


@given(st.integers(1, 4), st.integers(0, 3), st.data())
def test_divisibility_along_prime_powers(j, e, data):
    n = 2 ** (j + e)
    u = data.draw(st.sampled_from([1, 3, 5, 7]))
    v = data.draw(st.sampled_from([1, 3, 5, 7]))
    k, l = 2 ** (j - 1) * u, 2 ** j * v
    if k % n == 0 or l % n == 0:
        return
    w = euler_divides(k, l, n)
    assert w is not None
    assert (w.exponent * k - l) % n == 0 or (w.exponent * k + l) % n == 0


@given(st.sampled_from([4, 6, 8, 12]), st.data())
def test_gcd_equivalence_is_local(n, data):
    k = data.draw(st.integers(1, n - 1))
    l = data.draw(st.integers(1, n - 1))
    w = euler_divides(k, l, n)
    if math.gcd(k, n) == math.gcd(l, n):
        assert w.mechanism == "gcd-equivalence" and w.local_equivalence
