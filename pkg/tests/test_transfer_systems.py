import itertools
from math import gcd

import pytest
from hypothesis import given, strategies as st

from slicetower.rep_ring import divisors
from slicetower.transfer_systems import (
    TransferError, closure, complete, divisor_pairs, enumerate_transfer_systems, is_transfer_system, make,
    norm_along, quotient_structure, trivial,
)


def oracle(n):
    """Every subset of nontrivial pairs, filtered by a direct reading of the axioms."""
    ds = divisors(n)
    strict = [(a, b) for a in ds for b in ds if a != b and b % a == 0]
    out = []
    for mask in range(2 ** len(strict)):
        rel = {(d, d) for d in ds} | {p for i, p in enumerate(strict) if mask >> i & 1}
        trans = all((a, c) in rel for (a, b) in rel for (b2, c) in rel if b == b2)
        restr = all((gcd(a, c), c) in rel for (a, b) in rel for c in ds if b % c == 0)
        if trans and restr:
            out.append(frozenset(rel))
    return out


def orbit_norm(R, h, n):
    """Decompose C_n/C_h x C_n/C_a by brute force on cosets and test each orbit map."""
    out = set()
    for a, b in divisor_pairs(n):
        ok = True
        # points (x mod h, y mod a); gamma adds 1 to both coordinates
        pts = {(x, y) for x in range(h and n // h or 1) for y in range(n // a)}
        seen = set()
        for p in sorted(pts):
            if p in seen:
                continue
            orbit, q = [], p
            while q not in orbit:
                orbit.append(q)
                q = ((q[0] + 1) % (n // h), (q[1] + 1) % (n // a))
            seen |= set(orbit)
            img, q = [], ((p[0]) % (n // h), p[1] % (n // b))
            while q not in img:
                img.append(q)
                q = ((q[0] + 1) % (n // h), (q[1] + 1) % (n // b))
            src_stab, tgt_stab = n // len(orbit), n // len(img)
            ok = ok and (src_stab, tgt_stab) in R.pairs
        if ok:
            out.add((a, b))
    return frozenset(out)


def test_axiom_examples():
    assert is_transfer_system(complete(4), 4)
    assert is_transfer_system(trivial(4), 4)
    assert not is_transfer_system(make(4, [(1, 4)]).pairs, 4)


@pytest.mark.parametrize("n", [2, 4, 8, 12, 6, 9, 16])
def test_enumeration_matches_oracle(n):
    mine = enumerate_transfer_systems(n)
    assert sorted(map(sorted, (R.pairs for R in mine))) == sorted(map(sorted, oracle(n)))


def test_catalan_counts_for_two_powers():
    assert [len(enumerate_transfer_systems(2 ** k)) for k in (1, 2, 3, 4)] == [2, 5, 14, 42]


def test_enumeration_cap():
    with pytest.raises(TransferError):
        enumerate_transfer_systems(720, max_divisors=8)


@pytest.mark.parametrize("n", [2, 4, 8, 12])
def test_norm_properties(n):
    systems = enumerate_transfer_systems(n)
    for R in systems:
        for h in divisors(n):
            N = norm_along(R, h)
            assert is_transfer_system(N, n)
            assert R <= N
            assert norm_along(N, h) == N
            assert N.pairs == orbit_norm(R, h, n)
            assert norm_along(R, h, quantifier="all-K-in-H") == N
    for R, S in itertools.product(systems, repeat=2):
        if R <= S:
            for h in divisors(n):
                assert norm_along(R, h) <= norm_along(S, h)


def test_norm_examples():
    assert norm_along(complete(4), 2) == complete(4)
    assert norm_along(trivial(4), 4) == trivial(4)
    R = make(4, [(1, 2)])
    assert norm_along(R, 2).pairs == orbit_norm(R, 2, 4)


def test_quotient_structure():
    q = quotient_structure(complete(4), 1)
    assert q.g_e_infinity and q.H_k == 1
    for R in enumerate_transfer_systems(4):
        assert quotient_structure(R, 4).normed == R
        assert quotient_structure(R, 1).g_e_infinity
    for R in enumerate_transfer_systems(8):
        for k in divisors(8):
            assert quotient_structure(R, k).ok


@given(st.sampled_from([4, 8, 12]), st.data())
def test_closure_is_smallest(n, data):
    pairs = data.draw(st.sets(st.sampled_from(divisor_pairs(n, strict=True))))
    C = closure(pairs, n)
    assert is_transfer_system(C, n)
    for R in enumerate_transfer_systems(n):
        if set(pairs) <= R.pairs:
            assert C <= R


def test_dot_export():
    dot = make(4, [(1, 2)]).to_dot()
    assert '"1" -> "2" [style=solid]' in dot and '"2" -> "4" [style=dotted]' in dot
