import itertools

import pytest
from hypothesis import given, strategies as st

from slicetower.mackey import check_mackey_axioms
from slicetower.rep_ring import VirtualRep
from slicetower.slice_e2 import (
    Target, class_word, e2, e2_chart, generator_degree, monic_monomials, monomial_orbits,
    sigma_window, slice_degree,
)


def series_count(degree, n, convention="i_rho2"):
    """Coefficient of x^degree in prod_i (1 - x^|r_i|)^(-2^(n-1)) by a knapsack DP."""
    T = 2 ** (n - 1)
    coeff = [1] + [0] * degree
    i = 1
    while generator_degree(i, convention) <= degree:
        w = generator_degree(i, convention)
        for _ in range(T):
            for k in range(w, degree + 1):
                coeff[k] += coeff[k - w]
        i += 1
    return coeff[degree]


def brute_orbits(degree, n):
    """Orbit sizes by exhaustive exponent vectors and union-find."""
    T = 2 ** (n - 1)
    top = degree // 2
    variables = [(i, j) for i in range(1, top + 1) for j in range(T)]
    monos = []
    for exps in itertools.product(*[range(degree // (2 * i) + 1) for i, _ in variables]):
        if sum(e * 2 * i for e, (i, _) in zip(exps, variables)) == degree:
            monos.append(frozenset((v, e) for v, e in zip(variables, exps) if e))
    seen, sizes = set(), []
    for m in monos:
        if m in seen:
            continue
        orbit = {m}
        cur = m
        while True:
            cur = frozenset(((i, (j + 1) % T), e) for (i, j), e in cur)
            if cur in orbit:
                break
            orbit.add(cur)
        seen |= orbit
        sizes.append(len(orbit))
    return sorted(sizes)


def test_empty_monomial():
    for n in (1, 2, 3):
        (o,) = monomial_orbits(0, n)
        assert o.rep == () and o.stabilizer == 2 ** n
        assert slice_degree(o).is_zero()


def test_c4_degree_two_and_four():
    (o,) = monomial_orbits(2, 2)
    assert o.stabilizer == 2 and o.size == 2
    orbits = monomial_orbits(4, 2)
    assert sorted(o.stabilizer for o in orbits) == [2, 2, 4]
    assert sum(o.size for o in orbits) == 5
    by_name = {o.name(): o.stabilizer for o in orbits}
    assert by_name == {"r1^2": 2, "r1.g1r1": 4, "r2": 2}


@pytest.mark.parametrize("n,degree", [(n, d) for n in (1, 2, 3) for d in (0, 2, 4, 6, 8) if (n, d) != (3, 8)])
def test_orbits_match_brute_force(n, degree):
    assert sorted(o.size for o in monomial_orbits(degree, n)) == brute_orbits(degree, n)


@given(st.integers(0, 12), st.integers(1, 3), st.sampled_from(["i_rho2", "norm"]))
def test_weighted_orbit_count(m, n, conv):
    orbits = monomial_orbits(2 * m, n, conv)
    assert sum(o.size for o in orbits) == series_count(2 * m, n, conv)
    assert len(monic_monomials(2 * m, n, conv)) == series_count(2 * m, n, conv)
    for o in orbits:
        assert slice_degree(o).dim == 2 * m
        assert o.size * o.stabilizer == 2 ** n


def test_slice_degree_examples():
    by_name = {o.name(): o for o in monomial_orbits(2, 2) + monomial_orbits(4, 2)}
    assert slice_degree(by_name["r1"]) == VirtualRep(2, 1, 1)
    assert slice_degree(by_name["r1.g1r1"]) == VirtualRep.regular(4)


def test_norm_convention_degrees():
    assert [generator_degree(i, "norm") for i in (1, 2, 3)] == [2, 6, 14]
    with pytest.raises(ValueError):
        generator_degree(1, "bogus")


def test_e2_unit():
    for n in (2, 4, 8):
        M = e2(0, VirtualRep(n))
        assert all(M.levels[d].torsion == () and M.levels[d].rank == 1 for d in M.divisors())


def test_e2_lambda_c4_is_induced_sign():
    M = e2(0, VirtualRep.lam(1, 4))
    assert M.symbol() == "0|0|Z+Z"
    assert check_mackey_axioms(M)


@given(st.integers(0, 4), st.integers(-3, 9), st.integers(0, 2), st.sampled_from([2, 4, 8]))
def test_e2_odd_and_negative_vanish(s, a, b, n):
    V = VirtualRep(n, a, b)
    if V.dim % 2 or V.dim < 0:
        assert e2(s, V).is_zero()


@pytest.mark.parametrize("n", [2, 4])
def test_underlying_rank_is_monomial_count(n):
    for k in range(0, 9, 2):
        M = e2(0, VirtualRep(n, k), Target())
        assert M.levels[1].rank == series_count(k, n.bit_length() - 1)


def test_c2_chart_rows():
    w = [(s, VirtualRep(2, k)) for s in range(4) for k in range(7)]
    ch = e2_chart(w, 2)
    row = {e.V.dim: e.mackey.levels[1].rank for e in ch.entries if e.s == 0}
    assert [row[k] for k in (0, 2, 4, 6)] == [1, 1, 2, 3]
    circle = e2_chart(w, 2, Target(1))
    assert circle.filtrations() == [0, 1]
    assert e2_chart([], 2).entries == []


@pytest.mark.parametrize("n", [2, 4])
def test_circle_charts_two_lines(n):
    ch = e2_chart(sigma_window(n, 6), n, Target(1))
    assert set(ch.filtrations()) <= {0, 1}
    for e in ch.nonzero():
        assert check_mackey_axioms(e.mackey)


def test_class_words():
    assert class_word(VirtualRep(2, 0, -3)) == "as^3"
    assert class_word(VirtualRep(2, 2, -3)) == "u2s.as"
    assert class_word(VirtualRep(4, 2, 0, (-1,))) == "uL1"
    assert class_word(VirtualRep(4, 2, -2, (-1,))) is None
    assert class_word(VirtualRep(2, 0, 1)) is None


def test_chart_serialization_is_stable():
    w = sigma_window(4, 3)
    a, b = e2_chart(w, 4), e2_chart(list(reversed(w)), 4)
    assert a.to_json() == b.to_json()
    assert a.to_tsv().splitlines()[0].startswith("s\tV")


@given(st.integers(0, 14), st.integers(1, 3), st.sampled_from(["i_rho2", "norm"]))
def test_orbit_counts_match_enumeration(m, n, conv):
    from collections import Counter
    from slicetower.slice_e2 import orbit_counts
    assert orbit_counts(2 * m, n, conv) == dict(Counter(o.stabilizer for o in monomial_orbits(2 * m, n, conv)))
