import copy

import pytest
from hypothesis import given, strategies as st

from slicetower.extensions import dotted_sequence, enumerate_extensions, nonsplit_extensions
from slicetower.mackey import (
    CATALOGUE_NAMES, MackeyError, MackeyFunctor, MackeyMorphism, catalogue, check_mackey_axioms,
    circ_sequence, counit, counit_sequence, direct_sum, exact_sequence_check, identity_morphism,
    induce, isomorphic, kernel, cokernel, restrict_mackey, short_exact, zero_functor, zero_morphism,
)


@pytest.mark.parametrize("n", [2, 4, 8])
@pytest.mark.parametrize("name", CATALOGUE_NAMES)
def test_catalogue_satisfies_axioms(name, n):
    assert check_mackey_axioms(catalogue(name, n))


def test_constant_functor_c2():
    Z = catalogue("Z", 2)
    assert str(Z.levels[2]) == str(Z.levels[1]) == "Z"
    assert Z.res[(2, 1)] == [[1]] and Z.tr[(1, 2)] == [[2]]


def test_dual_constant_c4():
    D = catalogue("Zdual", 4)
    assert D.res[(4, 2)] == [[2]] and D.tr[(2, 4)] == [[1]]


def test_circ_c2():
    C = catalogue("circ", 2)
    assert str(C.levels[2]) == "Z/2" and C.levels[1].is_zero()


def test_sign_functor_double_coset_vanishes():
    M = catalogue("Zsign", 2)
    assert check_mackey_axioms(M)
    # res o tr factors through the zero top level and equals 1 + gamma = 0
    assert M.levels[2].is_zero() and M.weyl[1] == [[-1]]


def test_corrupted_transfer_is_reported():
    M = catalogue("Z", 4)
    bad = MackeyFunctor(4, M.levels, M.res, dict(M.tr), M.weyl)
    bad.tr[(1, 2)] = [[3]]
    report = check_mackey_axioms(bad)
    assert not report and report.level == (1, 2)


def test_unknown_or_invalid_catalogue_entries():
    with pytest.raises(MackeyError):
        catalogue("square", 4)
    with pytest.raises(MackeyError):
        catalogue("Zsign", 6)


@pytest.mark.parametrize("n", [2, 4, 8])
def test_defining_sequences_are_exact(n):
    z = zero_functor(n)
    f, p = circ_sequence(n)
    assert exact_sequence_check([zero_morphism(z, f.source), f, p, zero_morphism(p.target, z)])
    inc, eps, proj = counit_sequence(n)
    assert exact_sequence_check([zero_morphism(z, inc.source), inc, eps, proj, zero_morphism(proj.target, z)])
    i, q = dotted_sequence(n)
    assert short_exact(i.source, i.target, q.target, i, q)


def test_identity_twice_is_not_exact():
    Z = catalogue("Z", 2)
    z = zero_functor(2)
    I = identity_morphism(Z)
    assert not exact_sequence_check([zero_morphism(z, Z), I, I, zero_morphism(Z, z)])


@pytest.mark.parametrize("n", [2, 4, 8])
def test_dotted_is_the_only_nonsplit_extension(n):
    A, C = catalogue("bullet", n), catalogue("Zsign_dual", n)
    exts = enumerate_extensions(A, C)
    assert len(exts) == 2
    classes = nonsplit_extensions(A, C)
    assert len(classes) == 1 and isomorphic(classes[0], catalogue("dotted", n))
    assert not isomorphic(catalogue("dotted", n), direct_sum([A, C]))


@pytest.mark.parametrize("name", ["Z", "circ", "dotted", "circbar"])
def test_json_round_trip(name):
    M = catalogue(name, 8)
    N = MackeyFunctor.from_json(M.to_json())
    assert N.to_json() == M.to_json()
    assert isomorphic(M, N)


def test_restrict_constant():
    assert isomorphic(restrict_mackey(catalogue("Z", 4), 2), catalogue("Z", 2))


def test_induce_top_level_is_orbit_count():
    M = induce(catalogue("Z", 2), 4)
    assert str(M.levels[4]) == "Z"
    assert M.levels[1].rank == 2 and M.levels[2].rank == 2


@pytest.mark.parametrize("h,n", [(1, 4), (2, 4), (2, 8), (4, 8), (2, 6), (3, 6), (3, 12)])
@pytest.mark.parametrize("name", ["Z", "Zdual", "circ"])
def test_induced_functors_satisfy_axioms(h, n, name):
    M = catalogue(name, h) if h > 1 else catalogue("Z", 1)
    I = induce(M, n)
    assert check_mackey_axioms(I)
    # additivity: rank at level k is the number of orbits times the rank at gcd(h, k)
    from math import gcd
    for k in I.divisors():
        orbits = n // (h * k // gcd(h, k))
        assert I.levels[k].ngens == orbits * M.levels[gcd(h, k)].ngens


@pytest.mark.parametrize("h,n", [(1, 2), (2, 4), (2, 8), (4, 8), (3, 6)])
def test_restricted_induction_splits_off_the_original(h, n):
    Z = catalogue("Z", h) if h > 1 else catalogue("Z", 1)
    R = restrict_mackey(induce(Z, n), h)
    inc = MackeyMorphism(Z, R, {d: [[1]] + [[0]] * (R.levels[d].ngens - 1) for d in Z.divisors()})
    proj = MackeyMorphism(R, Z, {d: [[1] + [0] * (R.levels[d].ngens - 1)] for d in Z.divisors()})
    assert inc.check() and proj.check()
    comp = inc.then(proj)
    assert all(comp.maps[d] == [[1]] for d in Z.divisors())


@pytest.mark.parametrize("n", [2, 4, 8])
def test_counit_is_a_morphism(n):
    for name in ["Z", "Zdual", "circ", "Zsign"]:
        assert counit(catalogue(name, n), n // 2).check()


@pytest.mark.parametrize("n", [4, 8])
def test_kernels_and_cokernels_satisfy_axioms(n):
    eps = counit(catalogue("Z", n), n // 2)
    K, inc = kernel(eps)
    C, proj = cokernel(eps)
    assert check_mackey_axioms(K) and check_mackey_axioms(C)
    assert inc.check() and proj.check()


@given(st.sampled_from(["Z", "Zdual", "Zsign", "circ", "bullet"]), st.sampled_from([2, 4, 8]))
def test_isomorphism_is_reflexive_and_separates_duals(name, n):
    M = catalogue(name, n)
    assert isomorphic(M, MackeyFunctor.from_json(M.to_json()))
    if name == "Z":
        assert not isomorphic(M, catalogue("Zdual", n))
