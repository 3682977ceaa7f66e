import pytest
from hypothesis import given, strategies as st

from slicetower.bredon import (
    ChainComplexError, OrbitCell, homology, homology_all, induce_complex, point_complex,
    quotient_target_complex, restrict_complex, ro_graded_homotopy_HZ, sphere_chain_complex,
    tensor, verify_shift_identity, _lambda_complex, _sign_complex, _trivial_sphere,
)
from slicetower.mackey import catalogue, check_mackey_axioms, induce, isomorphic
from slicetower.rep_ring import VirtualRep, parse_rep


@st.composite
def small_reps(draw, max_dim=6):
    n = draw(st.sampled_from([2, 4, 8]))
    width = len([k for k in range(1, n) if 2 * k < n])
    while True:
        a = draw(st.integers(0, 2))
        b = draw(st.integers(0, 2))
        rot = tuple(draw(st.lists(st.integers(0, 1), min_size=width, max_size=width)))
        V = VirtualRep(n, a, b, rot)
        if V.dim <= max_dim:
            return V


def test_point_and_lambda_cells():
    assert sphere_chain_complex(VirtualRep(4)).cells() == [OrbitCell(0, 4)]
    C = sphere_chain_complex(VirtualRep.lam(1, 4))
    assert C.cells() == [OrbitCell(0, 4), OrbitCell(1, 1), OrbitCell(2, 1)]


def test_two_sign_sphere_tensor_model():
    C = sphere_chain_complex(VirtualRep(2, sign=2), model="tensor")
    assert sorted({c.dimension for c in C.cells()}) == [0, 1, 2]


def test_virtual_sphere_is_rejected():
    with pytest.raises(ChainComplexError):
        sphere_chain_complex(VirtualRep(4, trivial=-1))


@pytest.mark.parametrize("d,n,iso", [(1, 4, 1), (2, 4, 2), (4, 4, 4), (3, 6, 3)])
def test_circle_models(d, n, iso):
    C = quotient_target_complex(d, n)
    assert C.cells() == [OrbitCell(0, iso), OrbitCell(1, iso)]
    assert C.check_d2() and C.check_equivariant()


def test_trivial_circle_homology():
    H = homology_all(quotient_target_complex(4, 4))
    assert isomorphic(H[0], catalogue("Z", 4)) and isomorphic(H[1], catalogue("Z", 4))


@given(small_reps(), st.sampled_from(["small", "tensor"]))
def test_complexes_are_equivariant_with_square_zero(V, model):
    C = sphere_chain_complex(V, model)
    assert C.check_d2() and C.check_equivariant()


@given(small_reps())
def test_underlying_homology_is_top_class(V):
    H = homology_all(sphere_chain_complex(V))
    for k, M in H.items():
        assert check_mackey_axioms(M)
        expected = 1 if k == V.dim else 0
        assert M.levels[1].rank == expected and not M.levels[1].torsion
    # reduced Euler characteristic at the underlying level
    C = sphere_chain_complex(V)
    chi = sum((-1) ** k * C.fixed_dim(k, 1) for k in C.degrees())
    assert chi == (-1) ** V.dim


@given(small_reps(max_dim=5))
def test_cell_order_does_not_matter(V):
    A = homology_all(sphere_chain_complex(V, "small"))
    B = homology_all(sphere_chain_complex(V, "tensor"))
    for k in set(A) | set(B):
        if k in A and k in B:
            assert isomorphic(A[k], B[k])
        else:
            assert (A.get(k) or B.get(k)).is_zero()


def test_reversed_smash_order():
    n = 4
    S, L = _sign_complex(n), _lambda_complex(1, n)
    A, B = homology_all(tensor(S, L)), homology_all(tensor(L, S))
    assert all(isomorphic(A[k], B[k]) for k in A)


def test_homology_of_point():
    for n in (2, 4, 8):
        assert isomorphic(homology(point_complex(n), 0), catalogue("Z", n))


def test_top_homology_of_lambda_sphere():
    # the orientation class: restriction is an isomorphism
    M = homology(sphere_chain_complex(VirtualRep.lam(1, 4)), 2)
    assert isomorphic(M, catalogue("Z", 4))


def test_sign_sphere_degree_one():
    M = homology(sphere_chain_complex(VirtualRep.sigma(2)), 1)
    assert M.levels[2].is_zero() and isomorphic(M, catalogue("Zsign", 2))


@pytest.mark.parametrize("n", [2, 4, 8])
def test_integer_degrees_of_hz(n):
    assert isomorphic(ro_graded_homotopy_HZ(VirtualRep(n)), catalogue("Z", n))
    for a in (-2, -1, 1, 2):
        assert ro_graded_homotopy_HZ(VirtualRep(n, trivial=a)).is_zero()


def test_named_degrees_c4():
    assert isomorphic(ro_graded_homotopy_HZ("-2 + 1*L(1)", n=4), catalogue("Zdual", 4))
    assert isomorphic(ro_graded_homotopy_HZ("2 - 1*L(1)", n=4), catalogue("Z", 4))
    assert isomorphic(ro_graded_homotopy_HZ("-3 + 1*s + 1*L(1)", n=4), catalogue("dotted", 4))
    assert isomorphic(ro_graded_homotopy_HZ("-1 + 1*s", n=4), catalogue("Zsign", 4))


@pytest.mark.parametrize("n", [2, 4, 8])
@pytest.mark.parametrize("which", ["Zdual", "Zsign", "dotted"])
def test_shift_identities(which, n):
    assert verify_shift_identity(which, n)


@pytest.mark.parametrize("text", ["0", "1*s", "1*L(1)", "2*s", "1*L(1) + 1*s"])
@pytest.mark.parametrize("h,n", [(2, 4), (4, 8), (2, 8)])
def test_induction_agrees_with_chain_level_induction(text, h, n):
    C = sphere_chain_complex(parse_rep(text, h))
    direct = homology_all(induce_complex(C, n))
    for k, M in homology_all(C).items():
        assert isomorphic(direct[k], induce(M, n))


@pytest.mark.parametrize("text", ["1*s", "1*L(1)", "-1 + 1*s", "-2 + 1*L(1)", "1 - 1*s"])
def test_hom_homotopy_restricts(text):
    n = 8
    alpha = parse_rep(text, n)
    M = ro_graded_homotopy_HZ(alpha)
    for h in (2, 4):
        R = ro_graded_homotopy_HZ(alpha.restrict(h))
        from slicetower.mackey import restrict_mackey
        assert isomorphic(restrict_mackey(M, h), R)


def test_restricted_complex_keeps_differential():
    C = restrict_complex(sphere_chain_complex(VirtualRep.lam(1, 8)), 4)
    assert C.n == 4 and C.check_d2() and C.check_equivariant()
