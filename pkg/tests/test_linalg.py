import pytest
import sympy
from hypothesis import given, strategies as st

from slicetower.linalg import (
    AbGroup, canonical_group, echelon, hom_cokernel, hom_image_rank_data, hom_kernel,
    invariant_factors, matmul, smith,
)

small_matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)))


def sympy_invariants(M):
    from sympy.matrices.normalforms import smith_normal_form
    S = smith_normal_form(sympy.Matrix(M), domain=sympy.ZZ)
    return sorted(abs(int(S[i, i])) for i in range(min(S.shape)) if S[i, i] != 0)


@given(small_matrices)
def test_smith_diagonal_matches_sympy(M):
    S = smith(M, len(M), len(M[0]))
    ours = sorted(d for d in S.diag if d)
    assert ours == sympy_invariants(M)
    assert all(b % a == 0 for a, b in zip(S.diag, S.diag[1:]) if a)


@given(small_matrices)
def test_smith_transforms_are_inverse(M):
    S = smith(M, len(M), len(M[0]))
    m = len(M)
    assert matmul(S.U, S.Uinv, m, m) == [[int(i == j) for j in range(m)] for i in range(m)]


@given(small_matrices)
def test_echelon_rank_and_kernel(M):
    E = echelon(M, len(M[0]))
    assert E.rank == sympy.Matrix(M).rank()
    for v in E.kernel():
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M)
    assert len(E.kernel()) == len(M[0]) - E.rank


@given(small_matrices, st.lists(st.integers(-5, 5), min_size=5, max_size=5))
def test_solve_round_trip(M, x):
    x = x[:len(M[0])]
    b = [sum(a * c for a, c in zip(row, x)) for row in M]
    y = echelon(M, len(M[0])).solve(b)
    assert y is not None
    assert [sum(a * c for a, c in zip(row, y)) for row in M] == b


def test_canonical_group_merges_coprime_parts():
    assert str(canonical_group([2, 3, 4])) == "Z/2 + Z/12"
    assert canonical_group([6, 1], rank=1) == AbGroup((6,), 1)
    assert canonical_group([0]) == AbGroup((), 1)


def test_parse_and_print_round_trip():
    for text in ["0", "Z", "Z/2 + Z/4", "Z/2 + Z + Z"]:
        assert str(AbGroup.parse(text)) == text


@given(st.lists(st.integers(2, 12), max_size=3), st.lists(st.integers(2, 12), max_size=3))
def test_canonicalization_is_idempotent(a, b):
    G = canonical_group(a + b)
    assert canonical_group(list(G.torsion)) == G
    assert canonical_group(b + a) == G


def test_kernel_of_map_into_torsion():
    A, B = AbGroup((2,), 1), AbGroup((4,), 0)
    sq, inc = hom_kernel(A, B, [[2, 1]])
    assert str(sq.group) == "Z"
    cok, _ = hom_cokernel(A, B, [[2, 1]])
    assert cok.group.is_zero()


def test_multiplication_by_two_on_z4():
    A = AbGroup((4,), 0)
    ker, img, cok = hom_image_rank_data(A, A, [[2]])
    assert (str(ker), str(img), str(cok)) == ("Z/2", "Z/2", "Z/2")


def test_invariant_factors_of_diagonal():
    assert invariant_factors([[2, 0], [0, 3]], 2, 2) == [6]
