"""Extensions of Mackey functors by direct enumeration.

For 0 -> A -> E -> C -> 0 with every level of C free, each level of E splits
as A(d) + C(d), so E is determined by block upper triangular structure maps
[[f_A, x], [0, f_C]].  When A is levelwise finite the off-diagonal blocks
range over a finite set, and the Mackey axioms pick out the extensions.
"""
from __future__ import annotations

import itertools

from .linalg import AbGroup, Matrix, zeros
from .mackey import (
    MackeyError, MackeyFunctor, MackeyMorphism, catalogue, check_mackey_axioms,
    covering_pairs, direct_sum, isomorphic, short_exact,
)


def _block(FA: Matrix, X: Matrix, FC: Matrix, a_src: int, c_src: int, a_tgt: int, c_tgt: int) -> Matrix:
    out = zeros(a_tgt + c_tgt, a_src + c_src)
    for i in range(a_tgt):
        for j in range(a_src):
            out[i][j] = FA[i][j]
        for j in range(c_src):
            out[i][a_src + j] = X[i][j]
    for i in range(c_tgt):
        for j in range(c_src):
            out[a_tgt + i][a_src + j] = FC[i][j]
    return out if a_tgt + c_tgt else []


def _offdiag_choices(a_tgt: AbGroup, c_src: AbGroup):
    """All matrices C(src) -> A(tgt) with entries reduced mod the torsion of A."""
    rows, cols = a_tgt.ngens, c_src.ngens
    if rows == 0 or cols == 0:
        return [[[0] * cols for _ in range(rows)]]
    cells = [range(t) for t in a_tgt.moduli for _ in range(cols)]
    out = []
    for entries in itertools.product(*cells):
        out.append([list(entries[i * cols:(i + 1) * cols]) for i in range(rows)])
    return out


def enumerate_extensions(A: MackeyFunctor, C: MackeyFunctor, limit: int = 100000) -> list[MackeyFunctor]:
    """Every Mackey structure on the levelwise sum A + C extending A by C."""
    if any(C.levels[d].torsion for d in C.divisors()):
        raise MackeyError("quotient must be levelwise free")
    if any(A.levels[d].rank for d in A.divisors()):
        raise MackeyError("subobject must be levelwise finite")
    n = A.n
    levels = {d: AbGroup(A.levels[d].torsion, C.levels[d].rank) for d in A.divisors()}
    slots = []  # (kind, key, src, tgt)
    for d, e in covering_pairs(n):
        slots.append(("res", (e, d), e, d))
        slots.append(("tr", (d, e), d, e))
    for d in A.divisors():
        slots.append(("weyl", d, d, d))
    choices = [_offdiag_choices(A.levels[t], C.levels[s]) for _, _, s, t in slots]
    total = 1
    for ch in choices:
        total *= len(ch)
    if total > limit:
        raise MackeyError(f"{total} candidate extensions exceeds the limit {limit}")
    out = []
    for pick in itertools.product(*choices):
        res, tr, weyl = {}, {}, {}
        for (kind, key, s, t), X in zip(slots, pick):
            src = getattr(A, kind)[key], getattr(C, kind)[key]
            F = _block(src[0] or zeros(A.levels[t].ngens, A.levels[s].ngens), X,
                       src[1] or zeros(C.levels[t].ngens, C.levels[s].ngens),
                       A.levels[s].ngens, C.levels[s].ngens, A.levels[t].ngens, C.levels[t].ngens)
            F = levels[t].reduce_matrix(F, levels[s].ngens) if F else []
            {"res": res, "tr": tr, "weyl": weyl}[kind][key] = F
        E = MackeyFunctor(n, levels, res, tr, weyl)
        if check_mackey_axioms(E):
            out.append(E)
    return out


def extension_maps(A: MackeyFunctor, E: MackeyFunctor, C: MackeyFunctor) -> tuple[MackeyMorphism, MackeyMorphism]:
    inc, proj = {}, {}
    for d in A.divisors():
        a, c = A.levels[d].ngens, C.levels[d].ngens
        inc[d] = [[int(i == j) for j in range(a)] for i in range(a)] + [[0] * a for _ in range(c)] if a + c else []
        proj[d] = [[0] * a + [int(i == j) for j in range(c)] for i in range(c)]
    return MackeyMorphism(A, E, inc), MackeyMorphism(E, C, proj)


def nonsplit_extensions(A: MackeyFunctor, C: MackeyFunctor) -> list[MackeyFunctor]:
    """Isomorphism classes of extensions E of A by C with E not A + C."""
    split = direct_sum([A, C])
    classes: list[MackeyFunctor] = []
    for E in enumerate_extensions(A, C):
        if isomorphic(E, split):
            continue
        if not any(isomorphic(E, F) for F in classes):
            classes.append(E)
    return classes


def dotted_functor(n: int) -> MackeyFunctor:
    """The unique non-split extension 0 -> bullet -> E -> Zsign_dual -> 0."""
    A, C = catalogue("bullet", n), catalogue("Zsign_dual", n)
    classes = nonsplit_extensions(A, C)
    if len(classes) != 1:
        raise MackeyError(f"expected one non-split extension, found {len(classes)}")
    E = classes[0]
    inc, proj = extension_maps(A, E, C)
    assert short_exact(A, E, C, inc, proj)
    return E


def dotted_sequence(n: int) -> tuple[MackeyMorphism, MackeyMorphism]:
    A, C = catalogue("bullet", n), catalogue("Zsign_dual", n)
    return extension_maps(A, catalogue("dotted", n), C)
