"""Exact integer linear algebra.

Everything here works on plain Python ints so entries never overflow.
Matrices are lists of rows; vectors are lists.  The workhorses are a column
echelon form (kernels, exact solving) and a Smith normal form with the row
transform and its inverse (canonical presentations of subquotients).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

Matrix = list[list[int]]
Vector = list[int]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def identity(n: int) -> Matrix:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = 1
    return out


def shape(M: Matrix, ncols: int | None = None) -> tuple[int, int]:
    if M:
        return len(M), len(M[0])
    return 0, (ncols or 0)


def transpose(M: Matrix, ncols: int = 0) -> Matrix:
    if not M:
        return [[] for _ in range(ncols)]
    return [list(col) for col in zip(*M)]


def matmul(A: Matrix, B: Matrix, inner: int | None = None, ncols: int | None = None) -> Matrix:
    """A (m x k) times B (k x n).  Empty dimensions need ``inner``/``ncols``."""
    m = len(A)
    k = len(B) if B else (inner or 0)
    n = len(B[0]) if B else (ncols or 0)
    out = zeros(m, n)
    for i in range(m):
        row = A[i]
        oi = out[i]
        for t in range(k):
            a = row[t]
            if a:
                bt = B[t]
                for j in range(n):
                    b = bt[j]
                    if b:
                        oi[j] += a * b
    return out


def matvec(A: Matrix, v: Sequence[int]) -> Vector:
    return [sum(a * b for a, b in zip(row, v) if a and b) for row in A]


def columns(M: Matrix, ncols: int) -> list[Vector]:
    if not M:
        return [[] for _ in range(ncols)]
    return [list(c) for c in zip(*M)]


def from_columns(cols: list[Vector], nrows: int) -> Matrix:
    if not cols:
        return [[] for _ in range(nrows)]
    return [list(r) for r in zip(*cols)]


def is_zero(M: Matrix) -> bool:
    return all(not x for row in M for x in row)


# ---------------------------------------------------------------------------
# column echelon form


@dataclass
class Echelon:
    """``M V = H`` with ``V`` unimodular and ``H`` in column echelon form.

    ``H`` is kept as a list of its first ``rank`` columns; column ``c`` has
    its leading (topmost) nonzero entry at row ``pivots[c]`` and the pivot rows
    strictly increase.  Columns ``rank..`` of ``V`` span the kernel of ``M``.
    """

    nrows: int
    ncols: int
    H: list[Vector]
    V: list[Vector]
    pivots: list[int]

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def kernel(self) -> list[Vector]:
        return self.V[self.rank:]

    def solve(self, b: Sequence[int]) -> Vector | None:
        """Integer ``x`` with ``M x = b`` or None."""
        r = list(b)
        y = []
        for c, p in enumerate(self.pivots):
            col = self.H[c]
            for i in range(p):
                if r[i]:
                    return None
            q, rem = divmod(r[p], col[p])
            if rem:
                return None
            y.append(q)
            if q:
                for i in range(p, self.nrows):
                    if col[i]:
                        r[i] -= q * col[i]
        if any(r):
            return None
        x = [0] * self.ncols
        for c, q in enumerate(y):
            if q:
                vc = self.V[c]
                for i in range(self.ncols):
                    if vc[i]:
                        x[i] += q * vc[i]
        return x


def echelon(M: Matrix, ncols: int | None = None) -> Echelon:
    m, n = shape(M, ncols)
    # augmented columns: top m entries from M, bottom n from V = identity
    cols = []
    for j in range(n):
        c = [M[i][j] for i in range(m)] + [0] * n
        c[m + j] = 1
        cols.append(c)
    pivots: list[int] = []
    start = 0
    for row in range(m):
        if start == n:
            break
        found = False
        while True:
            nz = [j for j in range(start, n) if cols[j][row]]
            if not nz:
                break
            found = True
            j0 = min(nz, key=lambda j: abs(cols[j][row]))
            cols[start], cols[j0] = cols[j0], cols[start]
            piv = cols[start]
            pv = piv[row]
            others = [j for j in range(start + 1, n) if cols[j][row]]
            if not others:
                break
            for j in others:
                c = cols[j]
                q = c[row] // pv
                for i in range(row, m + n):
                    if piv[i]:
                        c[i] -= q * piv[i]
        if found:
            if cols[start][row] < 0:
                cols[start] = [-x for x in cols[start]]
            pivots.append(row)
            start += 1
    H = [c[:m] for c in cols[: len(pivots)]]
    V = [c[m:] for c in cols]
    return Echelon(m, n, H, V, pivots)


def kernel_basis(M: Matrix, ncols: int | None = None) -> list[Vector]:
    return echelon(M, ncols).kernel()


def solve(M: Matrix, b: Sequence[int], ncols: int | None = None) -> Vector | None:
    return echelon(M, ncols).solve(b)


def lattice_basis(gens: list[Vector], dim: int) -> list[Vector]:
    """A basis (as columns) of the lattice spanned by ``gens`` inside Z^dim."""
    if not gens:
        return []
    E = echelon(from_columns(gens, dim), len(gens))
    return [list(c) for c in E.H]


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass
class Smith:
    """``U M V = D``; only the row side is retained (``U`` and ``U^{-1}``)."""

    diag: list[int]
    U: Matrix
    Uinv: Matrix


def smith(M: Matrix, nrows: int, ncols: int) -> Smith:
    A = [list(r) for r in M] if M else [[0] * ncols for _ in range(nrows)]
    if nrows and not A[0] and ncols:
        A = [[0] * ncols for _ in range(nrows)]
    m, n = nrows, ncols
    U = identity(m)
    Uinv = identity(m)

    def swap_rows(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            U[i], U[j] = U[j], U[i]
            for row in Uinv:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        if not q:
            return
        ad, as_ = A[dst], A[src]
        for k in range(n):
            if as_[k]:
                ad[k] += q * as_[k]
        ud, us = U[dst], U[src]
        for k in range(m):
            if us[k]:
                ud[k] += q * us[k]
        # inverse: col_src -= q * col_dst
        for row in Uinv:
            if row[dst]:
                row[src] -= q * row[dst]

    def neg_row(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]
        for row in Uinv:
            row[i] = -row[i]

    def swap_cols(i, j):
        if i != j:
            for row in A:
                row[i], row[j] = row[j], row[i]

    def add_col(dst, src, q):
        if q:
            for row in A:
                if row[src]:
                    row[dst] += q * row[src]

    diag = []
    t = 0
    while t < min(m, n):
        entries = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            changed = False
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    add_row(i, t, -q)
                    if A[i][t]:
                        changed = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    add_col(j, t, -q)
                    if A[t][j]:
                        changed = True
            if changed:
                entries = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
                entries += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
                _, pi, pj = min(entries)
                swap_rows(t, pi)
                swap_cols(t, pj)
                continue
            # divisibility of the remaining block
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            neg_row(t)
        diag.append(A[t][t])
        t += 1
    return Smith(diag, U, Uinv)


def invariant_factors(M: Matrix, nrows: int, ncols: int) -> list[int]:
    return [d for d in smith(M, nrows, ncols).diag if d != 1]


# ---------------------------------------------------------------------------
# finitely generated abelian groups


@dataclass(frozen=True)
class AbGroup:
    """Z/t_1 + ... + Z/t_k + Z^rank with t_1 | t_2 | ... and every t_i >= 2.

    Elements are integer vectors of length ``ngens``: torsion coordinates
    first (each reduced mod its t_i), then the free coordinates.
    """

    torsion: tuple[int, ...] = ()
    rank: int = 0

    @property
    def ngens(self) -> int:
        return len(self.torsion) + self.rank

    @property
    def moduli(self) -> list[int]:
        return list(self.torsion) + [0] * self.rank

    def is_zero(self) -> bool:
        return self.ngens == 0

    def reduce(self, v: Sequence[int]) -> Vector:
        return [x % t if t else x for x, t in zip(v, self.moduli)]

    def reduce_matrix(self, M: Matrix, ncols: int) -> Matrix:
        """Reduce the rows of a matrix with codomain this group."""
        mods = self.moduli
        return [[x % t if t else x for x in row] for row, t in zip(M, mods)] if M else []

    def order(self) -> int | None:
        if self.rank:
            return None
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def __str__(self) -> str:
        parts = [f"Z/{t}" for t in self.torsion] + ["Z"] * self.rank
        return " + ".join(parts) if parts else "0"

    @classmethod
    def parse(cls, text: str) -> "AbGroup":
        text = text.strip()
        if text == "0":
            return cls()
        tors, rank = [], 0
        for part in text.split("+"):
            part = part.strip()
            if part == "Z":
                rank += 1
            else:
                tors.append(int(part.split("/")[1]))
        return canonical_group(tors, rank)


def canonical_group(orders: Sequence[int], rank: int = 0) -> AbGroup:
    """Canonicalize a direct sum of cyclic groups given by their orders."""
    k = len(orders)
    M = zeros(k, k)
    for i, t in enumerate(orders):
        M[i][i] = t
    S = smith(M, k, k)
    tors = [d for d in S.diag if d > 1]
    free = rank + sum(1 for d in S.diag if d == 0) + (k - len(S.diag))
    return AbGroup(tuple(tors), free)


class Subquotient:
    """The group L / N with L a lattice in Z^dim and N a sublattice of L.

    ``L`` is given by basis columns, ``N`` by generating columns (already in
    ambient coordinates).  The canonical form is computed once; afterwards
    ambient vectors in L can be converted to canonical coordinates and the
    canonical generators lifted back to ambient vectors.
    """

    def __init__(self, L: list[Vector], N: list[Vector], dim: int):
        self.dim = dim
        self.L = L
        self._solver = echelon(from_columns(L, dim), len(L)) if L else None
        k = len(L)
        rel_cols = []
        for v in N:
            if any(v):
                y = self._solver.solve(v) if self._solver else None
                if y is None:
                    raise ValueError("relation not contained in the lattice")
                rel_cols.append(y)
        R = from_columns(rel_cols, k) if rel_cols else [[] for _ in range(k)]
        S = smith(R, k, len(rel_cols))
        diag = S.diag + [0] * (k - len(S.diag))
        self._keep = [i for i, d in enumerate(diag) if d != 1]
        tors = [(diag[i], i) for i in self._keep if diag[i] > 1]
        free = [i for i in self._keep if diag[i] == 0]
        self._order = [i for _, i in tors] + free
        self.group = AbGroup(tuple(d for d, _ in tors), len(free))
        self._U = S.U
        self._Uinv = S.Uinv
        self._k = k

    def coords(self, x: Sequence[int]) -> Vector:
        if not self._k:
            return []
        y = self._solver.solve(x)
        if y is None:
            raise ValueError("vector not in the lattice")
        z = matvec(self._U, y)
        return self.group.reduce([z[i] for i in self._order])

    def generators(self) -> list[Vector]:
        """Ambient lifts of the canonical generators, in canonical order."""
        out = []
        for i in self._order:
            y = [row[i] for row in self._Uinv]
            x = [0] * self.dim
            for c, q in enumerate(y):
                if q:
                    for t, e in enumerate(self.L[c]):
                        if e:
                            x[t] += q * e
            out.append(x)
        return out


def presented(group: AbGroup) -> tuple[list[Vector], list[Vector]]:
    """(L, N) for a canonical group viewed as Z^ngens modulo its moduli."""
    g = group.ngens
    L = [[int(i == j) for i in range(g)] for j in range(g)]
    N = []
    for j, t in enumerate(group.moduli):
        if t:
            v = [0] * g
            v[j] = t
            N.append(v)
    return L, N


def hom_kernel(A: AbGroup, B: AbGroup, F: Matrix) -> tuple[Subquotient, Matrix]:
    """Kernel of F: A -> B.  Returns the subquotient and the inclusion matrix."""
    a, b = A.ngens, B.ngens
    # solve F x - D_B y = 0
    modsB = [(i, t) for i, t in enumerate(B.moduli) if t]
    big = []
    for i in range(b):
        row = list(F[i]) if a else []
        row += [(-t if r == i else 0) for r, t in modsB]
        big.append(row)
    if b:
        gens = [v[:a] for v in kernel_basis(big, a + len(modsB))]
        L = lattice_basis([g for g in gens if any(g)], a)
    else:
        L = [[int(i == j) for i in range(a)] for j in range(a)]
    _, N = presented(A)
    sq = Subquotient(L, N, a)
    inc = A.reduce_matrix(from_columns(sq.generators(), a), sq.group.ngens) if a else []
    return sq, inc


def hom_cokernel(A: AbGroup, B: AbGroup, F: Matrix) -> tuple[Subquotient, Matrix]:
    """Cokernel of F: A -> B.  Returns the subquotient and projection B -> coker."""
    b = B.ngens
    L, N = presented(B)
    N = N + [list(c) for c in columns(F, A.ngens) if any(c)]
    sq = Subquotient(L, N, b)
    proj = from_columns([sq.coords(e) for e in L], sq.group.ngens) if b else []
    return sq, proj


def hom_image_rank_data(A: AbGroup, B: AbGroup, F: Matrix) -> tuple[AbGroup, AbGroup, AbGroup]:
    """(kernel, image, cokernel) isomorphism types of F: A -> B."""
    ker, _ = hom_kernel(A, B, F)
    cok, _ = hom_cokernel(A, B, F)
    # image = A / ker
    La, Na = presented(A)
    img = Subquotient(La, Na + [v for v in ker.L], A.ngens)
    return ker.group, img.group, cok.group
