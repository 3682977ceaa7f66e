"""Finitely generated Mackey functors for cyclic groups.

Conventions.  Level ``d`` is the value on the orbit C_n/C_d.  Structure maps
are stored only for covering pairs d | e with e/d prime: ``res[(e, d)]``
from level e to level d and ``tr[(d, e)]`` from level d to level e.
``weyl[d]`` is the action of the generator gamma on level d (for a fixed
point functor M^{C_d}, literally gamma acting).  Matrices are lists of rows
mapping canonical coordinates of the source to canonical coordinates of the
target, see :class:`slicetower.linalg.AbGroup`.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from math import gcd

from .linalg import (
    AbGroup, Matrix, Subquotient, columns, hom_cokernel, hom_image_rank_data, hom_kernel,
    identity, matmul, matvec, presented, zeros,
)
from .rep_ring import divisors


class MackeyError(ValueError):
    pass


def prime_factor(m: int) -> int:
    p = 2
    while m % p:
        p += 1
    return p


def covering_pairs(n: int) -> list[tuple[int, int]]:
    """All (d, e) with d | e | n and e/d prime, sorted."""
    out = []
    for e in divisors(n):
        for d in divisors(e):
            q = e // d
            if q > 1 and prime_factor(q) == q:
                out.append((d, e))
    return sorted(out)


def compose(F2: Matrix, F1: Matrix, A: AbGroup, B: AbGroup, C: AbGroup) -> Matrix:
    """F2 o F1 for F1: A -> B and F2: B -> C."""
    if not C.ngens:
        return []
    if not A.ngens:
        return [[] for _ in range(C.ngens)]
    if not B.ngens:
        return zeros(C.ngens, A.ngens)
    return C.reduce_matrix(matmul(F2, F1), A.ngens)


def zero_map(A: AbGroup, B: AbGroup) -> Matrix:
    return zeros(B.ngens, A.ngens) if B.ngens else []


def id_map(A: AbGroup) -> Matrix:
    return identity(A.ngens)


def add_maps(F: Matrix, G: Matrix, B: AbGroup) -> Matrix:
    if not F:
        return []
    return B.reduce_matrix([[a + b for a, b in zip(r, s)] for r, s in zip(F, G)], len(F[0]))


def scale_map(F: Matrix, c: int, B: AbGroup) -> Matrix:
    return B.reduce_matrix([[c * a for a in r] for r in F], len(F[0]) if F else 0)


def maps_equal(F: Matrix, G: Matrix, B: AbGroup) -> bool:
    if not B.ngens:
        return True
    ncols = len(F[0]) if F else 0
    return B.reduce_matrix(F, ncols) == B.reduce_matrix(G, ncols)


def is_homomorphism(F: Matrix, A: AbGroup, B: AbGroup) -> bool:
    """Each torsion generator of A must map to an element killed by its order."""
    for j, t in enumerate(A.moduli):
        if t and B.ngens:
            col = [F[i][j] * t for i in range(B.ngens)]
            if any(B.reduce(col)):
                return False
    return True


def block_diag(mats: list[Matrix], srcs: list[AbGroup], tgts: list[AbGroup]) -> Matrix:
    rows = sum(t.ngens for t in tgts)
    cols = sum(s.ngens for s in srcs)
    out = zeros(rows, cols)
    r0 = c0 = 0
    for F, s, t in zip(mats, srcs, tgts):
        for i in range(t.ngens):
            for j in range(s.ngens):
                out[r0 + i][c0 + j] = F[i][j]
        r0 += t.ngens
        c0 += s.ngens
    return out


@dataclass(eq=False)
class MackeyFunctor:
    n: int
    levels: dict[int, AbGroup]
    res: dict[tuple[int, int], Matrix]
    tr: dict[tuple[int, int], Matrix]
    weyl: dict[int, Matrix]
    name: str = ""

    # -- basic access ---------------------------------------------------

    def level(self, d: int) -> AbGroup:
        return self.levels[d]

    def divisors(self) -> list[int]:
        return divisors(self.n)

    def is_zero(self) -> bool:
        return all(g.is_zero() for g in self.levels.values())

    def res_map(self, e: int, d: int) -> Matrix:
        """Restriction from level e down to level d (any d | e)."""
        if e % d:
            raise MackeyError(f"{d} does not divide {e}")
        F = id_map(self.levels[e])
        cur = e
        while cur != d:
            p = prime_factor((cur // d))
            nxt = cur // p
            F = compose(self.res[(cur, nxt)], F, self.levels[e], self.levels[cur], self.levels[nxt])
            cur = nxt
        return F

    def tr_map(self, d: int, e: int) -> Matrix:
        if e % d:
            raise MackeyError(f"{d} does not divide {e}")
        F = id_map(self.levels[d])
        cur = d
        while cur != e:
            p = prime_factor(e // cur)
            nxt = cur * p
            F = compose(self.tr[(cur, nxt)], F, self.levels[d], self.levels[cur], self.levels[nxt])
            cur = nxt
        return F

    def weyl_pow(self, d: int, k: int) -> Matrix:
        A = self.levels[d]
        k %= self.n // d
        F = id_map(A)
        for _ in range(k):
            F = compose(self.weyl[d], F, A, A, A)
        return F

    def underlying(self) -> AbGroup:
        return self.levels[1]

    def top(self) -> AbGroup:
        return self.levels[self.n]

    # -- constructions --------------------------------------------------

    def restrict(self, d: int) -> "MackeyFunctor":
        return restrict_mackey(self, d)

    def __add__(self, other: "MackeyFunctor") -> "MackeyFunctor":
        return direct_sum([self, other])

    def dual(self) -> "MackeyFunctor":
        """Z-linear dual; only defined for levelwise free functors."""
        if any(g.torsion for g in self.levels.values()):
            raise MackeyError("dual needs torsion-free levels")
        T = lambda F, src, tgt: [list(r) for r in zip(*F)] if F and F[0] else zero_map(src, tgt)
        res = {(e, d): T(self.tr[(d, e)], self.levels[e], self.levels[d]) for (d, e) in covering_pairs(self.n)}
        tr = {(d, e): T(self.res[(e, d)], self.levels[d], self.levels[e]) for (d, e) in covering_pairs(self.n)}
        weyl = {}
        for d in self.divisors():
            # inverse transpose; weyl has finite order so its inverse is a power
            W = self.weyl_pow(d, self.n // d - 1)
            weyl[d] = T(W, self.levels[d], self.levels[d])
        return MackeyFunctor(self.n, dict(self.levels), res, tr, weyl, name=f"{self.name}*" if self.name else "")

    # -- presentation ---------------------------------------------------

    def table(self) -> str:
        lines = []
        for d in sorted(self.levels, reverse=True):
            lines.append(f"C_{self.n}/C_{d}: {self.levels[d]}")
        for (d, e) in covering_pairs(self.n):
            lines.append(f"  res {e}->{d}: {self.res[(e, d)]}   tr {d}->{e}: {self.tr[(d, e)]}")
        for d in sorted(self.levels, reverse=True):
            if self.levels[d].ngens:
                lines.append(f"  weyl {d}: {self.weyl[d]}")
        return "\n".join(lines)

    def symbol(self) -> str:
        """Short level signature, top level first, e.g. ``Z|Z|Z``."""
        return "|".join(str(self.levels[d]).replace(" ", "") for d in sorted(self.levels, reverse=True))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "levels": {str(d): {"rank": g.rank, "torsion": list(g.torsion)} for d, g in sorted(self.levels.items())},
            "res": {f"{e}->{d}": self.res[(e, d)] for (d, e) in covering_pairs(self.n)},
            "tr": {f"{d}->{e}": self.tr[(d, e)] for (d, e) in covering_pairs(self.n)},
            "weyl": {str(d): self.weyl[d] for d in sorted(self.levels)},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "MackeyFunctor":
        n = int(data["n"])
        levels = {int(d): AbGroup(tuple(v["torsion"]), v["rank"]) for d, v in data["levels"].items()}
        res, tr = {}, {}
        for key, F in data["res"].items():
            e, d = (int(x) for x in key.split("->"))
            res[(e, d)] = F
        for key, F in data["tr"].items():
            d, e = (int(x) for x in key.split("->"))
            tr[(d, e)] = F
        weyl = {int(d): F for d, F in data["weyl"].items()}
        return cls(n, levels, res, tr, weyl)

    @classmethod
    def from_json(cls, text: str) -> "MackeyFunctor":
        return cls.from_dict(json.loads(text))

    def __repr__(self) -> str:
        label = f"{self.name} " if self.name else ""
        return f"<MackeyFunctor {label}C_{self.n} [{self.symbol()}]>"


def zero_functor(n: int) -> MackeyFunctor:
    z = AbGroup()
    return MackeyFunctor(n, {d: z for d in divisors(n)},
                         {(e, d): [] for d, e in covering_pairs(n)},
                         {(d, e): [] for d, e in covering_pairs(n)},
                         {d: [] for d in divisors(n)})


def constant_like(n: int, res_of, tr_of, weyl_of, present=lambda d: True, name="") -> MackeyFunctor:
    """Levelwise Z (or 0 where ``present`` fails) with 1x1 structure maps."""
    levels = {d: AbGroup((), 1) if present(d) else AbGroup() for d in divisors(n)}

    def m(x, src, tgt):
        if not levels[tgt].ngens:
            return []
        if not levels[src].ngens:
            return [[]]
        return [[x]]

    res = {(e, d): m(res_of(d, e), e, d) for d, e in covering_pairs(n)}
    tr = {(d, e): m(tr_of(d, e), d, e) for d, e in covering_pairs(n)}
    weyl = {d: m(weyl_of(d), d, d) for d in divisors(n)}
    return MackeyFunctor(n, levels, res, tr, weyl, name=name)


def direct_sum(parts: list[MackeyFunctor]) -> MackeyFunctor:
    if not parts:
        raise MackeyError("empty direct sum")
    n = parts[0].n
    if all(_is_sorted_divisibility([t for P in parts for t in P.levels[d].torsion]) for d in divisors(n)):
        return _direct_sum_permuted(parts)
    return _direct_sum_general(parts)


def _direct_sum_permuted(parts: list[MackeyFunctor]) -> MackeyFunctor:
    """Block sum reordered into canonical position; valid when the torsion
    orders at each level already form a divisibility chain."""
    n = parts[0].n
    comps = {d: [P.levels[d] for P in parts] for d in divisors(n)}
    perm = {d: _canonical_perm(comps[d]) for d in divisors(n)}
    levels = {}
    for d in divisors(n):
        tors = sorted(t for P in parts for t in P.levels[d].torsion)
        levels[d] = AbGroup(tuple(tors), sum(P.levels[d].rank for P in parts))

    def place(mats, src, tgt):
        if not levels[tgt].ngens:
            return []
        B = block_diag(mats, comps[src], comps[tgt])
        return _permuted(B, perm[tgt], perm[src])

    res, tr, weyl = {}, {}, {}
    for d, e in covering_pairs(n):
        res[(e, d)] = place([P.res[(e, d)] for P in parts], e, d)
        tr[(d, e)] = place([P.tr[(d, e)] for P in parts], d, e)
    for d in divisors(n):
        weyl[d] = place([P.weyl[d] for P in parts], d, d)
    return MackeyFunctor(n, levels, res, tr, weyl)


def _is_sorted_divisibility(orders: list[int]) -> bool:
    s = sorted(orders)
    return all(b % a == 0 for a, b in zip(s, s[1:]))


def _canonical_perm(groups: list[AbGroup]) -> list[int]:
    """Position in the canonical sum of each concatenated coordinate."""
    coords = []  # (sortkey, concat index)
    idx = 0
    for g in groups:
        for t in g.moduli:
            coords.append(((0, t) if t else (1, 0), idx))
            idx += 1
    order = sorted(coords, key=lambda x: (x[0], x[1]))
    pos = [0] * idx
    for new, (_, old) in enumerate(order):
        pos[old] = new
    return pos


def _permuted(F: Matrix, row_pos: list[int], col_pos: list[int]) -> Matrix:
    m, k = len(row_pos), len(col_pos)
    if not m:
        return []
    out = zeros(m, k)
    for i in range(m):
        for j in range(k):
            out[row_pos[i]][col_pos[j]] = F[i][j]
    return out


def _strip_empty(M: MackeyFunctor):
    for key, F in list(M.res.items()):
        if not M.levels[key[1]].ngens:
            M.res[key] = []
    for key, F in list(M.tr.items()):
        if not M.levels[key[1]].ngens:
            M.tr[key] = []
    for d in M.weyl:
        if not M.levels[d].ngens:
            M.weyl[d] = []


def _direct_sum_general(parts: list[MackeyFunctor]) -> MackeyFunctor:
    """Direct sum via the cokernel of the zero map (re-canonicalizes torsion)."""
    n = parts[0].n
    # presentation: Z^(sum ngens) modulo the moduli, then canonicalize
    sqs, levels = {}, {}
    for d in divisors(n):
        mods = [t for P in parts for t in P.levels[d].moduli]
        g = len(mods)
        L = [[int(i == j) for i in range(g)] for j in range(g)]
        N = [[t if i == j else 0 for i in range(g)] for j, t in enumerate(mods) if t]
        sqs[d] = Subquotient(L, N, g)
        levels[d] = sqs[d].group
    res, tr, weyl = {}, {}, {}

    def induced(F_naive, src, tgt):
        cols = []
        for v in sqs[src].generators():
            w = matvec(F_naive, v) if F_naive else []
            cols.append(sqs[tgt].coords(w) if w else [])
        if not levels[tgt].ngens:
            return []
        return [list(r) for r in zip(*cols)] if cols else [[] for _ in range(levels[tgt].ngens)]

    for d, e in covering_pairs(n):
        B = block_diag([P.res[(e, d)] for P in parts], [P.levels[e] for P in parts], [P.levels[d] for P in parts])
        res[(e, d)] = induced(B, e, d)
        B = block_diag([P.tr[(d, e)] for P in parts], [P.levels[d] for P in parts], [P.levels[e] for P in parts])
        tr[(d, e)] = induced(B, d, e)
    for d in divisors(n):
        B = block_diag([P.weyl[d] for P in parts], [P.levels[d] for P in parts], [P.levels[d] for P in parts])
        weyl[d] = induced(B, d, d)
    return MackeyFunctor(n, levels, res, tr, weyl)


# ---------------------------------------------------------------------------
# axioms


@dataclass
class AxiomReport:
    ok: bool
    failure: str = ""
    level: tuple = ()
    matrices: tuple = ()

    def __bool__(self) -> bool:
        return self.ok


def check_mackey_axioms(M: MackeyFunctor) -> AxiomReport:
    n = M.n
    L = M.levels
    for d in M.divisors():
        if not is_homomorphism(M.weyl[d], L[d], L[d]):
            return AxiomReport(False, "weyl is not a homomorphism", (d,), (M.weyl[d],))
        if not maps_equal(M.weyl_pow(d, 0), compose(M.weyl[d], M.weyl_pow(d, n // d - 1), L[d], L[d], L[d]), L[d]):
            return AxiomReport(False, "weyl order does not divide n/d", (d,), (M.weyl[d],))
    if not maps_equal(M.weyl[n], id_map(L[n]), L[n]):
        return AxiomReport(False, "weyl at the top level is not the identity", (n,), (M.weyl[n],))
    for d, e in covering_pairs(n):
        R, T = M.res[(e, d)], M.tr[(d, e)]
        if not is_homomorphism(R, L[e], L[d]):
            return AxiomReport(False, "res is not a homomorphism", (d, e), (R,))
        if not is_homomorphism(T, L[d], L[e]):
            return AxiomReport(False, "tr is not a homomorphism", (d, e), (T,))
        Wd, We = M.weyl[d], M.weyl[e]
        if not maps_equal(compose(R, We, L[e], L[e], L[d]), compose(Wd, R, L[e], L[d], L[d]), L[d]):
            return AxiomReport(False, "res does not commute with weyl", (d, e), (R, Wd, We))
        if not maps_equal(compose(T, Wd, L[d], L[d], L[e]), compose(We, T, L[d], L[e], L[e]), L[e]):
            return AxiomReport(False, "tr does not commute with weyl", (d, e), (T, Wd, We))
        step = M.weyl_pow(d, n // e)  # generator of C_e / C_d acting on level d
        if not maps_equal(compose(step, R, L[e], L[d], L[d]), R, L[d]):
            return AxiomReport(False, "image of res is not fixed by C_e", (d, e), (R, step))
        if not maps_equal(compose(T, step, L[d], L[d], L[e]), T, L[e]):
            return AxiomReport(False, "tr is not invariant under C_e", (d, e), (T, step))
        lhs = compose(R, T, L[d], L[e], L[d])
        rhs = zero_map(L[d], L[d])
        for i in range(e // d):
            rhs = add_maps(rhs, M.weyl_pow(d, i * (n // e)), L[d]) if L[d].ngens else rhs
        if not maps_equal(lhs, rhs, L[d]):
            return AxiomReport(False, "double coset formula res o tr fails", (d, e), (lhs, rhs))
    return AxiomReport(True)


# ---------------------------------------------------------------------------
# morphisms


@dataclass(eq=False)
class MackeyMorphism:
    source: MackeyFunctor
    target: MackeyFunctor
    maps: dict[int, Matrix]

    def check(self) -> AxiomReport:
        S, T = self.source, self.target
        if S.n != T.n:
            return AxiomReport(False, "group orders differ")
        for d in S.divisors():
            if not is_homomorphism(self.maps[d], S.levels[d], T.levels[d]):
                return AxiomReport(False, "level map is not a homomorphism", (d,))
            lhs = compose(self.maps[d], S.weyl[d], S.levels[d], S.levels[d], T.levels[d])
            rhs = compose(T.weyl[d], self.maps[d], S.levels[d], T.levels[d], T.levels[d])
            if not maps_equal(lhs, rhs, T.levels[d]):
                return AxiomReport(False, "does not commute with weyl", (d,))
        for d, e in covering_pairs(S.n):
            f_d, f_e = self.maps[d], self.maps[e]
            lhs = compose(f_d, S.res[(e, d)], S.levels[e], S.levels[d], T.levels[d])
            rhs = compose(T.res[(e, d)], f_e, S.levels[e], T.levels[e], T.levels[d])
            if not maps_equal(lhs, rhs, T.levels[d]):
                return AxiomReport(False, "does not commute with res", (d, e))
            lhs = compose(f_e, S.tr[(d, e)], S.levels[d], S.levels[e], T.levels[e])
            rhs = compose(T.tr[(d, e)], f_d, S.levels[d], T.levels[d], T.levels[e])
            if not maps_equal(lhs, rhs, T.levels[e]):
                return AxiomReport(False, "does not commute with tr", (d, e))
        return AxiomReport(True)

    def then(self, other: "MackeyMorphism") -> "MackeyMorphism":
        """other o self."""
        S, M, T = self.source, self.target, other.target
        return MackeyMorphism(S, T, {d: compose(other.maps[d], self.maps[d], S.levels[d], M.levels[d], T.levels[d])
                                     for d in S.divisors()})

    def is_zero(self) -> bool:
        return all(maps_equal(self.maps[d], zero_map(self.source.levels[d], self.target.levels[d]),
                              self.target.levels[d]) for d in self.source.divisors())


def identity_morphism(M: MackeyFunctor) -> MackeyMorphism:
    return MackeyMorphism(M, M, {d: id_map(M.levels[d]) for d in M.divisors()})


def zero_morphism(S: MackeyFunctor, T: MackeyFunctor) -> MackeyMorphism:
    return MackeyMorphism(S, T, {d: zero_map(S.levels[d], T.levels[d]) for d in S.divisors()})


def _induced_structure(n, sqs, levels, src_functor_maps, ambient_of):
    """Transport structure maps of an ambient functor to subquotients."""
    res, tr, weyl = {}, {}, {}

    def push(F, a, b, A_amb):
        if not levels[b].ngens:
            return []
        cols = []
        for v in sqs[a].generators():
            w = A_amb[b].reduce(matvec(F, v)) if F else [0] * A_amb[b].ngens
            cols.append(sqs[b].coords(w))
        if not cols:
            return [[] for _ in range(levels[b].ngens)]
        return [list(r) for r in zip(*cols)]

    A = ambient_of
    for d, e in covering_pairs(n):
        res[(e, d)] = push(src_functor_maps.res[(e, d)], e, d, A)
        tr[(d, e)] = push(src_functor_maps.tr[(d, e)], d, e, A)
    for d in divisors(n):
        weyl[d] = push(src_functor_maps.weyl[d], d, d, A)
    return res, tr, weyl


def kernel(f: MackeyMorphism) -> tuple[MackeyFunctor, MackeyMorphism]:
    S, T = f.source, f.target
    sqs, levels, incs = {}, {}, {}
    for d in S.divisors():
        sq, inc = hom_kernel(S.levels[d], T.levels[d], f.maps[d])
        sqs[d], levels[d], incs[d] = sq, sq.group, inc
    res, tr, weyl = _induced_structure(S.n, sqs, levels, S, S.levels)
    K = MackeyFunctor(S.n, levels, res, tr, weyl)
    return K, MackeyMorphism(K, S, incs)


def cokernel(f: MackeyMorphism) -> tuple[MackeyFunctor, MackeyMorphism]:
    S, T = f.source, f.target
    sqs, levels, projs = {}, {}, {}
    for d in S.divisors():
        sq, proj = hom_cokernel(S.levels[d], T.levels[d], f.maps[d])
        sqs[d], levels[d], projs[d] = sq, sq.group, proj
    res, tr, weyl = _induced_structure(S.n, sqs, levels, T, T.levels)
    C = MackeyFunctor(S.n, levels, res, tr, weyl)
    return C, MackeyMorphism(T, C, projs)


def image(f: MackeyMorphism) -> MackeyFunctor:
    C, p = cokernel(f)
    K, _ = kernel(p)
    return K


def exact_sequence_check(seq: list[MackeyMorphism]) -> bool:
    """True iff image = kernel at every interior node, levelwise."""
    for a, b in zip(seq, seq[1:]):
        if a.target is not b.source and a.target.levels != b.source.levels:
            raise MackeyError("morphisms are not composable")
        M = a.target
        for d in M.divisors():
            A, B, C = a.source.levels[d], M.levels[d], b.target.levels[d]
            comp = compose(b.maps[d], a.maps[d], A, B, C)
            if not maps_equal(comp, zero_map(A, C), C):
                return False
            if not B.ngens:
                continue
            ker_sq, _ = hom_kernel(B, C, b.maps[d])
            _, NB = presented(B)
            cols = [list(c) for c in columns(a.maps[d], A.ngens) if any(c)] if A.ngens else []
            if not Subquotient(ker_sq.L, NB + cols, B.ngens).group.is_zero():
                return False
    return True


def short_exact(A: MackeyFunctor, B: MackeyFunctor, C: MackeyFunctor,
                f: MackeyMorphism, g: MackeyMorphism) -> bool:
    """0 -> A -> B -> C -> 0 exact."""
    z = zero_functor(A.n)
    return exact_sequence_check([zero_morphism(z, A), f, g, zero_morphism(C, z)])


# ---------------------------------------------------------------------------
# restriction and induction


def restrict_mackey(M: MackeyFunctor, d: int) -> MackeyFunctor:
    n = M.n
    if n % d:
        raise MackeyError(f"{d} does not divide {n}")
    levels = {m: M.levels[m] for m in divisors(d)}
    res = {(e, c): M.res[(e, c)] for c, e in covering_pairs(d)}
    tr = {(c, e): M.tr[(c, e)] for c, e in covering_pairs(d)}
    weyl = {m: M.weyl_pow(m, n // d) for m in divisors(d)}
    return MackeyFunctor(d, levels, res, tr, weyl)


def _lcm(a, b):
    return a * b // gcd(a, b)


def _orbit_shift(n: int, h: int, k: int) -> tuple[int, int]:
    """(c, s0): number of C_h-orbits on C_n/C_k and the shift identifying
    gamma^c C_k with gamma_H^{s0} C_k."""
    c = n // _lcm(h, k)
    m = n // k
    for s0 in range(h):
        if ((n // h) * s0 - c) % m == 0:
            return c, s0
    raise MackeyError("no orbit shift")


def induce(M: MackeyFunctor, n: int) -> MackeyFunctor:
    """Ind_H^G for H = C_h (M over C_h) and G = C_n: value on G/C_k is M on
    the restricted C_h-set, a disjoint union of C_h/C_gcd(h,k) orbits."""
    h = M.n
    if n % h:
        raise MackeyError(f"{h} does not divide {n}")
    info = {k: _orbit_shift(n, h, k) for k in divisors(n)}
    g_of = {k: gcd(h, k) for k in divisors(n)}
    comps = {k: [M.levels[g_of[k]]] * info[k][0] for k in divisors(n)}
    levels = {k: _sorted_concat(comps[k]) for k in divisors(n)}
    perm = {k: _canonical_perm(comps[k]) for k in divisors(n)}

    def offsets(k):
        out, o = [], 0
        for grp in comps[k]:
            out.append(o)
            o += grp.ngens
        return out

    def place(blocks: dict, src: int, tgt: int) -> Matrix:
        """blocks[(t_tgt, t_src)] -> matrix, assembled and permuted."""
        rows = sum(gg.ngens for gg in comps[tgt])
        cols = sum(gg.ngens for gg in comps[src])
        F = zeros(rows, cols)
        ot, os_ = offsets(tgt), offsets(src)
        for (ti, si), B in blocks.items():
            for i in range(comps[tgt][ti].ngens):
                for j in range(comps[src][si].ngens):
                    F[ot[ti] + i][os_[si] + j] += B[i][j]
        F = _permuted(F, perm[tgt], perm[src])
        return levels[tgt].reduce_matrix(F, cols) if rows else []

    weyl = {}
    for k in divisors(n):
        c, s0 = info[k]
        g = g_of[k]
        blocks = {}
        if M.levels[g].ngens:
            for t in range(c):
                if t + 1 < c:
                    blocks[(t, t + 1)] = id_map(M.levels[g])
                else:
                    blocks[(t, 0)] = M.weyl_pow(g, s0)
        weyl[k] = place(blocks, k, k)
    res, tr = {}, {}
    for kp, k in covering_pairs(n):
        c, s0 = info[k]
        cp = info[kp][0]
        g, gp = g_of[k], g_of[kp]
        rb, tb = {}, {}
        if M.levels[g].ngens and M.levels[gp].ngens:
            for tp in range(cp):
                t, q = tp % c, tp // c
                R = M.res_map(g, gp)
                rb[(tp, t)] = compose(R, M.weyl_pow(g, q * s0), M.levels[g], M.levels[g], M.levels[gp])
                T = M.tr_map(gp, g)
                tb[(t, tp)] = compose(T, M.weyl_pow(gp, -q * s0), M.levels[gp], M.levels[gp], M.levels[g])
        res[(k, kp)] = place(rb, k, kp)
        tr[(kp, k)] = place(tb, kp, k)
    out = MackeyFunctor(n, levels, res, tr, weyl, name=f"Ind({M.name})" if M.name else "")
    _strip_empty(out)
    return out


def _sorted_concat(groups: list[AbGroup]) -> AbGroup:
    orders = sorted(t for g in groups for t in g.torsion)
    if not _is_sorted_divisibility(orders):
        raise MackeyError("induction produced a non-canonical torsion list")
    return AbGroup(tuple(orders), sum(g.rank for g in groups))


def counit(M: MackeyFunctor, h: int) -> MackeyMorphism:
    """Ind_H^G Res_H M -> M for H = C_h, the sum over orbits of transfers."""
    n = M.n
    R = restrict_mackey(M, h)
    I = induce(R, n)
    maps = {}
    for k in divisors(n):
        c, _ = _orbit_shift(n, h, k)
        g = gcd(h, k)
        comps = [M.levels[g]] * c
        cols = sum(x.ngens for x in comps)
        F = zeros(M.levels[k].ngens, cols)
        o = 0
        for t in range(c):
            B = compose(M.tr_map(g, k), M.weyl_pow(g, -t), M.levels[g], M.levels[g], M.levels[k])
            for i in range(M.levels[k].ngens):
                for j in range(M.levels[g].ngens):
                    F[i][o + j] = B[i][j]
            o += M.levels[g].ngens
        perm = _canonical_perm(comps)
        F = _permuted(F, list(range(M.levels[k].ngens)), perm) if M.levels[k].ngens else []
        maps[k] = M.levels[k].reduce_matrix(F, cols) if F else []
    return MackeyMorphism(I, M, maps)


# ---------------------------------------------------------------------------
# isomorphism testing


def _map_signature(F, A, B):
    return tuple(str(g) for g in hom_image_rank_data(A, B, F))


def fingerprint(M: MackeyFunctor) -> tuple:
    """Isomorphism invariants: levels plus kernel/image/cokernel types of the
    structure maps and a few canonical composites."""
    L = M.levels
    sig = [("n", M.n)]
    for d in M.divisors():
        A = L[d]
        sig.append((d, str(A)))
        W = M.weyl[d]
        sig.append(("w-1", d, _map_signature(add_maps(W, scale_map(id_map(A), -1, A), A) if A.ngens else [], A, A)))
        sig.append(("w+1", d, _map_signature(add_maps(W, id_map(A), A) if A.ngens else [], A, A)))
    for d, e in covering_pairs(M.n):
        R, T = M.res[(e, d)], M.tr[(d, e)]
        sig.append(("res", d, e, _map_signature(R, L[e], L[d])))
        sig.append(("tr", d, e, _map_signature(T, L[d], L[e])))
        sig.append(("tr.res", d, e, _map_signature(compose(T, R, L[e], L[d], L[e]), L[e], L[e])))
    return tuple(sig)


def _automorphisms(A: AbGroup, bound: int = 1, limit: int = 5000):
    """Automorphisms of A in canonical coordinates with small entries."""
    g = A.ngens
    if g == 0:
        yield []
        return
    mods = A.moduli
    ranges = []
    for i in range(g):
        t = mods[i]
        ranges.append(range(t) if t else range(-bound, bound + 1))
    cells = [ranges[i] for i in range(g) for _ in range(g)]
    count = 0
    for entries in itertools.product(*cells):
        F = [list(entries[i * g:(i + 1) * g]) for i in range(g)]
        if not is_homomorphism(F, A, A):
            continue
        k, im, cok = hom_image_rank_data(A, A, F)
        if k.ngens or cok.ngens:
            continue
        yield F
        count += 1
        if count >= limit:
            return


def isomorphic(M: MackeyFunctor, N: MackeyFunctor, max_gens: int = 2) -> bool:
    """Exact isomorphism test by search over small level automorphisms.

    Levels with more than ``max_gens`` canonical generators fall back to
    comparing :func:`fingerprint`, which is a necessary condition only.
    """
    if M.n != N.n or any(M.levels[d] != N.levels[d] for d in M.divisors()):
        return False
    if fingerprint(M) != fingerprint(N):
        return False
    ds = sorted(M.divisors())
    if any(M.levels[d].ngens > max_gens for d in ds):
        return True
    cands = {}
    for d in ds:
        A = M.levels[d]
        cands[d] = list(_automorphisms(A, bound=1 if A.ngens > 1 else 1))
    L = M.levels

    def consistent(assign, d):
        A = L[d]
        phi = assign[d]
        # weyl
        if not maps_equal(compose(phi, M.weyl[d], A, A, A), compose(N.weyl[d], phi, A, A, A), A):
            return False
        for (a, b) in covering_pairs(M.n):
            if a in assign and b in assign and d in (a, b):
                pa, pb = assign[a], assign[b]
                if not maps_equal(compose(pa, M.res[(b, a)], L[b], L[a], L[a]),
                                  compose(N.res[(b, a)], pb, L[b], L[b], L[a]), L[a]):
                    return False
                if not maps_equal(compose(pb, M.tr[(a, b)], L[a], L[b], L[b]),
                                  compose(N.tr[(a, b)], pa, L[a], L[a], L[b]), L[b]):
                    return False
        return True

    def search(i, assign):
        if i == len(ds):
            return True
        d = ds[i]
        for phi in cands[d]:
            assign[d] = phi
            if consistent(assign, d) and search(i + 1, assign):
                return True
            del assign[d]
        return False

    return search(0, {})


# ---------------------------------------------------------------------------
# catalogue


CATALOGUE_NAMES = ("Z", "Zdual", "Zsign", "Zsign_dual", "circ", "circbar", "bullet", "dotted")
_SIGN_ENTRIES = {"Zsign", "Zsign_dual", "circbar", "bullet", "dotted"}
_cache: dict[tuple[str, int], MackeyFunctor] = {}


def _is_two_power(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def constant_Z(n: int) -> MackeyFunctor:
    return constant_like(n, lambda d, e: 1, lambda d, e: e // d, lambda d: 1, name="Z")


def constant_Z_dual(n: int) -> MackeyFunctor:
    return constant_like(n, lambda d, e: e // d, lambda d, e: 1, lambda d: 1, name="Zdual")


def sign_Z(n: int) -> MackeyFunctor:
    """Fixed points of the sign representation: Z below the top, 0 at the top."""
    return constant_like(n, lambda d, e: 1, lambda d, e: e // d, lambda d: -1,
                         present=lambda d: d < n, name="Zsign")


def underlying_iso(n: int) -> MackeyMorphism:
    """The map Zdual -> Z which is the identity on the underlying level."""
    S, T = constant_Z_dual(n), constant_Z(n)
    return MackeyMorphism(S, T, {d: [[d]] for d in divisors(n)})


def catalogue(name: str, n: int) -> MackeyFunctor:
    if name not in CATALOGUE_NAMES:
        raise MackeyError(f"unknown catalogue entry {name!r}")
    if name in _SIGN_ENTRIES and (n % 2 or not _is_two_power(n)):
        raise MackeyError(f"{name} needs n a power of 2, got {n}")
    key = (name, n)
    if key not in _cache:
        _cache[key] = _build(name, n)
        _cache[key].name = name
    return _cache[key]


def circ_sequence(n: int) -> tuple[MackeyMorphism, MackeyMorphism]:
    """0 -> Zdual -> Z -> circ -> 0."""
    f = underlying_iso(n)
    C, p = cokernel(f)
    C.name = "circ"
    return f, p


def counit_sequence(n: int):
    """0 -> circbar -> Ind Res circ -> circ -> bullet -> 0 (restriction to the
    index two subgroup)."""
    circ = catalogue("circ", n)
    eps = counit(circ, n // 2)
    K, inc = kernel(eps)
    C, proj = cokernel(eps)
    K.name, C.name = "circbar", "bullet"
    return inc, eps, proj


def _build(name: str, n: int) -> MackeyFunctor:
    if name == "Z":
        return constant_Z(n)
    if name == "Zdual":
        return constant_Z_dual(n)
    if name == "Zsign":
        return sign_Z(n)
    if name == "Zsign_dual":
        return sign_Z(n).dual()
    if name == "circ":
        return circ_sequence(n)[1].target
    if name == "circbar":
        return counit_sequence(n)[0].source
    if name == "bullet":
        return counit_sequence(n)[2].target
    if name == "dotted":
        from .extensions import dotted_functor
        return dotted_functor(n)
    raise MackeyError(name)
