"""Cellular chains of C_n-spaces as complexes of permutation modules.

A complex of permutation modules C determines Mackey functors levelwise:
the value at C_n/C_d is the C_d-fixed subcomplex, whose basis is the set of
C_d-orbit sums.  Restriction is inclusion of fixed points, transfer is the
relative norm and the Weyl action is gamma.  Bredon homology with constant
coefficients is the homology of this fixed point system, and RO-graded
homotopy of F(X, HZ) in degree a + W+ - W- is the homology in degree a of
Hom(C(S^W+) x C(X), C(S^W-)) with gamma acting by conjugation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd

from .linalg import AbGroup, Matrix, Subquotient, columns, echelon, matvec, zeros
from .mackey import MackeyFunctor, MackeyMorphism, covering_pairs, isomorphic, zero_functor
from .rep_ring import VirtualRep, divisors, parse_rep

SparseCol = dict[int, int]


class ChainComplexError(ValueError):
    pass


@dataclass(frozen=True)
class OrbitCell:
    dimension: int
    isotropy: int  # the cell has orbit type C_n / C_isotropy


# ---------------------------------------------------------------------------
# complexes


class Complex:
    """Graded permutation modules with a gamma-equivariant differential.

    Subclasses provide ``degrees``, ``size(k)``, ``gamma(k)`` (the permutation
    of the basis of C_k by the generator) and ``dcols(k)`` (the differential
    C_k -> C_{k-1} as sparse columns).
    """

    n: int

    def degrees(self) -> range:
        raise NotImplementedError

    def size(self, k: int) -> int:
        raise NotImplementedError

    def gamma(self, k: int) -> list[int]:
        raise NotImplementedError

    def dcols(self, k: int) -> list[SparseCol]:
        raise NotImplementedError

    # derived data ------------------------------------------------------

    def cells(self) -> list[OrbitCell]:
        out = []
        for k in self.degrees():
            for orb in self.orbits(k, self.n):
                out.append(OrbitCell(k, self.n // len(orb)))
        return out

    def orbits(self, k: int, d: int) -> list[list[int]]:
        """Orbits of C_d (generated by gamma^(n/d)) on the basis of C_k."""
        key = (k, d)
        cache = self.__dict__.setdefault("_orbit_cache", {})
        if key not in cache:
            g = self.gamma(k)
            step = self.n // d
            seen = [False] * self.size(k)
            out = []
            for i in range(self.size(k)):
                if seen[i]:
                    continue
                orb = []
                j = i
                while not seen[j]:
                    seen[j] = True
                    orb.append(j)
                    for _ in range(step):
                        j = g[j]
                out.append(orb)
            cache[key] = out
        return cache[key]

    def orbit_index(self, k: int, d: int) -> list[int]:
        key = (k, d)
        cache = self.__dict__.setdefault("_orbit_index_cache", {})
        if key not in cache:
            idx = [0] * self.size(k)
            for o, orb in enumerate(self.orbits(k, d)):
                for i in orb:
                    idx[i] = o
            cache[key] = idx
        return cache[key]

    def check_d2(self) -> bool:
        for k in self.degrees():
            if k - 1 not in self.degrees() or k - 2 not in self.degrees():
                continue
            lower = self.dcols(k - 1)
            for col in self.dcols(k):
                acc: dict[int, int] = {}
                for r, c in col.items():
                    for r2, c2 in lower[r].items():
                        acc[r2] = acc.get(r2, 0) + c * c2
                if any(acc.values()):
                    return False
        return True

    def check_equivariant(self) -> bool:
        for k in self.degrees():
            if k - 1 not in self.degrees():
                continue
            g, g1 = self.gamma(k), self.gamma(k - 1)
            cols = self.dcols(k)
            for i, col in enumerate(cols):
                moved = {g1[r]: c for r, c in col.items()}
                if moved != {r: c for r, c in cols[g[i]].items() if c}:
                    return False
        return True

    # fixed point system ----------------------------------------------

    def fixed_d(self, k: int, d: int) -> Matrix:
        """Differential of the C_d-fixed subcomplex in orbit-sum bases."""
        key = (k, d)
        cache = self.__dict__.setdefault("_fixed_cache", {})
        if key in cache:
            return cache[key]
        rows = len(self.orbits(k - 1, d)) if k - 1 in self.degrees() else 0
        src = self.orbits(k, d) if k in self.degrees() else []
        if not rows:
            cache[key] = []
            return []
        M = zeros(rows, len(src))
        if src:
            cols = self.dcols(k)
            tidx = self.orbit_index(k - 1, d)
            reps = {o[0] for o in self.orbits(k - 1, d)}
            for j, orb in enumerate(src):
                acc: dict[int, int] = {}
                for i in orb:
                    for r, c in cols[i].items():
                        if r in reps:
                            acc[r] = acc.get(r, 0) + c
                for r, c in acc.items():
                    if c:
                        M[tidx[r]][j] = c
        cache[key] = M
        return M

    def fixed_dim(self, k: int, d: int) -> int:
        return len(self.orbits(k, d)) if k in self.degrees() else 0

    def res_chain(self, k: int, e: int, d: int) -> Matrix:
        """Inclusion of C_e-fixed chains into C_d-fixed chains (d | e)."""
        big, small = self.orbits(k, e), self.orbit_index(k, d)
        rows = self.fixed_dim(k, d)
        M = zeros(rows, len(big))
        for j, orb in enumerate(big):
            for o in {small[i] for i in orb}:
                M[o][j] = 1
        return M

    def tr_chain(self, k: int, d: int, e: int) -> Matrix:
        """Relative norm from C_d-fixed to C_e-fixed chains."""
        small, bigidx = self.orbits(k, d), self.orbit_index(k, e)
        bigorbs = self.orbits(k, e)
        M = zeros(len(bigorbs), len(small))
        for j, orb in enumerate(small):
            t = bigidx[orb[0]]
            M[t][j] = (e // d) * len(orb) // len(bigorbs[t])
        return M

    def weyl_chain(self, k: int, d: int) -> Matrix:
        orbs, idx, g = self.orbits(k, d), self.orbit_index(k, d), self.gamma(k)
        M = zeros(len(orbs), len(orbs))
        for j, orb in enumerate(orbs):
            M[idx[g[orb[0]]]][j] = 1
        return M


class ExplicitComplex(Complex):
    def __init__(self, n: int, gammas: dict[int, list[int]], d: dict[int, list[SparseCol]],
                 labels: dict[int, list] | None = None):
        self.n = n
        self._gammas = {k: list(v) for k, v in gammas.items() if v}
        self._d = d
        self.labels = labels or {}
        ks = sorted(self._gammas)
        self._lo = ks[0] if ks else 0
        self._hi = ks[-1] if ks else -1

    def degrees(self) -> range:
        return range(self._lo, self._hi + 1)

    def size(self, k: int) -> int:
        return len(self._gammas.get(k, ()))

    def gamma(self, k: int) -> list[int]:
        return self._gammas.get(k, [])

    def dcols(self, k: int) -> list[SparseCol]:
        if k - 1 not in self._gammas:
            return [{} for _ in range(self.size(k))]
        return self._d.get(k, [{} for _ in range(self.size(k))])

    def top_degree(self) -> int:
        return self._hi


def orbit_perm(sizes: list[int]) -> list[int]:
    """gamma on a sum of cyclic orbits of the given sizes (shift by one)."""
    out, off = [], 0
    for m in sizes:
        out.extend(off + (i + 1) % m for i in range(m))
        off += m
    return out


def shift(C: ExplicitComplex, a: int) -> ExplicitComplex:
    """Suspension by a trivial dimensions; the differential picks up (-1)^a."""
    s = -1 if a % 2 else 1
    return ExplicitComplex(C.n, {k + a: C.gamma(k) for k in C.degrees()},
                           {k + a: [{r: s * c for r, c in col.items()} for col in C.dcols(k)] for k in C.degrees()})


def tensor(A: Complex, B: Complex) -> ExplicitComplex:
    """A x B with the diagonal action and Koszul signs."""
    if A.n != B.n:
        raise ChainComplexError("group orders differ")
    gam, dd, index = {}, {}, {}
    for k in range(A.degrees().start + B.degrees().start, A.degrees().stop + B.degrees().stop - 1):
        pos = 0
        g = []
        for p in A.degrees():
            q = k - p
            if q not in B.degrees() or not A.size(p) or not B.size(q):
                continue
            ga, gb = A.gamma(p), B.gamma(q)
            for i in range(A.size(p)):
                for j in range(B.size(q)):
                    index[(p, i, q, j)] = pos + i * B.size(q) + j
            for i in range(A.size(p)):
                for j in range(B.size(q)):
                    g.append(pos + ga[i] * B.size(q) + gb[j])
            pos += A.size(p) * B.size(q)
        if g:
            gam[k] = g
    for k in gam:
        cols = [None] * len(gam[k])
        for p in A.degrees():
            q = k - p
            if q not in B.degrees() or not A.size(p) or not B.size(q):
                continue
            da, db = A.dcols(p), B.dcols(q)
            sgn = -1 if p % 2 else 1
            for i in range(A.size(p)):
                for j in range(B.size(q)):
                    col: SparseCol = {}
                    if p - 1 in A.degrees():
                        for r, c in da[i].items():
                            key = index[(p - 1, r, q, j)]
                            col[key] = col.get(key, 0) + c
                    if q - 1 in B.degrees():
                        for r, c in db[j].items():
                            key = index[(p, i, q - 1, r)]
                            col[key] = col.get(key, 0) + sgn * c
                    cols[index[(p, i, q, j)]] = {r: c for r, c in col.items() if c}
        dd[k] = cols
    return ExplicitComplex(A.n, gam, dd)


def restrict_complex(C: Complex, h: int) -> ExplicitComplex:
    """The same complex viewed over C_h, generated by gamma^(n/h)."""
    if C.n % h:
        raise ChainComplexError(f"{h} does not divide {C.n}")
    step = C.n // h
    gam = {}
    for k in C.degrees():
        g = C.gamma(k)
        out = list(range(C.size(k)))
        for _ in range(step):
            out = [g[i] for i in out]
        gam[k] = out
    return ExplicitComplex(h, gam, {k: C.dcols(k) for k in C.degrees()})


def induce_complex(C: Complex, n: int) -> ExplicitComplex:
    """Z[C_n] tensored over Z[C_h] with C: basis C_n x_{C_h} basis(C)."""
    h = C.n
    if n % h:
        raise ChainComplexError(f"{h} does not divide {n}")
    q = n // h  # coset representatives gamma^t, t < q
    gam, dd = {}, {}
    for k in C.degrees():
        s = C.size(k)
        gh = C.gamma(k)
        # gamma * (gamma^t x) = gamma^(t+1) x, and gamma^q x = (gamma_H) x
        gam[k] = [((t + 1) * s + i) if t + 1 < q else gh[i] for t in range(q) for i in range(s)]
        cols = C.dcols(k)
        s1 = C.size(k - 1)
        dd[k] = [{t * s1 + r: c for r, c in cols[i].items()} for t in range(q) for i in range(s)]
    return ExplicitComplex(n, gam, dd)


# ---------------------------------------------------------------------------
# representation spheres


def _unit_inverse(j: int, m: int) -> int:
    if m == 1:
        return 0
    return pow(j, -1, m)


def _sign_complex(n: int) -> ExplicitComplex:
    return ExplicitComplex(n, {0: [0], 1: [1, 0]}, {1: [{0: 1}, {0: 1}]})


def _lambda_complex(k: int, n: int, reduced: bool = True) -> ExplicitComplex:
    g = gcd(k, n)
    m = n // g
    jp = _unit_inverse((k // g) % m, m)
    perm = orbit_perm([m])
    d2 = [{(i + jp) % m: 1, i: -1} if m > 1 else {} for i in range(m)]
    d2 = [{r: c for r, c in col.items() if c} for col in d2]
    if m == 1:
        d2 = [{}]
    if not reduced:
        return ExplicitComplex(n, {0: perm, 1: perm}, {1: d2})
    return ExplicitComplex(n, {0: [0], 1: perm, 2: perm}, {1: [{0: 1}] * m, 2: d2})


def _trivial_sphere(n: int, a: int) -> ExplicitComplex:
    return ExplicitComplex(n, {a: [0]}, {})


def _summands(V: VirtualRep) -> list[tuple[str, int]]:
    """Nontrivial irreducible summands, ordered by decreasing kernel."""
    n = V.n
    out = [("sign", n // 2)] * V.sign
    lam = []
    for k, c in zip(range(1, n), V.rot):
        lam.extend([("rot", k)] * c)
    lam.sort(key=lambda t: -gcd(t[1], n))
    return out + lam


def _kernel(n: int, item: tuple[str, int]) -> int:
    kind, k = item
    return n // 2 if kind == "sign" else gcd(k, n)


def sphere_chain_complex(V: VirtualRep, model: str = "small") -> ExplicitComplex:
    """Reduced cellular chains of S^V.

    ``small`` adds one orbit of cells per dimension, attaching summands in
    order of decreasing kernel (possible when the kernels are nested).
    ``tensor`` smashes the standard complexes of the irreducible summands.
    """
    if not V.is_actual():
        raise ChainComplexError("sphere_chain_complex needs an actual representation; "
                                "use ro_graded_homotopy_HZ for virtual degrees")
    n = V.n
    items = _summands(V)
    kernels = [_kernel(n, it) for it in items]
    nested = all(b and a % b == 0 for a, b in zip(kernels, kernels[1:]))
    if model == "tensor" or not nested:
        C: Complex = _trivial_sphere(n, V.trivial)
        for kind, k in items:
            C = tensor(C, _sign_complex(n) if kind == "sign" else _lambda_complex(k, n))
        return C if isinstance(C, ExplicitComplex) else ExplicitComplex(n, {}, {})
    if model != "small":
        raise ChainComplexError(f"unknown model {model!r}")
    t = V.trivial
    gam = {t: [0]}
    dd: dict[int, list[SparseCol]] = {}
    z: SparseCol = {0: 1}
    eps = 1
    for kind, k in items:
        if kind == "sign":
            gam[t + 1] = [1, 0]
            dd[t + 1] = [dict(z), {r: eps * c for r, c in z.items()}]
            z = {0: 1, 1: -eps}
            eps = -eps
            t += 1
            continue
        g = gcd(k, n)
        m = n // g
        jp = _unit_inverse((k // g) % m, m)
        perm = orbit_perm([m])
        gam[t + 1] = perm
        gam[t + 2] = perm
        dd[t + 1] = [{r: (eps ** i) * c for r, c in z.items()} for i in range(m)]
        e_jp = eps ** jp
        dd[t + 2] = [{(i + jp) % m: e_jp, i: -1} for i in range(m)]
        z = {}
        for s in range(m):
            z[(s * jp) % m] = eps ** (s * jp)
        t += 2
    return ExplicitComplex(n, gam, dd)


def quotient_target_complex(d: int, n: int) -> ExplicitComplex:
    """Unreduced chains of the unit circle S(lambda(d)) with a disjoint basepoint."""
    if d < 1:
        raise ChainComplexError("d must be positive")
    return _lambda_complex(d, n, reduced=False)


def point_complex(n: int) -> ExplicitComplex:
    return _trivial_sphere(n, 0)


# ---------------------------------------------------------------------------
# hom complexes


class HomComplex(Complex):
    """Hom_Z(P, Q) with gamma acting by conjugation; degree a maps P_p -> Q_{p+a}.

    D(f) = d_Q f - (-1)^a f d_P.
    """

    def __init__(self, P: Complex, Q: Complex):
        if P.n != Q.n:
            raise ChainComplexError("group orders differ")
        self.n = P.n
        self.P, self.Q = P, Q
        self._blocks: dict[int, list[tuple[int, int, int]]] = {}
        self._cache_g: dict[int, list[int]] = {}
        self._cache_d: dict[int, list[SparseCol]] = {}
        Pd, Qd = P.degrees(), Q.degrees()
        self._lo = Qd.start - (Pd.stop - 1)
        self._hi = (Qd.stop - 1) - Pd.start
        self._dPT = {}
        for p in Pd:
            if p + 1 in Pd:
                rows = [dict() for _ in range(P.size(p))]
                for ip, col in enumerate(P.dcols(p + 1)):
                    for r, c in col.items():
                        rows[r][ip] = c
                self._dPT[p] = rows

    def degrees(self) -> range:
        return range(self._lo, self._hi + 1)

    def blocks(self, a: int) -> list[tuple[int, int, int]]:
        """(p, offset, |Q_{p+a}|) for each nonzero block of degree a."""
        if a not in self._blocks:
            out, off = [], 0
            for p in self.P.degrees():
                q = p + a
                if q in self.Q.degrees() and self.P.size(p) and self.Q.size(q):
                    out.append((p, off, self.Q.size(q)))
                    off += self.P.size(p) * self.Q.size(q)
            self._blocks[a] = out
        return self._blocks[a]

    def size(self, a: int) -> int:
        return sum(self.P.size(p) * w for p, _, w in self.blocks(a))

    def index(self, a: int, p: int, i: int, j: int) -> int:
        for pp, off, w in self.blocks(a):
            if pp == p:
                return off + i * w + j
        raise KeyError((a, p))

    def gamma(self, a: int) -> list[int]:
        if a not in self._cache_g:
            out = []
            for p, off, w in self.blocks(a):
                gp, gq = self.P.gamma(p), self.Q.gamma(p + a)
                for i in range(self.P.size(p)):
                    for j in range(w):
                        out.append(off + gp[i] * w + gq[j])
            self._cache_g[a] = out
        return self._cache_g[a]

    def dcols(self, a: int) -> list[SparseCol]:
        if a in self._cache_d:
            return self._cache_d[a]
        sgn = 1 if a % 2 else -1  # -(-1)^a
        lower = {p: (off, w) for p, off, w in self.blocks(a - 1)}
        cols = []
        for p, off, w in self.blocks(a):
            q = p + a
            dQ = self.Q.dcols(q) if q - 1 in self.Q.degrees() else None
            dPT = self._dPT.get(p)
            for i in range(self.P.size(p)):
                for j in range(w):
                    col: SparseCol = {}
                    if dQ is not None and p in lower:
                        o2, w2 = lower[p]
                        for r, c in dQ[j].items():
                            key = o2 + i * w2 + r
                            col[key] = col.get(key, 0) + c
                    if dPT is not None and p + 1 in lower:
                        o2, w2 = lower[p + 1]
                        for ip, c in dPT[i].items():
                            key = o2 + ip * w2 + j
                            col[key] = col.get(key, 0) + sgn * c
                    cols.append({r: c for r, c in col.items() if c})
        self._cache_d[a] = cols
        return cols


# ---------------------------------------------------------------------------
# homology as Mackey functors


def _cols_to_matrix(cols: list[list[int]], nrows: int) -> Matrix:
    if not nrows:
        return []
    if not cols:
        return [[] for _ in range(nrows)]
    return [list(r) for r in zip(*cols)]


@dataclass
class LevelHomology:
    sq: Subquotient
    dim: int


class HomologyFunctor:
    """H_k of the fixed point system of a complex, with access to cycles."""

    def __init__(self, C: Complex, k: int):
        self.C, self.k, self.n = C, k, C.n
        self.levels: dict[int, LevelHomology] = {}
        for d in divisors(C.n):
            self.levels[d] = self._level(d)
        self.mackey = self._assemble()

    def _level(self, d: int) -> LevelHomology:
        C, k = self.C, self.k
        dim = C.fixed_dim(k, d)
        if not dim:
            return LevelHomology(Subquotient([], [], 0), 0)
        Dk = C.fixed_d(k, d)
        if Dk:
            L = echelon(Dk, dim).kernel()
        else:
            L = [[int(i == j) for i in range(dim)] for j in range(dim)]
        D1 = C.fixed_d(k + 1, d) if C.fixed_dim(k + 1, d) else []
        N = [c for c in columns(D1, C.fixed_dim(k + 1, d)) if any(c)] if D1 else []
        return LevelHomology(Subquotient(L, N, dim), dim)

    def group(self, d: int) -> AbGroup:
        return self.levels[d].sq.group

    def push(self, F: Matrix, src: int, tgt: int) -> Matrix:
        """Matrix in canonical coordinates of a chain map F between levels."""
        A, B = self.levels[src], self.levels[tgt]
        gB = B.sq.group
        if not gB.ngens:
            return []
        cols = []
        for v in A.sq.generators():
            w = matvec(F, v) if F else [0] * B.dim
            cols.append(B.sq.coords(w))
        return _cols_to_matrix(cols, gB.ngens)

    def coords(self, d: int, chain: list[int]) -> list[int]:
        return self.levels[d].sq.coords(chain)

    def _assemble(self) -> MackeyFunctor:
        C, k, n = self.C, self.k, self.n
        levels = {d: self.group(d) for d in divisors(n)}
        res, tr, weyl = {}, {}, {}
        for d, e in covering_pairs(n):
            res[(e, d)] = self.push(C.res_chain(k, e, d) if C.fixed_dim(k, d) else [], e, d)
            tr[(d, e)] = self.push(C.tr_chain(k, d, e) if C.fixed_dim(k, e) else [], d, e)
        for d in divisors(n):
            weyl[d] = self.push(C.weyl_chain(k, d) if C.fixed_dim(k, d) else [], d, d)
        return MackeyFunctor(n, levels, res, tr, weyl)


def homology(C: Complex, k: int) -> MackeyFunctor:
    """Bredon homology with constant coefficients in degree k."""
    if not C.check_d2():
        raise ChainComplexError("d o d is not zero")
    return HomologyFunctor(C, k).mackey


def homology_all(C: Complex) -> dict[int, MackeyFunctor]:
    if not C.check_d2():
        raise ChainComplexError("d o d is not zero")
    return {k: HomologyFunctor(C, k).mackey for k in C.degrees()}


# ---------------------------------------------------------------------------
# chain maps


@dataclass
class ChainMap:
    """Equivariant chain map; ``maps[k]`` sends basis i of C_k to a sparse chain."""

    source: Complex
    target: Complex
    maps: dict[int, list[SparseCol]]
    degree: int = 0

    def fixed(self, k: int, d: int) -> Matrix:
        S, T = self.source, self.target
        kt = k + self.degree
        rows = T.fixed_dim(kt, d)
        src = S.orbits(k, d) if k in S.degrees() else []
        M = zeros(rows, len(src))
        if not rows or k not in self.maps:
            return M
        cols = self.maps[k]
        tidx = T.orbit_index(kt, d)
        reps = {o[0] for o in T.orbits(kt, d)}
        for j, orb in enumerate(src):
            acc: dict[int, int] = {}
            for i in orb:
                for r, c in cols[i].items():
                    if r in reps:
                        acc[r] = acc.get(r, 0) + c
            for r, c in acc.items():
                M[tidx[r]][j] = c
        return M

    def induced(self, HS: HomologyFunctor, HT: HomologyFunctor) -> MackeyMorphism:
        maps = {}
        for d in divisors(self.source.n):
            A, B = HS.levels[d], HT.levels[d]
            gB = B.sq.group
            if not gB.ngens:
                maps[d] = []
                continue
            F = self.fixed(HS.k, d)
            cols = [B.sq.coords(matvec(F, v) if F else [0] * B.dim) for v in A.sq.generators()]
            maps[d] = _cols_to_matrix(cols, gB.ngens)
        return MackeyMorphism(HS.mackey, HT.mackey, maps)

    def check(self) -> bool:
        """Equivariance and commutation with differentials."""
        S, T = self.source, self.target
        for k in S.degrees():
            if k not in self.maps:
                continue
            gS, gT = S.gamma(k), T.gamma(k + self.degree)
            for i, col in enumerate(self.maps[k]):
                if {gT[r]: c for r, c in col.items()} != self.maps[k][gS[i]]:
                    return False
            if k - 1 in S.degrees() and k - 1 in self.maps:
                sgn = -1 if self.degree % 2 else 1
                for i, col in enumerate(self.maps[k]):
                    lhs: dict[int, int] = {}
                    if k + self.degree - 1 in T.degrees():
                        dT = T.dcols(k + self.degree)
                        for r, c in col.items():
                            for r2, c2 in dT[r].items():
                                lhs[r2] = lhs.get(r2, 0) + c * c2
                    rhs: dict[int, int] = {}
                    for r, c in S.dcols(k)[i].items():
                        for r2, c2 in self.maps[k - 1][r].items():
                            rhs[r2] = rhs.get(r2, 0) + sgn * c * c2
                    if {a: b for a, b in lhs.items() if b} != {a: b for a, b in rhs.items() if b}:
                        return False
        return True


def identity_chain_map(C: Complex) -> ChainMap:
    return ChainMap(C, C, {k: [{i: 1} for i in range(C.size(k))] for k in C.degrees()})


def tensor_map(f: ChainMap, B: Complex) -> ChainMap:
    """f x id_B from tensor(f.source, B) to tensor(f.target, B), f of degree 0."""
    if f.degree:
        raise ChainComplexError("only degree zero maps")
    A, A2 = f.source, f.target
    S, T = tensor(A, B), tensor(A2, B)

    def layout(X):
        idx = {}
        for k in range(X.degrees().start + B.degrees().start, X.degrees().stop + B.degrees().stop - 1):
            pos = 0
            for p in X.degrees():
                q = k - p
                if q not in B.degrees() or not X.size(p) or not B.size(q):
                    continue
                idx[(k, p)] = (pos, B.size(q))
                pos += X.size(p) * B.size(q)
        return idx

    la, lt = layout(A), layout(A2)
    out: dict[int, list[SparseCol]] = {}
    for (k, p), (pos, w) in sorted(la.items()):
        cols = out.setdefault(k, [])
        for i in range(A.size(p)):
            for j in range(w):
                col: SparseCol = {}
                if p in f.maps and (k, p) in lt:
                    tp, tw = lt[(k, p)]
                    for r, c in f.maps[p][i].items():
                        col[tp + r * tw + j] = c
                cols.append(col)
    return ChainMap(S, T, out)


def tensor_map_right(A: Complex, f: ChainMap) -> ChainMap:
    """id_A x f from tensor(A, f.source) to tensor(A, f.target), f of degree 0."""
    if f.degree:
        raise ChainComplexError("only degree zero maps")
    B, B2 = f.source, f.target
    S, T = tensor(A, B), tensor(A, B2)

    def layout(Y):
        idx = {}
        for k in range(A.degrees().start + Y.degrees().start, A.degrees().stop + Y.degrees().stop - 1):
            pos = 0
            for p in A.degrees():
                q = k - p
                if q not in Y.degrees() or not A.size(p) or not Y.size(q):
                    continue
                idx[(k, p)] = (pos, Y.size(q))
                pos += A.size(p) * Y.size(q)
        return idx

    ls, lt = layout(B), layout(B2)
    out: dict[int, list[SparseCol]] = {}
    for (k, p), (pos, w) in sorted(ls.items()):
        cols = out.setdefault(k, [])
        q = k - p
        for i in range(A.size(p)):
            for j in range(w):
                col: SparseCol = {}
                if q in f.maps and (k, p) in lt:
                    tp, tw = lt[(k, p)]
                    for r, c in f.maps[q][j].items():
                        col[tp + i * tw + r] = c
                cols.append(col)
    return ChainMap(S, T, out)


def hom_precompose(f: ChainMap, Q: Complex) -> ChainMap:
    """f^*: Hom(f.target, Q) -> Hom(f.source, Q) for a degree zero chain map f."""
    if f.degree:
        raise ChainComplexError("only degree zero maps")
    HT, HS = HomComplex(f.target, Q), HomComplex(f.source, Q)
    maps: dict[int, list[SparseCol]] = {}
    # pullback of e_{y, x'} (x' in target P'_p) is sum_x f[x -> x'] e_{y, x}
    fT = {}
    for p in f.source.degrees():
        if p not in f.maps:
            continue
        rows = [dict() for _ in range(f.target.size(p))]
        for i, col in enumerate(f.maps[p]):
            for r, c in col.items():
                rows[r][i] = c
        fT[p] = rows
    for a in HT.degrees():
        cols = []
        sblocks = {p: (off, w) for p, off, w in HS.blocks(a)}
        for p, off, w in HT.blocks(a):
            for ip in range(f.target.size(p)):
                for j in range(w):
                    col: SparseCol = {}
                    if p in fT and p in sblocks:
                        so, sw = sblocks[p]
                        for i, c in fT[p][ip].items():
                            col[so + i * sw + j] = c
                    cols.append(col)
        maps[a] = cols
    return ChainMap(HT, HS, maps)


def hom_postcompose(g: ChainMap, P: Complex) -> ChainMap:
    """g_*: Hom(P, g.source) -> Hom(P, g.target) for a degree zero chain map g."""
    if g.degree:
        raise ChainComplexError("only degree zero maps")
    HS, HT = HomComplex(P, g.source), HomComplex(P, g.target)
    maps: dict[int, list[SparseCol]] = {}
    for a in HS.degrees():
        cols = []
        tblocks = {p: (off, w) for p, off, w in HT.blocks(a)}
        for p, off, w in HS.blocks(a):
            q = p + a
            for i in range(P.size(p)):
                for j in range(w):
                    col: SparseCol = {}
                    if p in tblocks and q in g.maps:
                        to, tw = tblocks[p]
                        for r, c in g.maps[q][j].items():
                            col[to + i * tw + r] = c
                    cols.append(col)
        maps[a] = cols
    return ChainMap(HS, HT, maps)


# ---------------------------------------------------------------------------
# RO-graded homotopy of F(X, HZ)


def split_degree(alpha: VirtualRep) -> tuple[int, VirtualRep, VirtualRep]:
    """alpha = a + W+ - W- with W+ and W- actual and without trivial summands."""
    pos, neg = alpha.nontrivial_part().parts()
    return alpha.trivial, pos, neg


@dataclass
class HomotopyComputation:
    alpha: VirtualRep
    P: Complex
    Q: Complex
    hom: HomComplex
    functor: HomologyFunctor

    @property
    def mackey(self) -> MackeyFunctor:
        return self.functor.mackey


_HOM_CACHE: dict = {}


def source_complex(Wp: VirtualRep, X: Complex | None) -> Complex:
    S = sphere_chain_complex(Wp)
    return S if X is None else tensor(S, X)


def ro_graded_computation(alpha: VirtualRep, X: Complex | None = None, cache_key=None) -> HomotopyComputation:
    a, Wp, Wm = split_degree(alpha)
    key = (cache_key, alpha) if cache_key is not None else None
    if key is not None and key in _HOM_CACHE:
        return _HOM_CACHE[key]
    P = source_complex(Wp, X)
    Q = sphere_chain_complex(Wm)
    H = HomComplex(P, Q)
    out = HomotopyComputation(alpha, P, Q, H, HomologyFunctor(H, a))
    if key is not None:
        _HOM_CACHE[key] = out
    return out


def ro_graded_homotopy_HZ(alpha: VirtualRep | str, X: Complex | None = None, n: int | None = None,
                          cache_key=None) -> MackeyFunctor:
    """pi_alpha F(X, HZ) as a Mackey functor; X defaults to S^0."""
    if isinstance(alpha, str):
        if n is None:
            raise ChainComplexError("n is needed to parse a degree")
        alpha = parse_rep(alpha, n)
    if X is not None and X.n != alpha.n:
        raise ChainComplexError("group orders differ")
    return ro_graded_computation(alpha, X, cache_key).mackey


# ---------------------------------------------------------------------------
# Eilenberg-Mac Lane shift identities

SHIFT_IDENTITIES = {
    # name: (catalogue functor, shift as a text degree)
    "Zdual": ("Zdual", "2 - 1*L(1)"),
    "Zsign": ("Zsign", "1 - 1*s"),
    "dotted": ("dotted", "3 - 1*s - 1*L(1)"),
}


def verify_shift_identity(which: str, n: int, window: int = 3, report: list | None = None) -> bool:
    """H M = Sigma^beta HZ: pi_{k - beta} HZ is M for k = 0 and vanishes for
    other k in [-window, window]."""
    from .mackey import catalogue
    name, text = SHIFT_IDENTITIES[which]
    beta = parse_rep(text, n)
    M = catalogue(name, n)
    ok = True
    for k in range(-window, window + 1):
        alpha = VirtualRep(n, trivial=k) - beta
        got = ro_graded_homotopy_HZ(alpha)
        good = isomorphic(got, M) if k == 0 else got.is_zero()
        if report is not None:
            report.append((k, str(alpha), got.symbol(), good))
        ok = ok and good
    return ok
