"""Quotients of HZ by Euler classes of rotation planes.

E / a_lambda(d) is F(S(lambda(d))_+, E), so its RO-graded homotopy is the
chain-level computation with X the unreduced circle.  Maps between the
quotients come from the power maps z -> z^(d/d') on unit circles, and the
long exact sequence from the cofiber sequence S(lambda)_+ -> S^0 -> S^lambda.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from math import gcd
from pathlib import Path

from .bredon import (
    ChainMap, Complex, ExplicitComplex, HomComplex, HomologyFunctor, _lambda_complex, hom_postcompose,
    hom_precompose, point_complex, quotient_target_complex, sphere_chain_complex, split_degree, tensor,
    tensor_map, tensor_map_right,
)
from .mackey import (
    MackeyFunctor, MackeyMorphism, direct_sum, exact_sequence_check, identity_morphism, isomorphic, maps_equal,
)
from .rep_ring import VirtualRep, canonicalize_irrep, divisors, format_rep, parse_rep, restrict_rep


class QuotientError(ValueError):
    pass


def _check_two_power(n: int) -> int:
    k = n.bit_length() - 1
    if n < 2 or n != 2 ** k:
        raise QuotientError(f"{n} is not a positive power of two")
    return k


# ---------------------------------------------------------------------------
# homotopy of the quotients

_PI_CACHE: dict = {}


@dataclass
class QuotientComputation:
    """pi_alpha F(S(lambda(d))_+, HZ) together with its chain-level data."""

    alpha: VirtualRep
    d: int
    P: Complex        # S^{W+} x C(S(lambda(d)))
    Q: Complex        # S^{W-}
    functor: HomologyFunctor

    @property
    def mackey(self) -> MackeyFunctor:
        return self.functor.mackey


def quotient_computation(d: int, alpha: VirtualRep) -> QuotientComputation:
    key = (d, alpha)
    if key not in _PI_CACHE:
        a, Wp, Wm = split_degree(alpha)
        P = tensor(sphere_chain_complex(Wp), quotient_target_complex(d, alpha.n))
        Q = sphere_chain_complex(Wm)
        _PI_CACHE[key] = QuotientComputation(alpha, d, P, Q, HomologyFunctor(HomComplex(P, Q), a))
    return _PI_CACHE[key]


def quotient_pi(d: int, alpha: VirtualRep) -> MackeyFunctor:
    """pi_alpha(HZ / a_lambda(d))."""
    if d < 1:
        raise QuotientError("d must be positive")
    return quotient_computation(d, alpha).mackey


def hz_quotient_pi(j: int, alpha: VirtualRep | str, n: int) -> MackeyFunctor:
    """pi_alpha(HZ / a_lambda(2^j)) for G = C_n."""
    k = _check_two_power(n)
    if not 0 <= j < k + 1:
        raise QuotientError(f"j must lie in [0, {k}]")
    if isinstance(alpha, str):
        alpha = parse_rep(alpha, n)
    if alpha.n != n:
        raise QuotientError("degree is not a representation of C_n")
    return quotient_pi(2 ** j, alpha)


def u_reduce(alpha: VirtualRep) -> VirtualRep:
    """Move alpha along u_V for orientable V until it reads i + j*sigma, j in {0, 1}."""
    out = VirtualRep(alpha.n, alpha.trivial + 2 * sum(alpha.rot), alpha.sign % 2)
    return out.plus_trivial(alpha.sign - alpha.sign % 2)


# ---------------------------------------------------------------------------
# the B pattern


@dataclass
class BPattern:
    """pi_{i + j sigma}(HZ / a_lambda(1)) on a finite window."""

    n: int
    entries: dict[tuple[int, int], MackeyFunctor] = field(default_factory=dict)

    def __getitem__(self, ij: tuple[int, int]) -> MackeyFunctor:
        return self.entries[ij]

    def degree(self, i: int, j: int) -> VirtualRep:
        return VirtualRep(self.n, i, j)

    def transported(self, alpha: VirtualRep) -> MackeyFunctor | None:
        """The pattern value predicted for alpha by u-periodicity, if in the window."""
        red = u_reduce(alpha)
        return self.entries.get((red.trivial, red.sign))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "entries": [{"i": i, "j": j, "symbol": M.symbol(), "mackey": M.to_dict()}
                        for (i, j), M in sorted(self.entries.items())],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "BPattern":
        data = json.loads(text)
        return cls(data["n"], {(e["i"], e["j"]): MackeyFunctor.from_dict(e["mackey"]) for e in data["entries"]})

    def save(self, path: str | Path):
        Path(path).write_text(self.to_json() + "\n")

    @classmethod
    def load(cls, path: str | Path) -> "BPattern":
        return cls.from_json(Path(path).read_text())


def derive_b_pattern(n: int, window: int = 6, twists: range = range(-2, 3)) -> BPattern:
    _check_two_power(n)
    pat = BPattern(n)
    for j in twists:
        for i in range(-window, window + 1):
            pat.entries[(i, j)] = quotient_pi(1, VirtualRep(n, i, j))
    return pat


def compare_patterns(a: BPattern, b: BPattern) -> list[tuple[int, int]]:
    """Window entries where the two patterns disagree (exactly)."""
    bad = []
    for key in sorted(set(a.entries) | set(b.entries)):
        A, B = a.entries.get(key), b.entries.get(key)
        if A is None or B is None or A.to_dict() != B.to_dict():
            bad.append(key)
    return bad


# ---------------------------------------------------------------------------
# long exact sequence of the cofiber sequence for a_lambda(k)


def cofiber_sequence(k: int, n: int) -> tuple[ChainMap, ChainMap]:
    """pt -> S^lambda(k) -> S^lambda(k) / pt on reduced chains, split on bases.

    The quotient is the unreduced circle shifted up by one (with the
    differential unchanged), a model for Sigma S(lambda(k))_+.
    """
    mid = _lambda_complex(k, n, reduced=True)
    sub = point_complex(n)
    quot = ExplicitComplex(n, {1: mid.gamma(1), 2: mid.gamma(2)}, {2: mid.dcols(2)})
    inc = ChainMap(sub, mid, {0: [{0: 1}]})
    proj = ChainMap(mid, quot, {0: [{}], 1: [{i: 1} for i in range(mid.size(1))],
                                2: [{i: 1} for i in range(mid.size(2))]})
    return inc, proj


def _basis_inverse(f: ChainMap, a: int) -> dict[int, int]:
    """For a map sending basis vectors to basis vectors or zero: target index -> source index."""
    inv = {}
    for i, col in enumerate(f.maps.get(a, [])):
        if not col:
            continue
        if len(col) != 1 or next(iter(col.values())) != 1:
            raise QuotientError("sequence does not split on bases")
        (r,) = col
        inv[r] = i
    return inv


def _expand(C: Complex, a: int, d: int, v: list[int]) -> dict[int, int]:
    out = {}
    for orb, c in zip(C.orbits(a, d), v):
        if c:
            for i in orb:
                out[i] = c
    return out


def _collapse(C: Complex, a: int, d: int, chain: dict[int, int]) -> list[int]:
    return [chain.get(orb[0], 0) for orb in C.orbits(a, d)]


def connecting_morphism(j: ChainMap, r: ChainMap, HS: HomologyFunctor, HQ: HomologyFunctor) -> MackeyMorphism:
    """delta: H_a(S) -> H_{a-1}(Q) for 0 -> Q -j-> M -r-> S -> 0 split on bases."""
    M = j.target
    a = HS.k
    if HQ.k != a - 1:
        raise QuotientError("connecting map lowers degree by one")
    lift = _basis_inverse(r, a)
    pull = _basis_inverse(j, a - 1)
    dM = M.dcols(a)
    maps = {}
    for d in divisors(M.n):
        A, B = HS.levels[d], HQ.levels[d]
        if not B.sq.group.ngens:
            maps[d] = []
            continue
        cols = []
        for v in A.sq.generators():
            z = _expand(HS.C, a, d, v)
            boundary: dict[int, int] = {}
            for s, c in z.items():
                for t, c2 in dM[lift[s]].items():
                    boundary[t] = boundary.get(t, 0) + c * c2
            pre = {}
            for t, c in boundary.items():
                if not c:
                    continue
                if t not in pull:
                    raise QuotientError("boundary of the lift leaves the subcomplex")
                pre[pull[t]] = c
            cols.append(B.sq.coords(_collapse(HQ.C, a - 1, d, pre)))
        maps[d] = [list(x) for x in zip(*cols)] if cols else [[] for _ in range(B.sq.group.ngens)]
    return MackeyMorphism(HS.mackey, HQ.mackey, maps)


@dataclass
class LESReport:
    ok: bool
    V: VirtualRep
    k: int
    nodes: list[tuple[str, str, bool]]   # (term label, symbol, exact there)
    terms_match: bool = True
    failure: str = ""

    def __bool__(self) -> bool:
        return self.ok


def les_terms(V: VirtualRep, k: int, corrupt: bool = False):
    """The six-term stretch
    pi_{V+1}(E/a) -> pi_{V+lambda} E -> pi_V E -> pi_V(E/a) -> pi_{V+lambda-1} E -> pi_{V-1} E
    realized on hom complexes, E = HZ."""
    n = V.n
    a, Wp, Wm = split_degree(V)
    S = sphere_chain_complex(Wp)
    Q = sphere_chain_complex(Wm)
    inc, proj = cofiber_sequence(k, n)
    # Hom(quot x S, Q) -j-> Hom(mid x S, Q) -r-> Hom(sub x S, Q)
    j = hom_precompose(tensor_map(proj, S), Q)
    r = hom_precompose(tensor_map(inc, S), Q)
    Hq, Hm, Hs = j.source, j.target, r.target
    H = {
        ("q", a): HomologyFunctor(Hq, a), ("m", a): HomologyFunctor(Hm, a), ("s", a): HomologyFunctor(Hs, a),
        ("q", a - 1): HomologyFunctor(Hq, a - 1), ("m", a - 1): HomologyFunctor(Hm, a - 1),
        ("s", a - 1): HomologyFunctor(Hs, a - 1),
    }
    j0 = j.induced(H[("q", a)], H[("m", a)])
    r0 = r.induced(H[("m", a)], H[("s", a)])
    delta = connecting_morphism(j, r, H[("s", a)], H[("q", a - 1)])
    if corrupt:
        delta = MackeyMorphism(delta.source, delta.target,
                               {d: [[0] * len(row) for row in F] for d, F in delta.maps.items()})
    j1 = j.induced(H[("q", a - 1)], H[("m", a - 1)])
    r1 = r.induced(H[("m", a - 1)], H[("s", a - 1)])
    lam = canonicalize_irrep(k, n)
    labels = [
        f"pi_{{{format_rep(V.plus_trivial(1))}}}(E/a)",
        f"pi_{{{format_rep(V + lam)}}}(E)",
        f"pi_{{{format_rep(V)}}}(E)",
        f"pi_{{{format_rep(V)}}}(E/a)",
        f"pi_{{{format_rep((V + lam).plus_trivial(-1))}}}(E)",
        f"pi_{{{format_rep(V.plus_trivial(-1))}}}(E)",
    ]
    return [j0, r0, delta, j1, r1], labels


def les_check(V: VirtualRep, k: int, corrupt: bool = False, compare_terms: bool = True) -> LESReport:
    """Exactness of pi_{V+lambda(k)} E -> pi_V E -> pi_V(E/a_lambda(k)) -> pi_{V+lambda(k)-1} E
    for E = HZ, at every interior node of the six-term stretch."""
    seq, labels = les_terms(V, k, corrupt)
    nodes = []
    ok = True
    failure = ""
    for idx, (f, g) in enumerate(zip(seq, seq[1:])):
        good = exact_sequence_check([f, g])
        nodes.append((labels[idx + 1], f.target.symbol(), good))
        if not good and not failure:
            failure = f"not exact at {labels[idx + 1]}"
        ok = ok and good
    match = True
    if compare_terms:
        from .bredon import ro_graded_homotopy_HZ
        lam = canonicalize_irrep(k, V.n)
        expected = [
            quotient_pi(k, V.plus_trivial(1)), ro_graded_homotopy_HZ(V + lam), ro_graded_homotopy_HZ(V),
            quotient_pi(k, V), ro_graded_homotopy_HZ((V + lam).plus_trivial(-1)),
        ]
        got = [seq[0].source] + [f.target for f in seq[:4]]
        for lab, A, B in zip(labels, got, expected):
            if not isomorphic(A, B):
                match = False
                failure = failure or f"term {lab} disagrees with the direct computation"
    return LESReport(ok and match, V, k, nodes, match, failure)


# ---------------------------------------------------------------------------
# the tower of quotients


def power_map(d_small: int, d_big: int, n: int) -> ChainMap:
    """Cellular z -> z^(d_big / d_small) from S(lambda(d_small)) to S(lambda(d_big))."""
    if d_small < 1 or d_big % d_small:
        raise QuotientError(f"{d_small} does not divide {d_big}")
    ell = d_big // d_small
    src, tgt = quotient_target_complex(d_small, n), quotient_target_complex(d_big, n)
    m_s, m_t = src.size(0), tgt.size(0)
    g_s, g_t = gcd(d_small, n), gcd(d_big, n)
    jt = _arc_step(d_big, n)
    c = ell * g_s // g_t  # target arcs covered by one source arc
    verts = [{i % m_t: 1} for i in range(m_s)]
    arcs = []
    for i in range(m_s):
        col: dict[int, int] = {}
        for t in range(c):
            key = (i + t * jt) % m_t
            col[key] = col.get(key, 0) + 1
        arcs.append(col)
    return ChainMap(src, tgt, {0: verts, 1: arcs})


def _arc_step(d: int, n: int) -> int:
    g = gcd(d, n)
    m = n // g
    if m == 1:
        return 0
    return pow((d // g) % m, -1, m)


@dataclass
class TowerMap:
    d_small: int
    d_big: int
    alpha: VirtualRep
    morphism: MackeyMorphism


def tower_map(d_small: int, d_big: int, alpha: VirtualRep) -> TowerMap:
    """pi_alpha(HZ/a_lambda(d_big)) -> pi_alpha(HZ/a_lambda(d_small)) induced by the power map."""
    n = alpha.n
    if d_small < 1 or d_big % d_small:
        raise QuotientError(f"{d_small} does not divide {d_big}")
    big, small = quotient_computation(d_big, alpha), quotient_computation(d_small, alpha)
    if d_small == d_big:
        return TowerMap(d_small, d_big, alpha, identity_morphism(big.mackey))
    a, Wp, _ = split_degree(alpha)
    f = tensor_map_right(sphere_chain_complex(Wp), power_map(d_small, d_big, n))
    pull = hom_precompose(f, big.Q)
    return TowerMap(d_small, d_big, alpha, pull.induced(big.functor, small.functor))


def morphisms_equal(f: MackeyMorphism, g: MackeyMorphism) -> bool:
    return all(maps_equal(f.maps[d], g.maps[d], f.target.levels[d]) for d in f.source.divisors())


def divisor_chains(n: int) -> list[tuple[int, int, int]]:
    return [(a, b, c) for c in divisors(n) for b in divisors(c) for a in divisors(b)]


def check_functoriality(n: int, alphas: list[VirtualRep]) -> list[tuple]:
    """Chains a | b | c and degrees where (a|b) o (b|c) differs from (a|c)."""
    bad = []
    for alpha in alphas:
        for a, b, c in divisor_chains(n):
            comp = tower_map(b, c, alpha).morphism.then(tower_map(a, b, alpha).morphism)
            if not morphisms_equal(comp, tower_map(a, c, alpha).morphism):
                bad.append((a, b, c, format_rep(alpha)))
    return bad


def top_quotient_splits(alpha: VirtualRep) -> bool:
    """pi_alpha(E/a_lambda(n)) = pi_alpha E + pi_{alpha+1} E."""
    from .bredon import ro_graded_homotopy_HZ
    lhs = quotient_pi(alpha.n, alpha)
    rhs = direct_sum([ro_graded_homotopy_HZ(alpha), ro_graded_homotopy_HZ(alpha.plus_trivial(1))])
    return isomorphic(lhs, rhs)


# ---------------------------------------------------------------------------
# locality


def euler_multiplication(k: int, ell: int, alpha: VirtualRep) -> MackeyMorphism:
    """Multiplication by a_lambda(ell) on pi_alpha(HZ/a_lambda(k)), landing in degree alpha - lambda(ell)."""
    n = alpha.n
    comp = quotient_computation(k, alpha)
    a_map, _ = cofiber_sequence(ell, n)       # S^0 -> S^lambda(ell)
    g = tensor_map_right(comp.Q, a_map)        # Q x S^0 -> Q x S^lambda
    post = hom_postcompose(g, comp.P)
    src = HomologyFunctor(post.source, comp.functor.k)
    tgt = HomologyFunctor(post.target, comp.functor.k)
    return post.induced(src, tgt)


@dataclass
class LocalityReport:
    k: int
    n: int
    ell_results: dict[int, str]          # ell -> "zero", "nonzero" or "no claim"
    vanishing_subgroups: list[int]       # h with Phi^{C_h} of the quotient contractible
    ok: bool
    notes: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def locality_consequences(k: int, n: int, window: list[VirtualRep], ells: list[int] | None = None) -> LocalityReport:
    """(a) a_lambda(ell) acts by zero on pi_*(HZ/a_lambda(k)) when gcd(k, n) | ell;
    (b) Phi^{C_h} of the quotient vanishes for every C_h not fixing lambda(k)."""
    g = gcd(k, n)
    ells = ells if ells is not None else [e for e in range(1, n) if 2 * e <= n]
    results, notes, ok = {}, [], True
    for ell in ells:
        if ell % g:
            results[ell] = "no claim"
            notes.append(f"a_lambda({ell}): gcd({k}, {n}) = {g} does not divide {ell}, no claim")
            continue
        zero = all(euler_multiplication(k, ell, alpha).is_zero() for alpha in window)
        results[ell] = "zero" if zero else "nonzero"
        if not zero:
            ok = False
            notes.append(f"a_lambda({ell}) acts nontrivially")
    # a_lambda(k) becomes a unit after Phi^H whenever lambda(k)^H = 0, so a zero action forces Phi^H = *
    vanish = [h for h in divisors(n) if restrict_rep(canonicalize_irrep(k, n), h).trivial == 0]
    if vanish:
        zero = results.get(k) == "zero" or all(euler_multiplication(k, k, alpha).is_zero() for alpha in window)
        if not zero:
            ok = False
            notes.append(f"a_lambda({k}) acts nontrivially, geometric fixed points not forced to vanish")
            vanish = []
    return LocalityReport(k, n, results, vanish, ok, notes)


# ---------------------------------------------------------------------------
# symbolic spectra and geometric fixed points


@dataclass(frozen=True)
class SpectrumExpr:
    """Node of a symbolic spectrum.

    op is one of "MU", "HZ", "S0" (atoms, with ``n`` the group order),
    "Q" (quotient by a_lambda(d)), "Inv" (invert a_lambda(d)),
    "Phi" / "FP" (geometric / categorical fixed points for C_{p^k}),
    "Sigma" (suspension by ``rep``).
    """

    op: str
    n: int
    child: "SpectrumExpr | None" = None
    d: int = 0
    p: int = 2
    k: int = 0
    rep: str = ""
    flags: tuple[str, ...] = field(default=(), compare=False)

    def to_text(self) -> str:
        if self.op == "MU":
            return f"MU((C_{self.n}))"
        if self.op in ("HZ", "S0"):
            return f"{self.op}(C_{self.n})"
        inner = self.child.to_text()
        if self.op in ("Q", "Inv"):
            return f"{self.op}(a_L({self.d}), {inner})"
        if self.op in ("Phi", "FP"):
            return f"{self.op}({self.p}^{self.k}, {inner})"
        return f"Sigma({self.rep}, {inner})"

    __str__ = to_text

    def with_child(self, child: "SpectrumExpr", flags: tuple[str, ...] = ()) -> "SpectrumExpr":
        return SpectrumExpr(self.op, self.n, child, self.d, self.p, self.k, self.rep, flags)


class ExprSyntaxError(ValueError):
    pass


_ATOM = re.compile(r"\s*(?:MU\(\(C_(\d+)\)\)|(HZ|S0)\(C_(\d+)\))\s*")
_HEAD = re.compile(r"\s*(Phi|FP|Q|Inv|Sigma)\(\s*")


def parse_expr(text: str) -> SpectrumExpr:
    expr, pos = _parse(text, 0)
    if text[pos:].strip():
        raise ExprSyntaxError(f"trailing text at {pos}: {text[pos:]!r}")
    return expr


def _split_arg(text: str, pos: int) -> tuple[str, int]:
    depth, start = 0, pos
    while pos < len(text):
        ch = text[pos]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            return text[start:pos].strip(), pos + 1
        pos += 1
    raise ExprSyntaxError("missing argument separator")


def _parse(text: str, pos: int) -> tuple[SpectrumExpr, int]:
    m = _ATOM.match(text, pos)
    if m:
        if m.group(1):
            return SpectrumExpr("MU", int(m.group(1))), m.end()
        return SpectrumExpr(m.group(2), int(m.group(3))), m.end()
    m = _HEAD.match(text, pos)
    if not m:
        raise ExprSyntaxError(f"cannot parse at {pos}: {text[pos:pos + 20]!r}")
    op = m.group(1)
    arg, pos = _split_arg(text, m.end())
    child, pos = _parse(text, pos)
    close = re.compile(r"\s*\)\s*").match(text, pos)
    if not close:
        raise ExprSyntaxError(f"expected ')' at {pos}")
    pos = close.end()
    n = child.n
    if op in ("Q", "Inv"):
        am = re.fullmatch(r"a_L\(\s*(\d+)\s*\)", arg)
        if not am or int(am.group(1)) < 1:
            raise ExprSyntaxError(f"bad Euler class {arg!r}")
        return SpectrumExpr(op, n, child, d=int(am.group(1))), pos
    if op in ("Phi", "FP"):
        am = re.fullmatch(r"(\d+)(?:\s*\^\s*(\d+))?", arg)
        if not am:
            raise ExprSyntaxError(f"bad subgroup {arg!r}")
        p, k = int(am.group(1)), int(am.group(2) or 1)
        if n % (p ** k):
            raise ExprSyntaxError(f"C_{p ** k} is not a subgroup of C_{n}")
        return SpectrumExpr(op, n, child, p=p, k=k), pos
    parse_rep(arg, n)
    return SpectrumExpr(op, n, child, rep=arg), pos


def _valuation(d: int, p: int) -> int:
    v = 0
    while d % p == 0:
        d //= p
        v += 1
    return v


def _push(expr: SpectrumExpr, flags: list[str]) -> SpectrumExpr:
    if expr.child is None:
        return expr
    child = _push(expr.child, flags)
    if expr.op == "Phi" and child.op == "Q":
        ell = _valuation(child.d, expr.p)
        if child.d == expr.p ** ell and ell >= expr.k:
            inner = _push(expr.with_child(child.child), flags)
            return child.with_child(inner)
        flags.append(f"{expr.op}({expr.p}^{expr.k}) stays outside Q(a_L({child.d})): needs a_L(p^l) with l >= {expr.k}")
    return expr.with_child(child)


def geometric_fixed_points_rewrite(expr: SpectrumExpr) -> SpectrumExpr:
    """Push geometric fixed points inside admissible quotients.

    Phi^{C_{p^k}}(E / a_lambda(p^l)) becomes (Phi^{C_{p^k}} E) / a_lambda(p^l)
    when l >= k.  Inadmissible nodes are left in place and reported in ``flags``.
    """
    flags: list[str] = []
    out = _push(expr, flags)
    return SpectrumExpr(out.op, out.n, out.child, out.d, out.p, out.k, out.rep, tuple(flags))


def expand_geometric_fixed_points(expr: SpectrumExpr) -> SpectrumExpr:
    """Phi^{C_{p^k}} E as the categorical fixed points of E[a_lambda(p^(k-1))^{-1}]."""
    if expr.child is None:
        return expr
    child = expand_geometric_fixed_points(expr.child)
    if expr.op == "Phi":
        inv = SpectrumExpr("Inv", expr.n, child, d=expr.p ** (expr.k - 1))
        return SpectrumExpr("FP", expr.n, inv, p=expr.p, k=expr.k)
    return expr.with_child(child)
