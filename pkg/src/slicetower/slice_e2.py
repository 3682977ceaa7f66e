"""The slice E2-term for MU^((G)), G = C_{2^n}.

The underlying polynomial generators are the translates g^j r_i, j modulo
2^(n-1), with gamma shifting j.  A monic monomial p has stabilizer H and
slice cell G_+ smash_H S^{||p||} with ||p|| = (|p| / |H|) rho_H, so

    E2^{s,V}(X) = sum over orbits p of Ind_H^G pi_{i_H^* V - s - ||p||} F(i_H^* X, HZ).

Because ||p|| depends only on H and |p|, the sum collapses to one homotopy
computation per stabilizer, weighted by the number of orbits.
"""
from __future__ import annotations

import json
from functools import lru_cache
from dataclasses import dataclass, field
from typing import Iterable

from .bredon import ExplicitComplex, point_complex, quotient_target_complex, restrict_complex, ro_graded_homotopy_HZ
from .mackey import MackeyFunctor, direct_sum, induce, zero_functor
from .rep_ring import VirtualRep, format_rep, restrict_rep

CONVENTIONS = ("i_rho2", "norm")


def generator_degree(i: int, convention: str = "i_rho2") -> int:
    """Underlying degree of r_i: 2i, or 2(2^i - 1) under the norm convention."""
    if convention == "i_rho2":
        return 2 * i
    if convention == "norm":
        return 2 * (2 ** i - 1)
    raise ValueError(f"unknown generator convention {convention!r}")


Monomial = tuple[tuple[tuple[int, int], int], ...]  # (((i, j), exponent), ...) sorted


@dataclass(frozen=True)
class MonomialOrbit:
    rep: Monomial
    period: int        # orbit size [G : H]
    group_order: int   # |G| = 2^n
    degree: int        # underlying degree 2m

    @property
    def stabilizer(self) -> int:
        return self.group_order // self.period

    @property
    def size(self) -> int:
        return self.period

    def name(self) -> str:
        if not self.rep:
            return "1"
        parts = []
        for (i, j), e in self.rep:
            base = f"r{i}" if j == 0 else f"g{j}r{i}"
            parts.append(base if e == 1 else f"{base}^{e}")
        return ".".join(parts)


def _shift(mono: Monomial, t: int, T: int) -> Monomial:
    return tuple(sorted((((i, (j + t) % T), e) for (i, j), e in mono)))


def monic_monomials(degree: int, n: int, convention: str = "i_rho2") -> list[Monomial]:
    """All monic monomials of the given underlying degree in the translates."""
    if degree < 0 or degree % 2:
        return []
    T = 2 ** (n - 1)
    gens = []
    i = 1
    while generator_degree(i, convention) <= degree:
        for j in range(T):
            gens.append(((i, j), generator_degree(i, convention)))
        i += 1
    out: list[Monomial] = []

    def rec(start: int, left: int, acc: list):
        if left == 0:
            out.append(tuple(acc))
            return
        for g in range(start, len(gens)):
            key, w = gens[g]
            if w > left:
                continue
            for e in range(1, left // w + 1):
                acc.append((key, e))
                rec(g + 1, left - e * w, acc)
                acc.pop()

    rec(0, degree, [])
    return out


def monomial_orbits(degree: int, n: int, convention: str = "i_rho2") -> list[MonomialOrbit]:
    return list(_monomial_orbits(degree, n, convention))


@lru_cache(maxsize=256)
def _monomial_orbits(degree: int, n: int, convention: str) -> tuple[MonomialOrbit, ...]:
    """The set of gamma-orbits of monic monomials of underlying degree 2m = ``degree``
    for G = C_{2^n}.  Orbit representatives are lexicographically minimal."""
    if n < 1:
        raise ValueError("the exponent n must be at least 1")
    T = 2 ** (n - 1)
    seen = set()
    orbits = []
    for mono in monic_monomials(degree, n, convention):
        if mono in seen:
            continue
        members = []
        t = 0
        cur = mono
        while True:
            members.append(cur)
            t += 1
            cur = _shift(mono, t, T)
            if cur == mono:
                break
        seen.update(members)
        orbits.append(MonomialOrbit(min(members), t, 2 ** n, degree))
    orbits.sort(key=lambda o: o.rep)
    return tuple(orbits)


def _fixed_count(degree: int, T: int, t: int, convention: str) -> int:
    """Monomials invariant under the shift by t (t | T): t free variables per weight,
    each carrying T/t times the weight."""
    coeff = [1] + [0] * degree
    i = 1
    while generator_degree(i, convention) * (T // t) <= degree:
        w = generator_degree(i, convention) * (T // t)
        for _ in range(t):
            for k in range(w, degree + 1):
                coeff[k] += coeff[k - w]
        i += 1
    return coeff[degree]


def orbit_counts(degree: int, n: int, convention: str = "i_rho2") -> dict[int, int]:
    """Number of orbits in degree ``degree`` for each stabilizer order, by Moebius
    inversion over the periods instead of enumeration."""
    if degree < 0 or degree % 2:
        return {}
    T = 2 ** (n - 1)
    periods = [2 ** e for e in range(n)]
    fixed = {t: _fixed_count(degree, T, t, convention) for t in periods}
    out = {}
    for P in periods:
        exact = fixed[P] - (fixed[P // 2] if P > 1 else 0)  # divisors of a 2-power form a chain
        if exact:
            out[2 ** n // P] = exact // P
    return out


def regular_rep(h: int) -> VirtualRep:
    return VirtualRep.regular(h)


def slice_degree(orbit: MonomialOrbit) -> VirtualRep:
    """||p|| = (|p| / |H|) rho_H as a representation of the stabilizer H."""
    H = orbit.stabilizer
    if orbit.degree % H:
        raise ValueError("stabilizer order does not divide the underlying degree")
    return regular_rep(H) * (orbit.degree // H)


# ---------------------------------------------------------------------------
# targets


@dataclass(frozen=True)
class Target:
    """X = S^0 (``d`` None) or X = S(lambda(d))_+."""

    d: int | None = None

    def complex(self, n: int) -> ExplicitComplex:
        return point_complex(n) if self.d is None else quotient_target_complex(self.d, n)

    def label(self) -> str:
        return "S0" if self.d is None else f"S(L({self.d}))+"


def quotient_target(j: int) -> Target:
    return Target(2 ** j)


_E2_CACHE: dict = {}


def _stabilizer_piece(s: int, V: VirtualRep, h: int, m2: int, target: Target) -> MackeyFunctor:
    """Ind_H^G pi_{i_H^*V - s - ||p||} F(i_H^* X, HZ) for one orbit with stabilizer C_h."""
    n = V.n
    key = (n, s, V, h, m2, target)
    if key not in _E2_CACHE:
        alpha = restrict_rep(V, h) - regular_rep(h) * (m2 // h)
        alpha = alpha.plus_trivial(-s)
        X = restrict_complex(target.complex(n), h)
        M = ro_graded_homotopy_HZ(alpha, X, cache_key=("e2", n, h, target))
        _E2_CACHE[key] = induce(M, n) if h != n else M
    return _E2_CACHE[key]


def e2_terms(s: int, V: VirtualRep, target: Target = Target(), convention: str = "i_rho2") -> list[tuple[int, int, MackeyFunctor]]:
    """(stabilizer order, number of orbits, functor) for each stabilizer."""
    n = V.n
    exp = n.bit_length() - 1
    if n != 2 ** exp or exp < 1:
        raise ValueError("slice E2 needs G = C_{2^n} with n >= 1")
    if V.dim % 2 or V.dim < 0:
        return []
    counts = orbit_counts(V.dim, exp, convention)
    return [(h, c, _stabilizer_piece(s, V, h, V.dim, target)) for h, c in sorted(counts.items())]


def e2(s: int, V: VirtualRep, X: Target | None = None, convention: str = "i_rho2") -> MackeyFunctor:
    """The E2-term E2^{s,V} for MU^((G))-cohomology of X."""
    target = X or Target()
    parts = []
    for h, c, M in e2_terms(s, V, target, convention):
        if not M.is_zero():
            parts.extend([M] * c)
    return direct_sum(parts) if parts else zero_functor(V.n)


# ---------------------------------------------------------------------------
# element names


def class_word(alpha: VirtualRep) -> str | None:
    """Name a_V / u_V words of the given degree when the degree determines them."""
    a = alpha.trivial
    irreps = [("s", alpha.sign)] + [(f"L{k}", c) for k, c in enumerate(alpha.rot, start=1)]
    irreps = [(nm, c) for nm, c in irreps if c]
    if any(c > 0 for _, c in irreps):
        return None
    if a % 2 or a < 0:
        return None
    if a and len(irreps) != 1:
        return None
    words = []
    for nm, c in irreps:
        if nm == "s":
            y = a // 2
            x = -c - 2 * y
            if x < 0:
                return None
            if y:
                words.append(f"u2s^{y}" if y > 1 else "u2s")
            if x:
                words.append(f"as^{x}" if x > 1 else "as")
        else:
            y = a // 2
            x = -c - y
            if x < 0:
                return None
            if y:
                words.append(f"u{nm}^{y}" if y > 1 else f"u{nm}")
            if x:
                words.append(f"a{nm}^{x}" if x > 1 else f"a{nm}")
    if a and not irreps:
        return None
    return ".".join(words) if words else "1"


def element_names(s: int, V: VirtualRep, convention: str = "i_rho2", target: Target = Target()) -> list[str]:
    n = V.n
    exp = n.bit_length() - 1
    if V.dim % 2 or V.dim < 0:
        return []
    names = []
    for o in monomial_orbits(V.dim, exp, convention):
        h = o.stabilizer
        M = _stabilizer_piece(s, V, h, V.dim, target)
        if M.levels[n].is_zero():
            continue
        alpha = (restrict_rep(V, h) - slice_degree(o)).plus_trivial(-s)
        word = class_word(alpha)
        if word is None:
            continue
        mono = o.name()
        prefix = "" if h == n else "G."
        names.append(prefix + (mono if word == "1" else word if mono == "1" else f"{mono}.{word}"))
    return names


# ---------------------------------------------------------------------------
# charts


@dataclass
class ChartEntry:
    s: int
    V: VirtualRep
    mackey: MackeyFunctor
    names: list[str] = field(default_factory=list)

    @property
    def stem(self) -> VirtualRep:
        return self.V.plus_trivial(-self.s)


@dataclass
class E2Chart:
    n: int
    target: Target
    convention: str
    entries: list[ChartEntry]
    differentials: list = field(default_factory=list)

    def nonzero(self) -> list[ChartEntry]:
        return [e for e in self.entries if not e.mackey.is_zero()]

    def filtrations(self) -> list[int]:
        return sorted({e.s for e in self.nonzero()})

    def get(self, s: int, V: VirtualRep) -> ChartEntry | None:
        for e in self.entries:
            if e.s == s and e.V == V:
                return e
        return None

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "n": self.n,
            "target": self.target.label(),
            "convention": self.convention,
            "entries": [
                {"s": e.s, "V": format_rep(e.V), "stem": format_rep(e.stem), "mackey": e.mackey.to_dict(),
                 "symbol": e.mackey.symbol(), "element_names": e.names}
                for e in self.entries if not e.mackey.is_zero()
            ],
            "differentials": [d.to_dict() for d in self.differentials],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1)

    def to_tsv(self) -> str:
        lines = ["s\tV\tstem\tmackey\tnames"]
        for e in self.entries:
            if e.mackey.is_zero():
                continue
            lines.append(f"{e.s}\t{format_rep(e.V)}\t{format_rep(e.stem)}\t{e.mackey.symbol()}\t{','.join(e.names)}")
        return "\n".join(lines) + "\n"


def sigma_window(n: int, bound: int, s_max: int | None = None, twists: tuple[int, ...] = (0, 1)) -> list[tuple[int, VirtualRep]]:
    """(s, V) with stem V - s = i + j*sigma, j in ``twists`` and |i + j| <= bound."""
    if s_max is None:
        s_max = 2 * bound + 2
    keys = []
    for j in twists:
        for i in range(-bound - j, bound - j + 1):
            stem = VirtualRep(n, i, j if n % 2 == 0 else 0)
            for s in range(0, s_max + 1):
                keys.append((s, stem.plus_trivial(s)))
    return keys


def _sort_key(item: tuple[int, VirtualRep]):
    s, V = item
    stem = V.plus_trivial(-s)
    return (stem.dim, stem.sign, stem.rot, stem.trivial, s)


def e2_chart(window: Iterable[tuple[int, VirtualRep]], n: int, X: Target | None = None,
             convention: str = "i_rho2", names: bool = True) -> E2Chart:
    target = X or Target()
    entries = []
    for s, V in sorted(set(window), key=_sort_key):
        if V.n != n:
            raise ValueError("window degrees must be representations of C_n")
        M = e2(s, V, target, convention)
        named = names and target.d is None and not M.is_zero()
        nm = element_names(s, V, convention, target) if named else []
        entries.append(ChartEntry(s, V, M, nm))
    return E2Chart(n, target, convention, entries)
