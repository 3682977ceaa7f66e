"""Transfer systems for C_n as relations on the divisor lattice.

A pair (a, b) with a | b says the transfer from C_a to C_b is admissible,
i.e. the orbit map C_n/C_a -> C_n/C_b lies in the indexing category.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .rep_ring import divisors

MAX_DIVISORS = 8


class TransferError(ValueError):
    pass


Pair = tuple[int, int]


def divisor_pairs(n: int, strict: bool = False) -> list[Pair]:
    ds = divisors(n)
    return [(a, b) for b in ds for a in ds if b % a == 0 and (a != b or not strict)]


@dataclass(frozen=True)
class TransferSystem:
    n: int
    pairs: frozenset

    def __contains__(self, pair: Pair) -> bool:
        return pair in self.pairs

    def nontrivial(self) -> list[Pair]:
        return sorted(p for p in self.pairs if p[0] != p[1])

    def key(self) -> tuple:
        nt = self.nontrivial()
        return (len(nt), nt)

    def __le__(self, other: "TransferSystem") -> bool:
        return self.pairs <= other.pairs

    def __str__(self) -> str:
        body = ", ".join(f"{a}->{b}" for a, b in self.nontrivial())
        return f"C_{self.n}{{{body}}}"

    def to_dot(self) -> str:
        """Divisor lattice with admissible transfers drawn solid and the rest dotted."""
        lines = [f"digraph C{self.n} {{", "  rankdir=BT;"]
        for d in divisors(self.n):
            lines.append(f'  "{d}" [label="C_{d}"];')
        for a, b in divisor_pairs(self.n, strict=True):
            style = "solid" if (a, b) in self.pairs else "dotted"
            lines.append(f'  "{a}" -> "{b}" [style={style}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def make(n: int, pairs) -> TransferSystem:
    ds = divisors(n)
    rel = {(d, d) for d in ds}
    for a, b in pairs:
        if a not in ds or b not in ds or b % a:
            raise TransferError(f"({a}, {b}) is not a divisor pair of {n}")
        rel.add((a, b))
    return TransferSystem(n, frozenset(rel))


def complete(n: int) -> TransferSystem:
    return TransferSystem(n, frozenset(divisor_pairs(n)))


def trivial(n: int) -> TransferSystem:
    return make(n, [])


def axiom_failure(pairs, n: int) -> str | None:
    """The first violated axiom, or None."""
    rel = set(pairs)
    ds = divisors(n)
    for a, b in rel:
        if a not in ds or b not in ds or b % a:
            return f"({a}, {b}) is not a divisor pair"
    for d in ds:
        if (d, d) not in rel:
            return f"not reflexive at {d}"
    for a, b in rel:
        for b2, c in rel:
            if b == b2 and (a, c) not in rel:
                return f"not transitive: ({a}, {b}), ({b}, {c})"
    for a, b in rel:
        for c in ds:
            if b % c == 0 and (gcd(a, c), c) not in rel:
                return f"not restriction stable: ({a}, {b}) restricted to {c}"
    return None


def is_transfer_system(pairs, n: int) -> bool:
    if isinstance(pairs, TransferSystem):
        pairs = pairs.pairs
    return axiom_failure(pairs, n) is None


def closure(pairs, n: int) -> TransferSystem:
    """Smallest transfer system containing the pairs."""
    rel = set(make(n, pairs).pairs)
    ds = divisors(n)
    changed = True
    while changed:
        changed = False
        for a, b in list(rel):
            for c in ds:
                if b % c == 0 and (gcd(a, c), c) not in rel:
                    rel.add((gcd(a, c), c))
                    changed = True
            for b2, c in list(rel):
                if b == b2 and (a, c) not in rel:
                    rel.add((a, c))
                    changed = True
    return TransferSystem(n, frozenset(rel))


def enumerate_transfer_systems(n: int, max_divisors: int = MAX_DIVISORS) -> list[TransferSystem]:
    """All transfer systems, found by closing up one generator at a time."""
    if len(divisors(n)) > max_divisors:
        raise TransferError(f"{n} has {len(divisors(n))} divisors, more than the cap {max_divisors}")
    gens = divisor_pairs(n, strict=True)
    start = trivial(n)
    seen = {start.pairs: start}
    frontier = [start]
    while frontier:
        nxt = []
        for R in frontier:
            for p in gens:
                if p in R.pairs:
                    continue
                S = closure(R.pairs | {p}, n)
                if S.pairs not in seen:
                    seen[S.pairs] = S
                    nxt.append(S)
        frontier = nxt
    return sorted(seen.values(), key=TransferSystem.key)


# ---------------------------------------------------------------------------
# norms


QUANTIFIERS = ("H", "all-K-in-H")


def norm_along(R: TransferSystem, h: int, n: int | None = None, quantifier: str = "H") -> TransferSystem:
    """N_H^G of the transfer system, H = C_h.

    C_n/C_h x C_n/C_a is a union of orbits C_n/C_gcd(h,a), each mapping onto
    C_n/C_gcd(h,b), so (a, b) is admissible iff (gcd(h,a), gcd(h,b)) is in R.
    With quantifier "all-K-in-H" the test is run for every C_k inside C_h.
    """
    n = n or R.n
    if n != R.n:
        raise TransferError("group orders differ")
    if n % h:
        raise TransferError(f"{h} does not divide {n}")
    if quantifier not in QUANTIFIERS:
        raise TransferError(f"unknown quantifier {quantifier!r}")
    tests = [h] if quantifier == "H" else divisors(h)
    out = [(a, b) for a, b in divisor_pairs(n) if all((gcd(k, a), gcd(k, b)) in R.pairs for k in tests)]
    return TransferSystem(n, frozenset(out))


@dataclass
class QuotientStructure:
    k: int
    n: int
    H_k: int
    normed: TransferSystem
    g_e_infinity: bool
    tower: dict[int, bool]       # l (k | l) -> N_{H_l} R contained in N_{H_k} R

    @property
    def ok(self) -> bool:
        return all(self.tower.values())


def quotient_structure(R: TransferSystem, k: int, n: int | None = None, quantifier: str = "H") -> QuotientStructure:
    """R / a_lambda(k) is an algebra over N_{H_k} R with H_k = C_gcd(k, n)."""
    n = n or R.n
    if k < 1:
        raise TransferError("k must be positive")
    hk = gcd(k, n)
    normed = norm_along(R, hk, n, quantifier)
    tower = {}
    for m in range(1, n + 1):
        ell = k * m
        tower[ell] = norm_along(R, gcd(ell, n), n, quantifier) <= normed
    return QuotientStructure(k, n, hk, normed, normed == complete(n), tower)
