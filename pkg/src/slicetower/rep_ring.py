"""Real representation ring of a cyclic group C_n.

A virtual representation is an integer vector over the irreducibles: the
trivial line, the sign line (n even only) and the rotation planes
lambda(k) for 0 < k < n/2.  lambda(0) and lambda(n/2) are normalized on
entry.  The generator gamma acts on lambda(k) by exp(2 pi i k / n).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import gcd


class RepError(ValueError):
    pass


class NullEulerClass(RepError):
    """The Euler class of lambda(k) vanishes because n divides k."""


@dataclass(frozen=True, order=True)
class IrrepLabel:
    kind: str  # "trivial", "sign" or "rotation"
    k: int = 0

    def __str__(self) -> str:
        return {"trivial": "1", "sign": "s"}.get(self.kind, f"L({self.k})")


TRIVIAL = IrrepLabel("trivial")
SIGN = IrrepLabel("sign")


def rotation_indices(n: int) -> list[int]:
    return [k for k in range(1, n) if 2 * k < n]


@dataclass(frozen=True)
class VirtualRep:
    n: int
    trivial: int = 0
    sign: int = 0
    rot: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.n < 1:
            raise RepError("group order must be positive")
        if self.sign and self.n % 2:
            raise RepError("odd order groups have no sign representation")
        width = len(rotation_indices(self.n))
        if len(self.rot) < width:
            object.__setattr__(self, "rot", tuple(self.rot) + (0,) * (width - len(self.rot)))
        elif len(self.rot) > width:
            if any(self.rot[width:]):
                raise RepError("rotation index out of range")
            object.__setattr__(self, "rot", tuple(self.rot[:width]))

    # construction -----------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "VirtualRep":
        return cls(n)

    @classmethod
    def trivial_rep(cls, n: int, a: int = 1) -> "VirtualRep":
        return cls(n, trivial=a)

    @classmethod
    def sigma(cls, n: int, b: int = 1) -> "VirtualRep":
        return cls(n, sign=b)

    @classmethod
    def lam(cls, k: int, n: int, c: int = 1) -> "VirtualRep":
        return canonicalize_irrep(k, n) * c

    @classmethod
    def regular(cls, n: int) -> "VirtualRep":
        out = cls(n, trivial=1)
        for k in rotation_indices(n):
            out = out + cls.lam(k, n)
        if n % 2 == 0:
            out = out + cls.sigma(n)
        return out

    @classmethod
    def reduced_regular(cls, n: int) -> "VirtualRep":
        return cls.regular(n) - cls.trivial_rep(n)

    # arithmetic -------------------------------------------------------

    def _check(self, other: "VirtualRep"):
        if self.n != other.n:
            raise RepError(f"group orders differ: {self.n} vs {other.n}")

    def __add__(self, other: "VirtualRep") -> "VirtualRep":
        self._check(other)
        return VirtualRep(self.n, self.trivial + other.trivial, self.sign + other.sign,
                          tuple(a + b for a, b in zip(self.rot, other.rot)))

    def __neg__(self) -> "VirtualRep":
        return VirtualRep(self.n, -self.trivial, -self.sign, tuple(-a for a in self.rot))

    def __sub__(self, other: "VirtualRep") -> "VirtualRep":
        return self + (-other)

    def __mul__(self, c: int) -> "VirtualRep":
        return VirtualRep(self.n, c * self.trivial, c * self.sign, tuple(c * a for a in self.rot))

    __rmul__ = __mul__

    def plus_trivial(self, a: int) -> "VirtualRep":
        return VirtualRep(self.n, self.trivial + a, self.sign, self.rot)

    # queries ----------------------------------------------------------

    @property
    def dim(self) -> int:
        return self.trivial + self.sign + 2 * sum(self.rot)

    def coeff(self, label: IrrepLabel) -> int:
        if label.kind == "trivial":
            return self.trivial
        if label.kind == "sign":
            return self.sign
        return self.rot[label.k - 1]

    def terms(self) -> list[tuple[IrrepLabel, int]]:
        out = []
        if self.trivial:
            out.append((TRIVIAL, self.trivial))
        if self.sign:
            out.append((SIGN, self.sign))
        for k, c in zip(rotation_indices(self.n), self.rot):
            if c:
                out.append((IrrepLabel("rotation", k), c))
        return out

    def is_actual(self) -> bool:
        return self.trivial >= 0 and self.sign >= 0 and all(c >= 0 for c in self.rot)

    def is_zero(self) -> bool:
        return not self.trivial and not self.sign and not any(self.rot)

    def parts(self) -> tuple["VirtualRep", "VirtualRep"]:
        """(W+, W-) actual representations with self = W+ - W-."""
        pos = VirtualRep(self.n, max(self.trivial, 0), max(self.sign, 0),
                         tuple(max(c, 0) for c in self.rot))
        return pos, pos - self

    def nontrivial_part(self) -> "VirtualRep":
        return VirtualRep(self.n, 0, self.sign, self.rot)

    def restrict(self, d: int) -> "VirtualRep":
        return restrict_rep(self, d)

    def __str__(self) -> str:
        return format_rep(self)


# ---------------------------------------------------------------------------


def canonicalize_irrep(k: int, n: int) -> VirtualRep:
    """lambda(k) for C_n written over the canonical basis."""
    if n < 1:
        raise RepError("group order must be positive")
    k %= n
    k = min(k, n - k) if k else 0
    if k == 0:
        return VirtualRep(n, trivial=2)
    if 2 * k == n:
        return VirtualRep(n, sign=2)
    rot = [0] * len(rotation_indices(n))
    rot[k - 1] = 1
    return VirtualRep(n, rot=tuple(rot))


def restrict_rep(V: VirtualRep, d: int) -> VirtualRep:
    """Restriction to the subgroup C_d, generated by gamma^(n/d)."""
    n = V.n
    if d < 1 or n % d:
        raise RepError(f"{d} does not divide {n}")
    out = VirtualRep(d, trivial=V.trivial)
    if V.sign:
        if (n // d) % 2:
            out = out + VirtualRep(d, sign=V.sign)
        else:
            out = out.plus_trivial(V.sign)
    for k, c in zip(rotation_indices(n), V.rot):
        if c:
            out = out + canonicalize_irrep(k % d, d) * c
    return out


def fixed_subspace_dim(V: VirtualRep, d: int) -> int:
    """dim V^{C_d}; for virtual V the virtual fixed dimension."""
    return restrict_rep(V, d).trivial


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def family_of(V: VirtualRep) -> set[int]:
    """Divisors d with V^{C_d} nonzero."""
    if not V.is_actual():
        raise RepError("family_of needs an actual representation")
    return {d for d in divisors(V.n) if fixed_subspace_dim(V, d) > 0}


def is_orientable(V: VirtualRep) -> bool:
    return V.sign % 2 == 0


def kernel_order(V: VirtualRep) -> int:
    """Order of the largest subgroup acting trivially on every summand of V."""
    best = 1
    for d in divisors(V.n):
        if restrict_rep(V, d).nontrivial_part().is_zero():
            best = d
    return best


# ---------------------------------------------------------------------------
# Euler class divisibility


@dataclass(frozen=True)
class EulerWitness:
    """A map S^{lambda(source)} -> S^{lambda(target)} under S^0.

    ``exponent`` is the power map z -> z^e realizing it: e * source is
    congruent to +-target mod n.  Its underlying degree is ``exponent``.
    """

    source: int
    target: int
    n: int
    mechanism: str  # "power-map" or "gcd-equivalence"
    exponent: int

    @property
    def local_equivalence(self) -> bool:
        """True when the underlying degree is prime to n (an equivalence once
        primes away from n are inverted)."""
        return gcd(self.exponent, self.n) == 1

    def compose(self, other: "EulerWitness") -> "EulerWitness":
        """self: k -> l followed by other: l -> m."""
        if self.n != other.n or (self.target - other.source) % self.n and (self.target + other.source) % self.n:
            raise RepError("witnesses do not compose")
        mech = "gcd-equivalence" if (self.mechanism == other.mechanism == "gcd-equivalence") else "power-map"
        return EulerWitness(self.source, other.target, self.n, mech, self.exponent * other.exponent)


def _power_exponent(k: int, l: int, n: int) -> int | None:
    for e in range(1, n + 1):
        if (e * k - l) % n == 0 or (e * k + l) % n == 0:
            return e
    return None


def euler_divides(k: int, l: int, n: int) -> EulerWitness | None:
    """Witness that a_{lambda(k)} divides a_{lambda(l)}, or None."""
    for x in (k, l):
        if x % n == 0:
            raise NullEulerClass(f"a_lambda({x}) is null for n = {n}")
    gk, gl = gcd(k, n), gcd(l, n)
    if gk == gl:
        e = _power_exponent(k, l, n)
        # prefer an exponent prime to n so the witness is a local equivalence
        for cand in range(1, n + 1):
            if gcd(cand, n) == 1 and ((cand * k - l) % n == 0 or (cand * k + l) % n == 0):
                e = cand
                break
        return EulerWitness(k, l, n, "gcd-equivalence", e)
    if l % k == 0:
        return EulerWitness(k, l, n, "power-map", l // k)
    if gl % gk == 0:
        return EulerWitness(k, l, n, "power-map", _power_exponent(k, l, n))
    return None


# ---------------------------------------------------------------------------
# text grammar:  a + b*s + c*L(k)

_TERM = re.compile(r"\s*([+-]?)\s*(\d+)?\s*\*?\s*(s|L\(\s*-?\d+\s*\))?\s*")


def parse_rep(text: str, n: int) -> VirtualRep:
    src = text.strip()
    if not src:
        raise RepError("empty representation")
    out = VirtualRep(n)
    pos = 0
    first = True
    while pos < len(src):
        m = _TERM.match(src, pos)
        if not m or m.end() == pos:
            raise RepError(f"cannot parse {text!r} at {pos}")
        sign, num, atom = m.groups()
        if not sign and not first:
            raise RepError(f"missing operator in {text!r}")
        if num is None and atom is None:
            raise RepError(f"dangling operator in {text!r}")
        c = int(num) if num is not None else 1
        if sign == "-":
            c = -c
        if atom is None:
            out = out.plus_trivial(c)
        elif atom == "s":
            out = out + VirtualRep(n, sign=c)
        else:
            k = int(atom[2:-1])
            out = out + canonicalize_irrep(k, n) * c
        pos = m.end()
        first = False
    return out


def format_rep(V: VirtualRep) -> str:
    parts = []
    for label, c in V.terms():
        if label.kind == "trivial":
            body = str(abs(c))
        else:
            body = f"{abs(c)}*{label}"
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sg, body in parts[1:]:
        s += f" {sg} {body}"
    return s
