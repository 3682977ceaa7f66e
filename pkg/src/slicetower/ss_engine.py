"""Bookkeeping for the slice spectral sequence.

Elements are tracked as named families with a stem (a virtual
representation) and a filtration.  A class p * x with x in pi_beta HZ sits in
filtration -dim(beta): u-classes have filtration 0 and a_V raises it by dim V.
A d_r raises filtration by r and lowers the stem by one.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .euler_quotients import BPattern, quotient_pi, u_reduce
from .mackey import MackeyFunctor, direct_sum, induce, isomorphic, zero_functor
from .rep_ring import VirtualRep, canonicalize_irrep, format_rep, is_orientable, kernel_order, restrict_rep
from .slice_e2 import E2Chart, Target, e2, e2_terms, monomial_orbits, slice_degree


class SSError(ValueError):
    pass


def _log2(n: int) -> int:
    k = n.bit_length() - 1
    if n < 1 or n != 2 ** k:
        raise SSError(f"{n} is not a power of two")
    return k


# ---------------------------------------------------------------------------
# element families


@dataclass(frozen=True)
class ElementFamily:
    name: str
    stem: VirtualRep
    filtration: int
    level: int = 0          # group order where the class lives; 0 means the stem's group
    permanent: bool = False

    def __post_init__(self):
        if not self.level:
            object.__setattr__(self, "level", self.stem.n)

    def __mul__(self, other: "ElementFamily") -> "ElementFamily":
        if self.stem.n != other.stem.n:
            raise SSError("factors live over different groups")
        name = other.name if self.name == "1" else self.name if other.name == "1" else f"{self.name}.{other.name}"
        return ElementFamily(name, self.stem + other.stem, self.filtration + other.filtration,
                             min(self.level, other.level), self.permanent and other.permanent)

    def __pow__(self, m: int) -> "ElementFamily":
        if m < 0:
            raise SSError("negative powers are not tracked")
        out = unit(self.stem.n)
        for _ in range(m):
            out = out * self
        if m > 1:
            out = ElementFamily(f"({self.name})^{m}" if "." in self.name else f"{self.name}^{m}",
                                out.stem, out.filtration, out.level, out.permanent)
        return out

    @property
    def V(self) -> VirtualRep:
        """The E2 coordinate V with stem = V - s."""
        return self.stem.plus_trivial(self.filtration)

    def __str__(self) -> str:
        return self.name


def unit(n: int) -> ElementFamily:
    return ElementFamily("1", VirtualRep(n), 0, n, True)


def a_class(V: VirtualRep, name: str | None = None) -> ElementFamily:
    """Euler class a_V in stem -V, filtration dim V."""
    return ElementFamily(name or f"a[{format_rep(V)}]", -V, V.dim, V.n, True)


def u_class(V: VirtualRep, name: str | None = None) -> ElementFamily:
    """Orientation class u_V in stem dim V - V, filtration 0."""
    if not is_orientable(V):
        raise SSError("u_V needs an orientable V")
    return ElementFamily(name or f"u[{format_rep(V)}]", VirtualRep(V.n, V.dim) - V, 0, V.n)


def a_sigma(n: int) -> ElementFamily:
    return a_class(VirtualRep(n, 0, 1), "as")


def u_2sigma(n: int) -> ElementFamily:
    return u_class(VirtualRep(n, 0, 2), "u2s")


def norm_r(i: int, k: int) -> ElementFamily:
    """N_{C_2}^{C_{2^k}} r_i in stem i * rho_{2^k}, filtration 0."""
    h = 2 ** k
    name = f"r{i}" if k == 1 else f"N{h}r{i}"
    return ElementFamily(name, VirtualRep.regular(h) * i, 0, h, True)


def reduced_regular(h: int) -> VirtualRep:
    return VirtualRep.reduced_regular(h)


# ---------------------------------------------------------------------------
# differentials


@dataclass(frozen=True)
class DifferentialRecord:
    page: int
    source: ElementFamily
    target: ElementFamily
    coefficient: int = 1
    claimed: bool = True
    note: str = ""

    def consistent(self) -> bool:
        return (self.target.filtration == self.source.filtration + self.page
                and self.target.stem == self.source.stem.plus_trivial(-1))

    def to_dict(self) -> dict:
        def ends(x: ElementFamily) -> dict:
            return {"name": x.name, "s": x.filtration, "stem": format_rep(x.stem), "V": format_rep(x.V)}

        return {"page": self.page, "from": ends(self.source), "to": ends(self.target), "coeff": self.coefficient}

    def __str__(self) -> str:
        coeff = "" if self.coefficient == 1 else f"{self.coefficient}*"
        return f"d{self.page}({self.source}) = {coeff}{self.target}"


def differential_page(r: int, k: int) -> int:
    return (2 ** r - 1) * (2 ** k - 1) + 2 ** r


def known_differential(r: int, k: int, b: int = 1, n: int | None = None) -> DifferentialRecord:
    """d_{(2^r-1)(2^k-1)+2^r} ((u_2s^{2^(r-1)})^b) = b (u_2s^{2^(r-1)})^{b-1} N r_{2^r-1} a_{(2^r-1) rhobar} a_s^{2^r}
    over C_{2^k}.  ``n`` (ambient exponent) only records where the family restricts from."""
    if r < 1 or k < 1:
        raise SSError("need r >= 1 and k >= 1")
    if n is not None and n < k:
        raise SSError("the subgroup C_{2^k} must lie in the ambient group")
    h = 2 ** k
    page = differential_page(r, k)
    e = 2 ** (r - 1)
    source = u_2sigma(h) ** (e * b)
    i = 2 ** r - 1
    if k == 1:
        a_part = a_class(VirtualRep(h, 0, 1) * (2 ** (r + 1) - 1), f"as^{2 ** (r + 1) - 1}")
    else:
        a_part = a_class(reduced_regular(h) * i, f"a[{i}rhobar{h}]") * a_class(VirtualRep(h, 0, 2 ** r), f"as^{2 ** r}")
    target = u_2sigma(h) ** (e * (b - 1)) * norm_r(i, k) * a_part
    target = ElementFamily(target.name, target.stem, target.filtration, h, False)
    if b % 2 == 0:
        rec = DifferentialRecord(page, source, target, b, claimed=False,
                                 note="even b: the coefficient is not claimed to be nonzero")
    else:
        rec = DifferentialRecord(page, source, target, b)
    if not rec.consistent():
        raise SSError(f"degree bookkeeping failed for {rec}")
    return rec


def leibniz(rec: DifferentialRecord, y: ElementFamily) -> DifferentialRecord | None:
    """d(x y) = d(x) y for a permanent cycle y; None when y is not known to be one."""
    if not y.permanent:
        return None
    return DifferentialRecord(rec.page, rec.source * y, rec.target * y, rec.coefficient, rec.claimed, rec.note)


# ---------------------------------------------------------------------------
# survival of orientation classes


@dataclass
class SurvivalCertificate:
    status: str                      # "Survives", "Dies" or "inconclusive"
    V: VirtualRep
    j: int
    reason: str = ""
    checked: list[tuple[int, str]] = field(default_factory=list)   # (page, V') with zero target
    obstruction: tuple[int, str, str] | None = None                # nonzero target found
    H: int | None = None
    decomposition: tuple[int, int, int] | None = None               # (a, r, b) with i_H^* V = a + 2^r b sigma
    page_bound: int | None = None

    def __bool__(self) -> bool:
        return self.status != "inconclusive"


def orientation_index(V: VirtualRep) -> int:
    """k with kernel(V) = C_{2^k} for an irreducible orientable V."""
    return _log2(kernel_order(V))


def irreducible_orientable(n: int) -> list[VirtualRep]:
    out = [canonicalize_irrep(m, n) for m in range(1, n) if 2 * m < n]
    if n % 2 == 0:
        out.append(VirtualRep(n, 0, 2))
    return out


def survival_status(V: VirtualRep, j: int, max_page: int | None = None) -> SurvivalCertificate:
    """Fate of u_V in the slice spectral sequence of MU^((G)) / a_lambda(2^j), G = C_n."""
    n = V.n
    _log2(n)
    if not is_orientable(V) or not V.is_actual() or V.trivial:
        raise SSError("survival_status takes a nontrivial orientable actual representation")
    sub = 2 ** j
    if n % sub:
        raise SSError("C_{2^j} must be a subgroup")
    if not restrict_rep(V, sub).nontrivial_part().is_zero():
        # V^{C_{2^j}} != V: the smallest H with nontrivial restriction
        H = next(h for h in (2 ** t for t in range(1, j + 1)) if not restrict_rep(V, h).nontrivial_part().is_zero())
        R = restrict_rep(V, H)
        if any(R.rot):
            raise SSError("restriction to the minimal subgroup should be a sum of trivial and sign lines")
        c, r = R.sign, 0
        while c % 2 == 0:
            c //= 2
            r += 1
        kH = _log2(H)
        return SurvivalCertificate("Dies", V, j, reason="restriction to C_{2^j} is nontrivial", H=H,
                                   decomposition=(R.trivial, r, c), page_bound=differential_page(r, kH))
    # V^{C_{2^j}} = V: look for targets of d_r on u_V
    cert = SurvivalCertificate("Survives", V, j, reason="every potential target vanishes on the window")
    for page, Vt, M in target_scan(V, j, max_page):
        if M.levels[n].is_zero():
            cert.checked.append((page, format_rep(Vt)))
            continue
        cert.status = "inconclusive"
        cert.reason = "a potential target is nonzero"
        cert.obstruction = (page, format_rep(Vt), M.symbol())
        break
    return cert


def target_scan(V: VirtualRep, j: int, max_page: int | None = None):
    """(page, V', E2^{page, V'}) for the potential targets of d_page on u_V."""
    n = V.n
    u = u_class(V)
    if max_page is None:
        max_page = 4 * n + 1
    for page in range(2, max_page + 1):
        Vt = u.V.plus_trivial(page - 1)
        yield page, Vt, e2(page, Vt, Target(2 ** j))


# ---------------------------------------------------------------------------
# collapse and E_infinity for the a_lambda(1) quotient


@dataclass
class CollapseCertificate:
    ok: bool
    filtrations: list[int]

    def __bool__(self) -> bool:
        return self.ok


def collapse_certify(chart: E2Chart) -> CollapseCertificate:
    f = chart.filtrations()
    return CollapseCertificate(set(f) <= {0, 1}, f)


_B_CACHE: dict = {}


def b_value(h: int, alpha: VirtualRep) -> MackeyFunctor:
    """pi_alpha(HZ / a_lambda(1)) over C_h read off the pattern after u-reduction."""
    red = u_reduce(alpha)
    key = (h, red.trivial, red.sign)
    if key not in _B_CACHE:
        _B_CACHE[key] = quotient_pi(1, VirtualRep(h, red.trivial, red.sign))
    return _B_CACHE[key]


def load_patterns(patterns: dict[int, BPattern]):
    """Seed the pattern lookups from frozen patterns."""
    for h, pat in patterns.items():
        for (i, j), M in pat.entries.items():
            if j in (0, 1):
                _B_CACHE[(h, i, j)] = M


@dataclass
class EInfinityValue:
    alpha: VirtualRep
    mackey: MackeyFunctor
    pieces: list[tuple[int, int, int, MackeyFunctor]]   # (s, stabilizer, count, induced piece)
    names: list[str]


def e_infinity_pi_j0(alpha: VirtualRep) -> EInfinityValue:
    """pi_alpha(MU^((G)) / a_lambda(1)) from the pattern and monomial counts."""
    n = alpha.n
    exp = _log2(n)
    pieces, names, parts = [], [], []
    for s in (0, 1):
        V = alpha.plus_trivial(s)
        if V.dim < 0 or V.dim % 2:
            continue
        counts: dict[int, list] = {}
        for o in monomial_orbits(V.dim, exp):
            counts.setdefault(o.stabilizer, []).append(o)
        for h, orbits in sorted(counts.items()):
            beta = restrict_rep(alpha, h) - slice_degree(orbits[0])
            B = b_value(h, beta)
            if B.is_zero():
                continue
            M = induce(B, n) if h != n else B
            pieces.append((s, h, len(orbits), M))
            parts.extend([M] * len(orbits))
            red = u_reduce(beta)
            for o in orbits:
                prefix = "" if h == n else "G."
                names.append(f"{prefix}{o.name()}.B[{red.trivial},{red.sign}]")
    total = direct_sum(parts) if parts else zero_functor(n)
    return EInfinityValue(alpha, total, pieces, names)


def n_of(alpha: VirtualRep) -> int:
    return alpha.n


def compare_with_chart(alpha: VirtualRep) -> bool:
    """Piecewise exact agreement of the closed form with the E2 chart entries in stem alpha."""
    closed = e_infinity_pi_j0(alpha)
    target = Target(1)
    chart_pieces = []
    for s in range(0, max(0, -alpha.dim) + 2 * n_of(alpha) + 4):
        V = alpha.plus_trivial(s)
        for h, c, M in e2_terms(s, V, target):
            if not M.is_zero():
                chart_pieces.append((s, h, c, M))
    if [(s, h, c) for s, h, c, _ in chart_pieces] != [(s, h, c) for s, h, c, _ in closed.pieces]:
        return False
    return all(isomorphic(A, B) for (_, _, _, A), (_, _, _, B) in zip(chart_pieces, closed.pieces))


# ---------------------------------------------------------------------------
# Kitchloo-Wilson degree arithmetic


@dataclass
class KWRecord:
    n: int
    b_n: int
    x_degree: VirtualRep
    ok: bool
    equivalence: str = "E_R(n)^{hZ} = EO(n) / x_n^2"

    def __bool__(self) -> bool:
        return self.ok


def kitchloo_wilson(n: int) -> KWRecord:
    """b_n = 2^{2n+1} - 2^{n+2} + 1 and deg x_n = b_n for x_n = a_s vbar_n^{2^n-1} (u_2s^{2^n})^{2^{n-1}-1}."""
    if n < 1:
        raise SSError("n >= 1")
    b = 2 ** (2 * n + 1) - 2 ** (n + 2) + 1
    a_s = VirtualRep(2, 0, -1)
    vbar = VirtualRep(2, 1, 1) * (2 ** n - 1)
    u2s = VirtualRep(2, 2, -2)
    deg = a_s + vbar * (2 ** n - 1) + u2s * (2 ** n * (2 ** (n - 1) - 1))
    return KWRecord(n, b, deg, deg.sign == 0 and deg.trivial == b)
