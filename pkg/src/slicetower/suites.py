"""Verification suites shared by the command line and the acceptance tests.

Each suite returns a SuiteResult: an overall flag plus one line per check.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .bredon import SHIFT_IDENTITIES, ro_graded_homotopy_HZ, verify_shift_identity
from .euler_quotients import check_functoriality, les_check
from .mackey import (
    CATALOGUE_NAMES, _SIGN_ENTRIES, catalogue, check_mackey_axioms, circ_sequence, counit_sequence,
    exact_sequence_check, zero_functor, zero_morphism,
)
from .rep_ring import VirtualRep, canonicalize_irrep, divisors
from .ss_engine import kitchloo_wilson
from .transfer_systems import enumerate_transfer_systems, is_transfer_system, norm_along, quotient_structure


@dataclass
class SuiteResult:
    name: str
    ok: bool = True
    lines: list[str] = field(default_factory=list)

    def add(self, label: str, good: bool):
        self.ok = self.ok and bool(good)
        self.lines.append(f"{'ok  ' if good else 'FAIL'} {label}")

    def __bool__(self) -> bool:
        return self.ok


def _two_power(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def degree_window(n: int, size: int = 40) -> list[VirtualRep]:
    """At most ``size`` degrees a + b*sigma (+ c*lambda(1) when n > 2) around zero."""
    if n == 1:
        grid = [VirtualRep(n, a) for a in range(-3, 4)]
    elif n == 2:
        grid = [VirtualRep(n, a, b) for a in range(-3, 4) for b in range(-2, 3)]
    else:
        lam = canonicalize_irrep(1, n)
        grid = [VirtualRep(n, a, b) + lam * c for a in range(-2, 2) for b in (-1, 0, 1) for c in (-1, 0, 1)]
    return grid[:size]


def mackey_axioms(n: int, window: int = 2) -> SuiteResult:
    res = SuiteResult("mackey-axioms")
    for name in CATALOGUE_NAMES:
        if name in _SIGN_ENTRIES and not (_two_power(n) and n % 2 == 0):
            continue
        res.add(f"axioms {name} C_{n}", check_mackey_axioms(catalogue(name, n)))
    if _two_power(n):
        alphas = [VirtualRep(n, a, b) for a in range(-window, window + 1) for b in range(-window, window + 1)] \
            if n % 2 == 0 else [VirtualRep(n, a) for a in range(-window, window + 1)]
        bad = [str(a) for a in alphas if not check_mackey_axioms(ro_graded_homotopy_HZ(a))]
        res.add(f"axioms on {len(alphas)} homology outputs" + (f" (bad: {bad})" if bad else ""), not bad)
    z = zero_functor(n)
    f, p = circ_sequence(n)
    res.add("0 -> Zdual -> Z -> circ -> 0", exact_sequence_check([zero_morphism(z, f.source), f, p, zero_morphism(p.target, z)]))
    if n % 2 == 0 and _two_power(n):
        inc, eps, proj = counit_sequence(n)
        res.add("0 -> circbar -> Ind Res circ -> circ -> bullet -> 0",
                exact_sequence_check([zero_morphism(z, inc.source), inc, eps, proj, zero_morphism(proj.target, z)]))
    return res


def shift_identities(n: int, window: int = 3) -> SuiteResult:
    res = SuiteResult("shift-identities")
    for which in SHIFT_IDENTITIES:
        res.add(f"{which} C_{n}", verify_shift_identity(which, n, window))
    return res


def les(n: int, k: int, size: int = 40) -> SuiteResult:
    res = SuiteResult("les")
    for V in degree_window(n, size):
        rep = les_check(V, k)
        res.add(f"LES a_lambda({k}) C_{n} at {V}" + ("" if rep else f": {rep.failure}"), rep.ok)
    return res


def functoriality(n: int, size: int = 12) -> SuiteResult:
    res = SuiteResult("functoriality")
    alphas = degree_window(n, size)
    bad = check_functoriality(n, alphas)
    for a, b, c, alpha in bad:
        res.add(f"{a} | {b} | {c} at {alpha}", False)
    res.add(f"tower composites over all divisor chains of {n} on {len(alphas)} degrees", not bad)
    return res


def transfer_systems(n: int) -> SuiteResult:
    res = SuiteResult("transfer-systems")
    systems = enumerate_transfer_systems(n)
    res.add(f"C_{n}: {len(systems)} transfer systems, all satisfy the axioms",
            all(is_transfer_system(R, n) for R in systems))
    closed = contains = idem = True
    for R in systems:
        for h in divisors(n):
            N = norm_along(R, h)
            closed &= is_transfer_system(N, n)
            contains &= R <= N
            idem &= norm_along(N, h) == N
    res.add("norms are transfer systems", closed)
    res.add("R contained in N_h R", contains)
    res.add("N_h idempotent", idem)
    mono = all(norm_along(R, h) <= norm_along(S, h)
               for R, S in itertools.product(systems, repeat=2) if R <= S for h in divisors(n))
    res.add("N_h monotone in R", mono)
    res.add("quotient structures refine along k | l",
            all(quotient_structure(R, k).ok for R in systems for k in divisors(n)))
    return res


def kw(max_n: int) -> SuiteResult:
    res = SuiteResult("kw")
    for m in range(1, max_n + 1):
        rec = kitchloo_wilson(m)
        res.add(f"b_{m} = {rec.b_n}, deg x_{m} = {rec.x_degree}", rec.ok)
    return res


SUITES = ("mackey-axioms", "shift-identities", "les", "functoriality", "transfer-systems", "kw")


def run_suite(name: str, n: int = 4, k: int = 1, max_n: int = 8) -> SuiteResult:
    if name == "mackey-axioms":
        return mackey_axioms(n)
    if name == "shift-identities":
        return shift_identities(n)
    if name == "les":
        return les(n, k)
    if name == "functoriality":
        return functoriality(n)
    if name == "transfer-systems":
        return transfer_systems(n)
    if name == "kw":
        return kw(max_n)
    raise KeyError(name)
