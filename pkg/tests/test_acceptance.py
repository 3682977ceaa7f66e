"""Acceptance criteria 1 to 11, one recorded line each."""
import time
from math import gcd

from slicetower.cli import JobConfig, cmd_chart
from slicetower.euler_quotients import check_functoriality, hz_quotient_pi
from slicetower.mackey import check_mackey_axioms, isomorphic
from slicetower.rep_ring import VirtualRep, canonicalize_irrep, divisors, format_rep, restrict_rep
from slicetower.slice_e2 import Target, e2_chart, sigma_window
from slicetower.ss_engine import (
    collapse_certify, compare_with_chart, differential_page, irreducible_orientable, kitchloo_wilson,
    known_differential, orientation_index, survival_status,
)
from slicetower import suites
from slicetower.transfer_systems import (
    enumerate_transfer_systems, is_transfer_system, norm_along, quotient_structure,
)


def test_1_shift_identities(criterion):
    t = time.perf_counter()
    ok = all(suites.shift_identities(n) for n in (2, 4, 8))
    dt = time.perf_counter() - t
    assert criterion(1, ok and dt < 10, f"three identities, n in 2,4,8, {dt:.2f}s")


def test_2_mackey_axioms(criterion):
    ok = all(suites.mackey_axioms(n) for n in (2, 4, 8))
    quot = [hz_quotient_pi(j, VirtualRep(4, a, b), 4) for j in (0, 1, 2) for a in range(-3, 4) for b in (-1, 0, 1)]
    ok_q = all(check_mackey_axioms(M) for M in quot)
    assert criterion(2, ok and ok_q, f"catalogue, homology and {len(quot)} quotient outputs, both exact sequences")


def test_3_les(criterion):
    t = time.perf_counter()
    results = [suites.les(n, k) for n in (2, 4) for k in (1, 2)]
    dt = time.perf_counter() - t
    count = sum(len(r.lines) for r in results)
    ok = all(results)
    assert criterion(3, ok and dt < 60, f"{count} degrees over n in 2,4 and k in 1,2, {dt:.2f}s")


def test_4_collapse(criterion):
    ok, checked = True, 0
    for n in (2, 4):
        window = sigma_window(n, 8)
        cert = collapse_certify(e2_chart(window, n, Target(1)))
        ok = ok and cert.ok and set(cert.filtrations) <= {0, 1}
        for stem in sorted({V.plus_trivial(-s) for s, V in window}, key=format_rep):
            checked += 1
            ok = ok and compare_with_chart(stem)
    assert criterion(4, ok, f"C2 and C4 collapse, {checked} stems agree with E-infinity")


def test_5_u_periodicity(criterion):
    n = 4
    lam = canonicalize_irrep(1, n)
    shifts = [lam, VirtualRep(n, 0, 2), lam + VirtualRep(n, 0, 2)]
    ok, count = True, 0
    for V in shifts:
        for a in range(-4, 5):
            for b in (-1, 0, 1):
                alpha = VirtualRep(n, a, b)
                beta = alpha + VirtualRep(n, V.dim) - V
                ok = ok and isomorphic(hz_quotient_pi(0, alpha, n), hz_quotient_pi(0, beta, n))
                count += 1
    assert criterion(5, ok, f"{count} comparisons for lambda(1), 2sigma, lambda(1)+2sigma")


def test_6_differentials(criterion):
    d = known_differential(1, 1, 1)
    ok = d.page == 3 and str(d) == "d3(u2s) = r1.as^3" and d.consistent()
    for r in range(1, 5):
        for k in range(1, 5):
            for b in (1, 3):
                rec = known_differential(r, k, b)
                ok = ok and rec.consistent() and rec.page == differential_page(r, k)
    assert criterion(6, ok, f"{d}; sweep r,k <= 4, b in 1,3")


def test_7_survival_dichotomy(criterion):
    n = 8
    mismatches = []
    for j in (0, 1, 2):
        for V in irreducible_orientable(n):
            k = orientation_index(V)
            cert = survival_status(V, j)
            want = "Survives" if k > j else "Dies"
            good = cert.status == want
            if good and want == "Dies":
                R = restrict_rep(V, cert.H)
                a, r, b = cert.decomposition
                good = R.trivial == a and R.sign == 2 ** r * b and b % 2 == 1
            if not good:
                mismatches.append(f"u_{format_rep(V)} j={j}: {cert.status}, criterion says {want}")
    detail = "all irreducible orientable V" if not mismatches else "; ".join(mismatches)
    assert criterion(7, not mismatches, detail)


def test_8_kitchloo_wilson(criterion):
    recs = [kitchloo_wilson(m) for m in range(1, 9)]
    ok = all(recs) and [r.b_n for r in recs[:3]] == [1, 17, 97]
    ok = ok and all(r.b_n == 2 ** (2 * r.n + 1) - 2 ** (r.n + 2) + 1 for r in recs)
    assert criterion(8, ok, "b_n and deg x_n for n <= 8")


def _oracle(n):
    ds = divisors(n)
    strict = [(a, b) for a in ds for b in ds if a != b and b % a == 0]
    out = set()
    for mask in range(2 ** len(strict)):
        rel = {(d, d) for d in ds} | {p for i, p in enumerate(strict) if mask >> i & 1}
        if all((a, c) in rel for (a, b) in rel for (b2, c) in rel if b == b2) and \
                all((gcd(a, c), c) in rel for (a, b) in rel for c in ds if b % c == 0):
            out.add(frozenset(rel))
    return out


def test_9_transfer_systems(criterion):
    t = time.perf_counter()
    ok, counts = True, []
    for n in (2, 4, 8, 12):
        systems = enumerate_transfer_systems(n)
        counts.append(len(systems))
        ok = ok and {R.pairs for R in systems} == _oracle(n) and len(systems) == len(_oracle(n))
        for R in systems:
            for h in divisors(n):
                N = norm_along(R, h)
                ok = ok and is_transfer_system(N, n) and R <= N
                ok = ok and all(norm_along(S, h) <= N for S in systems if S <= R)
    ok = ok and all(quotient_structure(R, k).ok for R in enumerate_transfer_systems(8) for k in divisors(8))
    dt = time.perf_counter() - t
    assert criterion(9, ok and dt < 30, f"counts {counts}, {dt:.2f}s")


def test_10_tower_functoriality(criterion):
    alphas = suites.degree_window(8, 12)
    bad = check_functoriality(8, alphas)
    assert criterion(10, not bad, f"all divisor chains of 8 on {len(alphas)} degrees")


def test_11_determinism(criterion, monkeypatch):
    monkeypatch.delenv("SLICETOWER_CACHE_DIR", raising=False)
    ok = True
    for fmt in ("svg", "tsv", "json"):
        cfg = JobConfig(4, 2, 3, fmt)
        ok = ok and cmd_chart(cfg).encode() == cmd_chart(cfg).encode()
    assert criterion(11, ok, "svg, tsv and json for C4 / a_lambda(2)")
