"""Acceptance criteria 1-15, one check each.

Every check returns ``(ok, detail)``. Under pytest a summary section lists
one PASS/FAIL line per criterion; ``python3 tests/test_acceptance.py`` prints
the same lines directly. Criterion 14 is exploratory and never fails the run.
"""

from __future__ import annotations

import json
import math
import sys
import time

import pytest

from ideal_lattices import arith, cli
from ideal_lattices._parallel import default_threads
from ideal_lattices.asymptotics import density_ratio, residue_zeta_d, tauberian_constant
from ideal_lattices.dirichlet import (
    abelian_group_coeffs,
    convolve,
    partial_sums,
    product,
    sigma,
    sublattice_coeffs,
    zeta_affine_coeffs,
    zeta_d_coeffs,
    zeta_ZX_coeffs,
)
from ideal_lattices.lattice import (
    check_divisibility,
    count_all_sublattices,
    count_idealizable,
    count_idealizable_range,
    enumerate_extensions,
    iter_idealizable,
)
from ideal_lattices.numberfield import (
    dedekind_coeffs,
    euler_factor_from_splitting,
    residue_estimate,
    splitting_type,
)
from ideal_lattices.quotient_ring import count_ideals_bruteforce, count_ideals_range, ideal_coeffs

RESULTS: dict[int, str] = {}

ORACLE_RANGES = [(2, 2000), (3, 200), (4, 60)]
X2, X2_PLUS_1, X2_MINUS_X, X3, X3_MINUS_X = "0,0,1", "1,0,1", "0,-1,1", "0,0,0,1", "0,-1,0,1"


def chi4_divisor_sum(n: int) -> int:
    return sum((0, 1, 0, -1)[d % 4] for d in arith.divisors(n))


def c1(threads: int = 1):
    mismatches, total = [], 0
    for d, N in ORACLE_RANGES:
        brute = count_idealizable_range(d, N, threads=threads)
        formula = zeta_d_coeffs(d, N).values()
        mismatches += [(d, n) for n, (b, f) in enumerate(zip(brute, formula), 1) if b != f]
        total += N
    return not mismatches, f"{total} (d, n) pairs compared exactly, mismatches: {mismatches[:5] or 'none'}"


def c2():
    bad, checked = [], 0
    for d in (1, 2, 3):
        for n in range(1, 51):
            for H in iter_idealizable(d, n):
                checked += 1
                if len(list(enumerate_extensions(H))) != H.diagonal[-1] ** d:
                    bad.append(H)
    return not bad, f"{checked} idealizable bases (d <= 3, det <= 50), wrong extension counts: {len(bad)}"


def c3():
    bad, checked = 0, 0
    for d, N in ORACLE_RANGES:
        for n in range(1, N + 1):
            for H in iter_idealizable(d, n):
                checked += 1
                bad += not check_divisibility(H)
    return bad == 0, f"{checked} idealizable bases scanned, divisibility counterexamples: {bad}"


def c4(threads: int = 1):
    N = 500
    brute = count_ideals_range(X2, N, threads=threads)
    target = convolve(zeta_affine_coeffs(1, 0, N), zeta_affine_coeffs(2, 1, N)).values()
    bad = [n for n in range(1, N + 1) if brute[n - 1] != target[n - 1]]
    return not bad, f"X^2, n <= {N}: brute force vs zeta(s)zeta(2s-1), mismatches: {bad or 'none'}"


def c5(threads: int = 1):
    N, pairs, bad = 500, 0, []
    for f in (X2_PLUS_1, X2, X2_MINUS_X, X3_MINUS_X):
        a = [None] + count_ideals_range(f, N, threads=threads)
        for m in range(2, N + 1):
            for n in range(m + 1, N // m + 1):
                if math.gcd(m, n) == 1:
                    pairs += 1
                    if a[m * n] != a[m] * a[n]:
                        bad.append((f, m, n))
    return not bad, f"{pairs} coprime pairs over 4 rings, violations: {bad[:3] or 'none'}"


def c6():
    f, bad, powers = X2_PLUS_1, [], 0
    table = dedekind_coeffs(f, 10**4)
    for p in arith.primes_up_to(200):
        k = 1
        while p**k <= 200:
            powers += 1
            brute = count_ideals_bruteforce(f, p**k)
            euler = table[p**k]
            if p != 2:
                euler_direct = euler_factor_from_splitting(splitting_type(f, p), k)[k]
                if euler_direct != euler:
                    bad.append(("splitting", p, k))
            if euler != brute:
                bad.append(("bruteforce", p, k))
            k += 1
    closed = [n for n in range(1, 10**4 + 1) if table[n] != chi4_divisor_sum(n)]
    ok = not bad and not closed
    return ok, f"{powers} prime powers <= 200 agree: {not bad}; chi_4 closed form n <= 10^4 mismatches: {len(closed)}"


def c7():
    est = residue_estimate(dedekind_coeffs(X2_PLUS_1, 10**6))
    rel = abs(est.value - math.pi / 4) / (math.pi / 4)
    return rel < 0.01, f"residue {est.value:.6f} vs pi/4 = {math.pi / 4:.6f} (rel. err {rel:.2e}, band {est.band:.1e})"


def c8():
    N = 10**6
    via_table = partial_sums(zeta_d_coeffs(2, N))[N]
    # direct: sum over n = a b^2 of a, grouped by b
    direct = sum((m := N // (b * b)) * (m + 1) // 2 for b in range(1, math.isqrt(N) + 1))
    ratio = direct / N**2
    res = residue_zeta_d(2)
    half = tauberian_constant(res, 2, 1)
    rel_half, rel_res = abs(ratio - half) / half, abs(ratio - res) / res
    ok = via_table == direct and rel_half < 1e-3 and rel_res > 1e-3
    return ok, (
        f"A_N/N^2 = {ratio:.7f}; Res/2 = {half:.7f} (rel {rel_half:.1e}); "
        f"Res = {res:.7f} (rel {rel_res:.2f}, disagrees); table == direct sum: {via_table == direct}"
    )


def c9():
    zx = zeta_ZX_coeffs(6)
    bad = []
    for n in range(1, 7):
        brute = {count_idealizable(n + 1, n), count_idealizable(n + 2, n)}
        formula = {zeta_d_coeffs(n + 1, n)[n], zeta_d_coeffs(n + 2, n)[n]}
        if len(brute) != 1 or brute != formula or brute != {zx[n]}:
            bad.append(n)
    return not bad, f"n <= 6: c_n^(n+1) = c_n^(n+2) = a_n(Z[X]) = {zx.values()}, failures: {bad or 'none'}"


def c10():
    N = 10**4
    A = abelian_group_coeffs(N)
    bad = [n for n in range(1, N + 1) if A[n] != arith.num_abelian_groups(n)]
    return not bad, f"prod zeta(ds) vs partition products, n <= {N}: mismatches {len(bad)}"


def c11():
    s1 = sigma(1, 2000)
    bad2 = [n for n in range(1, 2001) if count_all_sublattices(2, n) != s1[n]]
    z3 = sublattice_coeffs(3, 100)
    bad3 = [n for n in range(1, 101) if count_all_sublattices(3, n) != z3[n]]
    return not bad2 and not bad3, f"d=2 vs sigma_1 (n <= 2000): {len(bad2)} off; d=3 (n <= 100): {len(bad3)} off"


def c12():
    rows = density_ratio(3, 10**5)
    tail = [r for _, r in rows[-5:]]
    ok = all(a > b for a, b in zip(tail, tail[1:]))
    shown = ", ".join(f"{n}:{r:.2e}" for n, r in rows[-5:])
    return ok, f"last five checkpoints strictly decreasing: {ok} [{shown}] (the limit 0 is not reachable here)"


def c13():
    S = partial_sums(ideal_coeffs(X2_MINUS_X, 10**6, threads=1))
    r3, r6 = S[10**3] / (10**3 * math.log(10**3)), S[10**6] / (10**6 * math.log(10**6))
    ok = 0.95 <= r6 <= 1.25 and abs(r6 - 1) < abs(r3 - 1)
    return ok, f"A_N/(N ln N): {r3:.4f} at 10^3, {r6:.4f} at 10^6 (approaching 1 from above)"


def c14():
    N = 16
    conj = product([zeta_affine_coeffs(1, 0, N), zeta_affine_coeffs(2, 1, N), zeta_affine_coeffs(3, 2, N)])
    idx = (2, 4, 8, 16)
    brute = [count_ideals_bruteforce(X3, n) for n in idx]
    expected = [conj[n] for n in idx]
    verdict = "agrees" if brute == expected else "DIFFERS"
    return True, f"exploratory, X^3 at {list(idx)}: brute {brute} vs conjectured {expected} ({verdict})"


def c15():
    outputs = {}
    for t in sorted({1, 4, default_threads()}):
        payload = {
            "c1": [count_idealizable_range(d, N, threads=t) for d, N in ORACLE_RANGES],
            "c4_c5": [count_ideals_range(f, 300, threads=t) for f in (X2, X2_PLUS_1, X2_MINUS_X, X3_MINUS_X)],
            "tables": ideal_coeffs(X3_MINUS_X, 2000, threads=t).to_json(),
            "cli": [
                cli.run([*argv, "--threads", str(t)])
                for argv in (
                    ["crosscheck", "--d", "3", "--N", "100"],
                    ["count-ideals", f"--poly={X3_MINUS_X}", "--N", "300"],
                )
            ],
        }
        outputs[t] = json.dumps(payload).encode()
    same = len(set(outputs.values())) == 1
    return same, f"threads {sorted(outputs)}: byte-identical outputs: {same}"


CRITERIA = {
    1: ("idealizable counts equal the closed-form table", c1),
    2: ("extension count a^d for every idealizable basis", c2),
    3: ("idealizable implies the divisibility condition", c3),
    4: ("X^2 ideal counts equal zeta(s)zeta(2s-1)", c4),
    5: ("ideal counts are multiplicative", c5),
    6: ("Gaussian integers: Euler factors, brute force, chi_4", c6),
    7: ("Z[i] residue within 1% of pi/4", c7),
    8: ("dimension-2 constant is Res/2 within 0.1%", c8),
    9: ("stabilization in d and Z[X] table", c9),
    10: ("abelian groups via partition products", c10),
    11: ("all sublattices: sigma_1 and d=3 product", c11),
    12: ("density ratio decreasing for d=3", c12),
    13: ("X^2-X growth shape N log N", c13),
    14: ("X^3 conjectured product (exploratory)", c14),
    15: ("determinism across thread counts", c15),
}


def _run(k: int):
    title, fn = CRITERIA[k]
    start = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - start
    tag = "INFO" if k == 14 else ("PASS" if ok else "FAIL")
    line = f"criterion {k:2d} {tag}  {title}: {detail} [{elapsed:.1f}s]"
    RESULTS[k] = line
    return ok, line


@pytest.mark.slow
@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k):
    ok, line = _run(k)
    print(line)
    assert ok, line


if __name__ == "__main__":
    failed = 0
    for k in sorted(CRITERIA):
        ok, line = _run(k)
        print(line, flush=True)
        failed += not ok
    sys.exit(1 if failed else 0)
