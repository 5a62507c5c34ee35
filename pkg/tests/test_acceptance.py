"""Acceptance criteria, one test each.

Every check prints ``ACCEPTANCE <n> PASS|FAIL <summary>``. Run directly
(``python tests/test_acceptance.py``) for just those lines; under pytest they
are also collected into the terminal summary.
"""

import math
import random
import sys
import time
from fractions import Fraction

import pytest

from orbitkit.arith import build_valuation_law, divisors, lte_ord, padic_ord
from orbitkit.mertens import (
    constant_term_fit, f_sum_array, leading_coefficient_birkhoff, leading_coefficient_exact,
    leading_coefficient_inclusion_exclusion,
)
from orbitkit.seqlimits import abs_p, c_M, limit_targets, lipschitz_check
from orbitkit.sinteger import (
    detector, new_map, orbit_table, pi_subsequence, subsequence_modulus, zeta_series_check,
)
from orbitkit.toral import (
    EXAMPLE_MATRIX, dispersion, fix_points_toral, new_toral, orbit_table_toral, rotation_subsequences,
)

RESULTS: list[str] = []

MATRIX = [(2, ()), (2, (3,)), (2, (5,)), (2, (7,)), (2, (3, 5)), (2, (3, 7)), (2, (5, 7)),
          (2, (3, 5, 7)), (3, (2,)), (Fraction(3, 2), (2, 5))]


def report(number: int, ok: bool, summary: str) -> None:
    line = f"ACCEPTANCE {number:2d} {'PASS' if ok else 'FAIL'} {summary}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def check_1():
    start = time.perf_counter()
    got = [leading_coefficient_exact(new_map(2, s)).k_exact for s in ((), (3,), (3, 5), (3, 7))]
    elapsed = time.perf_counter() - start
    want = [Fraction(1), Fraction(5, 8), Fraction(55, 96), Fraction(269, 576)]
    report(1, got == want and elapsed < 1.0,
           f"k_T(2, S) for S = ∅,{{3}},{{3,5}},{{3,7}}: {', '.join(map(str, got))} in {elapsed:.3f}s")


def check_2():
    start = time.perf_counter()
    worst, agree = 0.0, True
    for xi, s in MATRIX:
        m = new_map(xi, s)
        k = leading_coefficient_exact(m).k_exact
        agree &= leading_coefficient_inclusion_exclusion(m) == k
        worst = max(worst, abs(leading_coefficient_birkhoff(m, 10**6) - float(k)))
    k32 = leading_coefficient_exact(new_map(3, [2])).k_exact
    elapsed = time.perf_counter() - start
    report(2, agree and worst <= 1e-2 and k32 == Fraction(7, 24) and elapsed < 30,
           f"recipes agree={agree}, max Birkhoff gap {worst:.2e}, k(3,{{2}})={k32}, {elapsed:.1f}s")


def check_3():
    m = new_map(2, [3])
    sums = f_sum_array(m, 10**5)
    slope = (sums[10**5] - sums[10**3]) / math.log(100)
    fit = constant_term_fit(m, 10**3, 10**5)
    ok = abs(slope - 0.625) <= 5e-3 and math.isfinite(fit.residual_bound) and fit.residual_bound <= 50
    report(3, ok, f"slope {slope:.6f}, c_fit {fit.c_fit:.6f}, max N·residual {fit.residual_bound:.3f}")


def check_4():
    m = new_map(2, [3])
    t = orbit_table(m, 12)
    exact = t.Pi(11) == Fraction(3421, 4096) and t.Pi(12) == Fraction(261, 512)
    consistent = True
    for xi, s in MATRIX:
        tab = orbit_table(new_map(xi, s), 300)
        consistent &= all(sum(d * tab.orbits[d - 1] for d in divisors(n)) == tab.fix[n - 1]
                          for n in range(1, 301))
    report(4, exact and consistent,
           f"Π(11)={t.Pi(11)}, Π(12)={t.Pi(12)}, Möbius round trip n<=300 ok={consistent}")


def check_5(table):
    vals = [table.Pi(N) for N in range(20, 1501)]
    lo, hi = min(vals), max(vals)
    ok = lo >= Fraction(1, 3) - Fraction(1, 1000) and hi <= 1 + Fraction(1, 1000) and lo >= Fraction(35, 100)
    report(5, ok, f"Π on [20,1500] within [{float(lo):.5f}, {float(hi):.5f}]")


def check_6(table):
    t = limit_targets()
    lo_ok = Fraction(32274, 10**5) <= t.liminf_c.lower and t.liminf_c.upper <= Fraction(32276, 10**5)
    ratio_ok = t.limsup_c.lower == 4 * t.liminf_c.lower and t.limsup_c.upper == 4 * t.liminf_c.upper
    worst_even = worst_odd = Fraction(0)
    for M in range(100, 1001):
        c = c_M(M)
        even = abs(table.Pi(2 * M) - (Fraction(1, 3) + c.mid / 6)) + c.width / 6
        odd = abs(table.Pi(2 * M + 1) - (Fraction(2, 3) + c.mid / 12)) + c.width / 12
        worst_even = max(worst_even, M * even)
        worst_odd = max(worst_odd, M * odd)
    ok = lo_ok and ratio_ok and worst_even <= 25 and worst_odd <= 25
    report(6, ok, f"liminf_c in [{float(t.liminf_c.lower):.8f}, {float(t.liminf_c.upper):.8f}], "
                  f"max M·err even {float(worst_even):.3f} odd {float(worst_odd):.3f}")


def check_7(table):
    m = new_map(2, [3])
    spec = detector(m)
    moduli = [subsequence_modulus(spec, k) for k in range(1, 5)]
    ok = moduli == [2, 6, 18, 54]
    details = []
    for r in (0, 1):
        disp = [pi_subsequence(m, r % q, q, (400, 2400), table).dispersion for q in moduli]
        ok &= all(a >= b for a, b in zip(disp, disp[1:])) and disp[-1] <= disp[0] / 2
        details.append(f"r={r}: " + "/".join(f"{float(d):.4f}" for d in disp))
    report(7, ok, f"moduli {moduli}; " + "; ".join(details))


def check_8():
    rng = random.Random(20240601)
    statuses = []
    while len(statuses) < 500:
        M, N = rng.randint(1, 10**6), rng.randint(1, 10**6)
        if M == N or abs_p(M - N, 3) < Fraction(1, 27):
            continue
        statuses.append(lipschitz_check(M, N).status)
    passed = statuses.count("pass")
    report(8, passed == 500, f"{passed}/500 seeded pairs decisive pass")


def check_9():
    mismatches = checked = 0
    for xi in (2, 3, 5, 10, Fraction(3, 2), Fraction(5, 3)):
        xi = Fraction(xi)
        for p in (2, 3, 5, 7, 13):
            if padic_ord(xi, p) != 0:
                continue
            law = build_valuation_law(xi, p)
            for n in range(1, 201):
                checked += 1
                mismatches += lte_ord(law, n) != padic_ord(xi**n - 1, p)
    report(9, mismatches == 0, f"{mismatches} mismatches over {checked} (ξ, p, n) cells")


def check_10():
    aut = new_toral(EXAMPLE_MATRIX)
    f1, f2 = fix_points_toral(aut, 1), fix_points_toral(aut, 2)
    rate = math.log(fix_points_toral(aut, 60)) / 60
    t = orbit_table_toral(aut, 60)
    qs = [q for q in rotation_subsequences(aut, 8) if q <= 60]
    sub = dispersion([t.Pi(q) for q in qs])
    full = dispersion([t.Pi(n) for n in range(1, 61)])
    ok = (f1, f2) == (8, 64) and abs(rate - aut.entropy) <= 1e-2 and sub < full
    report(10, ok, f"F(1)={f1}, F(2)={f2}, (1/60)log F(60)={rate:.5f} vs h={aut.entropy:.5f} "
                   f"(gap {abs(rate - aut.entropy):.4f}), dispersion q<=60 {sub:.4f} < all {full:.4f}")


def check_11():
    maps = [(2, ()), (2, (3,)), (Fraction(3, 2), (2,))]
    results = [zeta_series_check(new_map(xi, s), 20) for xi, s in maps]
    report(11, all(ok for ok, _ in results), f"zeta identity to order 20: {[ok for ok, _ in results]}")


@pytest.fixture(scope="module")
def table():
    return orbit_table(new_map(2, [3]), 2401)


def test_criterion_01_leading_coefficients():
    check_1()


def test_criterion_02_dual_recipes_and_birkhoff():
    check_2()


def test_criterion_03_mertens_slope():
    check_3()


def test_criterion_04_exact_orbit_counts():
    check_4()


def test_criterion_05_observed_bounds(table):
    check_5(table)


def test_criterion_06_limit_points(table):
    check_6(table)


def test_criterion_07_detector_clustering(table):
    check_7(table)


def test_criterion_08_lipschitz():
    check_8()


def test_criterion_09_lte_oracle():
    check_9()


def test_criterion_10_toral_example():
    check_10()


def test_criterion_11_zeta_identity():
    check_11()


if __name__ == "__main__":
    tab = orbit_table(new_map(2, [3]), 2401)
    checks = [check_1, check_2, check_3, check_4, lambda: check_5(tab), lambda: check_6(tab),
              lambda: check_7(tab), check_8, check_9, check_10, check_11]
    failed = 0
    for check in checks:
        try:
            check()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
