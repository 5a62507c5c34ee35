import math
from fractions import Fraction

import pytest

from orbitkit.arith import DomainError
from orbitkit.mertens import (
    constant_term_fit, excluded_sum_coefficient, f_sum, f_sum_exact, leading_coefficient_birkhoff,
    leading_coefficient_exact, leading_coefficient_inclusion_exclusion, mertens_sum,
    mertprop_coefficient, slope_between, unit_factor,
)
from orbitkit.sinteger import new_map

from conftest import TEST_MATRIX


@pytest.mark.parametrize("xi, s, n, want", [
    (2, [3], 6, Fraction(1, 9)), (2, [3], 5, 1), (3, [2], 2, Fraction(1, 8)),
])
def test_unit_factor(xi, s, n, want):
    assert unit_factor(new_map(xi, s), n) == want


@pytest.mark.parametrize("xi, s, N, want", [
    (2, [3], 3, Fraction(3, 4)), (2, [3], 1, Fraction(1, 2)), (2, [], 2, Fraction(3, 4)),
])
def test_mertens_sum(xi, s, N, want):
    m = new_map(xi, s)
    assert mertens_sum(m, N) == want
    assert mertens_sum(m, N, mode="float") == pytest.approx(float(want))


def test_mertens_sum_float_long(flagship):
    assert mertens_sum(flagship, 1500, mode="float") == pytest.approx(float(mertens_sum(flagship, 1500)), rel=1e-12)


def test_f_sum():
    assert f_sum_exact(new_map(2, [3]), 2) == Fraction(7, 6)
    assert f_sum_exact(new_map(2, []), 3) == Fraction(11, 6)
    assert f_sum(new_map(2, []), 3) == pytest.approx(11 / 6, rel=1e-15)
    m = new_map(2, [3, 5])
    assert f_sum(m, 400) == pytest.approx(float(f_sum_exact(m, 400)), rel=1e-14)


def test_f_sum_large(flagship):
    val = f_sum(flagship, 10**5)
    assert val == pytest.approx(0.625 * math.log(10**5), abs=1.0)


@pytest.mark.parametrize("xi, s, want", [
    (2, [], Fraction(1)), (2, [3], Fraction(5, 8)), (2, [3, 5], Fraction(55, 96)),
    (2, [3, 7], Fraction(269, 576)), (3, [2], Fraction(7, 24)),
])
def test_leading_coefficient_exact(xi, s, want):
    report = leading_coefficient_exact(new_map(xi, s))
    assert report.k_exact == want
    assert sum(c.weight for c in report.k_breakdown) == 1


@pytest.mark.parametrize("xi, s", TEST_MATRIX)
def test_dual_recipes_agree(xi, s):
    m = new_map(xi, s)
    k = leading_coefficient_exact(m).k_exact
    assert leading_coefficient_inclusion_exclusion(m) == k
    assert 0 < k <= 1
    assert (k == 1) == (not m.unit_places)


@pytest.mark.parametrize("xi, s", TEST_MATRIX)
def test_birkhoff_oracle(xi, s):
    m = new_map(xi, s)
    k = leading_coefficient_exact(m).k_exact
    assert abs(leading_coefficient_birkhoff(m, 10**6) - float(k)) <= 1e-2


def test_birkhoff_examples():
    assert leading_coefficient_birkhoff(new_map(3, [2]), 8) == 2.34375 / 8
    assert leading_coefficient_birkhoff(new_map(2, []), 1000) == 1.0
    assert leading_coefficient_birkhoff(new_map(2, [3]), 10**6) == pytest.approx(0.625, abs=5e-3)


def test_mertprop():
    assert mertprop_coefficient([3], [1]) == Fraction(3, 4)
    assert mertprop_coefficient([], []) == 1
    assert mertprop_coefficient([3, 5], [1, 1]) == Fraction(5, 8)
    with pytest.raises(DomainError):
        mertprop_coefficient([3], [0])


def test_excluded_sum():
    inv = lambda n: Fraction(1, n)
    assert excluded_sum_coefficient(Fraction(1), inv, [2]) == Fraction(1, 2)
    assert excluded_sum_coefficient(Fraction(7, 9), inv, []) == Fraction(7, 9)
    assert excluded_sum_coefficient(Fraction(1), inv, [2, 3]) == Fraction(1, 3)
    assert excluded_sum_coefficient(Fraction(1), {1: 1, 2: Fraction(1, 2)}, [2]) == Fraction(1, 2)


def test_excluded_sum_matches_brute_force():
    # harmonic sum over n divisible by neither 4 nor 6
    want = 1 - Fraction(1, 4) - Fraction(1, 6) + Fraction(1, 12)
    assert excluded_sum_coefficient(Fraction(1), lambda n: Fraction(1, n), [4, 6]) == want
    N = 200000
    s = math.fsum(1 / n for n in range(1, N) if n % 4 and n % 6)
    s2 = math.fsum(1 / n for n in range(1, 2 * N) if n % 4 and n % 6)
    assert (s2 - s) / math.log(2) == pytest.approx(float(want), abs=1e-4)


def test_constant_term_harmonic():
    report = constant_term_fit(new_map(2, []), 1000, 100000)
    assert report.c_fit == pytest.approx(0.5772156649, abs=1e-4)
    assert report.residual_bound <= 1.0
    assert report.fit_points >= 10


def test_constant_term_fit_errors(flagship):
    with pytest.raises(DomainError):
        constant_term_fit(flagship, 1000, 1005, points=64)


def test_slope(flagship):
    assert slope_between(flagship, 10**3, 10**5) == pytest.approx(0.625, abs=5e-3)


@pytest.mark.parametrize("xi, s", TEST_MATRIX)
def test_mertens_minus_fsum_converges(xi, s):
    # for non-integer ξ the archimedean error decays like (min/max)^N, not M^{-N/2}
    m = new_map(xi, s)
    a, b = abs(m.xi.numerator), m.xi.denominator
    rate = max(m.entropy_base ** -0.5, min(a, b) / max(a, b))
    exact = {N: mertens_sum(m, N) - f_sum_exact(m, N) for N in range(20, 401)}
    for N in range(20, 201):
        assert abs(float(exact[N] - exact[2 * N])) <= 4 * rate**N, N
