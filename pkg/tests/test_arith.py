import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from orbitkit.arith import (
    DomainError, build_valuation_law, divisors, factorint, is_prime, lcm, lte_ord,
    mobius, mobius_sieve, mult_order, padic_abs, padic_ord,
)


@pytest.mark.parametrize("x, p, want", [(63, 3, 2), (Fraction(1, 3), 3, -1), (14, 5, 0),
                                         (Fraction(-50, 7), 5, 2)])
def test_padic_ord(x, p, want):
    assert padic_ord(x, p) == want


def test_padic_ord_zero():
    with pytest.raises(DomainError, match="valuation of zero"):
        padic_ord(0, 3)


def test_padic_abs():
    assert padic_abs(18, 3) == Fraction(1, 9)
    assert padic_abs(Fraction(1, 9), 3) == 9


@pytest.mark.parametrize("n, mu", [(1, 1), (6, 1), (12, 0), (30, -1), (7, -1)])
def test_mobius(n, mu):
    assert mobius(n) == mu


def test_mobius_zero():
    with pytest.raises(DomainError):
        mobius(0)


def test_divisors():
    assert divisors(1) == [1]
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(7) == [1, 7]


def test_mobius_sum_identity():
    mu = mobius_sieve(10**4)
    sums = [0] * (10**4 + 1)
    for d in range(1, 10**4 + 1):
        if mu[d]:
            for n in range(d, 10**4 + 1, d):
                sums[n] += mu[d]
    assert sums[1] == 1
    assert all(s == 0 for s in sums[2:])


def test_sieve_matches_mobius():
    mu = mobius_sieve(500)
    assert all(mu[n] == mobius(n) for n in range(1, 501))


def test_factorint_and_primes():
    assert factorint(360) == ((2, 3), (3, 2), (5, 1))
    assert is_prime(1093) and not is_prime(1093 * 3511)
    assert lcm(4, 6, 10) == 60
    assert lcm() == 1


@pytest.mark.parametrize("xi, p, want", [(2, 3, 2), (2, 7, 3), (4, 3, 1), (2, 1093, 364)])
def test_mult_order(xi, p, want):
    assert mult_order(xi, p) == want


def test_mult_order_nonunit():
    with pytest.raises(DomainError, match="not a p-adic unit"):
        mult_order(6, 3)


def test_valuation_laws():
    law = build_valuation_law(2, 3)
    assert (law.order, law.base_exponent) == (2, 1)
    law = build_valuation_law(3, 2)
    assert (law.order, law.base_exponent, law.two_adic_extra) == (1, 1, 2)
    law = build_valuation_law(2, 1093)
    assert (law.order, law.base_exponent) == (364, 2)


@pytest.mark.parametrize("xi, p, n, want", [(2, 3, 6, 2), (2, 3, 5, 0), (2, 7, 21, 2)])
def test_lte_examples(xi, p, n, want):
    assert lte_ord(build_valuation_law(xi, p), n) == want


def test_lte_wieferich():
    law = build_valuation_law(2, 1093)
    assert lte_ord(law, 364) == padic_ord(2**364 - 1, 1093) == 2


def lte_grid():
    for xi in (2, 3, 5, 10, Fraction(3, 2), Fraction(5, 3)):
        for p in (2, 3, 5, 7, 13):
            if padic_ord(xi, p) == 0:
                yield Fraction(xi), p


@pytest.mark.parametrize("xi, p", list(lte_grid()))
def test_lte_matches_direct_expansion(xi, p):
    law = build_valuation_law(xi, p)
    for n in range(1, 201):
        assert lte_ord(law, n) == padic_ord(xi**n - 1, p), n


rationals = st.fractions().filter(lambda q: q != 0)


@given(rationals, rationals, st.sampled_from([2, 3, 5, 7]))
def test_ord_additive(x, y, p):
    assert padic_ord(x * y, p) == padic_ord(x, p) + padic_ord(y, p)


def test_ord_additive_seeded():
    rng = random.Random(1)
    for _ in range(1000):
        x = Fraction(rng.randint(1, 10**6), rng.randint(1, 10**6))
        y = Fraction(-rng.randint(1, 10**6), rng.randint(1, 10**6))
        for p in (2, 3, 5):
            assert padic_ord(x * y, p) == padic_ord(x, p) + padic_ord(y, p)
