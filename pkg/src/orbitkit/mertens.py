"""Dynamical Mertens sums and the rational leading coefficient k_T."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Optional, Sequence, Union

import numpy as np

from . import _kernels
from .arith import DomainError, ResourceLimitError, ValuationLaw, int_ord, lcm
from .sinteger import (
    SIntegerMap,
    exact_ceiling,
    fix_point_list,
    log_fix_points,
    orbits_from_fix,
    unit_factor,
)


@dataclass
class ClassMean:
    residue: int
    weight: Fraction
    mean: Fraction


@dataclass
class MertensReport:
    k_exact: Fraction
    k_breakdown: list[ClassMean] = field(default_factory=list)
    c_fit: Optional[float] = None
    residual_bound: Optional[float] = None
    birkhoff_estimate: Optional[float] = None
    birkhoff_n: Optional[int] = None
    fit_range: Optional[tuple[int, int]] = None
    fit_points: Optional[int] = None

    @property
    def birkhoff_gap(self) -> Optional[float]:
        if self.birkhoff_estimate is None:
            return None
        return abs(self.birkhoff_estimate - float(self.k_exact))

    def as_record(self) -> dict:
        return {
            "k_exact": self.k_exact,
            "k_breakdown": [{"residue": c.residue, "weight": c.weight, "mean": c.mean}
                            for c in self.k_breakdown],
            "c_fit": self.c_fit,
            "residual_bound": self.residual_bound,
            "birkhoff_estimate": self.birkhoff_estimate,
            "birkhoff_gap": self.birkhoff_gap,
            "birkhoff_n": self.birkhoff_n,
            "fit_range": list(self.fit_range) if self.fit_range else None,
            "fit_points": self.fit_points,
        }


# -- sums ----------------------------------------------------------------------

def mertens_sum(m: SIntegerMap, N: int, mode: str = "exact") -> Union[Fraction, float]:
    """Σ_{n<=N} O(n)/M^n, with M = e^h."""
    if N < 1:
        raise DomainError("N must be >= 1")
    if mode == "exact":
        if N > exact_ceiling():
            raise ResourceLimitError(f"exact Mertens sum beyond ceiling {exact_ceiling()}")
        orbits = orbits_from_fix(fix_point_list(m, N))
        M = m.entropy_base
        # common denominator M^N keeps this to one big-integer division
        num = sum(o * M ** (N - n) for n, o in enumerate(orbits, start=1))
        return Fraction(num, M**N)
    if mode != "float":
        raise DomainError(f"unknown mode {mode!r}")
    from .sinteger import _float_table
    table = _float_table(m, N)
    log_m = math.log(m.entropy_base)
    return math.fsum(math.exp(lo - n * log_m) for n, lo in zip(table.n, table.log_orbits)
                     if lo > -math.inf)


def unit_factor_values(m: SIntegerMap, N: int) -> np.ndarray:
    """Float array of D(n), index 0 unused (= 0)."""
    return _kernels.unit_factor_array(N, m.unit_laws)


def f_sum_array(m: SIntegerMap, N: int) -> np.ndarray:
    """Array s with s[n] = Σ_{k<=n} D(k)/k, compensated; s[0] = 0."""
    d = unit_factor_values(m, N)
    terms = np.zeros(N + 1)
    terms[1:] = d[1:] / np.arange(1, N + 1)
    return _kernels.compensated_cumsum(terms)


def f_sum(m: SIntegerMap, N: int) -> float:
    """Σ_{n<=N} D(n)/n in floating point."""
    if N < 1:
        raise DomainError("N must be >= 1")
    return float(f_sum_array(m, N)[N])


def f_sum_exact(m: SIntegerMap, N: int) -> Fraction:
    return sum((unit_factor(m, n) / n for n in range(1, N + 1)), Fraction(0))


def leading_coefficient_birkhoff(m: SIntegerMap, N: int) -> float:
    """(1/N)·Σ_{n<=N} D(n): the ergodic average along ξⁿ in the detector group."""
    if N < 1:
        raise DomainError("N must be >= 1")
    d = unit_factor_values(m, N)
    return float(_kernels.compensated_cumsum(d)[N]) / N


# -- exact k_T: residue classes ---------------------------------------------------

def _mean_p_power(p: int, a: int, r: int) -> Fraction:
    """E[p^(-ord_p n)] over n ≡ r (mod L) where a = ord_p(L)."""
    geometric = Fraction(p, p + 1)
    if a == 0:
        return geometric
    c = int_ord(r, p) if r else a
    if c < a:
        return Fraction(1, p**c)
    return Fraction(1, p**a) * geometric


def _class_factor(law: ValuationLaw, L: int, r: int) -> Fraction:
    p = law.prime
    a = int_ord(L, p)
    if p == 2:
        if r % 2:
            return Fraction(1, 2**law.base_exponent)
        scale = Fraction(1, 2 ** (law.base_exponent + law.two_adic_extra - 1))
        return scale * _mean_p_power(2, a, r)
    if r % law.order:
        return Fraction(1)
    return Fraction(1, p**law.base_exponent) * _mean_p_power(p, a, r)


def class_modulus(laws: Sequence[ValuationLaw]) -> int:
    return lcm(*(law.order if law.prime != 2 else 2 for law in laws))


def leading_coefficient_exact(m: SIntegerMap) -> MertensReport:
    """k_T as an exact rational via per-residue-class means of D.

    Given n ≡ r (mod L), with L the lcm of the residue orders (and 2 when 2 is
    a unit place), the p-adic orders of n at distinct primes are independent
    and the class mean of D factors over the unit places.
    """
    laws = m.unit_laws
    if not laws:
        return MertensReport(Fraction(1), [ClassMean(0, Fraction(1), Fraction(1))])
    L = class_modulus(laws)
    weight = Fraction(1, L)
    breakdown = []
    for r in range(L):
        mean = Fraction(1)
        for law in laws:
            mean *= _class_factor(law, L, r)
        breakdown.append(ClassMean(r, weight, mean))
    k = sum((c.weight * c.mean for c in breakdown), Fraction(0))
    return MertensReport(k, breakdown)


# -- exact k_T: inclusion–exclusion over totally multiplicative sums -----------

def mertprop_coefficient(primes: Sequence[int], exponents: Sequence[int]) -> Fraction:
    """Leading coefficient of Σ_{n<N} ∏_p |n|_p^{t_p} / n."""
    if len(primes) != len(exponents):
        raise DomainError("one exponent per prime")
    k = Fraction(1)
    for p, t in zip(primes, exponents):
        if t < 1:
            raise DomainError("exponents must be >= 1")
        k *= (1 - Fraction(1, p)) / (1 - Fraction(1, p ** (t + 1)))
    return k


def excluded_sum_coefficient(k_f: Fraction, f, excluded: Sequence[int]) -> Fraction:
    """Leading coefficient of Σ f(n) over n divisible by no element of ``excluded``.

    ``f`` is a totally multiplicative function (callable or dict keyed by the
    lcm of each subset) whose full sum has leading coefficient ``k_f``.
    """
    values = list(dict.fromkeys(excluded))
    total = Fraction(0)
    for size in range(len(values) + 1):
        for subset in combinations(values, size):
            n_d = lcm(*subset)
            fv = f[n_d] if isinstance(f, dict) else f(n_d)
            total += (-1) ** size * Fraction(fv)
    return k_f * total


def _f_weighted(primes: Sequence[int]):
    pset = tuple(primes)

    def f(n: int) -> Fraction:
        val = Fraction(1, n)
        for p in pset:
            val /= p ** int_ord(n, p)
        return val

    return f


def leading_coefficient_inclusion_exclusion(m: SIntegerMap) -> Fraction:
    """k_T from subset decomposition plus inclusion–exclusion.

    For each set T of unit places whose residue orders divide n (and, when 2 is
    a unit place, a parity branch), the restricted sum of D(n)/n becomes a
    constant times Σ f(m) over m avoiding finitely many divisors, with f the
    totally multiplicative |m|_P/m.
    """
    laws = m.unit_laws
    odd = [law for law in laws if law.prime != 2]
    two = next((law for law in laws if law.prime == 2), None)
    total = Fraction(0)
    branches = ["odd", "even"] if two else [None]
    for mask in product((False, True), repeat=len(odd)):
        inside = [law for law, keep in zip(odd, mask) if keep]
        outside = [law for law, keep in zip(odd, mask) if not keep]
        o_t = lcm(*(law.order for law in inside))
        for branch in branches:
            const = Fraction(1)
            for law in inside:
                const /= law.prime**law.base_exponent
            primes = [law.prime for law in inside]
            step = o_t
            excluded_raw = [law.order for law in outside]
            if branch == "odd":
                if o_t % 2 == 0:
                    continue
                const /= 2**two.base_exponent
                excluded_raw.append(2)
            elif branch == "even":
                const /= 2 ** (two.base_exponent + two.two_adic_extra - 1)
                primes.append(2)
                if step % 2:
                    step *= 2
            f = _f_weighted(primes)
            # n = step·m; a divisor k of n becomes k/gcd(k, step) of m
            excluded = sorted({k // math.gcd(k, step) for k in excluded_raw})
            if 1 in excluded:
                continue
            k_f = mertprop_coefficient(primes, [1] * len(primes))
            total += const * f(step) * excluded_sum_coefficient(k_f, f, excluded)
    return total


# -- constant term -------------------------------------------------------------------

def constant_term_fit(m: SIntegerMap, n_lo: int, n_hi: int, points: int = 64,
                      k: Optional[Fraction] = None) -> MertensReport:
    """Fit f_sum(N) − k·log N ≈ c + d/N over a geometric grid of N.

    ``c_fit`` is the least-squares constant; ``residual_bound`` is
    max N·|f_sum(N) − k·log N − c_fit| over the grid.
    """
    if n_lo < 100 or n_hi <= n_lo:
        raise DomainError("need n_hi > n_lo >= 100")
    grid = np.unique(np.round(np.geomspace(n_lo, n_hi, points)).astype(np.int64))
    if len(grid) < 10:
        raise DomainError("fewer than 10 sample points")
    report = leading_coefficient_exact(m) if k is None else MertensReport(Fraction(k))
    sums = f_sum_array(m, int(n_hi))
    ns = grid.astype(np.float64)
    y = sums[grid] - float(report.k_exact) * np.log(ns)
    design = np.column_stack([np.ones_like(ns), 1.0 / ns])
    (c, _), *_ = np.linalg.lstsq(design, y, rcond=None)
    report.c_fit = float(c)
    report.residual_bound = float(np.max(ns * np.abs(y - c)))
    report.fit_range = (int(n_lo), int(n_hi))
    report.fit_points = int(len(grid))
    return report


def slope_between(m: SIntegerMap, n_lo: int, n_hi: int) -> float:
    sums = f_sum_array(m, n_hi)
    return float((sums[n_hi] - sums[n_lo]) / (math.log(n_hi) - math.log(n_lo)))


def mertens_report(m: SIntegerMap, fit_range: tuple[int, int] = (1000, 100000),
                   birkhoff_n: int = 10**6) -> MertensReport:
    report = leading_coefficient_exact(m)
    fit = constant_term_fit(m, *fit_range, k=report.k_exact)
    report.c_fit, report.residual_bound = fit.c_fit, fit.residual_bound
    report.fit_range, report.fit_points = fit.fit_range, fit.fit_points
    report.birkhoff_estimate = leading_coefficient_birkhoff(m, birkhoff_n)
    report.birkhoff_n = birkhoff_n
    return report


__all__ = [
    "ClassMean", "MertensReport", "mertens_sum", "unit_factor", "unit_factor_values",
    "f_sum", "f_sum_array", "f_sum_exact", "leading_coefficient_exact",
    "leading_coefficient_birkhoff", "leading_coefficient_inclusion_exclusion",
    "mertprop_coefficient", "excluded_sum_coefficient", "constant_term_fit",
    "slope_between", "mertens_report", "log_fix_points",
]
