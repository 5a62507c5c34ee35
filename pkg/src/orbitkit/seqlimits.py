"""Limit points of Π for the map dual to x ↦ 2x on Z[1/3].

Everything here is parametric in a prime p and an integer base λ (the
flagship values are p = 3, λ = 4). Series values are returned as certified
rational enclosures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .arith import DomainError, int_ord, is_prime
from .sinteger import SIntegerMap, new_map, unit_denominator


@dataclass(frozen=True)
class CSeriesParams:
    p: int = 3
    lam: int = 4
    j_max: int = 60

    def __post_init__(self):
        if self.lam < 2:
            raise DomainError("λ must be >= 2")
        if not is_prime(self.p):
            raise DomainError(f"{self.p} is not prime")
        if self.j_max < 0:
            raise DomainError("j_max must be >= 0")

    @property
    def is_flagship(self) -> bool:
        return self.p == 3 and self.lam == 4


FLAGSHIP = CSeriesParams()


@dataclass(frozen=True)
class CSeriesValue:
    """A certified enclosure lower <= value <= upper."""

    lower: Fraction
    upper: Fraction
    terms_used: int

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    @property
    def mid(self) -> Fraction:
        return (self.lower + self.upper) / 2

    def contains(self, x) -> bool:
        return self.lower <= x <= self.upper

    def scale(self, k) -> "CSeriesValue":
        k = Fraction(k)
        lo, hi = sorted((self.lower * k, self.upper * k))
        return CSeriesValue(lo, hi, self.terms_used)

    def shift(self, x) -> "CSeriesValue":
        x = Fraction(x)
        return CSeriesValue(self.lower + x, self.upper + x, self.terms_used)

    def widen(self, r) -> "CSeriesValue":
        r = Fraction(r)
        return CSeriesValue(self.lower - r, self.upper + r, self.terms_used)

    def __float__(self) -> float:
        return float(self.mid)


def abs_p(x: int, p: int) -> Fraction:
    """|x|_p for an integer, with |0|_p = 0."""
    if x == 0:
        return Fraction(0)
    return Fraction(1, p ** int_ord(x, p))


def _flagship_map() -> SIntegerMap:
    return new_map(2, [3])


# -- G(N) = I(N) + J(N) ---------------------------------------------------------

@dataclass(frozen=True)
class GSplit:
    total: Fraction
    even: Fraction
    odd: Fraction


def g_sum(N: int, m: Optional[SIntegerMap] = None) -> GSplit:
    """G(N) = Σ_{n<=N} M^n·D(n)/n split into even n (I) and odd n (J)."""
    if N < 1:
        raise DomainError("N must be >= 1")
    m = m or _flagship_map()
    M = m.entropy_base
    even = odd = Fraction(0)
    for n in range(1, N + 1):
        term = Fraction(M**n, n * unit_denominator(m, n))
        if n % 2:
            odd += term
        else:
            even += term
    return GSplit(even + odd, even, odd)


def k_cut(M: int) -> int:
    """⌊M^(1/4)⌋."""
    return math.isqrt(math.isqrt(M))


def b_M(M: int, params: CSeriesParams = FLAGSHIP) -> Fraction:
    """Σ_{j=0}^{⌊M^{1/4}⌋} |M−j|_p / λ^j."""
    if M < 1:
        raise DomainError("M must be >= 1")
    return sum((abs_p(M - j, params.p) / params.lam**j for j in range(k_cut(M) + 1)), Fraction(0))


def _partial(M: int, params: CSeriesParams, j_max: int) -> Fraction:
    p, lam = params.p, params.lam
    # Σ |M−j|_p λ^(j_max−j) / λ^j_max, accumulated over a common denominator
    vals = [(0 if M == j else int_ord(M - j, p)) for j in range(j_max + 1)]
    top = max([v for j, v in enumerate(vals) if M != j] or [0])
    num = 0
    for j, v in enumerate(vals):
        if M != j:
            num += p ** (top - v) * lam ** (j_max - j)
    return Fraction(num, p**top * lam**j_max)


def _tail(params: CSeriesParams, j_max: int) -> Fraction:
    """Σ_{j>j_max} λ^-j, which bounds the omitted terms since |·|_p <= 1."""
    return Fraction(1, params.lam**j_max * (params.lam - 1))


def c_M(M: int, params: CSeriesParams = FLAGSHIP, j_max: Optional[int] = None) -> CSeriesValue:
    """Enclosure of Σ_{j>=0} |M−j|_p / λ^j (|0|_p = 0, negative arguments allowed)."""
    j_max = params.j_max if j_max is None else j_max
    lower = _partial(M, params, j_max)
    return CSeriesValue(lower, lower + _tail(params, j_max), j_max + 1)


def c_M_floats(m_lo: int, m_hi: int, params: CSeriesParams = FLAGSHIP) -> np.ndarray:
    """Float values of the truncated c-series for a range of M (fast sweep)."""
    return _kernels.c_series_array(m_lo, m_hi, params.p, params.lam, params.j_max)


def c_M_sweep_bounds(m_lo: int, m_hi: int, params: CSeriesParams = FLAGSHIP) -> tuple[float, float, float]:
    """(min, max, error bound) of c_M over the range from the float sweep.

    The bound covers the truncation tail plus accumulated rounding.
    """
    vals = c_M_floats(m_lo, m_hi, params)
    err = float(_tail(params, params.j_max)) + (params.j_max + 2) * 2.0**-52
    return float(vals.min()), float(vals.max()), err


def constant_C(r_max: int, params: CSeriesParams = FLAGSHIP) -> CSeriesValue:
    """Enclosure of C = Σ_{r>=1} 1/(p^r (λ^{p^r} − 1))."""
    if r_max < 1:
        raise DomainError("r_max must be >= 1")
    p, lam = params.p, params.lam
    s = sum((Fraction(1, p**r * (lam ** (p**r) - 1)) for r in range(1, r_max + 1)), Fraction(0))
    tail = Fraction(2, p ** (r_max + 1) * lam ** (p ** (r_max + 1)))
    return CSeriesValue(s, s + tail, r_max)


@dataclass(frozen=True)
class LimitTargets:
    liminf_c: CSeriesValue
    limsup_c: CSeriesValue
    liminf_pi_even: CSeriesValue
    limsup_pi_even: CSeriesValue
    liminf_pi_odd: CSeriesValue
    limsup_pi_odd: CSeriesValue


def limit_targets(params: CSeriesParams = FLAGSHIP, r_max: int = 3) -> LimitTargets:
    """liminf/limsup of c_M and the matching Π targets along even and odd N."""
    if not params.is_flagship:
        raise DomainError("targets known only for (p=3, λ=4)")
    C = constant_C(r_max, params)
    lo = C.scale(-2).shift(Fraction(1, 3))
    hi = lo.scale(4)
    return LimitTargets(
        liminf_c=lo,
        limsup_c=hi,
        liminf_pi_even=lo.scale(Fraction(1, 6)).shift(Fraction(1, 3)),
        limsup_pi_even=hi.scale(Fraction(1, 6)).shift(Fraction(1, 3)),
        liminf_pi_odd=lo.scale(Fraction(1, 12)).shift(Fraction(2, 3)),
        limsup_pi_odd=hi.scale(Fraction(1, 12)).shift(Fraction(2, 3)),
    )


def pi_even_target(M: int, params: CSeriesParams = FLAGSHIP) -> CSeriesValue:
    """Predicted Π(2M): 1/3 + c_M/6."""
    return c_M(M, params).scale(Fraction(1, 6)).shift(Fraction(1, 3))


def pi_odd_target(M: int, params: CSeriesParams = FLAGSHIP) -> CSeriesValue:
    """Predicted Π(2M+1): 2/3 + c_M/12."""
    return c_M(M, params).scale(Fraction(1, 12)).shift(Fraction(2, 3))


def check_tower(residues: Sequence[int], p: int = 3) -> None:
    for k, r in enumerate(residues, start=1):
        if not 0 <= r < p**k:
            raise DomainError(f"residue r_{k}={r} not in [0, {p**k})")
        if k > 1 and r % p ** (k - 1) != residues[k - 2]:
            raise DomainError(f"incoherent tower at level {k}")


def c_alpha(residues: Sequence[int], params: CSeriesParams = FLAGSHIP) -> CSeriesValue:
    """Enclosure of c_α for α ∈ Z_p known through α ≡ r_k (mod p^k), k <= K.

    A term |α − j|_p is known exactly unless j ≡ r_K (mod p^K); those terms
    are only known to lie in [0, p^-K].
    """
    if not residues:
        raise DomainError("empty residue tower")
    p, lam = params.p, params.lam
    check_tower(residues, p)
    K = len(residues)
    rep = residues[-1]
    j_max = params.j_max
    known = Fraction(0)
    loose = Fraction(0)
    for j in range(j_max + 1):
        x = rep - j
        if x != 0 and int_ord(x, p) < K:
            known += abs_p(x, p) / lam**j
        else:
            loose += Fraction(1, lam**j)
    return CSeriesValue(known, known + loose / p**K + _tail(params, j_max), j_max + 1)


@dataclass(frozen=True)
class LipschitzResult:
    epsilon: Fraction
    lower: Fraction
    actual: CSeriesValue
    upper: Fraction
    status: str  # "pass", "fail" or "undecided"

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def lipschitz_check(M: int, N: int, params: CSeriesParams = FLAGSHIP) -> LipschitzResult:
    """Check ε/(3·4^{3/ε}) < |c_M − c_N| <= (4/3)ε with ε = |M − N|_3.

    The difference is enclosed exactly: partial sums to j_max plus the tail
    Σ_{j>j_max} ε/λ^j. "undecided" means the enclosure straddles a bound.
    """
    if not params.is_flagship:
        raise DomainError("bounds stated only for (p=3, λ=4)")
    if M == N:
        raise DomainError("ε = |M − N|_3 must be positive")
    eps = abs_p(M - N, 3)
    inv = int(1 / eps)  # 3^k
    lower = eps / (3 * Fraction(4) ** (3 * inv))
    upper = Fraction(4, 3) * eps
    j_max = max(params.j_max, 3 * inv + 30)
    diff = abs(_partial(M, params, j_max) - _partial(N, params, j_max))
    tail = eps * _tail(params, j_max)
    lo = max(diff - tail, Fraction(0))
    hi = diff + tail
    actual = CSeriesValue(lo, hi, j_max + 1)
    if lo > lower and hi <= upper:
        status = "pass"
    elif hi <= lower or lo > upper:
        status = "fail"
    else:
        status = "undecided"
    return LipschitzResult(eps, lower, actual, upper, status)
