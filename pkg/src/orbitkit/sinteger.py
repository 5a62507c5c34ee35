"""S-integer maps over Q: periodic points, orbits, the normalised counter Π.

The map is dual to x ↦ ξx on the ring of S-integers, for rational ξ and a
finite set S of primes.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .arith import (
    DomainError,
    ResourceLimitError,
    ValuationLaw,
    as_rational,
    build_valuation_law,
    divisors,
    factorint,
    is_prime,
    lcm,
    lte_ord,
    mobius,
    mobius_sieve,
    padic_ord,
)

DEFAULT_EXACT_CEILING = 4000


def exact_ceiling() -> int:
    """Largest n allowed in exact mode (``ORBITKIT_EXACT_CEILING`` overrides)."""
    raw = os.environ.get("ORBITKIT_EXACT_CEILING")
    if raw:
        try:
            return int(raw)
        except ValueError as exc:
            raise DomainError(f"bad ORBITKIT_EXACT_CEILING={raw!r}") from exc
    return DEFAULT_EXACT_CEILING


@dataclass(frozen=True)
class SIntegerMap:
    xi: Fraction
    s_primes: tuple[int, ...]
    entropy_base: int
    unit_laws: tuple[ValuationLaw, ...]
    contracting_places: tuple[int, ...]
    expanding_places: tuple[int, ...]

    @property
    def unit_places(self) -> tuple[int, ...]:
        return tuple(law.prime for law in self.unit_laws)

    @property
    def entropy(self) -> float:
        return math.log(self.entropy_base)

    def entropy_by_places(self) -> float:
        """h as the sum of log|ξ|_w over places with |ξ|_w > 1."""
        h = 0.0
        if abs(self.xi) > 1:
            h += math.log(abs(self.xi.numerator)) - math.log(self.xi.denominator)
        for p in self.expanding_places:
            h += -padic_ord(self.xi, p) * math.log(p)
        return h

    def __str__(self) -> str:
        s = ",".join(map(str, self.s_primes))
        return f"(ξ={self.xi}, S={{{s}}})"


def new_map(xi, s: Iterable[int] = ()) -> SIntegerMap:
    """Validate (ξ, S) and build the map."""
    xi = as_rational(xi)
    if xi in (0, 1, -1):
        raise DomainError(f"ξ={xi} has finite order: map is not ergodic")
    primes = tuple(sorted(set(int(p) for p in s)))
    for p in primes:
        if not is_prime(p):
            raise DomainError(f"{p} in S is not prime")
    for q, _ in factorint(xi.denominator):
        if q not in primes:
            raise DomainError(f"ξ not an S-integer: denominator prime {q} missing from S")
    laws, contracting, expanding = [], [], []
    for p in primes:
        v = padic_ord(xi, p)
        if v == 0:
            laws.append(build_valuation_law(xi, p))
        elif v > 0:
            contracting.append(p)
        else:
            expanding.append(p)
    return SIntegerMap(
        xi=xi,
        s_primes=primes,
        entropy_base=max(abs(xi.numerator), xi.denominator),
        unit_laws=tuple(laws),
        contracting_places=tuple(contracting),
        expanding_places=tuple(expanding),
    )


def unit_valuations(m: SIntegerMap, n: int) -> list[tuple[int, int]]:
    return [(law.prime, lte_ord(law, n)) for law in m.unit_laws]


def unit_denominator(m: SIntegerMap, n: int) -> int:
    """1 / ∏_{unit p} |ξⁿ−1|_p, an integer."""
    out = 1
    for p, k in unit_valuations(m, n):
        out *= p**k
    return out


def fix_points(m: SIntegerMap, n: int) -> int:
    """Number of points fixed by Tⁿ.

    With ξ = a/b this is |aⁿ − bⁿ| with the unit-place prime powers removed:
    the product formula cancels bⁿ against the expanding places, and the
    contracting places contribute 1.
    """
    if n < 1:
        raise DomainError("fix_points needs n >= 1")
    a, b = m.xi.numerator, m.xi.denominator
    top = abs(a**n - b**n)
    den = unit_denominator(m, n)
    q, r = divmod(top, den)
    assert r == 0, "unit valuation law disagrees with the integer"
    return q


def log_fix_points(m: SIntegerMap, n: int) -> float:
    """log F(n) computed without forming ξⁿ."""
    if n < 1:
        raise DomainError("log_fix_points needs n >= 1")
    a, b = m.xi.numerator, m.xi.denominator
    big, small = (a, b) if abs(a) > b else (b, a)
    # |aⁿ − bⁿ| = |big|ⁿ·|1 − (small/big)ⁿ|
    ratio = small / big
    tail = ratio**n
    val = n * math.log(abs(big)) + math.log1p(-tail)
    for p, k in unit_valuations(m, n):
        val -= k * math.log(p)
    return val


def orbit_count(m: SIntegerMap, n: int) -> int:
    """Number of closed orbits of length exactly n."""
    total = sum(mobius(n // d) * fix_points(m, d) for d in divisors(n))
    q, r = divmod(total, n)
    assert r == 0
    return q


@dataclass
class OrbitTable:
    """Per-n orbit statistics.

    In exact mode ``fix``, ``orbits`` and ``pi`` are integers and
    ``capital_pi`` holds Fractions. In float mode those three are None and the
    ``log_*`` columns plus float ``capital_pi`` are filled instead.
    """

    mode: str
    n: list[int] = field(default_factory=list)
    fix: Optional[list[int]] = None
    orbits: Optional[list[int]] = None
    pi: Optional[list[int]] = None
    capital_pi: list[Union[Fraction, float]] = field(default_factory=list)
    log_fix: Optional[list[float]] = None
    log_orbits: Optional[list[float]] = None
    log_pi: Optional[list[float]] = None

    def __len__(self) -> int:
        return len(self.n)

    def Pi(self, n: int):
        return self.capital_pi[n - 1]

    def columns(self) -> list[str]:
        if self.mode == "exact":
            return ["n", "F", "O", "pi", "Pi"]
        return ["n", "logF", "logO", "logpi", "Pi"]

    def rows(self) -> list[tuple]:
        if self.mode == "exact":
            return list(zip(self.n, self.fix, self.orbits, self.pi, self.capital_pi))
        return list(zip(self.n, self.log_fix, self.log_orbits, self.log_pi, self.capital_pi))


def _fix_chunk(args):
    m, lo, hi = args
    return [fix_points(m, n) for n in range(lo, hi + 1)]


def fix_point_list(m: SIntegerMap, n_max: int, workers: int = 1) -> list[int]:
    """[F(1), ..., F(n_max)], optionally computed in worker processes."""
    if workers <= 1 or n_max < 64:
        return [fix_points(m, n) for n in range(1, n_max + 1)]
    step = -(-n_max // (workers * 4))
    chunks = [(m, lo, min(lo + step - 1, n_max)) for lo in range(1, n_max + 1, step)]
    out: list[int] = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_fix_chunk, chunks):
            out.extend(part)
    return out


def orbits_from_fix(fix: Sequence[int]) -> list[int]:
    """Möbius inversion of a 1-indexed fixed-point list (fix[0] is F(1))."""
    n_max = len(fix)
    mu = mobius_sieve(n_max)
    totals = [0] * (n_max + 1)
    for d in range(1, n_max + 1):
        fd = fix[d - 1]
        for k in range(1, n_max // d + 1):
            if mu[k]:
                totals[d * k] += mu[k] * fd
    out = []
    for n in range(1, n_max + 1):
        q, r = divmod(totals[n], n)
        assert r == 0, f"Möbius sum at n={n} not divisible"
        out.append(q)
    return out


def table_from_fix(fix: Sequence[int], growth: Union[int, float], mode: str = "exact") -> OrbitTable:
    """OrbitTable from exact fixed-point counts and e^h (``growth``).

    With an integer ``growth`` and mode exact, Π is an exact Fraction;
    otherwise Π is a float.
    """
    orbits = orbits_from_fix(fix)
    pis, acc = [], 0
    for o in orbits:
        acc += o
        pis.append(acc)
    table = OrbitTable(mode="exact", n=list(range(1, len(fix) + 1)),
                       fix=list(fix), orbits=orbits, pi=pis)
    if mode == "exact" and isinstance(growth, int):
        table.capital_pi = [Fraction(n * p, growth ** (n + 1)) for n, p in zip(table.n, pis)]
    else:
        log_g = math.log(growth)
        table.capital_pi = [math.exp(math.log(n) + math.log(p) - (n + 1) * log_g) if p else 0.0
                            for n, p in zip(table.n, pis)]
    return table


def orbit_table(m: SIntegerMap, n_max: int, mode: str = "exact", workers: int = 1) -> OrbitTable:
    """F, O, π and Π for n = 1..n_max.

    ``mode="exact"`` uses integers and is limited by :func:`exact_ceiling`;
    ``mode="float"`` works in the log domain and has no ceiling.
    """
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    if mode == "exact":
        if n_max > exact_ceiling():
            raise ResourceLimitError(f"table too large: n_max={n_max} exceeds exact ceiling {exact_ceiling()}")
        return table_from_fix(fix_point_list(m, n_max, workers), m.entropy_base)
    if mode != "float":
        raise DomainError(f"unknown mode {mode!r}")
    return _float_table(m, n_max)


def _logsumexp(terms: list[tuple[int, float]]) -> tuple[float, int]:
    """log|Σ sign·e^x| and its sign, for (sign, x) pairs."""
    terms = [t for t in terms if t[0]]
    if not terms:
        return -math.inf, 0
    top = max(x for _, x in terms)
    s = math.fsum(sg * math.exp(x - top) for sg, x in terms)
    if s == 0:
        return -math.inf, 0
    return top + math.log(abs(s)), (1 if s > 0 else -1)


def _float_table(m: SIntegerMap, n_max: int) -> OrbitTable:
    log_f = [log_fix_points(m, n) for n in range(1, n_max + 1)]
    mu = mobius_sieve(n_max)
    log_o = []
    for n in range(1, n_max + 1):
        terms = [(mu[n // d], log_f[d - 1]) for d in divisors(n)]
        val, sign = _logsumexp(terms)
        log_o.append(val - math.log(n) if sign > 0 else -math.inf)
    log_pi, cur = [], -math.inf
    for lo in log_o:
        cur = _logsumexp([(1, cur), (1, lo)])[0] if cur > -math.inf else lo
        log_pi.append(cur)
    log_m = math.log(m.entropy_base)
    cap = [math.exp(math.log(n) + lp - (n + 1) * log_m) if lp > -math.inf else 0.0
           for n, lp in zip(range(1, n_max + 1), log_pi)]
    return OrbitTable(mode="float", n=list(range(1, n_max + 1)), capital_pi=cap,
                      log_fix=log_f, log_orbits=log_o, log_pi=log_pi)


def unit_factor(m: SIntegerMap, n: int) -> Fraction:
    """B(n) = D(n) = ∏ over unit places of |ξⁿ − 1|_p, exactly."""
    return Fraction(1, unit_denominator(m, n))


def capital_pi_predictor(m: SIntegerMap, N: int, tail_cutoff: int = 60) -> Fraction:
    """Σ_{t=0}^{T} M^-(t+1)·B(N−t), the tail-weighted predictor of Π(N).

    Terms with N − t < 1 are dropped (|0|_p = 0).
    """
    if N < 1 or tail_cutoff < 0:
        raise DomainError("predictor needs N >= 1 and tail cutoff >= 0")
    M = m.entropy_base
    top = min(tail_cutoff, N - 1)
    return sum((Fraction(1, M ** (t + 1) * unit_denominator(m, N - t)) for t in range(top + 1)),
               Fraction(0))


def delta_floor(m: SIntegerMap) -> Fraction:
    """Half the least |ξ^j − 1|_p over unit places p and 1 <= j <= |S|."""
    if not m.unit_laws:
        return Fraction(1)
    size = len(m.s_primes)
    least = min(Fraction(1, law.prime ** lte_ord(law, j))
                for law in m.unit_laws for j in range(1, size + 1))
    return least / 2


@dataclass(frozen=True)
class DetectorComponent:
    prime: int
    element: Fraction
    law: ValuationLaw


@dataclass(frozen=True)
class DetectorSpec:
    """The compact group X* as a product of unit groups Z_p^*, and a_T = ξ."""

    components: tuple[DetectorComponent, ...]
    archimedean_components: tuple = ()


def detector(m: SIntegerMap) -> DetectorSpec:
    return DetectorSpec(tuple(DetectorComponent(law.prime, m.xi, law) for law in m.unit_laws))


def unit_group_order(law: ValuationLaw, k: int) -> int:
    """Order of ξ in (Z/p^k)^*: least n >= 1 with ord_p(ξⁿ−1) >= k."""
    if k < 1:
        raise DomainError("precision must be >= 1")
    p = law.prime
    if p != 2:
        return law.order * p ** max(0, k - law.base_exponent)
    if law.base_exponent >= k:
        return 1
    # n even: v1 + v2 + ord_2(n) - 1 >= k
    need = k - law.base_exponent - law.two_adic_extra + 1
    return 2 ** max(1, need)


def subsequence_modulus(spec: DetectorSpec, k: int) -> int:
    """m such that N ≡ N' (mod m) forces ξ^N ≡ ξ^N' modulo p^k at every component."""
    return lcm(*(unit_group_order(c.law, k) for c in spec.components))


@dataclass
class Subsequence:
    residue: int
    modulus: int
    values: list[tuple[int, Union[Fraction, float]]]

    @property
    def minimum(self):
        return min(v for _, v in self.values)

    @property
    def maximum(self):
        return max(v for _, v in self.values)

    @property
    def dispersion(self):
        return self.maximum - self.minimum


def pi_subsequence(m: SIntegerMap, residue: int, modulus: int, n_range: tuple[int, int],
                   table: Optional[OrbitTable] = None) -> Subsequence:
    """Exact Π(N) for N ≡ residue (mod modulus) with lo <= N <= hi."""
    if modulus < 1 or not 0 <= residue < modulus:
        raise DomainError("need 0 <= residue < modulus")
    lo, hi = n_range
    if table is None or len(table) < hi:
        table = orbit_table(m, hi)
    start = max(lo, 1)
    first = start + (residue - start) % modulus
    values = [(N, table.Pi(N)) for N in range(first, hi + 1, modulus)]
    if not values:
        raise DomainError("empty selection")
    return Subsequence(residue, modulus, values)


def _series_mul(a: list[int], b: list[int], order: int) -> list[int]:
    out = [0] * (order + 1)
    for i, ai in enumerate(a):
        if ai:
            for j in range(order + 1 - i):
                out[i + j] += ai * b[j]
    return out


def zeta_coefficients(fix: Sequence[int], order: int) -> list[Fraction]:
    """Coefficients of exp(Σ F(n) zⁿ/n) up to z^order."""
    z = [Fraction(1)] + [Fraction(0)] * order
    for n in range(1, order + 1):
        z[n] = sum((fix[k - 1] * z[n - k] for k in range(1, n + 1)), Fraction(0)) / n
    return z


def euler_product_coefficients(orbits: Sequence[int], order: int) -> list[int]:
    """Coefficients of ∏_n (1 − zⁿ)^(−O(n)) up to z^order."""
    out = [1] + [0] * order
    for n in range(1, order + 1):
        k = orbits[n - 1]
        if not k:
            continue
        # (1 − zⁿ)^(−k) = Σ_j C(k+j−1, j) z^{nj}
        factor = [0] * (order + 1)
        for j in range(order // n + 1):
            factor[n * j] = math.comb(k + j - 1, j)
        out = _series_mul(out, factor, order)
    return out


def zeta_series_check(m: SIntegerMap, n_max: int) -> tuple[bool, Optional[int]]:
    """Compare both sides of the Euler product as formal power series.

    Returns (True, None) on agreement through z^n_max, else (False, index of
    first differing coefficient).
    """
    if n_max < 1:
        raise DomainError("order must be >= 1")
    fix = [fix_points(m, n) for n in range(1, n_max + 1)]
    lhs = zeta_coefficients(fix, n_max)
    rhs = euler_product_coefficients(orbits_from_fix(fix), n_max)
    for i, (x, y) in enumerate(zip(lhs, rhs)):
        if x != y:
            return False, i
    return True, None
