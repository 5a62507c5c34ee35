"""Exact rational arithmetic and the number-theoretic primitives used everywhere.

Rationals are :class:`fractions.Fraction`; integers are plain ``int``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

Number = Union[int, Fraction]


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation."""


class ResourceLimitError(RuntimeError):
    """Raised when an exact computation would exceed its configured ceiling."""


def as_rational(x) -> Fraction:
    """Coerce ``int``, ``Fraction`` or a ``"a/b"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"cannot parse rational {x!r}") from exc
    raise TypeError(f"expected int, Fraction or str, got {type(x).__name__}")


# -- primality and factoring -------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Miller-Rabin; the fixed base set is deterministic for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=65536)
def factorint(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorisation of ``n >= 1`` by trial division, as ((p, k), ...)."""
    if n < 1:
        raise DomainError("factorint needs a positive integer")
    out = []
    for p in (2, 3):
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            out.append((p, k))
    f = 5
    step = 2
    while f * f <= n:
        if n % f == 0:
            k = 0
            while n % f == 0:
                n //= f
                k += 1
            out.append((f, k))
        f += step
        step = 6 - step
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def mobius(n: int) -> int:
    """Möbius function μ(n)."""
    if n < 1:
        raise DomainError("mobius is defined for n >= 1")
    mu = 1
    for _, k in factorint(n):
        if k > 1:
            return 0
        mu = -mu
    return mu


def divisors(n: int) -> list[int]:
    """All positive divisors of ``n``, ascending."""
    if n < 1:
        raise DomainError("divisors is defined for n >= 1")
    divs = [1]
    for p, k in factorint(n):
        divs = [d * p**e for d in divs for e in range(k + 1)]
    return sorted(divs)


def mobius_sieve(n_max: int) -> list[int]:
    """μ(0..n_max) by a linear sieve; index 0 is unused and set to 0."""
    mu = [1] * (n_max + 1)
    mu[0] = 0
    is_comp = bytearray(n_max + 1)
    primes: list[int] = []
    for i in range(2, n_max + 1):
        if not is_comp[i]:
            primes.append(i)
            mu[i] = -1
        for p in primes:
            ip = i * p
            if ip > n_max:
                break
            is_comp[ip] = 1
            if i % p == 0:
                mu[ip] = 0
                break
            mu[ip] = -mu[i]
    return mu


# -- valuations ----------------------------------------------------------------

def int_ord(n: int, p: int) -> int:
    """Exponent of ``p`` in the nonzero integer ``n``."""
    if n == 0:
        raise DomainError("valuation of zero undefined")
    n = abs(n)
    if n % p:
        return 0
    # strip p**(2**i) blocks first; keeps huge powers of p cheap
    k = 0
    pk = p
    blocks = []
    while n % pk == 0:
        blocks.append(pk)
        pk *= pk
    for i in range(len(blocks) - 1, -1, -1):
        q, r = divmod(n, blocks[i])
        if r == 0:
            n = q
            k += 1 << i
    while n % p == 0:
        n //= p
        k += 1
    return k


def padic_ord(x: Number, p: int) -> int:
    """p-adic order of a nonzero rational: |x|_p = p**(-padic_ord(x, p))."""
    x = as_rational(x)
    if x == 0:
        raise DomainError("valuation of zero undefined")
    if x.denominator % p == 0:
        return -int_ord(x.denominator, p)
    return int_ord(x.numerator, p)


def padic_abs(x: Number, p: int) -> Fraction:
    """|x|_p as an exact rational, with |0|_p = 0."""
    x = as_rational(x)
    if x == 0:
        return Fraction(0)
    return Fraction(1, p) ** padic_ord(x, p)


def residue(x: Number, m: int) -> int:
    """Image of a rational with denominator prime to ``m`` in Z/mZ."""
    x = as_rational(x)
    if math.gcd(x.denominator, m) != 1:
        raise DomainError(f"{x} is not invertible modulo {m}")
    return x.numerator * pow(x.denominator, -1, m) % m


def mult_order(xi: Number, p: int) -> int:
    """Order of ``xi`` in the residue field at ``p``.

    That is the least o >= 1 with ord_p(xi**o - 1) >= 1.
    """
    xi = as_rational(xi)
    if xi == 0 or padic_ord(xi, p) != 0:
        raise DomainError(f"ξ not a p-adic unit at p={p}")
    a = residue(xi, p)
    order = p - 1
    for q, _ in factorint(p - 1):
        while order % q == 0 and pow(a, order // q, p) == 1:
            order //= q
    return order


@dataclass(frozen=True)
class ValuationLaw:
    """Closed-form valuation of ξⁿ − 1 at one prime where ξ is a unit.

    For odd ``prime``: ord(ξⁿ−1) = base_exponent + ord(n) when ``order`` | n,
    else 0. For ``prime == 2``: ``base_exponent`` is ord_2(ξ−1) (taken by odd n)
    and even n add ``two_adic_extra + ord_2(n) - 1``.
    """

    prime: int
    order: int
    base_exponent: int
    two_adic_extra: Optional[int] = None


def build_valuation_law(xi: Number, p: int) -> ValuationLaw:
    xi = as_rational(xi)
    if xi in (1, -1):
        raise DomainError("ξ is a root of unity")
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    o = mult_order(xi, p)
    e = padic_ord(xi**o - 1, p)
    if p == 2:
        return ValuationLaw(2, 1, e, padic_ord(xi + 1, 2))
    return ValuationLaw(p, o, e)


def lte_ord(law: ValuationLaw, n: int) -> int:
    """ord_p(ξⁿ − 1) from the valuation law, without forming ξⁿ."""
    if n < 1:
        raise DomainError("lte_ord needs n >= 1")
    p = law.prime
    if p == 2:
        if n & 1:
            return law.base_exponent
        return law.base_exponent + law.two_adic_extra + int_ord(n, 2) - 1
    if n % law.order:
        return 0
    return law.base_exponent + int_ord(n, p)


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out
