"""Integer toral automorphisms: periodic points, orbits and rotation detectors."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import mpmath
import sympy

from .arith import DomainError
from .sinteger import OrbitTable, table_from_fix

UNIMODULAR_TOL = 1e-9
WORK_DPS = 30  # ~100 bits, above the 80-bit floor for root polishing

EXAMPLE_MATRIX = (
    (0, 1, 0, 0),
    (0, 0, 1, 0),
    (0, 0, 0, 1),
    (-1, -4, 2, -4),
)

Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Eigen:
    value: complex
    modulus: float
    unimodular: bool


@dataclass(frozen=True)
class ToralAutomorphism:
    matrix: Matrix
    char_poly: tuple[int, ...]  # leading coefficient first
    eigen_data: tuple[Eigen, ...]
    entropy: float
    unimodular_angles: tuple[float, ...]  # θ/2π in [0, 1), one per conjugate pair
    unimodular_heuristic: bool = True

    @property
    def dim(self) -> int:
        return len(self.matrix)


def _as_matrix(rows) -> Matrix:
    mat = tuple(tuple(int(x) for x in row) for row in rows)
    d = len(mat)
    if d == 0 or any(len(row) != d for row in mat):
        raise DomainError("matrix must be square and nonempty")
    return mat


def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def mat_pow(a: Matrix, n: int) -> Matrix:
    d = len(a)
    out: Matrix = tuple(tuple(int(i == j) for j in range(d)) for i in range(d))
    base = a
    while n:
        if n & 1:
            out = mat_mul(out, base)
        n >>= 1
        if n:
            base = mat_mul(base, base)
    return out


def _self_reciprocal(coeffs: Sequence[int]) -> bool:
    c = list(coeffs)
    return c == c[::-1] or c == [-x for x in c[::-1]]


def _roots(coeffs: Sequence[int]) -> list:
    with mpmath.workdps(WORK_DPS):
        roots = mpmath.polyroots([mpmath.mpf(c) for c in coeffs], maxsteps=200, extraprec=2 * WORK_DPS)
        poly = [mpmath.mpf(c) for c in coeffs]
        dpoly = [c * (len(poly) - 1 - i) for i, c in enumerate(poly[:-1])]
        polished = []
        for z in roots:
            for _ in range(5):  # Newton polishing
                f = mpmath.polyval(poly, z)
                df = mpmath.polyval(dpoly, z)
                if df == 0:
                    break
                z = z - f / df
            polished.append(z)
    return polished


def new_toral(rows) -> ToralAutomorphism:
    """Validate an integer matrix as an ergodic automorphism of the torus."""
    mat = _as_matrix(rows)
    if abs(bareiss_det(mat)) != 1:
        raise DomainError("not invertible over the integers")
    x = sympy.Symbol("x")
    poly = sympy.Matrix(mat).charpoly(x)
    coeffs = tuple(int(c) for c in poly.all_coeffs())
    _, factors = sympy.factor_list(poly.as_expr(), x)
    eigen: list[Eigen] = []
    angles: list[float] = []
    for fac, _mult in factors:
        fpoly = sympy.Poly(fac, x)
        fc = [int(c) for c in fpoly.all_coeffs()]
        if fpoly.is_cyclotomic:
            raise DomainError("not ergodic: eigenvalue is a root of unity")
        reciprocal = _self_reciprocal(fc)
        for z in _roots(fc):
            mod = float(abs(z))
            uni = reciprocal and abs(mod - 1.0) < UNIMODULAR_TOL
            val = complex(z)
            eigen.append(Eigen(val, mod, uni))
            if uni and float(mpmath.im(z)) > 0:
                with mpmath.workdps(WORK_DPS):
                    theta = mpmath.arg(z) / (2 * mpmath.pi)
                angles.append(float(theta % 1))
    entropy = math.fsum(math.log(e.modulus) for e in eigen if e.modulus > 1 and not e.unimodular)
    eigen.sort(key=lambda e: -e.modulus)
    return ToralAutomorphism(mat, coeffs, tuple(eigen), entropy, tuple(sorted(angles)))


def fix_points_toral(aut: ToralAutomorphism, n: int) -> int:
    """|det(Aⁿ − I)|."""
    if n < 1:
        raise DomainError("n must be >= 1")
    p = mat_pow(aut.matrix, n)
    shifted = [[v - (i == j) for j, v in enumerate(row)] for i, row in enumerate(p)]
    return abs(bareiss_det(shifted))


def eigen_product(aut: ToralAutomorphism, n: int) -> float:
    """|∏(λᵢⁿ − 1)| from the numeric eigenvalues (cross-check of fix_points_toral)."""
    out = 1.0
    for e in aut.eigen_data:
        out *= abs(e.value**n - 1)
    return out


MAX_TORAL_N = 200


def orbit_table_toral(aut: ToralAutomorphism, n_max: int) -> OrbitTable:
    """Exact F, O, π; Π = Nπ(N)/e^{h(N+1)} in floats."""
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    if n_max > MAX_TORAL_N:
        from .arith import ResourceLimitError
        raise ResourceLimitError(f"table too large: toral n_max limited to {MAX_TORAL_N}")
    fix = [fix_points_toral(aut, n) for n in range(1, n_max + 1)]
    return table_from_fix(fix, math.exp(aut.entropy), mode="float")


def convergent_denominators(x, depth: int) -> list[int]:
    """Denominators q_1 < q_2 < ... of the continued-fraction convergents of x."""
    if depth < 1:
        raise DomainError("depth must be >= 1")
    with mpmath.workdps(WORK_DPS):
        x = mpmath.mpf(x)
        q_prev, q = 0, 1
        out: list[int] = []
        frac = x - mpmath.floor(x)
        while len(out) < depth:
            if frac == 0:
                break
            x = 1 / frac
            a = int(mpmath.floor(x))
            frac = x - a
            q_prev, q = q, a * q + q_prev
            if not out or q > out[-1]:
                out.append(q)
            if frac < mpmath.mpf(10) ** (-WORK_DPS + 5):
                break
    return out


def rotation_subsequences(aut: ToralAutomorphism, depth: int, angle_index: int = 0) -> list[int]:
    """Times N along which λ^N → 1 for one unimodular eigenvalue λ."""
    if not aut.unimodular_angles:
        raise DomainError("no unimodular eigenvalues")
    return convergent_denominators(_precise_angle(aut, angle_index), depth)


def _precise_angle(aut: ToralAutomorphism, index: int):
    coeffs = list(aut.char_poly)
    with mpmath.workdps(WORK_DPS):
        cands = [z for z in _roots(coeffs)
                 if abs(abs(z) - 1) < UNIMODULAR_TOL and mpmath.im(z) > 0]
        cands.sort(key=lambda z: float(mpmath.arg(z)))
        z = cands[index]
        return (mpmath.arg(z) / (2 * mpmath.pi)) % 1


def rotation_distance(theta: float, q: int) -> float:
    """Distance from qθ to the nearest integer."""
    v = q * theta
    return abs(v - round(v))


def dispersion(values: Sequence[float]) -> float:
    return max(values) - min(values)
