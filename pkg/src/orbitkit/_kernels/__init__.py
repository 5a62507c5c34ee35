"""Hot loops, compiled when possible.

The compiled module ``_fastcore`` is used when it imports; otherwise the
pure-Python ``_pycore`` is used. Set ``ORBITKIT_PURE_PYTHON=1`` to force the
fallback. ``BACKEND`` names the active choice.
"""

from __future__ import annotations

import os
from fractions import Fraction
from types import ModuleType
from typing import Sequence

import numpy as np

from ..arith import ValuationLaw
from . import _pycore

_fast: ModuleType | None
try:
    from . import _fastcore as _fast
except ImportError:  # extension not built
    _fast = None

if _fast is not None and os.environ.get("ORBITKIT_PURE_PYTHON", "") not in ("1", "true", "yes"):
    _backend: ModuleType = _fast
    BACKEND = "cython"
else:
    _backend = _pycore
    BACKEND = "python"


def available_backends() -> dict[str, ModuleType]:
    out = {"python": _pycore}
    if _fast is not None:
        out["cython"] = _fast
    return out


def inverse_powers(p: int, count: int) -> list[float]:
    """Correctly rounded p**-k for k < count."""
    return [float(Fraction(1, p**k)) for k in range(count)]


def _law_tuples(laws: Sequence[ValuationLaw], n_max: int):
    tuples, tables = [], []
    for law in laws:
        extra = law.two_adic_extra if law.prime == 2 else -1
        top = law.base_exponent + max(extra, 0) + n_max.bit_length() + 2
        tuples.append((law.prime, law.order, law.base_exponent, extra))
        tables.append(inverse_powers(law.prime, top))
    return tuples, tables


def unit_factor_array(n_max: int, laws: Sequence[ValuationLaw], backend: ModuleType | None = None) -> np.ndarray:
    """Array ``a`` with a[n] = ∏_laws p^(-ord_p(ξⁿ−1)) for 1 <= n <= n_max, a[0] = 0."""
    mod = backend or _backend
    tuples, tables = _law_tuples(laws, n_max)
    return mod.unit_factors(n_max, tuples, tables)


def compensated_cumsum(values: np.ndarray, backend: ModuleType | None = None) -> np.ndarray:
    mod = backend or _backend
    return mod.neumaier_cumsum(np.ascontiguousarray(values, dtype=np.float64))


def c_series_array(m_lo: int, m_hi: int, p: int, lam: int, jmax: int,
                   backend: ModuleType | None = None) -> np.ndarray:
    """Truncated sums Σ_{j<=jmax} |M−j|_p λ^(−j) for M in [m_lo, m_hi], as floats."""
    if m_hi < m_lo:
        return np.empty(0)
    mod = backend or _backend
    span = max(abs(m_lo), abs(m_hi)) + jmax + 1
    vmax = 1
    while p**vmax <= span:
        vmax += 1
    inv = inverse_powers(p, vmax + 1)
    weights = [float(Fraction(1, lam**j)) for j in range(jmax + 1)]
    return mod.c_series(m_lo, m_hi, p, jmax, inv, weights)
