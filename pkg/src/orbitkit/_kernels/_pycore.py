"""Pure-Python kernels. Same loop order and float operations as _fastcore."""

import numpy as np


def unit_factors(n_max, laws, tables):
    """D(n) for n = 0..n_max (D(0) = 0) as a float64 array.

    ``laws`` holds (p, order, base_exponent, two_adic_extra or -1) and
    ``tables[i][k]`` is the correctly rounded p**-k for law i.
    """
    out = [1.0] * (n_max + 1)
    out[0] = 0.0
    for (p, o, e, extra), inv in zip(laws, tables):
        if p == 2:
            odd = inv[e]
            for n in range(1, n_max + 1, 2):
                out[n] *= odd
            base = e + extra - 1
            for n in range(2, n_max + 1, 2):
                v = (n & -n).bit_length() - 1
                out[n] *= inv[base + v]
        else:
            for n in range(o, n_max + 1, o):
                v = 0
                m = n
                while m % p == 0:
                    m //= p
                    v += 1
                out[n] *= inv[e + v]
    return np.array(out, dtype=np.float64)


def neumaier_cumsum(values):
    """Running sums with Neumaier compensation."""
    vals = values.tolist()
    out = [0.0] * len(vals)
    s = 0.0
    c = 0.0
    for i, x in enumerate(vals):
        t = s + x
        if abs(s) >= abs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
        out[i] = s + c
    return np.array(out, dtype=np.float64)


def c_series(m_lo, m_hi, p, jmax, inv, weights):
    """sum_{j<=jmax} |M-j|_p * weights[j] for M in [m_lo, m_hi], |0|_p = 0."""
    out = []
    for m in range(m_lo, m_hi + 1):
        s = 0.0
        for j in range(jmax + 1):
            x = m - j
            if x == 0:
                continue
            if x < 0:
                x = -x
            v = 0
            while x % p == 0:
                x //= p
                v += 1
            s += inv[v] * weights[j]
        out.append(s)
    return np.array(out, dtype=np.float64)
