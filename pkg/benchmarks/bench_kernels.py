"""Time the compiled and pure-Python kernels on the same inputs.

    python benchmarks/bench_kernels.py [--n 200000] [--repeat 3]
"""

import argparse
import time

import numpy as np

from orbitkit import _kernels
from orbitkit.sinteger import new_map


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - start)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    laws = new_map(2, (3, 5, 7)).unit_laws
    values = np.random.default_rng(0).standard_normal(args.n)
    m_hi = args.n // 10
    cases = {
        "unit_factors": lambda mod: _kernels.unit_factor_array(args.n, laws, backend=mod),
        "neumaier_cumsum": lambda mod: _kernels.compensated_cumsum(values, backend=mod),
        "c_series": lambda mod: _kernels.c_series_array(1, m_hi, 3, 4, 60, backend=mod),
    }
    backends = _kernels.available_backends()
    print(f"{'kernel':<18}" + "".join(f"{name:>12}" for name in backends) + f"{'speedup':>10}  identical")
    for label, fn in cases.items():
        timings, outputs = {}, {}
        for name, mod in backends.items():
            timings[name], outputs[name] = best_of(lambda: fn(mod), args.repeat)
        row = f"{label:<18}" + "".join(f"{timings[n]:>11.4f}s" for n in backends)
        if "cython" in timings:
            same = np.array_equal(outputs["python"], outputs["cython"])
            row += f"{timings['python'] / timings['cython']:>9.1f}x  {same}"
        print(row)


if __name__ == "__main__":
    main()
