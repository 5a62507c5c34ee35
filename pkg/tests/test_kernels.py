import numpy as np
import pytest

from orbitkit import _kernels
from orbitkit.sinteger import new_map, unit_factor

BACKENDS = _kernels.available_backends()


def test_python_backend_always_present():
    assert "python" in BACKENDS
    assert _kernels.BACKEND in ("python", "cython")


@pytest.mark.parametrize("xi, s", [(2, (3,)), (2, (3, 5, 7)), (3, (2,)), ("3/2", (2, 5))])
def test_unit_factors_match_exact(xi, s):
    m = new_map(xi, s)
    for name, mod in BACKENDS.items():
        arr = _kernels.unit_factor_array(300, m.unit_laws, backend=mod)
        assert arr[0] == 0.0
        # one rounding per place, so allow a few ulps against the exact value
        want = [float(unit_factor(m, n)) for n in range(1, 301)]
        assert list(arr[1:]) == pytest.approx(want, rel=4e-16), name


@pytest.mark.skipif("cython" not in BACKENDS, reason="extension not built")
def test_backends_bitwise_equal():
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    m = new_map(2, (3, 5, 7))
    a = _kernels.unit_factor_array(5000, m.unit_laws, backend=py)
    b = _kernels.unit_factor_array(5000, m.unit_laws, backend=cy)
    assert np.array_equal(a, b)
    rng = np.random.default_rng(3)
    vals = rng.standard_normal(5000) * 10.0 ** rng.integers(-8, 8, 5000)
    assert np.array_equal(_kernels.compensated_cumsum(vals, py), _kernels.compensated_cumsum(vals, cy))
    c1 = _kernels.c_series_array(1, 3000, 3, 4, 60, backend=py)
    c2 = _kernels.c_series_array(1, 3000, 3, 4, 60, backend=cy)
    assert np.array_equal(c1, c2)


def test_compensated_cumsum_cancellation():
    vals = np.array([1.0, 1e100, 1.0, -1e100])
    for mod in BACKENDS.values():
        assert _kernels.compensated_cumsum(vals, mod)[-1] == 2.0


def test_c_series_empty_range():
    assert len(_kernels.c_series_array(5, 4, 3, 4, 10)) == 0
