import math

import numpy as np
import pytest

from casimir_impedance.errors import ConvergenceError
from casimir_impedance.quadrature import gauss_kronrod


def test_polynomial_exact():
    v, err, n = gauss_kronrod(lambda x: x**5 - 3 * x**2, -1.0, 2.0)
    assert v == pytest.approx(2**6 / 6 - 1 / 6 - 9, rel=1e-14)
    assert n == 15


def test_oscillatory():
    v, err, _ = gauss_kronrod(np.sin, 0.0, 20 * math.pi + 1.0, epsrel=1e-12)
    assert v == pytest.approx(1 - math.cos(1.0), rel=1e-11)


def test_endpoint_singularity():
    v, err, _ = gauss_kronrod(lambda x: 1 / np.sqrt(x), 0.0, 1.0, epsrel=1e-9)
    assert v == pytest.approx(2.0, rel=1e-8)
    assert err < 1e-7


def test_breakpoint_lorentzian():
    g = 1e-6
    f = lambda x: g / ((x - 0.3) ** 2 + g**2)  # noqa: E731
    v, _, _ = gauss_kronrod(f, 0.0, 1.0, points=(0.3,), epsrel=1e-10)
    assert v == pytest.approx(math.atan(0.7 / g) + math.atan(0.3 / g), rel=1e-9)


def test_error_estimate_is_honest():
    v, err, _ = gauss_kronrod(lambda x: np.exp(-x) * np.cos(5 * x), 0.0, 10.0, epsrel=1e-6)
    exact = (1 - np.exp(-10) * (np.cos(50) - 5 * np.sin(50))) / 26
    assert abs(v - exact) <= err + 1e-15


def test_convergence_error_carries_estimate():
    with pytest.raises(ConvergenceError) as info:
        gauss_kronrod(lambda x: np.sin(1 / x) / x, 1e-9, 1.0, epsrel=1e-14, limit=5)
    assert math.isfinite(info.value.estimate)
    assert info.value.abs_error > 0
