import math

import numpy as np
import pytest

from rotstar import QuadratureFailure
from rotstar.quadrature import adaptive_gl, semi_infinite


def test_polynomial_exact():
    val = adaptive_gl(lambda t: t**7 - 3 * t**2, 0.0, 2.0)
    assert val[0] == pytest.approx(2**8 / 8 - 8, abs=1e-13)


def test_vector_integrand():
    val = adaptive_gl(lambda t: np.vstack([np.sin(t), np.cos(t)]), 0.0, math.pi)
    np.testing.assert_allclose(val, [2.0, 0.0], atol=1e-13)


@pytest.mark.parametrize("power, exact", [(1.5, 2.0), (2.5, 2.0 / 3.0)])
def test_semi_infinite_algebraic_decay(power, exact):
    val = semi_infinite(lambda s: (1.0 + s) ** -power, tol=1e-13)
    assert val[0] == pytest.approx(exact, abs=1e-12)


def test_budget_exhaustion_raises():
    with pytest.raises(QuadratureFailure):
        adaptive_gl(lambda t: np.sin(1.0 / np.maximum(t, 1e-300)), 0.0, 1.0, tol=1e-14, max_panels=50)
