import math

import numpy as np
import pytest

from l2alex import QuadratureBudgetError, geometric_grid
from l2alex.quadrature import NodeBudget, adaptive_circle_mean


class TestAdaptiveCircleMean:
    def test_smooth_periodic(self):
        # mean of cos^2 over the circle is 1/2
        mean, err, _ = adaptive_circle_mean(lambda t: np.cos(t) ** 2, 1e-12)
        assert mean == pytest.approx(0.5, abs=1e-12)
        assert err <= 1e-12

    def test_constant(self):
        mean, err, n = adaptive_circle_mean(lambda t: np.full_like(t, 3.0),
                                            1e-10)
        assert mean == pytest.approx(3.0, abs=1e-13)

    def test_corner_integrand(self):
        # mean of log max(1, 2 cos(t/2)) has a closed form via Jensen:
        # it is log M(1 + z) with an extra factor, easier: compare against
        # a dense trapezoid reference
        def f(t):
            return np.log(np.maximum(1.0, 2.0 * np.abs(np.cos(t / 2.0))))

        ts = 2.0 * np.pi * (np.arange(2_000_000) + 0.5) / 2_000_000
        reference = float(np.mean(f(ts)))
        mean, err, _ = adaptive_circle_mean(f, 1e-10)
        assert mean == pytest.approx(reference, abs=5e-9)

    def test_log_singularity(self):
        # mean of log|e^{it} - 1| over the circle is 0 (Jensen for z - 1)
        def f(t):
            return np.log(np.abs(np.exp(1j * t) - 1.0))

        mean, err, _ = adaptive_circle_mean(f, 1e-10)
        assert mean == pytest.approx(0.0, abs=1e-9)

    def test_budget_error(self):
        def f(t):
            return np.log(np.abs(np.exp(1j * t) - 1.0))

        with pytest.raises(QuadratureBudgetError) as info:
            adaptive_circle_mean(f, 1e-13, NodeBudget(1500))
        assert math.isfinite(info.value.best_estimate)
        assert info.value.achieved_tol > 0

    def test_deterministic(self):
        def f(t):
            return np.log(np.abs(np.exp(1j * t) - 0.996))

        a = adaptive_circle_mean(f, 1e-11)
        b = adaptive_circle_mean(f, 1e-11)
        assert a == b


class TestGeometricGrid:
    def test_endpoints_and_count(self):
        g = geometric_grid(0.001, 1000.0, 41)
        assert len(g) == 41
        assert g[0] == pytest.approx(0.001)
        assert g[-1] == pytest.approx(1000.0)

    def test_geometric_spacing(self):
        g = geometric_grid(0.5, 8.0, 9)
        ratios = [b / a for a, b in zip(g, g[1:])]
        assert all(r == pytest.approx(ratios[0], rel=1e-12) for r in ratios)

    def test_single_point(self):
        assert geometric_grid(2.0, 3.0, 1) == [2.0]

    def test_invalid(self):
        with pytest.raises(ValueError):
            geometric_grid(-1.0, 2.0, 5)
        with pytest.raises(ValueError):
            geometric_grid(2.0, 1.0, 5)
