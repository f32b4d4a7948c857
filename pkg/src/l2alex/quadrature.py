"""Adaptive Gauss-Legendre quadrature on the circle, batched and deterministic.

The integrands here are means of log-magnitude functions over [0, 2pi): they
are piecewise smooth, with corners where a slice root crosses the unit circle
and integrable log singularities where the polynomial vanishes on the torus.
Uniform panel refinement converges only like h^2 across such points, so the
integrator bisects panels adaptively instead: each panel carries an embedded
error estimate |GL(panel) - GL(left half) - GL(right half)|, and every sweep
splits all panels whose estimate exceeds an equidistributed share of the
target. Smooth panels converge at Gauss-Legendre speed; corner and
singularity panels shrink geometrically around the bad point.

Determinism: panels are refined and summed in left-endpoint order, so a given
tolerance and budget always produce bit-identical results.
"""

from __future__ import annotations

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import QuadratureBudgetError

GL_ORDER = 8
_NODES, _WEIGHTS = leggauss(GL_ORDER)
TWO_PI = 2.0 * np.pi

DEFAULT_NODE_BUDGET = 2_000_000
_INITIAL_PANELS = 16
_MIN_WIDTH = TWO_PI * 2.0 ** -52


class NodeBudget:
    """Mutable evaluation budget shared across nested integrals."""

    def __init__(self, limit: int = DEFAULT_NODE_BUDGET):
        self.limit = int(limit)
        self.used = 0

    def charge(self, n: int) -> bool:
        if self.used + n > self.limit:
            return False
        self.used += n
        return True


def _gl_batch(f, lefts, widths):
    """Gauss-Legendre integrals of f over panels [left, left+width).

    One batched call to f evaluates all panels' nodes at once; per-panel sums
    run in node order, so results do not depend on the batch composition.
    """
    half = 0.5 * widths
    nodes = lefts[:, None] + half[:, None] * (_NODES[None, :] + 1.0)
    vals = f(nodes.reshape(-1)).reshape(nodes.shape)
    return half * (vals @ _WEIGHTS)


def adaptive_circle_mean(f, tol, budget: NodeBudget | None = None):
    """Mean of f over [0, 2pi) to absolute tolerance ~tol.

    f maps a 1-D array of angles to a 1-D array of values and may be called
    with large batches. Returns (mean, achieved_tol, n_evals). Raises
    QuadratureBudgetError (carrying the best mean and achieved error) if the
    node budget runs out first.
    """
    if budget is None:
        budget = NodeBudget()
    tol_total = max(float(tol), 1e-15) * TWO_PI

    lefts = TWO_PI * np.arange(_INITIAL_PANELS) / _INITIAL_PANELS
    widths = np.full(_INITIAL_PANELS, TWO_PI / _INITIAL_PANELS)
    start_used = budget.used
    if not budget.charge(3 * _INITIAL_PANELS * GL_ORDER):
        raise QuadratureBudgetError("node budget too small to start",
                                    float("nan"), float("inf"))
    coarse = _gl_batch(f, lefts, widths)
    half_l = _gl_batch(f, lefts, widths / 2)
    half_r = _gl_batch(f, lefts + widths / 2, widths / 2)

    # panel record: (left, width, I_left_half, I_right_half, err)
    panels = [(lefts[i], widths[i], half_l[i], half_r[i],
               abs(coarse[i] - half_l[i] - half_r[i]))
              for i in range(_INITIAL_PANELS)]

    def totals():
        ordered = sorted(panels, key=lambda rec: rec[0])
        val = 0.0
        err = 0.0
        for rec in ordered:
            val += rec[2] + rec[3]
            err += rec[4]
        return val, err

    while True:
        value, err_sum = totals()
        if err_sum <= tol_total:
            return value / TWO_PI, err_sum / TWO_PI, budget.used - start_used

        threshold = tol_total / max(len(panels), 1)
        split = [rec for rec in panels
                 if rec[4] > threshold and rec[1] > _MIN_WIDTH]
        if not split:
            worst = max(panels, key=lambda rec: (rec[4], rec[0]))
            if worst[1] <= _MIN_WIDTH:
                raise QuadratureBudgetError(
                    "panels at minimum width before reaching tolerance",
                    value / TWO_PI, err_sum / TWO_PI)
            split = [worst]
        split.sort(key=lambda rec: rec[0])

        cost = 4 * len(split) * GL_ORDER
        if not budget.charge(cost):
            raise QuadratureBudgetError(
                f"quadrature node budget exhausted ({budget.limit} evaluations)",
                value / TWO_PI, err_sum / TWO_PI)

        split_ids = {id(rec) for rec in split}
        keep = [rec for rec in panels if id(rec) not in split_ids]
        q_lefts = np.empty(4 * len(split))
        q_widths = np.empty(4 * len(split))
        for k, rec in enumerate(split):
            a, h = rec[0], rec[1]
            q = h / 4
            q_lefts[4 * k:4 * k + 4] = (a, a + q, a + 2 * q, a + 3 * q)
            q_widths[4 * k:4 * k + 4] = q
        quarters = _gl_batch(f, q_lefts, q_widths)
        for k, rec in enumerate(split):
            a, h, il, ir, _ = rec
            q0, q1, q2, q3 = quarters[4 * k:4 * k + 4]
            keep.append((a, h / 2, q0, q1, abs(il - q0 - q1)))
            keep.append((a + h / 2, h / 2, q2, q3, abs(ir - q2 - q3)))
        panels = keep


def geometric_grid(lo: float, hi: float, n: int) -> list[float]:
    """n points lo * (hi/lo)^(k/(n-1)), k = 0..n-1."""
    if n < 1 or lo <= 0 or hi <= 0 or (n > 1 and hi <= lo):
        raise ValueError("need 0 < lo < hi and n >= 1")
    if n == 1:
        return [float(lo)]
    ratio = hi / lo
    return [lo * ratio ** (k / (n - 1)) for k in range(n)]
