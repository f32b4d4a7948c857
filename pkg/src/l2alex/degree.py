"""Determinant functions V(t) and their degree analysis.

V(t) is the Mahler measure of the determinant polynomial with every monomial
z^v rescaled by t^{<sigma, v>}, raised to 1/index for virtually abelian
targets. It is either constantly zero (zero determinant) or multiplicatively
convex with all log-log slopes bounded by the exponent bound R of the matrix.

With an exact decomposition sigma = sum r_i Phi_i, the two ends are computed
exactly: group the monomials of p by the integer weight w = Phi v, pick the
group maximizing <r, w> (minimizing, for t -> 0+), and the function satisfies

    log V(t) = log M(q_w) + <r, w> log t + o(1),

so the asymptote exponent is <r, w> and the leading coefficient is M(q_w),
the Mahler measure of the extremal group ("chief part"). For integer
determinant polynomials the chief parts are integer polynomials, so both
leading coefficients are >= 1. Without a decomposition the ends fall back to
two-point log-log fits at t = 10^{+-4}, 10^{+-6}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ChiefPartTieError, ZeroMatrixError, ZeroPolynomialError
from .laurent import LaurentMatrix, LaurentPoly
from .mahler import (RootData, log_scaled_mahler_from_roots, mahler_mv,
                     log_mahler_mv, roots)
from .quadrature import DEFAULT_NODE_BUDGET, NodeBudget
from .twist import CohomClass, exponent_bound

_TIE_TOL = 1e-9
_GRID_GEOMETRIC_RTOL = 1e-9
_FIT_ANCHORS = (1e4, 1e6)

END_PLUS = "+inf"
END_MINUS = "0+"


@dataclass(frozen=True)
class AsymptoteReport:
    """Both-end asymptote data: V(t) ~ C * t^d at each end.

    deg_b = d_plus - d_minus is the growth bound degree (the width of the
    range of log-log slopes). ``method`` records how the ends were obtained:
    "exact-chief-part" carries the integer-coefficient guarantee C >= 1,
    "numeric-fit" does not, and "closed-form" marks torsion-level formulas.
    """

    d_plus: float
    d_minus: float
    C_plus: float
    C_minus: float
    method: str

    @property
    def deg_b(self) -> float:
        return self.d_plus - self.d_minus

    def to_obj(self) -> dict:
        return {"d_plus": self.d_plus, "d_minus": self.d_minus,
                "deg_b": self.deg_b, "C_plus": self.C_plus,
                "C_minus": self.C_minus, "method": self.method}


class DetFunction:
    """Evaluable t -> V(t) with cached determinant and asymptote data."""

    def __init__(self, det_poly: LaurentPoly, cohom: CohomClass,
                 index_divisor: int = 1, exp_bound: float | None = None,
                 label: str = ""):
        if det_poly.nvars != cohom.nvars:
            raise ValueError(
                f"determinant has {det_poly.nvars} variables, "
                f"class has {cohom.nvars}")
        if int(index_divisor) != index_divisor or index_divisor < 1:
            raise ValueError("index_divisor must be a positive integer")
        self.det_poly = det_poly
        self.cohom = cohom
        self.index_divisor = int(index_divisor)
        self.exp_bound = exp_bound
        self.label = label
        self._rootdata: RootData | None = None
        self._eval_cache: dict = {}
        self._asymptote_cache: dict = {}

    @property
    def is_zero(self) -> bool:
        return self.det_poly.is_zero

    def rescaled(self, index: int) -> "DetFunction":
        out = DetFunction(self.det_poly, self.cohom,
                          self.index_divisor * int(index),
                          self.exp_bound, self.label)
        out._rootdata = self._rootdata
        return out

    def _roots1v(self) -> RootData:
        if self._rootdata is None:
            self._rootdata = roots(self.det_poly)
        return self._rootdata

    def log_eval(self, t: float, tol: float = 1e-8,
                 max_evals: int = DEFAULT_NODE_BUDGET) -> float:
        """log V(t) (-inf for the zero function).

        Exact (closed form on the root factorization) in one variable;
        adaptive quadrature otherwise.
        """
        if t <= 0:
            raise ValueError("t must be positive")
        if self.is_zero:
            return -math.inf
        key = (t, tol)
        if key in self._eval_cache:
            return self._eval_cache[key]
        if self.det_poly.nvars == 1:
            s1 = self.cohom.variable_scales(t)[0]
            logv = log_scaled_mahler_from_roots(self._roots1v(), s1)
        else:
            twisted = self._twisted_normalized(t)
            logm, _ = log_mahler_mv(twisted.poly, tol, NodeBudget(max_evals))
            logv = logm + twisted.log_scale
        logv /= self.index_divisor
        self._eval_cache[key] = logv
        return logv

    def eval(self, t: float, tol: float = 1e-8,
             max_evals: int = DEFAULT_NODE_BUDGET) -> float:
        """V(t), saturating to inf if it exceeds the double range."""
        logv = self.log_eval(t, tol, max_evals)
        try:
            return math.exp(logv)
        except OverflowError:
            return math.inf

    def _twisted_normalized(self, t: float) -> "_NormalizedTwist":
        """Twisted polynomial with coefficients rescaled to max magnitude 1.

        Factors are assembled in log space from the shared per-variable
        scales, so enormous |<sigma, v> log t| neither overflows nor loses
        the relative sizes that the quadrature needs.
        """
        scales = self.cohom.variable_scales(t)
        logs = [math.log(s) for s in scales]
        entries = []
        for exp, c in self.det_poly.terms.items():
            logfac = math.log(abs(c))
            for ls, e in zip(logs, exp):
                logfac += ls * e
            entries.append((exp, c, logfac))
        top = max(e[2] for e in entries)
        terms = {exp: (c / abs(c)) * math.exp(logfac - top)
                 for exp, c, logfac in entries}
        return _NormalizedTwist(LaurentPoly(self.det_poly.nvars, terms), top)

    def asymptote(self, tol: float = 1e-8) -> AsymptoteReport:
        if self.is_zero:
            raise ZeroPolynomialError(
                "the constantly-zero function has no asymptote degrees")
        if tol in self._asymptote_cache:
            return self._asymptote_cache[tol]
        if self.cohom.has_decomposition:
            dp, cp = self._exact_end(END_PLUS, tol)
            dm, cm = self._exact_end(END_MINUS, tol)
            report = AsymptoteReport(dp, dm, cp, cm, "exact-chief-part")
        else:
            report = self._numeric_fit(tol)
        self._asymptote_cache[tol] = report
        return report

    def _exact_end(self, end: str, tol: float):
        w, q = chief_part(self.det_poly, self.cohom, end)
        d = sum(ri * wi for ri, wi in zip(self.cohom.r, w))
        coeff = mahler_mv(q, tol) ** (1.0 / self.index_divisor)
        return d / self.index_divisor, coeff

    def _numeric_fit(self, tol: float) -> AsymptoteReport:
        t1, t2 = _FIT_ANCHORS
        lv1, lv2 = self.log_eval(t1, tol), self.log_eval(t2, tol)
        d_plus = (lv2 - lv1) / (math.log(t2) - math.log(t1))
        c_plus = math.exp(lv2 - d_plus * math.log(t2))
        lw1, lw2 = self.log_eval(1 / t1, tol), self.log_eval(1 / t2, tol)
        d_minus = (lw1 - lw2) / (math.log(1 / t1) - math.log(1 / t2))
        c_minus = math.exp(lw2 - d_minus * math.log(1 / t2))
        return AsymptoteReport(d_plus, d_minus, c_plus, c_minus, "numeric-fit")


@dataclass(frozen=True)
class _NormalizedTwist:
    poly: LaurentPoly
    log_scale: float


def det_function(a: LaurentMatrix, c: CohomClass,
                 index_divisor: int = 1) -> DetFunction:
    """Build V from a matrix and a class; the determinant is cached."""
    try:
        bound = exponent_bound(a, c)
    except ZeroMatrixError:
        bound = None
    return DetFunction(a.determinant(), c, index_divisor, bound)


def evaluate(v: DetFunction, t: float, tol: float = 1e-8) -> float:
    return v.eval(t, tol)


def chief_part(p: LaurentPoly, c: CohomClass, end: str):
    """Extremal weight group of p under the integer weight map.

    Groups monomials by w = Phi v, discards nothing else (groups of pruned
    zero coefficients never appear), and returns (w, q_w) for the group
    maximizing <r, w> (end "+inf") or minimizing it (end "0+"). A tie within
    1e-9 between the extremal and runner-up values means the asserted
    Q-linear independence of r is violated.
    """
    if p.is_zero:
        raise ZeroPolynomialError("chief part undefined for the zero polynomial")
    if not c.has_decomposition:
        raise ValueError("chief part requires an exact (r, Phi) decomposition")
    if end not in (END_PLUS, END_MINUS):
        raise ValueError(f'end must be "{END_PLUS}" or "{END_MINUS}"')

    groups: dict[tuple, dict] = {}
    for exp, coeff in p.terms.items():
        w = c.integer_weight(exp)
        groups.setdefault(w, {})[exp] = coeff

    keyed = sorted(
        ((sum(ri * wi for ri, wi in zip(c.r, w)), w) for w in groups),
        key=lambda kw: (kw[0],) + kw[1])
    best = keyed[-1] if end == END_PLUS else keyed[0]
    if len(keyed) > 1:
        runner = keyed[-2] if end == END_PLUS else keyed[1]
        if abs(best[0] - runner[0]) < _TIE_TOL:
            raise ChiefPartTieError(
                f"weight groups {best[1]} and {runner[1]} tie at "
                f"<r, w> = {best[0]!r}: r entries are not rationally independent")
    w = best[1]
    return w, LaurentPoly(p.nvars, groups[w], p.integer_certified)


def asymptote(v: DetFunction, tol: float = 1e-8) -> AsymptoteReport:
    return v.asymptote(tol)


@dataclass
class ConvexityReport:
    """Midpoint-convexity and slope-range audit of V on a geometric grid."""

    grid: list
    values: list
    violations: list = field(default_factory=list)
    slope_violations: list = field(default_factory=list)
    slope_min: float = 0.0
    slope_max: float = 0.0
    slope_bound: float | None = None
    zero_function: bool = False

    @property
    def slope_range(self) -> float:
        return self.slope_max - self.slope_min

    @property
    def passed(self) -> bool:
        return not self.violations and not self.slope_violations


def convexity_check(v: DetFunction, grid, tol: float = 1e-6,
                    eval_tol: float = 1e-8) -> ConvexityReport:
    """Check multiplicative convexity and the exponent bound on a grid.

    For every adjacent triple of the geometric grid, the midpoint must obey
    log V(mid) <= (log V(lo) + log V(hi)) / 2 + tol. The two-point log-log
    slopes must all fit in one window of width exp_bound + tol: the matrix
    exponent bound R caps deg_b, the total spread of slopes, not |slope|
    itself (V(t) = t from the 1x1 matrix [z] has constant slope 1 with
    R = 0). A constantly-zero function passes trivially (flagged).
    """
    grid = [float(t) for t in grid]
    if len(grid) < 3:
        raise ValueError("grid needs at least 3 points")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("grid must be strictly increasing")
    for a, m, b in zip(grid, grid[1:], grid[2:]):
        if abs(m * m - a * b) > _GRID_GEOMETRIC_RTOL * m * m:
            raise ValueError("grid must be geometric (t_mid = sqrt(lo * hi))")

    if v.is_zero:
        return ConvexityReport(grid, [0.0] * len(grid), zero_function=True)

    values = [v.eval(t, eval_tol) for t in grid]
    logs = [math.log(x) for x in values]
    logt = [math.log(t) for t in grid]

    report = ConvexityReport(grid, values, slope_bound=v.exp_bound)
    for i in range(len(grid) - 2):
        excess = logs[i + 1] - 0.5 * (logs[i] + logs[i + 2])
        if excess > tol:
            report.violations.append((grid[i], grid[i + 1], grid[i + 2], excess))

    lo_pair = hi_pair = None
    slope_min = math.inf
    slope_max = -math.inf
    for i in range(len(grid)):
        for j in range(i + 1, len(grid)):
            slope = (logs[j] - logs[i]) / (logt[j] - logt[i])
            if slope < slope_min:
                slope_min, lo_pair = slope, (grid[i], grid[j])
            if slope > slope_max:
                slope_max, hi_pair = slope, (grid[i], grid[j])
    report.slope_min = slope_min
    report.slope_max = slope_max
    if (v.exp_bound is not None
            and slope_max - slope_min > v.exp_bound + tol):
        report.slope_violations.append(
            (lo_pair, hi_pair, slope_max - slope_min))
    return report


@dataclass
class LipschitzReport:
    """Degrees along sigma + lambda * xi and the 2R(A, xi) modulus audit."""

    lambdas: list
    degrees: list
    bound_2r: float
    max_ratio: float = 0.0
    violations: list = field(default_factory=list)
    degenerate: bool = False

    @property
    def passed(self) -> bool:
        return self.degenerate or not self.violations


def lipschitz_degree_check(a: LaurentMatrix, base: CohomClass, xi: CohomClass,
                           steps: int, tol: float = 1e-8) -> LipschitzReport:
    """Sample deg_b along the segment and test the Lipschitz modulus.

    Degrees at sigma_lambda = base + lambda * xi may differ by at most
    2 * |lambda - mu| * R(A, xi) (+1e-9 slack). A constantly-zero
    determinant makes every degree undefined; that degenerate case is
    reported and the check skipped.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    bound = exponent_bound(a, xi)
    det = a.determinant()
    lambdas = [k / steps for k in range(steps + 1)]
    if det.is_zero:
        return LipschitzReport(lambdas, [], 2.0 * bound, degenerate=True)

    degrees = []
    for lam in lambdas:
        sigma = tuple(b + lam * x for b, x in zip(base.sigma, xi.sigma))
        fn = DetFunction(det, CohomClass(sigma))
        degrees.append(fn.asymptote(tol).deg_b)

    report = LipschitzReport(lambdas, degrees, 2.0 * bound)
    for i in range(len(lambdas)):
        for j in range(i + 1, len(lambdas)):
            gap = abs(degrees[j] - degrees[i])
            allowed = 2.0 * abs(lambdas[j] - lambdas[i]) * bound
            if bound > 0:
                report.max_ratio = max(report.max_ratio, gap / allowed)
            if gap > allowed + _TIE_TOL:
                report.violations.append((lambdas[i], lambdas[j], gap, allowed))
    return report
