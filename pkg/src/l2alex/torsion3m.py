"""L2-Alexander torsion functions assembled from presentation data.

A presentation (square integer matrix A, class sigma, max-pairs (a_i, b_i))
yields the torsion representative

    tau(t) = [ V(t) * prod_i max(t^{a_i}, t^{b_i})^{-1} ]^{1/index},

where V is the determinant function of (A, sigma). tau is defined up to a
monomial factor t^r; the optional symmetric normalization divides by
t^{(d_plus + d_minus)/2}.

Closed forms cover the classical families: fibered classes are 1 below
e^{-h} and t^x above e^{h} (h the monodromy entropy, x the Thurston norm),
with only the single value e^{Vol/6pi} at t = 1 known inside the gap; zero
simplicial volume gives max(1, t)^x everywhere; a zero class on a piece of
volume Vol gives the constant e^{Vol/6pi}. Gluing along tori multiplies the
pieces pointwise, adds degrees, and multiplies leading coefficients.

The triple-figure-eight landscape: three figure-eight knot complements glued
to a thrice-holed-sphere circle bundle. Classes live in the plane
phi_0 + phi_1 + phi_2 = 0, the Thurston norm is |phi_0| + |phi_1| + |phi_2|
(unit ball a regular hexagon), and the leading coefficient is
exp(delta * v3 / 3pi) with delta the number of zero coordinates.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .degree import AsymptoteReport, DetFunction, det_function
from .errors import ZeroPolynomialError
from .laurent import LaurentMatrix
from .twist import CohomClass

V3 = 1.0149416064096536            # volume of the regular ideal tetrahedron
FIGURE_EIGHT_VOLUME = 2.0 * V3
FIGURE_EIGHT_ENTROPY = math.log((3.0 + math.sqrt(5.0)) / 2.0)

_ZERO_SNAP = 1e-12


class _Unspecified:
    """Value of a fibered torsion inside [e^{-h}, e^{h}]: not determined."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "unspecified"


UNSPECIFIED = _Unspecified()


@dataclass(frozen=True)
class TorsionSpec:
    """Presentation data: matrix, class, max-pair values, index, label.

    ``metadata`` may record extra presentation structure (e.g. a fibered
    form "A0 + mu * diag-block" with its norm bookkeeping); no operation
    consumes it.
    """

    matrix: LaurentMatrix
    cohom: CohomClass
    pairs: tuple = ()
    index_divisor: int = 1
    label: str = ""
    metadata: dict | None = None

    def __post_init__(self):
        pairs = tuple((float(a), float(b)) for a, b in self.pairs)
        if any(not (math.isfinite(a) and math.isfinite(b)) for a, b in pairs):
            raise ValueError("pair values must be finite")
        object.__setattr__(self, "pairs", pairs)
        if int(self.index_divisor) != self.index_divisor or self.index_divisor < 1:
            raise ValueError("index_divisor must be a positive integer")


class TorsionFunction:
    """Interface: value(t) -> float or UNSPECIFIED; degree_report()."""

    def value(self, t: float, tol: float = 1e-8):
        raise NotImplementedError

    def degree_report(self, tol: float = 1e-8) -> AsymptoteReport:
        raise NotImplementedError

    @property
    def zero_function(self) -> bool:
        return False


class PresentationTorsion(TorsionFunction):
    def __init__(self, numerator: DetFunction, pairs, index_divisor: int = 1,
                 label: str = ""):
        self.numerator = numerator
        self.pairs = tuple((float(a), float(b)) for a, b in pairs)
        self.index_divisor = int(index_divisor)
        self.label = label

    @property
    def zero_function(self) -> bool:
        return self.numerator.is_zero

    def value(self, t: float, tol: float = 1e-8):
        if t <= 0:
            raise ValueError("t must be positive")
        if self.zero_function:
            return 0.0
        logv = self.numerator.log_eval(t, tol)
        lt = math.log(t)
        for a, b in self.pairs:
            logv -= max(a * lt, b * lt)
        return math.exp(logv / self.index_divisor)

    def degree_report(self, tol: float = 1e-8) -> AsymptoteReport:
        if self.zero_function:
            raise ZeroPolynomialError("zero torsion function has no degree")
        base = self.numerator.asymptote(tol)
        d_plus = base.d_plus - sum(max(a, b) for a, b in self.pairs)
        d_minus = base.d_minus - sum(min(a, b) for a, b in self.pairs)
        k = self.index_divisor
        return AsymptoteReport(d_plus / k, d_minus / k,
                               base.C_plus ** (1.0 / k),
                               base.C_minus ** (1.0 / k), base.method)

    def symmetric_normalization_exponent(self, tol: float = 1e-8) -> float:
        """r with tau(t) / t^r the representative symmetric under t -> 1/t."""
        rep = self.degree_report(tol)
        return 0.5 * (rep.d_plus + rep.d_minus)

    def symmetric_value(self, t: float, tol: float = 1e-8) -> float:
        """The symmetric representative: tau(t) / t^r (dotted equality)."""
        r = self.symmetric_normalization_exponent(tol)
        return self.value(t, tol) * t ** (-r)


class FiberedTorsion(TorsionFunction):
    """Fibered class: 1 on (0, e^{-h}), t^x on (e^{h}, inf).

    Values inside [e^{-h}, e^{h}] are not specified by the closed form; only
    t = 1 is known (e^{Vol/6pi}) when the volume is supplied.
    """

    def __init__(self, entropy: float, norm: float, volume: float | None = None):
        if entropy < 0 or norm < 0:
            raise ValueError("entropy and norm must be nonnegative")
        self.entropy = float(entropy)
        self.norm = float(norm)
        self.volume = None if volume is None else float(volume)

    def value(self, t: float, tol: float = 1e-8):
        if t <= 0:
            raise ValueError("t must be positive")
        if t < math.exp(-self.entropy):
            return 1.0
        if t > math.exp(self.entropy):
            return t ** self.norm
        if t == 1.0 and self.volume is not None:
            return math.exp(self.volume / (6.0 * math.pi))
        return UNSPECIFIED

    def degree_report(self, tol: float = 1e-8) -> AsymptoteReport:
        return AsymptoteReport(self.norm, 0.0, 1.0, 1.0, "closed-form")


class GraphTorsion(TorsionFunction):
    """Zero simplicial volume: max(1, t)^x on all of (0, inf)."""

    def __init__(self, norm: float):
        if norm < 0:
            raise ValueError("norm must be nonnegative")
        self.norm = float(norm)

    def value(self, t: float, tol: float = 1e-8):
        if t <= 0:
            raise ValueError("t must be positive")
        return max(1.0, t) ** self.norm

    def degree_report(self, tol: float = 1e-8) -> AsymptoteReport:
        return AsymptoteReport(self.norm, 0.0, 1.0, 1.0, "closed-form")


class ConstantTorsion(TorsionFunction):
    """Zero class on a piece of positive volume: constant e^{Vol/6pi}."""

    def __init__(self, value: float):
        if value <= 0:
            raise ValueError("constant torsion value must be positive")
        self.constant = float(value)

    def value(self, t: float, tol: float = 1e-8):
        if t <= 0:
            raise ValueError("t must be positive")
        return self.constant

    def degree_report(self, tol: float = 1e-8) -> AsymptoteReport:
        return AsymptoteReport(0.0, 0.0, self.constant, self.constant,
                               "closed-form")


class ProductTorsion(TorsionFunction):
    """Pointwise product of pieces glued along torsion-free tori."""

    def __init__(self, pieces):
        pieces = tuple(pieces)
        if not pieces:
            raise ValueError("need at least one piece")
        self.pieces = pieces

    @property
    def zero_function(self) -> bool:
        return any(p.zero_function for p in self.pieces)

    def value(self, t: float, tol: float = 1e-8):
        out = 1.0
        for piece in self.pieces:
            val = piece.value(t, tol)
            if val is UNSPECIFIED:
                return UNSPECIFIED
            out *= val
        return out

    def degree_report(self, tol: float = 1e-8) -> AsymptoteReport:
        reports = [p.degree_report(tol) for p in self.pieces]
        method = ("closed-form"
                  if all(r.method == "closed-form" for r in reports)
                  else "mixed")
        return AsymptoteReport(
            sum(r.d_plus for r in reports), sum(r.d_minus for r in reports),
            math.prod(r.C_plus for r in reports),
            math.prod(r.C_minus for r in reports), method)


def torsion_from_presentation(spec: TorsionSpec) -> PresentationTorsion:
    """tau(t) = [V(t) * prod max(t^a, t^b)^{-1}]^{1/index}.

    A constantly-zero determinant yields the zero torsion function (the
    conventional value 0 everywhere), flagged via ``zero_function``.
    """
    numerator = det_function(spec.matrix, spec.cohom, index_divisor=1)
    return PresentationTorsion(numerator, spec.pairs, spec.index_divisor,
                               spec.label)


def fibered_torsion(entropy: float, norm: float, t: float):
    """Fibered closed form at one point: 1, t^norm, or UNSPECIFIED."""
    return FiberedTorsion(entropy, norm).value(t)


def graph_torsion(norm: float, t: float) -> float:
    return GraphTorsion(norm).value(t)


def glue(pieces) -> ProductTorsion:
    return ProductTorsion(pieces)


def torsion_degree(tau: TorsionFunction, tol: float = 1e-8) -> AsymptoteReport:
    if tau.zero_function:
        raise ZeroPolynomialError("zero torsion function has no degree")
    return tau.degree_report(tol)


@dataclass
class SymmetryReport:
    """Affine fit of log tau - log tau_neg against log t."""

    slope: float
    intercept: float
    max_residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tol


def symmetry_check(tau: TorsionFunction, tau_neg: TorsionFunction, grid,
                   tol: float = 1e-9, eval_tol: float = 1e-10) -> SymmetryReport:
    """Check tau and tau_neg agree up to a monomial factor t^r on the grid.

    Fits log tau(t) - log tau_neg(t) = r log t + beta by least squares and
    reports the fitted r, the intercept, and the largest residual.
    """
    if tau.zero_function or tau_neg.zero_function:
        raise ZeroPolynomialError("symmetry check undefined for zero functions")
    xs, ys = [], []
    for t in grid:
        va = tau.value(t, eval_tol)
        vb = tau_neg.value(t, eval_tol)
        if va is UNSPECIFIED or vb is UNSPECIFIED:
            continue
        xs.append(math.log(t))
        ys.append(math.log(va) - math.log(vb))
    if len(xs) < 2:
        raise ValueError("grid leaves fewer than 2 evaluable points")
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    slope = sxy / sxx if sxx > 0 else 0.0
    intercept = my - slope * mx
    residual = max(abs(y - slope * x - intercept) for x, y in zip(xs, ys))
    return SymmetryReport(slope, intercept, residual, tol)


# -- the triple-figure-eight landscape --------------------------------------

HEXAGON_VERTICES = (
    (0.5, -0.5, 0.0), (-0.5, 0.5, 0.0),
    (0.0, 0.5, -0.5), (0.0, -0.5, 0.5),
    (-0.5, 0.0, 0.5), (0.5, 0.0, -0.5),
)


def _snap_zeros(phi):
    out = []
    for x in phi:
        if x != 0.0 and abs(x) <= _ZERO_SNAP:
            warnings.warn(f"coordinate {x!r} within {_ZERO_SNAP} of 0 "
                          f"counts as an exact zero", stacklevel=3)
            out.append(0.0)
        else:
            out.append(float(x))
    return tuple(out)


def _check_plane(phi):
    if len(phi) != 3:
        raise ValueError("expected a triple")
    if abs(phi[0] + phi[1] + phi[2]) > _ZERO_SNAP:
        raise ValueError(
            f"coordinates must sum to 0 (got {phi[0] + phi[1] + phi[2]!r})")


def triple_figure_eight(phi) -> dict:
    """Norm, zero count, and leading coefficient at a class of the landscape.

    norm = |phi_0| + |phi_1| + |phi_2|; delta counts exact zero coordinates;
    leading = exp(delta * v3 / 3pi). vol_check is exp(Vol/6pi) for the total
    volume Vol = 6 v3 (three pieces of volume 2 v3), the value of the glued
    torsion at t = 1 and the upper bound for every leading coefficient.
    """
    phi = _snap_zeros(phi)
    _check_plane(phi)
    delta = sum(1 for x in phi if x == 0.0)
    return {
        "norm": abs(phi[0]) + abs(phi[1]) + abs(phi[2]),
        "delta": delta,
        "leading": math.exp(delta * V3 / (3.0 * math.pi)),
        "vol_check": math.exp(6.0 * V3 / (6.0 * math.pi)),
    }


def triple_figure_eight_torsion(phi) -> ProductTorsion:
    """The glued torsion: fibered pieces for phi_i != 0, constants for 0.

    A nonzero restriction c times the fiber class behaves as a fibered class
    with entropy h/|c| and norm |c| (rescaling the parameter t -> t^c); the
    zero restriction gives the constant e^{Vol/6pi} piece.
    """
    phi = _snap_zeros(phi)
    _check_plane(phi)
    pieces = []
    for x in phi:
        if x == 0.0:
            pieces.append(ConstantTorsion(
                math.exp(FIGURE_EIGHT_VOLUME / (6.0 * math.pi))))
        else:
            pieces.append(FiberedTorsion(FIGURE_EIGHT_ENTROPY / abs(x),
                                         abs(x), FIGURE_EIGHT_VOLUME))
    return ProductTorsion(pieces)


def hexagon_norm_check(phi) -> bool:
    """Consistency of the norm with the hexagonal unit ball.

    True iff (norm <= 1) matches membership of phi in the convex hull of the
    six vertices inside the plane phi_0 + phi_1 + phi_2 = 0. Membership is
    computed geometrically (cross products around the hull), independent of
    the norm formula.
    """
    phi = _snap_zeros(phi)
    _check_plane(phi)
    point = (phi[0], phi[1])
    verts = sorted(((v[0], v[1]) for v in HEXAGON_VERTICES),
                   key=lambda v: math.atan2(v[1], v[0]))
    inside = True
    for k in range(len(verts)):
        ax, ay = verts[k]
        bx, by = verts[(k + 1) % len(verts)]
        cross = (bx - ax) * (point[1] - ay) - (by - ay) * (point[0] - ax)
        if cross < -_ZERO_SNAP:
            inside = False
            break
    norm_le_1 = (abs(phi[0]) + abs(phi[1]) + abs(phi[2])) <= 1.0 + _ZERO_SNAP
    return inside == norm_le_1
