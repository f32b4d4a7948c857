"""Cohomology classes on a free-abelian target and the determinant twist.

A real class is the covector sigma with sigma_j = phi(z_j). The twist at
parameter t > 0 rescales the monomial a * z^v to a * t^<sigma, v> * z^v; it
is a ring homomorphism in the matrix algebra and anti-commutes with the
adjoint: twisting at t then taking the involution equals taking the
involution and twisting at 1/t.

Asymptote extraction needs an exact decomposition sigma = sum_i r_i * Phi_i
with positive reals r_1..r_d (the user asserts their Q-linear independence)
and integer covectors Phi_i. When sigma is rational the library builds the
d = 1 decomposition itself via continued fractions (denominators <= 10^6);
irrational classes must bring their own, or degree analysis falls back to
numeric fitting.

All twisted coefficient scales are produced by one shared routine
(``variable_scales``) built from powers of the per-basis values t^{r_i}, so
algebraic identities between twists (scaling sigma vs. powering t) hold to
the last bit wherever the underlying float powers coincide.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ZeroMatrixError
from .laurent import LaurentMatrix, LaurentPoly

_MAX_DENOMINATOR = 10 ** 6
_RATIONAL_ABS_TOL = 1e-12
_DECOMP_REL_TOL = 1e-12


def powint(s: float, m: int) -> float:
    """s^m for integer m, with negative powers routed through 1/s.

    Routing m < 0 through (1/s)^{-m} makes the twist-at-1/t and the
    negated-class twist produce bitwise-identical factors.
    """
    if m >= 0:
        return s ** m
    return (1.0 / s) ** (-m)


class CohomClass:
    """Real covector on the l generators plus optional exact decomposition."""

    __slots__ = ("sigma", "r", "phi")

    def __init__(self, sigma: Sequence[float],
                 r: Sequence[float] | None = None,
                 phi: Sequence[Sequence[int]] | None = None,
                 auto_decompose: bool = True):
        sigma = tuple(float(x) for x in sigma)
        if (r is None) != (phi is None):
            raise ValueError("r and phi must be given together")
        if r is not None:
            r = tuple(float(x) for x in r)
            phi = tuple(tuple(int(e) for e in row) for row in phi)
            if not r or any(x <= 0 for x in r):
                raise ValueError("r entries must be positive")
            if len(phi) != len(r):
                raise ValueError("phi must have one row per r entry")
            if any(len(row) != len(sigma) for row in phi):
                raise ValueError("phi rows must have length len(sigma)")
            for j, s in enumerate(sigma):
                recon = sum(r[i] * phi[i][j] for i in range(len(r)))
                if abs(recon - s) > _DECOMP_REL_TOL * max(1.0, abs(s)):
                    raise ValueError(
                        f"decomposition mismatch at component {j}: "
                        f"{recon} != {s}")
        elif auto_decompose:
            built = _rational_decomposition(sigma)
            if built is not None:
                r, phi = built
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "phi", phi)

    def __setattr__(self, name, value):
        raise AttributeError("CohomClass is immutable")

    # -- structure ---------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.sigma)

    @property
    def has_decomposition(self) -> bool:
        return self.r is not None

    @property
    def d(self) -> int:
        return len(self.r) if self.r is not None else 0

    def __eq__(self, other):
        return (isinstance(other, CohomClass)
                and self.sigma == other.sigma
                and self.r == other.r and self.phi == other.phi)

    def __hash__(self):
        return hash((self.sigma, self.r, self.phi))

    def __repr__(self):
        dec = f", d={self.d}" if self.has_decomposition else ", undecomposed"
        return f"CohomClass(sigma={self.sigma}{dec})"

    # -- algebra -----------------------------------------------------------

    def weight(self, exp: Sequence[int]) -> float:
        """<sigma, v> for an exponent vector v."""
        return sum(s * e for s, e in zip(self.sigma, exp))

    def integer_weight(self, exp: Sequence[int]) -> tuple:
        """Phi v in Z^d (requires the decomposition)."""
        if not self.has_decomposition:
            raise ValueError("class has no exact decomposition")
        return tuple(sum(row[j] * exp[j] for j in range(len(exp)))
                     for row in self.phi)

    def scaled(self, c: float) -> "CohomClass":
        """The class c * sigma, with the decomposition carried along."""
        c = float(c)
        sigma = tuple(c * s for s in self.sigma)
        if not self.has_decomposition or c == 0.0:
            return CohomClass(sigma)
        if c > 0:
            return CohomClass(sigma, tuple(c * x for x in self.r), self.phi)
        return CohomClass(sigma, tuple(-c * x for x in self.r),
                          tuple(tuple(-e for e in row) for row in self.phi))

    def negated(self) -> "CohomClass":
        return self.scaled(-1.0)

    def variable_scales(self, t: float) -> tuple:
        """Per-variable scale s_j with twist factor prod_j s_j^{v_j}.

        With a decomposition, s_j = prod_i (t^{r_i})^{Phi_ij}; otherwise
        s_j = t^{sigma_j} directly.
        """
        if t <= 0:
            raise ValueError("twist parameter t must be positive")
        if self.has_decomposition:
            return self.variable_scales_multi(tuple(t ** ri for ri in self.r))
        return tuple(t ** s for s in self.sigma)

    def variable_scales_multi(self, tvec: Sequence[float]) -> tuple:
        if not self.has_decomposition:
            raise ValueError("multivariable twist needs a decomposition")
        tvec = tuple(float(x) for x in tvec)
        if len(tvec) != self.d:
            raise ValueError(f"expected {self.d} parameters, got {len(tvec)}")
        if any(x <= 0 for x in tvec):
            raise ValueError("twist parameters must be positive")
        scales = []
        for j in range(self.nvars):
            s = 1.0
            for i in range(self.d):
                s *= powint(tvec[i], self.phi[i][j])
            scales.append(s)
        return tuple(scales)

    # -- serialization -----------------------------------------------------

    def to_obj(self) -> dict:
        obj = {"sigma": list(self.sigma)}
        if self.has_decomposition:
            obj["r"] = list(self.r)
            obj["phi"] = [list(row) for row in self.phi]
        return obj

    @classmethod
    def from_obj(cls, obj: dict) -> "CohomClass":
        return cls(obj["sigma"], obj.get("r"), obj.get("phi"))


def _rational_decomposition(sigma):
    """d = 1 decomposition (1/lcm, integer row) for rational sigma, else None."""
    fracs = []
    for x in sigma:
        f = Fraction(x).limit_denominator(_MAX_DENOMINATOR)
        if abs(float(f) - x) > _RATIONAL_ABS_TOL * max(1.0, abs(x)):
            return None
        fracs.append(f)
    lcm = 1
    for f in fracs:
        lcm = math.lcm(lcm, f.denominator)
    row = tuple(int(f * lcm) for f in fracs)
    return (1.0 / lcm,), (row,)


def _twist_terms(p: LaurentPoly, scales: Sequence[float]) -> dict:
    out = {}
    for exp, c in p.terms.items():
        factor = 1.0
        for s, e in zip(scales, exp):
            factor *= powint(s, e)
        out[exp] = c * factor
    return out


def twist_poly(p: LaurentPoly, c: CohomClass, t: float) -> LaurentPoly:
    """Scale each monomial a * z^v by t^{<sigma, v>} (exponents unchanged)."""
    if t <= 0:
        raise ValueError("twist parameter t must be positive")
    if p.nvars != c.nvars:
        raise ValueError(
            f"polynomial has {p.nvars} variables, class has {c.nvars}")
    certified = p.integer_certified and t == 1.0
    return LaurentPoly(p.nvars, _twist_terms(p, c.variable_scales(t)), certified)


def twist_poly_multi(p: LaurentPoly, c: CohomClass,
                     tvec: Sequence[float]) -> LaurentPoly:
    """Multiparameter twist: a * z^v scaled by prod_i t_i^{(Phi v)_i}.

    At tvec = (t^{r_1}, ..., t^{r_d}) this reproduces twist_poly(p, c, t)
    exactly (twist_poly routes through the same factors).
    """
    if p.nvars != c.nvars:
        raise ValueError(
            f"polynomial has {p.nvars} variables, class has {c.nvars}")
    scales = c.variable_scales_multi(tvec)
    certified = p.integer_certified and all(x == 1.0 for x in tvec)
    return LaurentPoly(p.nvars, _twist_terms(p, scales), certified)


def twist_matrix(a: LaurentMatrix, c: CohomClass, t: float) -> LaurentMatrix:
    rows = [[twist_poly(p, c, t) for p in row] for row in a.rows]
    return LaurentMatrix(rows, nvars=a.nvars) if rows else a


def support_weight_range(support: Iterable[tuple], c: CohomClass):
    weights = [c.weight(v) for v in support]
    if not weights:
        return None
    return min(weights), max(weights)


def exponent_bound(a: LaurentMatrix, c: CohomClass) -> float:
    """R(A, phi) = p * (max - min) of <sigma, v> over the monomial support.

    Caps the magnitude of every log-log slope of the determinant function.
    Undefined (raises) for the zero matrix, whose determinant function is
    constantly zero.
    """
    if a.nvars != c.nvars:
        raise ValueError(f"matrix has {a.nvars} variables, class has {c.nvars}")
    rng = support_weight_range(a.support_union(), c)
    if rng is None:
        raise ZeroMatrixError(
            "exponent bound undefined for the zero matrix "
            "(determinant function is constantly zero)")
    return a.size * (rng[1] - rng[0])


def index_rescale(v, index: int):
    """Determinant function of a finite-index restriction: V^(1/index).

    Pointwise 1/index power; asymptote exponents divide by index and leading
    coefficients take 1/index powers.
    """
    if int(index) != index or index < 1:
        raise ValueError("index must be a positive integer")
    return v.rescaled(int(index))
