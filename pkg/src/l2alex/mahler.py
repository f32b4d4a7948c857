"""Mahler measures of Laurent polynomials.

The Mahler measure M(p) is exp of the mean of log|p| over the unit torus.
One variable is exact via Jensen's formula: factor p = D z^n prod (z - b_i)
and M(p) = |D| prod max(1, |b_i|). The scaled variant M(p(cz)) has the
closed form |D| c^n prod max(c, |b_i|), a piecewise monomial function of c
whose breakpoints sit at the root moduli; that is what makes one-variable
determinant functions exactly computable.

Several variables reduce to nested one-variable problems: the variable of
largest exponent spread is integrated exactly by Jensen on each slice (this
absorbs the log singularities of log|p| on its zero set), and the remaining
angles are integrated by adaptive Gauss-Legendre panels (see ``quadrature``).
M(0) is 0 by convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import (DegenerateSliceError, QuadratureBudgetError,
                     ZeroPolynomialError)
from .laurent import LaurentPoly
from .quadrature import DEFAULT_NODE_BUDGET, NodeBudget, adaptive_circle_mean

_STRIP_REL = 1e-13
_RECONSTRUCTION_RTOL = 1e-9


@dataclass(frozen=True)
class RootData:
    """Factorization p = leading * z^power * prod (z - roots[i])."""

    leading: complex
    power: int
    roots: tuple

    @property
    def degree(self) -> int:
        return len(self.roots)


@dataclass(frozen=True)
class MonomialPiece:
    """One monomial piece coeff * t^exponent on the interval (t_lo, t_hi]."""

    t_lo: float
    t_hi: float
    coeff: float
    exponent: float

    def value(self, t: float) -> float:
        return self.coeff * t ** self.exponent


@dataclass(frozen=True)
class MahlerResult:
    measure: float
    log_measure: float
    achieved_tol: float


def _reconstruction_error(lead, rts, coeffs):
    """Relative mismatch between coeffs and lead * prod (z - b).

    Low degrees compare coefficients from direct expansion. Beyond that the
    sequential convolution itself becomes the unstable step (intermediate
    coefficients of partial products can dwarf the final ones), so the
    factorization is compared by values on the circle that dominates every
    coefficient (Cauchy bound radius).
    """
    scale = float(np.max(np.abs(coeffs)))
    d = len(coeffs) - 1
    if d <= 16:
        recon = lead * np.ones(1, dtype=np.complex128)
        for b in rts:
            recon = np.convolve(recon,
                                np.array([-b, 1.0], dtype=np.complex128))
        return float(np.max(np.abs(recon - coeffs))) / scale
    radius = max(1.0, float(np.max(np.abs(rts))) if len(rts) else 1.0)
    angles = 2.0 * np.pi * (np.arange(2 * d + 3) + 0.39) / (2 * d + 3)
    zs = radius * np.exp(1j * angles)
    direct = np.polyval(coeffs[::-1], zs)
    factored = np.full_like(zs, lead)
    for b in rts:
        factored *= zs - b
    denom = float(np.max(np.abs(direct)))
    if denom == 0.0:
        return math.inf
    return float(np.max(np.abs(direct - factored))) / denom


def _univariate_coeffs(q: LaurentPoly):
    """(n, ascending coefficient array) with c[0] != 0, or None if q = 0."""
    if q.nvars != 1:
        raise ValueError(f"expected a one-variable polynomial, got {q.nvars}")
    if q.is_zero:
        return None
    exps = sorted(e[0] for e in q.terms)
    n, top = exps[0], exps[-1]
    coeffs = np.zeros(top - n + 1, dtype=np.complex128)
    for (e,), c in q.terms.items():
        coeffs[e - n] = c
    return n, coeffs


def roots(q: LaurentPoly) -> RootData:
    """Factor a nonzero one-variable Laurent polynomial.

    Strips the monomial factor z^n, then finds all roots of the residual
    polynomial from companion-matrix eigenvalues with one guarded Newton
    polish pass. The factorization is verified by reconstructing the
    coefficients (1e-9 relative).
    """
    parsed = _univariate_coeffs(q)
    if parsed is None:
        raise ZeroPolynomialError("the zero polynomial has no root data")
    n, coeffs = parsed
    d = len(coeffs) - 1
    lead = complex(coeffs[-1])
    if d == 0:
        return RootData(lead, n, ())

    monic = coeffs / lead
    comp = np.zeros((d, d), dtype=np.complex128)
    if d > 1:
        comp[np.arange(1, d), np.arange(d - 1)] = 1.0
    comp[:, -1] = -monic[:-1]
    rts = np.linalg.eigvals(comp)

    deriv = coeffs[1:] * np.arange(1, d + 1)
    pv = np.polyval(coeffs[::-1], rts)
    dv = np.polyval(deriv[::-1], rts)
    ok = np.abs(dv) > 0
    step = np.zeros_like(rts)
    step[ok] = pv[ok] / dv[ok]
    polished = np.where(
        np.abs(np.polyval(coeffs[::-1], rts - step)) <= np.abs(pv),
        rts - step, rts)

    # Newton improves simple roots but skews root clusters (multiple roots),
    # whose raw eigenvalues already reconstruct well; keep whichever
    # candidate set reproduces the polynomial better.
    err_raw = _reconstruction_error(lead, rts, coeffs)
    err_pol = _reconstruction_error(lead, polished, coeffs)
    if err_pol <= err_raw:
        rts, err = polished, err_pol
    else:
        err = err_raw
    if err > _RECONSTRUCTION_RTOL:
        raise ArithmeticError(
            "root finding failed the reconstruction check; "
            "the input polynomial is too ill-conditioned")
    order = np.lexsort((rts.imag, rts.real))
    return RootData(lead, n, tuple(complex(b) for b in rts[order]))


def mahler_1v(q: LaurentPoly) -> float:
    """Jensen's formula: M(q) = |D| prod max(1, |b_i|); M(0) = 0."""
    if q.is_zero:
        return 0.0
    rd = roots(q)
    out = abs(rd.leading)
    for b in rd.roots:
        out *= max(1.0, abs(b))
    return out


def scaled_mahler_from_roots(rd: RootData, c: float) -> float:
    out = abs(rd.leading) * c ** rd.power
    for b in rd.roots:
        out *= max(c, abs(b))
    return out


def log_scaled_mahler_from_roots(rd: RootData, c: float) -> float:
    """log of the scaled measure, safe for extreme c."""
    out = math.log(abs(rd.leading)) + rd.power * math.log(c)
    for b in rd.roots:
        out += math.log(max(c, abs(b)))
    return out


def scaled_mahler_1v(p: LaurentPoly, c: float) -> float:
    """M(p(c z)) = |D| c^n prod max(c, |b_i|), evaluated in closed form."""
    if p.is_zero:
        raise ZeroPolynomialError("scaled measure undefined for the zero polynomial")
    if c <= 0:
        raise ValueError("scale must be positive")
    return scaled_mahler_from_roots(roots(p), c)


def monomial_profile(p: LaurentPoly, sigma1: float) -> list:
    """The function t -> M(p(t^sigma1 z)) as an exact list of monomial pieces.

    Breakpoints sit at |b_i|^(1/sigma1); exponents are nondecreasing across
    pieces (the profile is multiplicatively convex). sigma1 = 0 collapses to
    the single constant piece M(p).
    """
    if p.is_zero:
        raise ZeroPolynomialError("profile undefined for the zero polynomial")
    rd = roots(p)
    if sigma1 == 0:
        return [MonomialPiece(0.0, math.inf, mahler_1v(p), 0.0)]

    moduli = sorted(abs(b) for b in rd.roots)
    absd = abs(rd.leading)
    pieces = []
    for k in range(len(moduli) + 1):
        s_lo = moduli[k - 1] if k > 0 else 0.0
        s_hi = moduli[k] if k < len(moduli) else math.inf
        if s_lo == s_hi:
            continue
        coeff = absd
        for b in moduli[k:]:
            coeff *= b
        exponent = sigma1 * (rd.power + k)
        if sigma1 > 0:
            t_lo = s_lo ** (1.0 / sigma1) if s_lo > 0 else 0.0
            t_hi = s_hi ** (1.0 / sigma1) if s_hi < math.inf else math.inf
        else:
            t_lo = s_hi ** (1.0 / sigma1) if s_hi < math.inf else 0.0
            t_hi = s_lo ** (1.0 / sigma1) if s_lo > 0 else math.inf
        pieces.append(MonomialPiece(t_lo, t_hi, coeff, exponent))
    pieces.sort(key=lambda piece: piece.t_lo)
    return pieces


def profile_value(pieces: list, t: float) -> float:
    if t <= 0:
        raise ValueError("profiles are defined on positive reals")
    for piece in pieces:
        if t <= piece.t_hi:
            return piece.value(t)
    return pieces[-1].value(t)


def _project_support(p: LaurentPoly):
    """Drop variables of zero exponent spread (they do not affect M)."""
    live = [j for j in range(p.nvars) if p.spread(j) > 0]
    if len(live) == p.nvars:
        return p, live
    terms = {}
    for exp, c in p.terms.items():
        key = tuple(exp[j] for j in live)
        terms[key] = terms.get(key, 0j) + c
    return LaurentPoly(len(live), terms, p.integer_certified), live


def mahler_mv(p: LaurentPoly, tol: float = 1e-8,
              max_evals: int = DEFAULT_NODE_BUDGET) -> float:
    """Mahler measure of a Laurent polynomial in any number of variables."""
    return mahler_mv_report(p, tol, max_evals).measure


def mahler_mv_report(p: LaurentPoly, tol: float = 1e-8,
                     max_evals: int = DEFAULT_NODE_BUDGET) -> MahlerResult:
    """Same as mahler_mv, also reporting the achieved quadrature tolerance."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    if p.is_zero:
        return MahlerResult(0.0, -math.inf, 0.0)
    log_measure, achieved = log_mahler_mv(p, tol, NodeBudget(max_evals))
    return MahlerResult(math.exp(log_measure), log_measure, achieved)


def log_mahler_mv(p: LaurentPoly, tol: float, budget: NodeBudget):
    """(log M(p), achieved tolerance) for nonzero p."""
    reduced, _ = _project_support(p)
    if reduced.is_zero:
        # total cancellation while merging collapsed variables
        return -math.inf, 0.0
    if len(reduced.terms) == 1:
        c = next(iter(reduced.terms.values()))
        return math.log(abs(c)), 0.0
    if reduced.nvars == 1:
        return math.log(mahler_1v(reduced)), 0.0

    exps = np.array(sorted(reduced.terms), dtype=np.int64)
    coefs = np.array([reduced.terms[tuple(e)] for e in exps],
                     dtype=np.complex128)
    scale = float(np.max(np.abs(coefs)))
    coefs = coefs / scale
    spreads = exps.max(axis=0) - exps.min(axis=0)
    inner_var = int(np.argmax(spreads))
    inner = exps[:, inner_var] - exps[:, inner_var].min()
    outer_vars = [j for j in range(reduced.nvars) if j != inner_var]

    try:
        mean, achieved = _nested_log_mean(
            coefs, inner, exps[:, outer_vars].astype(np.float64),
            tol, budget)
    except QuadratureBudgetError as exc:
        raise QuadratureBudgetError(
            str(exc),
            math.exp(exc.best_estimate + math.log(scale))
            if math.isfinite(exc.best_estimate) else exc.best_estimate,
            exc.achieved_tol) from None
    return mean + math.log(scale), achieved


def _nested_log_mean(coefs, inner, outer_exps, tol, budget):
    """Mean over the outer torus of the slice log-measures.

    The innermost (Jensen) variable is already separated out; outer angles
    are peeled one dimension at a time. Only the final dimension is batched
    through the kernel; higher dimensions recurse.
    """
    dims = outer_exps.shape[1]
    if dims == 1:
        col = np.ascontiguousarray(outer_exps[:, 0])

        def f(thetas):
            phases = thetas[:, None] * col[None, :]
            logm, zero_mask = kernels.batch_log_mahler(
                coefs, inner, phases, _STRIP_REL)
            if zero_mask.any():
                raise DegenerateSliceError(
                    "a one-variable slice of a nonzero polynomial vanished "
                    "at a quadrature node")
            return logm

        return adaptive_circle_mean(f, tol, budget)[:2]

    level_tol = tol / dims
    rest = np.ascontiguousarray(outer_exps[:, 1:])
    first = outer_exps[:, 0]
    achieved_inner = 0.0

    def f(thetas):
        nonlocal achieved_inner
        out = np.empty_like(thetas)
        for i, th in enumerate(thetas):
            folded = coefs * np.exp(1j * th * first)
            val, ach = _nested_log_mean(folded, inner, rest,
                                        level_tol * (dims - 1), budget)
            achieved_inner = max(achieved_inner, ach)
            out[i] = val
        return out

    mean, achieved, _ = adaptive_circle_mean(f, level_tol, budget)
    return mean, achieved + achieved_inner
