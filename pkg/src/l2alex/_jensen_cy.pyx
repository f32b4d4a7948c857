# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernel: batched log-Mahler measures of one-variable slices.

Same contract as ``_jensen_py.batch_log_mahler``. Root extraction uses the
Aberth-Ehrlich simultaneous iteration with Newton-polygon initial radii,
which keeps the whole inner loop free of LAPACK calls and Python objects.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport log, sqrt, cos, sin, fabs, pow, M_PI
from libc.stdlib cimport malloc, free

cnp.import_array()

cdef double _LOG_TINY = -745.0  # log of smallest positive normal-ish double


cdef inline double _cabs2(double complex z) nogil:
    return z.real * z.real + z.imag * z.imag


cdef inline double _cabs(double complex z) nogil:
    return sqrt(_cabs2(z))


cdef int _aberth(double complex *c, int d, double complex *root) nogil:
    """All roots of c[0] + c[1] z + ... + c[d] z^d (c[0], c[d] != 0).

    Returns the number of iterations used, or -1 on non-convergence (roots
    still hold the best approximations found).
    """
    cdef int i, j, k, it, nhull, seg, cnt
    cdef double complex p, dp, zi, nwt, corr, s, den
    cdef double r, ang, off
    cdef int *hull = <int *> malloc((d + 1) * sizeof(int))
    cdef double *lm = <double *> malloc((d + 1) * sizeof(double))
    if hull == NULL or lm == NULL:
        if hull != NULL: free(hull)
        if lm != NULL: free(lm)
        return -1

    # Newton-polygon initial guesses: radii from the upper convex hull of
    # (k, log|c_k|); each hull segment contributes its slope's worth of
    # starting points on a circle.
    for k in range(d + 1):
        if _cabs2(c[k]) > 0.0:
            lm[k] = log(_cabs(c[k]))
        else:
            lm[k] = -1e300
    nhull = 0
    for k in range(d + 1):
        if lm[k] <= -1e299:
            continue
        while nhull >= 2 and (lm[k] - lm[hull[nhull - 2]]) * (hull[nhull - 1] - hull[nhull - 2]) >= \
                (lm[hull[nhull - 1]] - lm[hull[nhull - 2]]) * (k - hull[nhull - 2]):
            nhull -= 1
        hull[nhull] = k
        nhull += 1

    cnt = 0
    off = 0.7
    for seg in range(nhull - 1):
        i = hull[seg]
        j = hull[seg + 1]
        r = (lm[i] - lm[j]) / (j - i)
        if r < _LOG_TINY:
            r = _LOG_TINY
        elif r > -_LOG_TINY:
            r = -_LOG_TINY
        r = pow(2.718281828459045, r)
        for k in range(j - i):
            ang = 2.0 * M_PI * (k + 0.5) / (j - i) + off
            root[cnt] = r * cos(ang) + 1j * (r * sin(ang))
            cnt += 1
        off += 0.4
    free(hull)
    free(lm)

    cdef double tol = 1e-14
    cdef int done
    for it in range(120):
        done = 1
        for i in range(d):
            zi = root[i]
            # Horner for p and p'
            p = c[d]
            dp = 0
            for k in range(d - 1, -1, -1):
                dp = dp * zi + p
                p = p * zi + c[k]
            if _cabs2(p) == 0.0:
                continue
            if _cabs2(dp) == 0.0:
                root[i] = zi * (1.0 + 1e-8) + 1e-12
                done = 0
                continue
            nwt = p / dp
            s = 0
            for j in range(d):
                if j != i:
                    den = zi - root[j]
                    if _cabs2(den) == 0.0:
                        den = 1e-20
                    s = s + 1.0 / den
            den = 1.0 - nwt * s
            if _cabs2(den) == 0.0:
                corr = nwt
            else:
                corr = nwt / den
            root[i] = zi - corr
            if _cabs2(corr) > tol * tol * (1.0 + _cabs2(root[i])):
                done = 0
        if done:
            return it + 1
    return -1


cdef double _slice_log_mahler(double complex *c, int depth, double strip_tol,
                              double complex *roots, int *zero_flag) nogil:
    """log Mahler measure of c[0..depth-1] (ascending powers) via Jensen."""
    cdef int lo = 0, hi = depth - 1, d, i, status
    cdef double out, m0, m1, re, im
    cdef double complex disc, r1, r2
    zero_flag[0] = 0
    while lo < depth and _cabs(c[lo]) <= strip_tol:
        lo += 1
    if lo == depth:
        zero_flag[0] = 1
        return 0.0
    while _cabs(c[hi]) <= strip_tol:
        hi -= 1
    d = hi - lo
    if d == 0:
        return log(_cabs(c[lo]))
    if d == 1:
        m0 = _cabs(c[lo])
        m1 = _cabs(c[hi])
        return log(m0 if m0 > m1 else m1)
    if d == 2:
        disc = c[lo + 1] * c[lo + 1] - 4.0 * c[lo + 2] * c[lo]
        # complex square root
        m0 = _cabs(disc)
        re = sqrt((m0 + disc.real) * 0.5)
        im = sqrt((m0 - disc.real) * 0.5)
        if disc.imag < 0:
            im = -im
        disc = re + 1j * im
        r1 = (-c[lo + 1] + disc) / (2.0 * c[lo + 2])
        r2 = (-c[lo + 1] - disc) / (2.0 * c[lo + 2])
        out = log(_cabs(c[lo + 2]))
        m0 = _cabs2(r1)
        if m0 > 1.0:
            out += 0.5 * log(m0)
        m0 = _cabs2(r2)
        if m0 > 1.0:
            out += 0.5 * log(m0)
        return out
    status = _aberth(c + lo, d, roots)
    out = log(_cabs(c[hi]))
    for i in range(d):
        m0 = _cabs2(roots[i])
        if m0 > 1.0:
            out += 0.5 * log(m0)
    return out


def batch_log_mahler(cnp.ndarray[cnp.complex128_t, ndim=1] coefs,
                     cnp.ndarray[cnp.int64_t, ndim=1] inner,
                     cnp.ndarray[cnp.float64_t, ndim=2] phases,
                     double strip_tol):
    """See ``_jensen_py.batch_log_mahler`` for the contract."""
    cdef Py_ssize_t m = phases.shape[0]
    cdef Py_ssize_t nterms = phases.shape[1]
    cdef int depth = 0
    cdef Py_ssize_t t
    for t in range(nterms):
        if inner[t] + 1 > depth:
            depth = <int> inner[t] + 1

    cdef cnp.ndarray[cnp.float64_t, ndim=1] logm = np.zeros(m, dtype=np.float64)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] zmask = np.zeros(m, dtype=np.uint8)

    cdef double complex *slc = <double complex *> malloc(depth * sizeof(double complex))
    cdef double complex *roots = <double complex *> malloc(
        (depth + 1) * sizeof(double complex))
    if slc == NULL or roots == NULL:
        if slc != NULL: free(slc)
        if roots != NULL: free(roots)
        raise MemoryError()

    cdef Py_ssize_t i
    cdef int k, zf
    cdef double ph
    cdef double complex f
    try:
        with nogil:
            for i in range(m):
                for k in range(depth):
                    slc[k] = 0
                for t in range(nterms):
                    ph = phases[i, t]
                    f = cos(ph) + 1j * sin(ph)
                    slc[<int> inner[t]] = slc[<int> inner[t]] + coefs[t] * f
                logm[i] = _slice_log_mahler(slc, depth, strip_tol, roots, &zf)
                zmask[i] = <cnp.uint8_t> zf
    finally:
        free(slc)
        free(roots)
    return logm, zmask.view(np.bool_)
