# cython: language_level=3
"""Compiled O(n^2) pair kernels.

Every reduction walks pairs ``i < j`` in row-major order and accumulates with
Neumaier compensation, so results are deterministic for a given input.
Signatures mirror :mod:`diamflow._pykernels` exactly.
"""
import numpy as np

from libc.math cimport fabs, hypot, log, sqrt, INFINITY, NAN


cdef inline void _nadd(double* s, double* comp, double x) noexcept nogil:
    cdef double t = s[0] + x
    if fabs(s[0]) >= fabs(x):
        comp[0] += (s[0] - t) + x
    else:
        comp[0] += (x - t) + s[0]
    s[0] = t


def pair_log_sum(const double[::1] re, const double[::1] im,
                 Py_ssize_t start=0, Py_ssize_t stop=-1):
    """Sum of ln|z_i - z_j| over rows ``start <= i < stop`` and ``j > i``.

    Returns ``-inf`` if two points coincide.
    """
    cdef Py_ssize_t n = re.shape[0]
    cdef Py_ssize_t i, j
    cdef double s = 0.0, comp = 0.0, d
    cdef bint degenerate = False
    if stop < 0 or stop > n:
        stop = n
    with nogil:
        for i in range(start, stop):
            for j in range(i + 1, n):
                d = hypot(re[i] - re[j], im[i] - im[j])
                if d == 0.0:
                    degenerate = True
                    break
                _nadd(&s, &comp, log(d))
            if degenerate:
                break
    if degenerate:
        return -INFINITY
    return s + comp


def max_pair_dist2(const double[::1] re, const double[::1] im,
                   bint skip_antipodal=False):
    """Largest squared distance and the pair attaining it (first in scan order).

    With ``skip_antipodal`` the index pairs ``(k, k + n/2)`` are ignored.
    """
    cdef Py_ssize_t n = re.shape[0]
    cdef Py_ssize_t h = n // 2
    cdef Py_ssize_t i, j, bi = -1, bj = -1
    cdef double best = -1.0, dx, dy, d2
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                if skip_antipodal and j == i + h:
                    continue
                dx = re[i] - re[j]
                dy = im[i] - im[j]
                d2 = dx * dx + dy * dy
                if d2 > best:
                    best = d2
                    bi = i
                    bj = j
    return best, bi, bj


def any_pair_exceeds(const double[::1] re, const double[::1] im,
                     double limit2, bint skip_antipodal=False):
    """True as soon as some squared pair distance is strictly above ``limit2``."""
    cdef Py_ssize_t n = re.shape[0]
    cdef Py_ssize_t h = n // 2
    cdef Py_ssize_t i, j
    cdef double dx, dy
    cdef bint hit = False
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                if skip_antipodal and j == i + h:
                    continue
                dx = re[i] - re[j]
                dy = im[i] - im[j]
                if dx * dx + dy * dy > limit2:
                    hit = True
                    break
            if hit:
                break
    return hit


def rho_sums(const double[::1] re, const double[::1] im,
             const double[::1] vre, const double[::1] vim,
             int max_power, double t=0.0):
    """Power sums of rho_ij = (v_i - v_j)/(z_i - z_j) over ordered pairs i != j.

    Returns ``(sums, max_abs, envelope)`` where ``sums[m-1]`` is the complex
    sum of rho^m, ``max_abs`` the largest |rho| and ``envelope`` the sum of
    |rho|^4 / (1 - |rho| t)^4 (``inf`` once some |rho| t >= 1). Coincident
    points give NaN sums.
    """
    cdef Py_ssize_t n = re.shape[0]
    cdef Py_ssize_t i, j
    cdef int m
    cdef double dzr, dzi, dvr, dvi, den, rr, ri, pr, pi_, tmp, a, q
    cdef double max_abs = 0.0
    cdef double env = 0.0, env_c = 0.0
    cdef bint degenerate = False, blown = False
    if max_power < 1:
        raise ValueError("max_power must be >= 1")
    cdef double[::1] sr = np.zeros(max_power)
    cdef double[::1] sr_c = np.zeros(max_power)
    cdef double[::1] si = np.zeros(max_power)
    cdef double[::1] si_c = np.zeros(max_power)
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                dzr = re[i] - re[j]
                dzi = im[i] - im[j]
                den = dzr * dzr + dzi * dzi
                if den == 0.0:
                    degenerate = True
                    break
                dvr = vre[i] - vre[j]
                dvi = vim[i] - vim[j]
                rr = (dvr * dzr + dvi * dzi) / den
                ri = (dvi * dzr - dvr * dzi) / den
                pr = rr
                pi_ = ri
                for m in range(max_power):
                    if m > 0:
                        tmp = pr * rr - pi_ * ri
                        pi_ = pr * ri + pi_ * rr
                        pr = tmp
                    _nadd(&sr[m], &sr_c[m], pr)
                    _nadd(&si[m], &si_c[m], pi_)
                a = sqrt(rr * rr + ri * ri)
                if a > max_abs:
                    max_abs = a
                q = 1.0 - a * t
                if q <= 0.0:
                    blown = True
                else:
                    q = a / q
                    _nadd(&env, &env_c, q * q * q * q)
            if degenerate:
                break
    out = np.empty(max_power, dtype=np.complex128)
    if degenerate:
        out[:] = NAN
        return out, NAN, NAN
    for m in range(max_power):
        # rho_ij = rho_ji, so the ordered sum doubles the i < j sum exactly
        out[m] = complex(2.0 * (sr[m] + sr_c[m]), 2.0 * (si[m] + si_c[m]))
    return out, max_abs, (INFINITY if blown else 2.0 * (env + env_c))
