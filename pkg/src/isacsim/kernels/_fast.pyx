# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels: CTF phasor superposition and successive cancellation.

Must match isacsim.kernels._pyref semantics; the test suite runs both
backends against each other.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin, sqrt

cnp.import_array()

cdef double C0 = 299792458.0
cdef double TWO_PI = 6.283185307179586476925286766559


def synthesize_ctf(alphas, roundtrips, sin_thetas, int n_sub, int n_ant,
                   double delta_f, double d, double f_c):
    """See _pyref.synthesize_ctf."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] a = \
        np.ascontiguousarray(alphas, dtype=np.complex128)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] l = \
        np.ascontiguousarray(roundtrips, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] st = \
        np.ascontiguousarray(sin_thetas, dtype=np.float64)
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] H = \
        np.zeros((n_sub, n_ant), dtype=np.complex128)
    cdef double complex[:, ::1] Hv = H
    cdef Py_ssize_t P = a.shape[0]
    cdef Py_ssize_t p, n, k
    cdef double phi_sub, phi_ant, ar, ai
    cdef double sr, si, s_step_r, s_step_i, tmp
    cdef double tr, ti, t_step_r, t_step_i
    # per-path outer product of two phasor ladders, accumulated recursively
    for p in range(P):
        phi_sub = -TWO_PI * delta_f * l[p] / C0
        phi_ant = TWO_PI * d * f_c * st[p] / C0
        s_step_r = cos(phi_sub)
        s_step_i = sin(phi_sub)
        t_step_r = cos(phi_ant)
        t_step_i = sin(phi_ant)
        ar = a[p].real
        ai = a[p].imag
        sr = 1.0
        si = 0.0
        for n in range(n_sub):
            tr = ar * sr - ai * si
            ti = ar * si + ai * sr
            for k in range(n_ant):
                Hv[n, k] = Hv[n, k] + (tr + 1j * ti)
                tmp = tr * t_step_r - ti * t_step_i
                ti = tr * t_step_i + ti * t_step_r
                tr = tmp
            tmp = sr * s_step_r - si * s_step_i
            si = sr * s_step_i + si * s_step_r
            sr = tmp
    return H


cdef Py_ssize_t _axis_radius_range(double[:, ::1] p, Py_ssize_t n0,
                                   Py_ssize_t k0, double floor) nogil:
    cdef Py_ssize_t n = p.shape[0]
    cdef Py_ssize_t best = 1, r, i
    cdef double prev, v
    cdef int step
    for step in range(2):
        prev = p[n0, k0]
        r = 0
        i = n0
        while True:
            if step == 0:
                i += 1
                if i >= n:
                    break
            else:
                i -= 1
                if i < 0:
                    break
            v = p[i, k0]
            if v > prev or v <= floor:
                break
            prev = v
            r += 1
        if r > best:
            best = r
    return best


cdef Py_ssize_t _axis_radius_angle(double[:, ::1] p, Py_ssize_t n0,
                                   Py_ssize_t k0, double floor) nogil:
    cdef Py_ssize_t kb = p.shape[1]
    cdef Py_ssize_t best = 1, r, i, count
    cdef double prev, v
    cdef int step
    for step in range(2):
        prev = p[n0, k0]
        r = 0
        i = k0
        for count in range(kb // 2):
            if step == 0:
                i = (i + 1) % kb
            else:
                i = (i - 1 + kb) % kb
            v = p[n0, i]
            if v > prev or v <= floor:
                break
            prev = v
            r += 1
        if r > best:
            best = r
    return best


def successive_cancellation(cnp.ndarray[cnp.float64_t, ndim=2] power,
                            double zeta_cfar, double sidelobe_amp_factor,
                            double floor, Py_ssize_t min_rn, Py_ssize_t min_rk,
                            Py_ssize_t max_peaks):
    """See _pyref.successive_cancellation; modifies ``power`` in place.

    ``power`` must be C-contiguous float64.
    """
    cdef double[:, ::1] p = power
    cdef Py_ssize_t nb = p.shape[0]
    cdef Py_ssize_t kb = p.shape[1]
    cdef double zeta = zeta_cfar
    cdef Py_ssize_t n0, k0, n, k, rn, rk, half_k, lo_n, hi_n, col
    cdef double best, amp, dn, dk
    peaks = []
    cdef Py_ssize_t it
    for it in range(max_peaks):
        best = -1.0
        n0 = 0
        k0 = 0
        for n in range(nb):
            for k in range(kb):
                if p[n, k] > best:
                    best = p[n, k]
                    n0 = n
                    k0 = k
        amp = sqrt(best)
        if it == 0 and sidelobe_amp_factor * amp > zeta:
            zeta = sidelobe_amp_factor * amp
        if amp <= zeta:
            break
        rn = _axis_radius_range(p, n0, k0, floor)
        if rn < min_rn:
            rn = min_rn
        rk = _axis_radius_angle(p, n0, k0, floor)
        if rk < min_rk:
            rk = min_rk
        peaks.append((n0, k0, rn, rk))
        # zero ellipse; angle axis wraps without aliasing onto itself
        half_k = rk
        if half_k > (kb - 1) // 2:
            half_k = (kb - 1) // 2
        lo_n = n0 - rn
        if lo_n < 0:
            lo_n = 0
        hi_n = n0 + rn
        if hi_n > nb - 1:
            hi_n = nb - 1
        for n in range(lo_n, hi_n + 1):
            dn = (<double> (n - n0)) / rn
            for k in range(-half_k, half_k + 1):
                dk = (<double> k) / rk
                if dn * dn + dk * dk <= 1.0:
                    col = (k0 + k) % kb
                    if col < 0:
                        col += kb
                    p[n, col] = 0.0
    return peaks
