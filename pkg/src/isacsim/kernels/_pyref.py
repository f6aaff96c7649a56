"""Numpy reference implementation of the hot kernels.

Semantics here are the contract; the Cython backend must match bit-for-bit
up to floating-point reassociation.
"""

from __future__ import annotations

import numpy as np

from scipy.constants import c as C0


def synthesize_ctf(alphas, roundtrips, sin_thetas, n_sub, n_ant, delta_f, d, f_c):
    """Superpose path phasors into an ``n_sub x n_ant`` channel matrix.

    Entry (n, k) accumulates ``alpha_p * exp(j*2*pi*(-n*delta_f*tau_p
    + d*k*f_c*sin(theta_p)/c))`` with ``tau_p`` the round-trip delay.
    """
    alphas = np.asarray(alphas, dtype=np.complex128)
    taus = np.asarray(roundtrips, dtype=np.float64) / C0
    sin_thetas = np.asarray(sin_thetas, dtype=np.float64)
    if alphas.size == 0:
        return np.zeros((n_sub, n_ant), dtype=np.complex128)
    n = np.arange(n_sub)
    k = np.arange(n_ant)
    # (n_sub, P) subcarrier phasors and (P, n_ant) antenna phasors
    sub = np.exp(-2j * np.pi * delta_f * np.outer(n, taus))
    ant = np.exp(2j * np.pi * (d * f_c / C0) * np.outer(sin_thetas, k))
    return (sub * alphas) @ ant


def successive_cancellation(
    power,
    zeta_cfar,
    sidelobe_amp_factor,
    floor,
    min_rn,
    min_rk,
    max_peaks,
):
    """Binary successive cancellation on a (range x angle) power map.

    Iteratively takes the global maximum, records it, and zeroes an
    ellipsoidal region around it.  The effective amplitude threshold is
    frozen after the first extraction at ``max(zeta_cfar,
    sidelobe_amp_factor * first_max_amplitude)``.  Per-axis cancellation
    radii follow the observed peak extent: the distance to the first rise
    or to the noise floor, floored at the window mainlobe half-width.
    The angle axis (axis 1) wraps cyclically; the range axis is clipped.

    ``power`` is modified in place.  Returns a list of
    ``(n_bin, k_bin, radius_n, radius_k)`` tuples.
    """
    p = power
    n_bins, k_bins = p.shape
    zeta = float(zeta_cfar)
    peaks = []
    for _ in range(max_peaks):
        flat = int(np.argmax(p))
        n0, k0 = divmod(flat, k_bins)
        amp = np.sqrt(p[n0, k0])
        if not peaks:
            zeta = max(zeta, sidelobe_amp_factor * amp)
        if amp <= zeta:
            break
        rn = max(
            _axis_radius(p[:, k0], n0, floor, cyclic=False),
            min_rn,
        )
        rk = max(
            _axis_radius(p[n0, :], k0, floor, cyclic=True),
            min_rk,
        )
        peaks.append((n0, k0, rn, rk))
        _zero_ellipse(p, n0, k0, rn, rk)
    return peaks


def _axis_radius(profile, i0, floor, cyclic):
    """Peak extent along one axis: steps until first rise or sub-floor value.

    Scans both directions and returns the larger extent.
    """
    n = profile.shape[0]
    best = 1
    for step in (1, -1):
        prev = profile[i0]
        r = 0
        i = i0
        for _ in range(n // 2 if cyclic else n):
            i = i + step
            if cyclic:
                i %= n
            elif i < 0 or i >= n:
                break
            v = profile[i]
            if v > prev or v <= floor:
                break
            prev = v
            r += 1
        best = max(best, r)
    return best


def _zero_ellipse(p, n0, k0, rn, rk):
    """Zero bins with (dn/rn)^2 + (dk/rk)^2 <= 1; axis 1 wraps."""
    n_bins, k_bins = p.shape
    lo_n = max(n0 - rn, 0)
    hi_n = min(n0 + rn, n_bins - 1)
    dn = (np.arange(lo_n, hi_n + 1) - n0) / rn
    # wrap window must not alias onto itself
    half_k = min(rk, (k_bins - 1) // 2)
    dk_idx = np.arange(k0 - half_k, k0 + half_k + 1)
    dk = (dk_idx - k0) / rk
    mask = dn[:, None] ** 2 + dk[None, :] ** 2 <= 1.0
    rows = np.arange(lo_n, hi_n + 1)
    cols = dk_idx % k_bins
    p[np.ix_(rows, cols)] *= ~mask
