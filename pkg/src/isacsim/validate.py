"""Self-calibration checks exposed through the CLI ``validate`` subcommand.

Each check returns (name, passed, detail).  These are desk-scale versions
of the invariants the test suite enforces; they run in seconds and catch
configuration or build problems in the field.
"""

from __future__ import annotations

import numpy as np

from isacsim import kernels
from isacsim.extraction import CfarSpec, cfar_threshold, extract_peaks
from isacsim.ofdm import NoiseSpec, apply_channel_and_noise, equalize, generate_symbols
from isacsim.periodogram import WindowSpec, compute_periodogram

DESK_N_SUB = 256
DESK_N_ANT = 8
DESK_BW = 800e6
DESK_FC = 26e9
DESK_D = 3e8 / DESK_FC / 2


def _impulse_ctf(roundtrip_m, sin_theta, amp=1.0):
    return kernels.synthesize_ctf(
        np.array([amp + 0j]),
        np.array([roundtrip_m]),
        np.array([sin_theta]),
        DESK_N_SUB,
        DESK_N_ANT,
        DESK_BW / DESK_N_SUB,
        DESK_D,
        DESK_FC,
    )


def check_processing_gain(n_seeds=50) -> tuple:
    """Peak/floor ratio of a unit impulsive path must equal N_sub*K*gamma_com."""
    rect = WindowSpec("rectangular")
    sigma2 = 1.0
    noise = NoiseSpec(sigma2 * DESK_N_SUB, DESK_N_SUB)
    # on-bin placement keeps scalloping out of the identity
    roundtrip = 40 * 299792458.0 / (DESK_N_SUB * (DESK_BW / DESK_N_SUB))
    H = _impulse_ctf(roundtrip, 2 * 2.0 / DESK_N_ANT)
    gamma_com = float(np.mean(np.abs(H) ** 2)) / sigma2
    expected = DESK_N_SUB * DESK_N_ANT * gamma_com
    ratios = []
    for seed in range(n_seeds):
        rng = np.random.default_rng([1000, seed])
        x = generate_symbols(DESK_N_SUB, rng)
        y = apply_channel_and_noise(H, x, noise, rng)
        pg = compute_periodogram(
            equalize(y, x), rect, DESK_BW / DESK_N_SUB, DESK_D, DESK_FC, pad_factor=1
        )
        peak = pg.values.max()
        flat = pg.values.ravel()
        floor = (flat.sum() - peak) / (flat.size - 1)
        ratios.append(peak / floor)
    err_db = abs(10 * np.log10(np.mean(ratios) / expected))
    return "processing-gain", err_db < 0.5, f"error {err_db:.3f} dB"


def check_cfar_calibration(n_maps=2000, p_fa=0.01) -> tuple:
    """Noise-only maps must alarm at the configured false-alarm rate."""
    rect = WindowSpec("rectangular")
    spec = CfarSpec(p_fa=p_fa)
    sigma2 = 1.0
    alarms = 0
    for seed in range(n_maps):
        rng = np.random.default_rng([2000, seed])
        z = (rng.standard_normal((DESK_N_SUB, DESK_N_ANT))
             + 1j * rng.standard_normal((DESK_N_SUB, DESK_N_ANT))) * np.sqrt(sigma2 / 2)
        pg = compute_periodogram(
            z, rect, DESK_BW / DESK_N_SUB, DESK_D, DESK_FC, pad_factor=1
        )
        floor = sigma2 * pg.noise_floor_scale
        if extract_peaks(pg, spec, floor):
            alarms += 1
    rate = alarms / n_maps
    tol = 3 * np.sqrt(p_fa * (1 - p_fa) / n_maps)
    return "cfar-calibration", abs(rate - p_fa) <= tol, f"rate {rate:.4f} (target {p_fa})"


def check_noise_floor(n_seeds=100) -> tuple:
    """Mean periodogram of pure noise must hit the analytic floor within 2%."""
    window = WindowSpec("chebyshev", 30.0)
    sigma2 = 2.5
    means = []
    scale = None
    for seed in range(n_seeds):
        rng = np.random.default_rng([3000, seed])
        z = (rng.standard_normal((DESK_N_SUB, DESK_N_ANT))
             + 1j * rng.standard_normal((DESK_N_SUB, DESK_N_ANT))) * np.sqrt(sigma2 / 2)
        pg = compute_periodogram(
            z, window, DESK_BW / DESK_N_SUB, DESK_D, DESK_FC, pad_factor=4
        )
        scale = pg.noise_floor_scale
        means.append(pg.values.mean())
    rel = abs(np.mean(means) / (sigma2 * scale) - 1)
    return "noise-floor", rel < 0.02, f"relative error {rel:.4f}"


def check_localization_roundtrip(n_cases=20) -> tuple:
    """Noise-free impulsive targets must localize within 0.1 unpadded bin."""
    window = WindowSpec("chebyshev", 30.0)
    spec = CfarSpec()
    rng = np.random.default_rng(4000)
    delta_f = DESK_BW / DESK_N_SUB
    worst = 0.0
    for _ in range(n_cases):
        roundtrip = rng.uniform(5.0, 60.0)
        theta = rng.uniform(-1.0, 1.0)
        H = _impulse_ctf(roundtrip, np.sin(theta))
        pg = compute_periodogram(H, window, delta_f, DESK_D, DESK_FC, pad_factor=4)
        floor = 1e-12
        peaks = extract_peaks(pg, spec, floor)
        if not peaks:
            return "localization-roundtrip", False, "no peak extracted"
        p = peaks[0]
        err_range = abs(p.roundtrip_m - roundtrip) / (3e8 / (DESK_N_SUB * delta_f))
        err_angle = abs(np.sin(p.azimuth_rad) - np.sin(theta)) / (2 / DESK_N_ANT)
        worst = max(worst, err_range, err_angle)
    return "localization-roundtrip", worst < 0.1, f"worst error {worst:.4f} unpadded bins"


ALL_CHECKS = (
    check_processing_gain,
    check_cfar_calibration,
    check_noise_floor,
    check_localization_roundtrip,
)


def run_all(checks=ALL_CHECKS):
    results = [chk() for chk in checks]
    return results, all(ok for _, ok, _ in results)
