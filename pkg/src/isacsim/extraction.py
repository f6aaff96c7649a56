"""Per-SAP detector: CFAR threshold and successive-cancellation extraction.

Thresholds live in the amplitude domain: a bin detects iff
sqrt(P_bin) > zeta.  The effective threshold additionally guards against
sidelobes of the strongest peak and is frozen after the first extraction.
Extracted peaks are refined by per-axis quadratic interpolation on
dB power before being mapped to physical coordinates.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from isacsim import kernels
from isacsim.periodogram import Periodogram


@dataclass(frozen=True)
class CfarSpec:
    p_fa: float = 0.01
    kappa: float = 2.5
    sidelobe_attenuation_db: float = 30.0
    max_peaks: int = 200

    def __post_init__(self):
        if not 0 < self.p_fa < 1:
            raise ValueError("false-alarm probability must be in (0, 1)")
        if self.kappa < 1:
            raise ValueError("kappa must be >= 1")


@dataclass(frozen=True)
class PeakReport:
    """One extracted peak, the SAP-to-fusion wire unit."""

    roundtrip_m: float
    azimuth_rad: float
    power_dbm: float
    bin_range: int
    bin_angle: int
    radius_range: int  # cancellation radii actually used, padded bins
    radius_angle: int
    sap_id: int
    noise_power_dbm: float

    def to_json(self) -> str:
        return json.dumps(
            {
                "roundtrip_m": self.roundtrip_m,
                "azimuth_rad": self.azimuth_rad,
                "power_dbm": self.power_dbm,
                "bin": [self.bin_range, self.bin_angle],
                "radii": [self.radius_range, self.radius_angle],
                "sap_id": self.sap_id,
                "noise_power_dbm": self.noise_power_dbm,
            }
        )

    @classmethod
    def from_json(cls, line: str) -> "PeakReport":
        d = json.loads(line)
        return cls(
            roundtrip_m=d["roundtrip_m"],
            azimuth_rad=d["azimuth_rad"],
            power_dbm=d["power_dbm"],
            bin_range=d["bin"][0],
            bin_angle=d["bin"][1],
            radius_range=d["radii"][0],
            radius_angle=d["radii"][1],
            sap_id=d["sap_id"],
            noise_power_dbm=d["noise_power_dbm"],
        )


def cfar_threshold(p_n_floor: float, p_fa: float, n_sub: int, n_ant: int) -> float:
    """Amplitude threshold for a per-map false-alarm probability.

    ``p_n_floor`` is the calibrated per-bin periodogram noise floor; the
    bin count is the number of independent (unpadded) bins.  Evaluated in
    log space to stay accurate for tiny per-bin exceedance probabilities.
    """
    if not 0 < p_fa < 1:
        raise ValueError("false-alarm probability must be in (0, 1)")
    # 1 - (1-p_fa)^(1/(N*K)) without catastrophic cancellation
    one_minus = -math.expm1(math.log1p(-p_fa) / (n_sub * n_ant))
    return math.sqrt(-p_n_floor * math.log(one_minus))


def effective_threshold(
    zeta_cfar: float,
    max_peak_amplitude: float,
    kappa: float,
    sidelobe_attenuation_db: float,
) -> float:
    """Sidelobe-guarded threshold: max(zeta_cfar, kappa * expected sidelobe)."""
    zeta_sl = max_peak_amplitude * 10 ** (-sidelobe_attenuation_db / 20)
    return max(zeta_cfar, kappa * zeta_sl)


def interpolate_peak(values, n_bin: int, k_bin: int):
    """Per-axis 3-point parabolic refinement on dB power.

    Returns (delta_n, delta_k, refined_power) with deltas in bins, clamped
    to [-0.5, 0.5].  Range-axis edge peaks skip that axis; the angle axis
    wraps.  Degenerate curvature (or zeroed neighbors) falls back to
    delta = 0.
    """
    n_bins, k_bins = values.shape
    center = values[n_bin, k_bin]
    if center <= 0:
        return 0.0, 0.0, center
    c_db = 10 * math.log10(center)
    power_db = c_db

    def parabola(left, right):
        nonlocal power_db
        if left <= 0 or right <= 0:
            return 0.0
        l_db = 10 * math.log10(left)
        r_db = 10 * math.log10(right)
        denom = l_db - 2 * c_db + r_db
        if denom >= 0:
            return 0.0
        delta = (l_db - r_db) / (2 * denom)
        delta = min(max(delta, -0.5), 0.5)
        power_db += -(l_db - r_db) * delta / 4
        return delta

    delta_n = 0.0
    if 0 < n_bin < n_bins - 1:
        delta_n = parabola(values[n_bin - 1, k_bin], values[n_bin + 1, k_bin])
    delta_k = parabola(
        values[n_bin, (k_bin - 1) % k_bins], values[n_bin, (k_bin + 1) % k_bins]
    )
    return delta_n, delta_k, 10 ** (power_db / 10)


def extract_peaks(
    pg: Periodogram, spec: CfarSpec, p_n_floor: float, sap_id: int = -1
) -> list[PeakReport]:
    """Successive-cancellation peak extraction on a periodogram.

    Works on a private copy of the power map; the pristine map is kept for
    interpolation.  Peaks landing on the single invisible angle bin are
    cancelled but not reported.
    """
    zeta = cfar_threshold(p_n_floor, spec.p_fa, pg.n_sub, pg.n_ant)
    sidelobe_amp_factor = spec.kappa * 10 ** (-spec.sidelobe_attenuation_db / 20)
    work = pg.values.copy()
    raw = kernels.successive_cancellation(
        work,
        zeta,
        sidelobe_amp_factor,
        p_n_floor,
        pg.mainlobe_halfwidth_range,
        pg.mainlobe_halfwidth_angle,
        spec.max_peaks,
    )
    noise_dbm = 10 * math.log10(p_n_floor) + 30
    reports = []
    for n_bin, k_bin, rn, rk in raw:
        dn, dk, power = interpolate_peak(pg.values, n_bin, k_bin)
        try:
            roundtrip, azimuth = pg.bin_to_physical(n_bin + dn, k_bin + dk)
        except ValueError:
            continue  # invisible angle bin: cancelled but not reportable
        reports.append(
            PeakReport(
                roundtrip_m=roundtrip,
                azimuth_rad=azimuth,
                power_dbm=10 * math.log10(power) + 30,
                bin_range=n_bin,
                bin_angle=k_bin,
                radius_range=rn,
                radius_angle=rk,
                sap_id=sap_id,
                noise_power_dbm=noise_dbm,
            )
        )
    return reports
