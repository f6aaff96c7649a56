"""Detection scoring: estimate-to-truth matching, P_det / precision / F1.

Matching is greedy by ascending pair distance with a hard radius; each
estimate and each ground-truth target is used at most once.  Metrics over
many drops must be pooled by summing counts, never by averaging ratios.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class MatchResult:
    pairs: tuple  # ((estimate_idx, truth_idx, distance), ...)
    unmatched_estimates: tuple
    unmatched_truths: tuple
    radius_m: float
    n_estimates: int
    n_truths: int


@dataclass(frozen=True)
class MetricsReport:
    p_det: float
    precision: float
    f1: float
    n_truths: int  # |O+|
    n_detections: int  # |O_det+|
    n_true_positives: int  # |O_true+|
    p_occ: float = 0.0


def match_detections(estimates, truths, radius_m: float = 1.0) -> MatchResult:
    """Greedy one-to-one matching by ascending distance, capped at radius."""
    if radius_m <= 0:
        raise ValueError("matching radius must be positive")
    est = np.atleast_2d(np.asarray(estimates, dtype=float)) if len(estimates) else np.zeros((0, 2))
    tru = np.atleast_2d(np.asarray(truths, dtype=float)) if len(truths) else np.zeros((0, 2))
    candidates = []
    for i in range(est.shape[0]):
        for j in range(tru.shape[0]):
            d = float(np.linalg.norm(est[i] - tru[j]))
            if d <= radius_m:
                candidates.append((d, i, j))
    candidates.sort()
    used_e, used_t, pairs = set(), set(), []
    for d, i, j in candidates:
        if i in used_e or j in used_t:
            continue
        used_e.add(i)
        used_t.add(j)
        pairs.append((i, j, d))
    return MatchResult(
        pairs=tuple(pairs),
        unmatched_estimates=tuple(i for i in range(est.shape[0]) if i not in used_e),
        unmatched_truths=tuple(j for j in range(tru.shape[0]) if j not in used_t),
        radius_m=radius_m,
        n_estimates=est.shape[0],
        n_truths=tru.shape[0],
    )


def detection_metrics(m: MatchResult, p_occ: float = 0.0) -> MetricsReport:
    """P_det, precision, F1 from a match result.

    Precision with zero detections is vacuously 1; the raw counts in the
    report disambiguate.
    """
    if m.n_truths < 1:
        raise ValueError("need at least one ground-truth target")
    tp = len(m.pairs)
    p_det = tp / m.n_truths
    precision = tp / m.n_estimates if m.n_estimates > 0 else 1.0
    denom = p_det + precision
    f1 = 2 * p_det * precision / denom if denom > 0 else 0.0
    return MetricsReport(
        p_det=p_det,
        precision=precision,
        f1=f1,
        n_truths=m.n_truths,
        n_detections=m.n_estimates,
        n_true_positives=tp,
        p_occ=p_occ,
    )


def occlusion_fraction(path_sets) -> float:
    """Fraction of (target, SAP) pairs whose paths are all occluded."""
    total = 0
    fully_occluded = 0
    for ps in path_sets:
        by_target: dict[int, list[bool]] = {}
        for p in ps.paths:
            by_target.setdefault(p.target_index, []).append(p.occluded)
        for flags in by_target.values():
            total += 1
            if all(flags):
                fully_occluded += 1
    return fully_occluded / total if total else 0.0


def baseline_single_target(pg, pose) -> np.ndarray:
    """Single-target baseline: interpolated global maximum as 2D estimate."""
    from isacsim.extraction import interpolate_peak
    from isacsim.fusion import to_global
    from isacsim.extraction import PeakReport

    flat = int(np.argmax(pg.values))
    n_bin, k_bin = divmod(flat, pg.k_fft)
    dn, dk, power = interpolate_peak(pg.values, n_bin, k_bin)
    try:
        roundtrip, azimuth = pg.bin_to_physical(n_bin + dn, k_bin + dk)
    except ValueError:
        roundtrip, azimuth = pg.bin_to_physical(n_bin + dn, 0.0)
    peak = PeakReport(
        roundtrip_m=roundtrip,
        azimuth_rad=azimuth,
        power_dbm=0.0,
        bin_range=n_bin,
        bin_angle=k_bin,
        radius_range=0,
        radius_angle=0,
        sap_id=pose.sap_id,
        noise_power_dbm=0.0,
    )
    return to_global(peak, pose)
