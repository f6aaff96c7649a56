"""Monte-Carlo experiment harness: drops, sweeps, CSV/manifest emission.

A "drop" is one full pipeline pass over a freshly seeded scene.  Sweeps
evaluate every axis value for all SAP-count and multinode-filter cells,
reusing the per-SAP extractions within a drop.  Metrics are pooled by
summing counts over drops; confidence intervals are binomial (normal
approximation) on the pooled proportion.
"""

from __future__ import annotations

import csv
import json
import math
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from isacsim import __version__
from isacsim.config import SimConfig
from isacsim.evaluation import (
    MetricsReport,
    detection_metrics,
    match_detections,
    occlusion_fraction,
)
from isacsim.extraction import extract_peaks
from isacsim.fusion import FusionConfig, fuse
from isacsim.ofdm import NoiseSpec, apply_channel_and_noise, equalize, generate_symbols
from isacsim.periodogram import compute_periodogram
from isacsim.raytrace import build_ctf, trace_paths
from isacsim.scene import make_scene

CSV_SCHEMA_VERSION = 1
CSV_COLUMNS = (
    "axis_value",
    "n_saps",
    "filter",
    "p_det",
    "ci_lo",
    "ci_hi",
    "precision",
    "f1",
    "p_occ",
    "drops",
)

SWEEP_AXES = (
    "noise_power_dbm",
    "n_saps",
    "n_antennas",
    "bandwidth",
    "n_targets",
    "room_side",
)


def thermal_operating_point(bandwidth_hz: float, noise_figure_db: float = 0.0) -> float:
    """Thermal noise power in dBm: -174 dBm/Hz + 10 log10(B) + NF."""
    if bandwidth_hz <= 0:
        raise ValueError("bandwidth must be positive")
    return -174.0 + 10 * math.log10(bandwidth_hz) + noise_figure_db


def noise_power_dbm(cfg: SimConfig) -> float:
    if cfg.noise_power_dbm is not None:
        return cfg.noise_power_dbm
    return thermal_operating_point(cfg.bandwidth_hz, cfg.noise_figure_db)


@dataclass
class DropResult:
    seed: int
    n_targets: int
    per_sap_peak_counts: dict
    fused_count: int
    metrics: MetricsReport
    elapsed_s: float


@dataclass
class _Cell:
    """Pooled counts for one (axis value, n_saps, filter) sweep cell."""

    tp: int = 0
    truths: int = 0
    detections: int = 0
    p_occ_sum: float = 0.0
    drops: int = 0

    def add(self, metrics: MetricsReport):
        self.tp += metrics.n_true_positives
        self.truths += metrics.n_truths
        self.detections += metrics.n_detections
        self.p_occ_sum += metrics.p_occ
        self.drops += 1

    def row(self):
        p_det = self.tp / self.truths if self.truths else 0.0
        precision = self.tp / self.detections if self.detections else 1.0
        denom = p_det + precision
        f1 = 2 * p_det * precision / denom if denom > 0 else 0.0
        hw = (
            1.96 * math.sqrt(p_det * (1 - p_det) / self.truths)
            if self.truths
            else 0.0
        )
        return {
            "p_det": p_det,
            "ci_lo": max(p_det - hw, 0.0),
            "ci_hi": min(p_det + hw, 1.0),
            "precision": precision,
            "f1": f1,
            "p_occ": self.p_occ_sum / self.drops if self.drops else 0.0,
            "drops": self.drops,
        }


def run_drop_family(
    cfg: SimConfig,
    seed_entropy,
    sap_counts=(1, 2, 3, 4),
    filters=(False, True),
):
    """One drop, evaluated for every (SAP count, filter) cell.

    The per-SAP processing chain runs once for max(sap_counts) SAPs; fusion
    and scoring are repeated per cell.  Returns (cells, info) where cells
    maps (n_saps, filter) -> MetricsReport.
    """
    t0 = time.perf_counter()
    max_saps = max(sap_counts)
    ss = np.random.SeedSequence(seed_entropy)
    scene_ss, *stream_ss = ss.spawn(1 + 2 * max_saps)

    n_targets = cfg.n_targets
    if n_targets is None:
        pick = np.random.default_rng(scene_ss.spawn(1)[0])
        n_targets = int(pick.integers(1, cfg.max_targets + 1))

    scene = make_scene(
        cfg.room(),
        max_saps,
        n_targets,
        seed=scene_ss,
        mount_height=cfg.sap_mount_height_m,
        n_points=cfg.scatter_points_per_target,
        total_rcs=cfg.target_rcs_m2,
        center_height=cfg.target_center_height_m,
    )

    lb = cfg.link_budget()
    ofdm = cfg.ofdm()
    p_n_dbm = noise_power_dbm(cfg)
    noise = NoiseSpec.from_dbm(p_n_dbm, cfg.n_sub)
    window = cfg.window()
    cfar = cfg.cfar()

    per_sap_peaks = {}
    path_sets = []
    for i, sap in enumerate(scene.saps):
        paths = trace_paths(scene, sap, lb)
        path_sets.append(paths)
        H = build_ctf(
            paths, cfg.n_sub, cfg.n_ant, cfg.delta_f, cfg.element_spacing_m,
            cfg.carrier_freq_hz,
        )
        x = generate_symbols(cfg.n_sub, np.random.default_rng(stream_ss[2 * i]),
                             ofdm.symbol_power_w)
        y = apply_channel_and_noise(H, x, noise,
                                    np.random.default_rng(stream_ss[2 * i + 1]))
        h_est = equalize(y, x)
        pg = compute_periodogram(
            h_est, window, cfg.delta_f, cfg.element_spacing_m,
            cfg.carrier_freq_hz, cfg.pad_factor,
        )
        floor = noise.sigma2 * pg.noise_floor_scale
        per_sap_peaks[sap.sap_id] = extract_peaks(pg, cfar, floor, sap_id=sap.sap_id)

    truths = np.array([t.center[:2] for t in scene.targets])
    poses = {s.sap_id: s for s in scene.saps}
    cells = {}
    for n_saps in sap_counts:
        subset = {sid: per_sap_peaks[sid] for sid in range(n_saps)}
        p_occ = occlusion_fraction(path_sets[:n_saps])
        for filt in filters:
            fcfg = FusionConfig(
                merge_eps_m=2 * cfg.range_resolution_m,
                room=cfg.room(),
                require_multinode=filt,
                room_margin_m=cfg.room_margin_m,
            )
            fused = fuse(subset, poses, fcfg)
            match = match_detections(
                [d.position for d in fused], truths, cfg.match_radius_m
            )
            cells[(n_saps, filt)] = detection_metrics(match, p_occ=p_occ)

    info = {
        "n_targets": n_targets,
        "per_sap_peak_counts": {sid: len(v) for sid, v in per_sap_peaks.items()},
        "elapsed_s": time.perf_counter() - t0,
        "per_sap_peaks": per_sap_peaks,
        "scene": scene,
        "path_sets": path_sets,
    }
    return cells, info


def run_drop(cfg: SimConfig, seed) -> DropResult:
    """Single drop at the configured SAP count and filter setting."""
    cells, info = run_drop_family(
        cfg, seed, sap_counts=(cfg.n_saps,), filters=(cfg.require_multinode,)
    )
    metrics = cells[(cfg.n_saps, cfg.require_multinode)]
    return DropResult(
        seed=seed if isinstance(seed, int) else -1,
        n_targets=info["n_targets"],
        per_sap_peak_counts=info["per_sap_peak_counts"],
        fused_count=metrics.n_detections,
        metrics=metrics,
        elapsed_s=info["elapsed_s"],
    )


@dataclass(frozen=True)
class SweepSpec:
    axis: str
    values: tuple
    drops_per_point: int
    base: SimConfig
    seed: int = 0
    sap_counts: tuple = (1, 2, 3, 4)
    filters: tuple = (False, True)

    def __post_init__(self):
        if self.axis not in SWEEP_AXES:
            raise ValueError(f"unknown sweep axis {self.axis!r}")
        if not self.values:
            raise ValueError("sweep needs at least one axis value")
        if self.drops_per_point < 1:
            raise ValueError("drops_per_point must be >= 1")


def apply_axis(cfg: SimConfig, axis: str, value):
    """Derive the per-point config; antenna/bandwidth moves re-derive the
    thermal noise floor, bandwidth keeps the base subcarrier spacing."""
    if axis == "noise_power_dbm":
        return cfg.replace(noise_power_dbm=float(value)), None
    if axis == "n_saps":
        return cfg, int(value)
    if axis == "n_antennas":
        return cfg.replace(n_ant=int(value), noise_power_dbm=None), None
    if axis == "bandwidth":
        n_sub = max(2, round(float(value) / cfg.delta_f))
        return (
            cfg.replace(bandwidth_hz=float(value), n_sub=n_sub, noise_power_dbm=None),
            None,
        )
    if axis == "n_targets":
        return cfg.replace(n_targets=int(value)), None
    if axis == "room_side":
        return cfg.replace(room_side_x=float(value), room_side_y=float(value)), None
    raise ValueError(f"unknown sweep axis {axis!r}")


def run_sweep(spec: SweepSpec, out_dir, progress=None) -> list[dict]:
    """Execute a sweep and write ``results.csv`` plus ``manifest.json``.

    Returns the emitted rows.  On interruption, partial results are
    flushed before the error propagates.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows: list[dict] = []
    try:
        for vi, value in enumerate(spec.values):
            cfg, only_saps = apply_axis(spec.base, spec.axis, value)
            sap_counts = (only_saps,) if only_saps else spec.sap_counts
            cells = {
                (n, f): _Cell() for n in sap_counts for f in spec.filters
            }
            for drop in range(spec.drops_per_point):
                drop_cells, _ = run_drop_family(
                    cfg, [spec.seed, vi, drop], sap_counts, spec.filters
                )
                for key, metrics in drop_cells.items():
                    cells[key].add(metrics)
                if progress:
                    progress(value, drop)
            for (n_saps, filt) in sorted(cells, key=lambda t: (t[0], t[1])):
                row = {"axis_value": value, "n_saps": n_saps, "filter": int(filt)}
                row.update(cells[(n_saps, filt)].row())
                rows.append(row)
    finally:
        _write_csv(out / "results.csv", rows)
        _write_manifest(out / "manifest.json", spec)
    return rows


def _fmt(v):
    return f"{v:.6f}" if isinstance(v, float) else str(v)


def _write_csv(path: Path, rows: list[dict]):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow([_fmt(row[c]) for c in CSV_COLUMNS])


def _write_manifest(path: Path, spec: SweepSpec):
    manifest = {
        "csv_schema_version": CSV_SCHEMA_VERSION,
        "code_version": __version__,
        "axis": spec.axis,
        "values": list(spec.values),
        "drops_per_point": spec.drops_per_point,
        "seed": spec.seed,
        "sap_counts": list(spec.sap_counts),
        "filters": [int(f) for f in spec.filters],
        "config": spec.base.to_dict(),
    }
    with open(path, "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def run_baseline(
    base: SimConfig, noise_values_dbm, drops: int, seed: int, out_dir
) -> list[dict]:
    """Dotted reference curve: single impulsive target, single SAP, global
    maximum of the periodogram as the one and only estimate per drop."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    cfg0 = base.replace(n_saps=1, n_targets=1, require_multinode=False)
    lb = cfg0.link_budget()
    ofdm = cfg0.ofdm()
    window = cfg0.window()
    rows = []
    for vi, value in enumerate(noise_values_dbm):
        cfg = cfg0.replace(noise_power_dbm=float(value))
        noise = NoiseSpec.from_dbm(noise_power_dbm(cfg), cfg.n_sub)
        cell = _Cell()
        for drop in range(drops):
            ss = np.random.SeedSequence([seed, vi, drop])
            scene_ss, sym_ss, noise_ss = ss.spawn(3)
            scene = make_scene(
                cfg.room(), 1, 1, seed=scene_ss,
                mount_height=cfg.sap_mount_height_m,
                n_points=1, total_rcs=cfg.target_rcs_m2,
                scatter_sigmas=(0.0, 0.0, 0.0),
                center_height=cfg.target_center_height_m,
            )
            sap = scene.saps[0]
            paths = trace_paths(scene, sap, lb)
            H = build_ctf(paths, cfg.n_sub, cfg.n_ant, cfg.delta_f,
                          cfg.element_spacing_m, cfg.carrier_freq_hz)
            x = generate_symbols(cfg.n_sub, np.random.default_rng(sym_ss),
                                 ofdm.symbol_power_w)
            y = apply_channel_and_noise(H, x, noise, np.random.default_rng(noise_ss))
            pg = compute_periodogram(
                equalize(y, x), window, cfg.delta_f, cfg.element_spacing_m,
                cfg.carrier_freq_hz, cfg.pad_factor,
            )
            from isacsim.evaluation import baseline_single_target

            estimate = baseline_single_target(pg, sap)
            truth = np.array([scene.targets[0].center[:2]])
            match = match_detections([estimate], truth, cfg.match_radius_m)
            cell.add(detection_metrics(match))
        row = {"axis_value": value, "n_saps": 1, "filter": 0}
        row.update(cell.row())
        rows.append(row)
    _write_csv(out / "baseline.csv", rows)
    return rows


def dump_periodogram(pg, path_prefix):
    """Binary row-major float64 grid plus JSON sidecar."""
    prefix = Path(path_prefix)
    np.ascontiguousarray(pg.values, dtype=np.float64).tofile(
        prefix.with_suffix(".bin")
    )
    sidecar = {
        "schema_version": CSV_SCHEMA_VERSION,
        "dtype": "float64",
        "order": "row-major",
        "n_fft": pg.n_fft,
        "k_fft": pg.k_fft,
        "n_sub": pg.n_sub,
        "n_ant": pg.n_ant,
        "delta_f_hz": pg.delta_f,
        "element_spacing_m": pg.element_spacing_m,
        "carrier_freq_hz": pg.carrier_freq_hz,
        "noise_floor_scale": pg.noise_floor_scale,
    }
    with open(prefix.with_suffix(".json"), "w") as fh:
        json.dump(sidecar, fh, indent=2, sort_keys=True)
        fh.write("\n")
