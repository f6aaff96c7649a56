"""Free-space raytracing and channel transfer function (CTF) synthesis.

Each SAP performs mono-static acquisitions: TX and RX are colocated, so a
path's round-trip length is twice the distance to the scatter point.  The
far-field model attaches a single azimuth per path; per-element distances
are not modeled.  Occlusion is binary: a path blocked by another target's
scatter-point bounding box is dropped from the superposition.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
from scipy.constants import c as C0

from isacsim import kernels
from isacsim.scene import Aabb, SapPose, Scene, target_bounding_box


@dataclass(frozen=True)
class LinkBudget:
    """Power flow parameters along the propagation path."""

    tx_power_dbm: float = 30.0
    tx_element_gain_dbi: float = 5.0
    rx_element_gain_dbi: float = 5.0
    noise_figure_db: float = 8.0
    carrier_freq_hz: float = 26e9
    pathloss_exponent: float = 2.0

    def __post_init__(self):
        if self.carrier_freq_hz <= 0:
            raise ValueError("carrier frequency must be positive")

    @property
    def wavelength_m(self) -> float:
        return C0 / self.carrier_freq_hz

    @property
    def tx_power_w(self) -> float:
        return 10 ** ((self.tx_power_dbm - 30) / 10)


@dataclass(frozen=True)
class Path:
    """One SAP <-> scatter-point propagation path."""

    target_index: int
    scatter_point_index: int
    roundtrip_m: float
    azimuth_rad: float  # in the SAP local frame, 0 = boresight
    elevation_rad: float
    coefficient: complex  # amplitude gain per unit transmit symbol amplitude
    occluded: bool


@dataclass(frozen=True)
class PathSet:
    sap_id: int
    paths: tuple

    def visible(self):
        return [p for p in self.paths if not p.occluded]

    def visible_arrays(self):
        """(alphas, roundtrips, sin_thetas) arrays over visible paths."""
        vis = self.visible()
        return (
            np.array([p.coefficient for p in vis], dtype=np.complex128),
            np.array([p.roundtrip_m for p in vis]),
            np.array([np.sin(p.azimuth_rad) for p in vis]),
        )


def segment_intersects_aabb(p0, p1, box: Aabb) -> bool:
    """Closed segment vs closed box intersection (slab method)."""
    p0 = np.asarray(p0, dtype=float)
    p1 = np.asarray(p1, dtype=float)
    d = p1 - p0
    t_lo, t_hi = 0.0, 1.0
    for ax in range(3):
        if d[ax] == 0.0:
            if p0[ax] < box.lo[ax] or p0[ax] > box.hi[ax]:
                return False
        else:
            t1 = (box.lo[ax] - p0[ax]) / d[ax]
            t2 = (box.hi[ax] - p0[ax]) / d[ax]
            if t1 > t2:
                t1, t2 = t2, t1
            t_lo = max(t_lo, t1)
            t_hi = min(t_hi, t2)
            if t_lo > t_hi:
                return False
    return True


def patch_element_gain(azimuth_rad, elevation_rad, gain_max_dbi) -> float:
    """Front-facing patch pattern: G_max * cos^2(az) * cos^2(el), zero behind."""
    if abs(azimuth_rad) >= np.pi / 2 or abs(elevation_rad) >= np.pi / 2:
        return 0.0
    g_max = 10 ** (gain_max_dbi / 10)
    return g_max * np.cos(azimuth_rad) ** 2 * np.cos(elevation_rad) ** 2


def path_coefficient(
    roundtrip_m: float,
    azimuth_rad: float,
    elevation_rad: float,
    lb: LinkBudget,
    rcs_m2: float,
    occluded: bool = False,
) -> complex:
    """Complex amplitude of a path per unit transmit symbol amplitude.

    Radar range equation, mono-static:
      |alpha|^2 = G_tx * G_rx * lambda^2 * rcs / ((4 pi)^3 * R^(2 eta))
    with R the one-way distance; phase from the carrier round-trip delay.
    """
    if occluded:
        raise ValueError("occluded path has no coefficient")
    g_tx = patch_element_gain(azimuth_rad, elevation_rad, lb.tx_element_gain_dbi)
    g_rx = patch_element_gain(azimuth_rad, elevation_rad, lb.rx_element_gain_dbi)
    lam = lb.wavelength_m
    one_way = roundtrip_m / 2
    power_gain = (
        g_tx
        * g_rx
        * lam**2
        * rcs_m2
        / ((4 * np.pi) ** 3 * one_way ** (2 * lb.pathloss_exponent))
    )
    tau = roundtrip_m / C0
    phase = -2 * np.pi * lb.carrier_freq_hz * tau
    return np.sqrt(power_gain) * np.exp(1j * phase)


def trace_paths(scene: Scene, sap: SapPose, lb: LinkBudget) -> PathSet:
    """Trace one path per scatter point of every target to the given SAP.

    A path is occluded iff the SAP-to-point segment intersects the
    scatter-point bounding box of any *other* target.
    """
    boxes = [target_bounding_box(t) for t in scene.targets]
    u = sap.boresight_xy()
    v = sap.right_xy()
    paths = []
    for ti, target in enumerate(scene.targets):
        pts = np.asarray(target.scatter_points)
        for pi in range(pts.shape[0]):
            p = pts[pi]
            d = p - sap.position
            dist = float(np.linalg.norm(d))
            horiz = float(np.hypot(d[0], d[1]))
            azimuth = float(np.arctan2(d[0] * v[0] + d[1] * v[1],
                                       d[0] * u[0] + d[1] * u[1]))
            elevation = float(np.arctan2(d[2], horiz))
            occluded = any(
                oi != ti and segment_intersects_aabb(sap.position, p, boxes[oi])
                for oi in range(len(boxes))
            )
            coeff = (
                0j
                if occluded
                else path_coefficient(
                    2 * dist, azimuth, elevation, lb, target.per_point_rcs[pi]
                )
            )
            paths.append(
                Path(ti, pi, 2 * dist, azimuth, elevation, coeff, occluded)
            )
    return PathSet(sap.sap_id, tuple(paths))


def build_ctf(paths: PathSet, n_sub: int, n_ant: int, delta_f: float,
              d: float, f_c: float) -> np.ndarray:
    """Synthesize the bandwidth-limited CTF from the visible paths.

    Entry (n, k) superposes ``alpha_p * exp(j 2 pi (-n delta_f tau_p
    + d k f_c sin(theta_p) / c))``.  Empty path set yields an all-zero
    matrix.
    """
    alphas, roundtrips, sin_thetas = paths.visible_arrays()
    return kernels.synthesize_ctf(
        alphas, roundtrips, sin_thetas, n_sub, n_ant, delta_f, d, f_c
    )


def paths_to_json(ps: PathSet) -> str:
    """Debug dump of a path set."""
    return json.dumps(
        {
            "sap_id": ps.sap_id,
            "paths": [
                {
                    "target": p.target_index,
                    "point": p.scatter_point_index,
                    "roundtrip_m": p.roundtrip_m,
                    "azimuth_rad": p.azimuth_rad,
                    "elevation_rad": p.elevation_rad,
                    "coeff_re": p.coefficient.real,
                    "coeff_im": p.coefficient.imag,
                    "occluded": p.occluded,
                }
                for p in ps.paths
            ],
        }
    )
