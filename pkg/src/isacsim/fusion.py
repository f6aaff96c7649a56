"""Central fusion of per-SAP peak reports into global 2D target estimates.

Peaks are transformed to the global frame, clustered per SAP (merging
returns closer than physically resolvable), merged across SAPs with the
same distance linkage, then passed through plausibility filters (room
boundary, optional two-node requirement).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from isacsim.extraction import PeakReport
from isacsim.scene import Room, SapPose


@dataclass(frozen=True)
class GlobalDetection:
    position: np.ndarray  # (2,) global xy, meters
    power_dbm: float
    sources: frozenset  # SAP ids
    members: int  # peaks merged into this estimate


@dataclass(frozen=True)
class FusionConfig:
    merge_eps_m: float  # double the range resolution
    room: Room
    require_multinode: bool = False
    room_margin_m: float = 0.5

    def __post_init__(self):
        if self.merge_eps_m <= 0:
            raise ValueError("merging distance must be positive")


def to_global(peak: PeakReport, pose: SapPose) -> np.ndarray:
    """Peak (round-trip, azimuth) to global floor-plane coordinates."""
    r = peak.roundtrip_m / 2
    local_x = r * np.sin(peak.azimuth_rad)
    local_y = r * np.cos(peak.azimuth_rad)
    return pose.position[:2] + local_x * pose.right_xy() + local_y * pose.boresight_xy()


def cluster(points: np.ndarray, eps: float) -> list[list[int]]:
    """Distance linkage (DBSCAN with min_points=1): connected components of
    the eps-neighborhood graph.  Deterministic order: by first member index.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    pts = np.asarray(points, dtype=float)
    n = pts.shape[0]
    if n == 0:
        return []
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    d2 = np.sum((pts[:, None, :] - pts[None, :, :]) ** 2, axis=-1)
    eps2 = eps * eps
    for i in range(n):
        for j in range(i + 1, n):
            if d2[i, j] <= eps2:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return [groups[r] for r in sorted(groups)]


def _dbm_to_w(dbm: float) -> float:
    return 10 ** ((dbm - 30) / 10)


def _w_to_dbm(w: float) -> float:
    return 10 * np.log10(w) + 30


def _merge(detections: list[GlobalDetection], eps: float) -> list[GlobalDetection]:
    """Replace each eps-cluster by its power-weighted centroid."""
    if not detections:
        return []
    pts = np.array([d.position for d in detections])
    merged = []
    for members in cluster(pts, eps):
        weights = np.array([_dbm_to_w(detections[i].power_dbm) for i in members])
        centroid = (pts[members] * weights[:, None]).sum(axis=0) / weights.sum()
        merged.append(
            GlobalDetection(
                position=centroid,
                power_dbm=_w_to_dbm(weights.sum()),
                sources=frozenset().union(*(detections[i].sources for i in members)),
                members=int(sum(detections[i].members for i in members)),
            )
        )
    return merged


def fuse(
    per_sap_peaks: dict[int, list[PeakReport]],
    poses: dict[int, SapPose],
    cfg: FusionConfig,
) -> list[GlobalDetection]:
    """Full fusion chain: transform, intra-SAP merge, inter-SAP merge, filter."""
    representatives: list[GlobalDetection] = []
    for sap_id in sorted(per_sap_peaks):
        raw = [
            GlobalDetection(
                position=to_global(p, poses[sap_id]),
                power_dbm=p.power_dbm,
                sources=frozenset({sap_id}),
                members=1,
            )
            for p in per_sap_peaks[sap_id]
        ]
        representatives.extend(_merge(raw, cfg.merge_eps_m))
    fused = _merge(representatives, cfg.merge_eps_m)

    m = cfg.room_margin_m
    fused = [
        d
        for d in fused
        if -m <= d.position[0] <= cfg.room.side_x + m
        and -m <= d.position[1] <= cfg.room.side_y + m
    ]
    if cfg.require_multinode:
        fused = [d for d in fused if len(d.sources) >= 2]
    return fused


def detections_to_json(detections: list[GlobalDetection]) -> str:
    return json.dumps(
        [
            {
                "position": list(map(float, d.position)),
                "power_dbm": d.power_dbm,
                "sources": sorted(d.sources),
                "members": d.members,
            }
            for d in detections
        ]
    )
