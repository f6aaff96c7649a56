"""Scene generation: rooms, sensing access point (SAP) placement, targets.

All geometry lives in a global right-handed frame: x/y span the room floor,
z is height.  Azimuth angles are measured counter-clockwise from the +x
axis.  Scenes are immutable value objects and deterministic in their seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

DEFAULT_SCATTER_SIGMAS = (0.1, 0.03, 0.5)  # m, per axis
DEFAULT_POINTS_PER_TARGET = 15
DEFAULT_TOTAL_RCS = 1.0  # m^2, human-like
DEFAULT_SAP_MOUNT_HEIGHT = 1.5  # m
DEFAULT_TARGET_CENTER_HEIGHT = 1.0  # m


@dataclass(frozen=True)
class Room:
    """Rectangular box room, origin at one floor corner."""

    side_x: float = 10.0
    side_y: float = 10.0
    height: float = 3.0

    def __post_init__(self):
        if self.side_x <= 0 or self.side_y <= 0 or self.height <= 0:
            raise ValueError("room extents must be positive")


@dataclass(frozen=True)
class SapPose:
    """A sensing access point mounted on a wall.

    ``boresight_azimuth`` is the global heading of the array normal
    (pointing into the room).  The local frame used for angle estimates has
    +y along the boresight and +x to the right of it.
    """

    position: np.ndarray  # (3,)
    boresight_azimuth: float  # rad, from global +x axis
    sap_id: int

    def boresight_xy(self) -> np.ndarray:
        return np.array(
            [np.cos(self.boresight_azimuth), np.sin(self.boresight_azimuth)]
        )

    def right_xy(self) -> np.ndarray:
        # local +x axis: boresight rotated -90 deg
        return np.array(
            [np.sin(self.boresight_azimuth), -np.cos(self.boresight_azimuth)]
        )


@dataclass(frozen=True)
class Target:
    """A scattering target: cloud of point scatterers around a center.

    Per-point RCS values are equal and sum to the total target RCS, so the
    expected aggregate echo power matches a single point target of the
    same RCS while individual acquisitions fluctuate.
    """

    center: np.ndarray  # (3,)
    scatter_points: np.ndarray  # (P, 3)
    per_point_rcs: np.ndarray  # (P,)


@dataclass(frozen=True)
class Aabb:
    """Axis-aligned bounding box, closed on all faces."""

    lo: np.ndarray  # (3,)
    hi: np.ndarray  # (3,)


@dataclass(frozen=True)
class Scene:
    room: Room
    saps: tuple
    targets: tuple
    seed: int = 0


# wall order: -x, +x, -y, +y; boresight is the inward wall normal
_WALL_AZIMUTHS = (0.0, np.pi, np.pi / 2, -np.pi / 2)


def place_saps(room: Room, n: int, mount_height: float = DEFAULT_SAP_MOUNT_HEIGHT):
    """Place ``n`` SAPs centered on the room walls, boresight into the room.

    Order is deterministic: -x, +x, -y, +y wall.
    """
    if not 1 <= n <= 4:
        raise ValueError(f"SAP count must be in 1..4, got {n}")
    sx, sy = room.side_x, room.side_y
    positions = (
        (0.0, sy / 2, mount_height),
        (sx, sy / 2, mount_height),
        (sx / 2, 0.0, mount_height),
        (sx / 2, sy, mount_height),
    )
    return [
        SapPose(np.array(positions[i]), _WALL_AZIMUTHS[i], sap_id=i)
        for i in range(n)
    ]


def spawn_targets(
    room: Room,
    n_targets: int,
    rng_seed,
    n_points: int = DEFAULT_POINTS_PER_TARGET,
    total_rcs: float = DEFAULT_TOTAL_RCS,
    scatter_sigmas=DEFAULT_SCATTER_SIGMAS,
    center_height: float = DEFAULT_TARGET_CENTER_HEIGHT,
):
    """Spawn targets with uniform centers and Gaussian scatter-point clouds.

    Centers are uniform over the room footprint at fixed height; each
    target gets ``n_points`` i.i.d. Gaussian offsets with per-axis sigmas.
    Deterministic in ``rng_seed``.
    """
    if n_targets < 1:
        raise ValueError(f"need at least one target, got {n_targets}")
    rng = np.random.default_rng(rng_seed)
    sigmas = np.asarray(scatter_sigmas, dtype=float)
    targets = []
    for _ in range(n_targets):
        center = np.array(
            [
                rng.uniform(0.0, room.side_x),
                rng.uniform(0.0, room.side_y),
                center_height,
            ]
        )
        offsets = rng.normal(0.0, 1.0, size=(n_points, 3)) * sigmas
        rcs = np.full(n_points, total_rcs / n_points)
        targets.append(Target(center, center + offsets, rcs))
    return targets


def target_bounding_box(t: Target) -> Aabb:
    """Tight AABB over the target's scatter points."""
    pts = np.asarray(t.scatter_points)
    if pts.size == 0:
        raise ValueError("target has no scatter points")
    return Aabb(pts.min(axis=0), pts.max(axis=0))


def make_scene(
    room: Room,
    n_saps: int,
    n_targets: int,
    seed: int,
    mount_height: float = DEFAULT_SAP_MOUNT_HEIGHT,
    **target_kwargs,
) -> Scene:
    saps = place_saps(room, n_saps, mount_height)
    targets = spawn_targets(room, n_targets, seed, **target_kwargs)
    return Scene(room, tuple(saps), tuple(targets), seed=seed)


def scene_to_dict(scene: Scene) -> dict:
    """JSON-ready scene dump for debugging and plotting."""
    return {
        "room": {
            "side_x": scene.room.side_x,
            "side_y": scene.room.side_y,
            "height": scene.room.height,
        },
        "seed": scene.seed if isinstance(scene.seed, int) else None,
        "saps": [
            {
                "id": s.sap_id,
                "position": list(map(float, s.position)),
                "boresight_azimuth": float(s.boresight_azimuth),
            }
            for s in scene.saps
        ],
        "targets": [
            {
                "center": list(map(float, t.center)),
                "scatter_points": np.asarray(t.scatter_points).tolist(),
                "per_point_rcs": np.asarray(t.per_point_rcs).tolist(),
            }
            for t in scene.targets
        ],
    }
