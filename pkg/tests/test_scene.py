"""Scene generation: SAP placement, target spawning, determinism."""

import numpy as np
import pytest

from isacsim.scene import (
    Room,
    Scene,
    Target,
    make_scene,
    place_saps,
    scene_to_dict,
    spawn_targets,
    target_bounding_box,
)


def test_room_rejects_nonpositive_extent():
    with pytest.raises(ValueError):
        Room(0.0, 10.0, 3.0)
    with pytest.raises(ValueError):
        Room(10.0, 10.0, -1.0)


def test_place_saps_on_wall_midpoints():
    room = Room(10.0, 8.0, 3.0)
    saps = place_saps(room, 4, mount_height=1.5)
    positions = [tuple(s.position) for s in saps]
    assert positions == [
        (0.0, 4.0, 1.5),
        (10.0, 4.0, 1.5),
        (5.0, 0.0, 1.5),
        (5.0, 8.0, 1.5),
    ]
    assert [s.sap_id for s in saps] == [0, 1, 2, 3]


def test_boresights_point_into_room():
    room = Room(10.0, 10.0, 3.0)
    center = np.array([5.0, 5.0])
    for sap in place_saps(room, 4):
        to_center = center - sap.position[:2]
        to_center /= np.linalg.norm(to_center)
        assert np.dot(sap.boresight_xy(), to_center) > 0.99


def test_local_frame_is_right_handed():
    for sap in place_saps(Room(), 4):
        u = sap.boresight_xy()
        v = sap.right_xy()
        assert abs(np.dot(u, v)) < 1e-12
        # right axis = boresight rotated -90 degrees (clockwise)
        cross = u[0] * v[1] - u[1] * v[0]
        assert cross == pytest.approx(-1.0)


def test_place_saps_count_bounds():
    room = Room()
    assert len(place_saps(room, 1)) == 1
    with pytest.raises(ValueError):
        place_saps(room, 0)
    with pytest.raises(ValueError):
        place_saps(room, 5)


def test_spawn_targets_shapes_and_rcs():
    room = Room()
    targets = spawn_targets(room, 3, rng_seed=7, n_points=15, total_rcs=1.0)
    assert len(targets) == 3
    for t in targets:
        assert t.scatter_points.shape == (15, 3)
        assert t.per_point_rcs.shape == (15,)
        assert np.allclose(t.per_point_rcs, 1.0 / 15)
        assert t.per_point_rcs.sum() == pytest.approx(1.0)


def test_spawn_targets_centers_inside_room():
    room = Room(6.0, 4.0, 3.0)
    targets = spawn_targets(room, 50, rng_seed=3, center_height=1.0)
    centers = np.array([t.center for t in targets])
    assert np.all(centers[:, 0] >= 0) and np.all(centers[:, 0] <= 6.0)
    assert np.all(centers[:, 1] >= 0) and np.all(centers[:, 1] <= 4.0)
    assert np.all(centers[:, 2] == 1.0)


def test_spawn_targets_scatter_statistics():
    # per-axis sample std over many points approximates the configured sigmas
    room = Room(100.0, 100.0, 3.0)
    sigmas = (0.1, 0.03, 0.5)
    targets = spawn_targets(room, 200, rng_seed=11, n_points=15,
                            scatter_sigmas=sigmas)
    offsets = np.concatenate(
        [t.scatter_points - t.center for t in targets], axis=0
    )
    sample_std = offsets.std(axis=0)
    assert np.allclose(sample_std, sigmas, rtol=0.1)


def test_spawn_targets_deterministic_in_seed():
    room = Room()
    a = spawn_targets(room, 4, rng_seed=42)
    b = spawn_targets(room, 4, rng_seed=42)
    c = spawn_targets(room, 4, rng_seed=43)
    for ta, tb in zip(a, b):
        assert np.array_equal(ta.center, tb.center)
        assert np.array_equal(ta.scatter_points, tb.scatter_points)
    assert not np.array_equal(a[0].center, c[0].center)


def test_spawn_targets_rejects_zero_targets():
    with pytest.raises(ValueError):
        spawn_targets(Room(), 0, rng_seed=1)


def test_target_bounding_box_is_tight():
    pts = np.array([[0.0, 1.0, 2.0], [3.0, -1.0, 0.5], [1.0, 0.0, 1.0]])
    box = target_bounding_box(Target(pts.mean(axis=0), pts, np.ones(3) / 3))
    assert np.array_equal(box.lo, [0.0, -1.0, 0.5])
    assert np.array_equal(box.hi, [3.0, 1.0, 2.0])


def test_make_scene_composition():
    scene = make_scene(Room(), 2, 3, seed=5)
    assert isinstance(scene, Scene)
    assert len(scene.saps) == 2
    assert len(scene.targets) == 3


def test_scene_to_dict_roundtrippable_json():
    import json

    scene = make_scene(Room(), 4, 2, seed=9)
    d = scene_to_dict(scene)
    parsed = json.loads(json.dumps(d))
    assert len(parsed["saps"]) == 4
    assert len(parsed["targets"]) == 2
    assert parsed["room"]["side_x"] == 10.0
