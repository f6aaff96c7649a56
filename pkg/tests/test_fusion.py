"""Fusion: global transform, clustering, merging, plausibility filters."""

import itertools
import json

import numpy as np
import pytest

from isacsim.extraction import PeakReport
from isacsim.fusion import (
    FusionConfig,
    GlobalDetection,
    cluster,
    detections_to_json,
    fuse,
    to_global,
)
from isacsim.scene import Room, SapPose, place_saps


def _peak(roundtrip, azimuth, power_dbm=-50.0, sap_id=0):
    return PeakReport(
        roundtrip_m=roundtrip, azimuth_rad=azimuth, power_dbm=power_dbm,
        bin_range=0, bin_angle=0, radius_range=1, radius_angle=1,
        sap_id=sap_id, noise_power_dbm=-90.0,
    )


def _pose(x, y, azimuth, sap_id=0):
    return SapPose(np.array([x, y, 1.5]), azimuth, sap_id)


def test_to_global_boresight():
    # SAP at origin facing +y: a 10 m round trip on boresight lands at (0, 5)
    pose = _pose(0.0, 0.0, np.pi / 2)
    g = to_global(_peak(10.0, 0.0), pose)
    assert np.allclose(g, [0.0, 5.0], atol=1e-12)


def test_to_global_offset_angle():
    # +30 degrees toward the local right at R=2
    pose = _pose(0.0, 0.0, np.pi / 2)
    g = to_global(_peak(4.0, np.pi / 6), pose)
    assert np.allclose(g, [1.0, np.sqrt(3.0)], atol=1e-12)


def test_to_global_inverse_roundtrip():
    rng = np.random.default_rng(41)
    for _ in range(100):
        pose = _pose(rng.uniform(0, 10), rng.uniform(0, 10), rng.uniform(-np.pi, np.pi))
        roundtrip = rng.uniform(0.5, 30.0)
        azimuth = rng.uniform(-np.pi / 2 + 1e-3, np.pi / 2 - 1e-3)
        g = to_global(_peak(roundtrip, azimuth), pose)
        # invert: distance gives the round trip, local angle the azimuth
        rel = g - pose.position[:2]
        r = np.linalg.norm(rel)
        local_x = np.dot(rel, pose.right_xy())
        local_y = np.dot(rel, pose.boresight_xy())
        assert 2 * r == pytest.approx(roundtrip, abs=1e-9)
        assert np.arctan2(local_x, local_y) == pytest.approx(azimuth, abs=1e-9)


def test_cluster_pair_within_eps():
    pts = np.array([[0.0, 0.0], [0.4, 0.0]])
    assert cluster(pts, eps=0.8) == [[0, 1]]


def test_cluster_pair_beyond_eps():
    pts = np.array([[0.0, 0.0], [2.4, 0.0]])
    assert cluster(pts, eps=0.8) == [[0], [1]]


def test_cluster_chain_transitivity():
    # a-b and b-c within eps, a-c beyond: all one component
    pts = np.array([[0.0, 0.0], [0.7, 0.0], [1.4, 0.0]])
    assert cluster(pts, eps=0.8) == [[0, 1, 2]]


def test_cluster_empty():
    assert cluster(np.zeros((0, 2)), eps=1.0) == []


def test_cluster_rejects_bad_eps():
    with pytest.raises(ValueError):
        cluster(np.zeros((2, 2)), eps=0.0)


def test_cluster_matches_graph_components_oracle():
    rng = np.random.default_rng(42)
    for trial in range(20):
        pts = rng.uniform(0, 5, size=(100, 2))
        eps = rng.uniform(0.2, 0.8)
        got = cluster(pts, eps)
        # brute-force connected components of the <=eps adjacency graph
        n = len(pts)
        adj = (
            np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=-1) <= eps
        )
        labels = [-1] * n
        comp = 0
        for i in range(n):
            if labels[i] != -1:
                continue
            stack = [i]
            while stack:
                j = stack.pop()
                if labels[j] != -1:
                    continue
                labels[j] = comp
                stack.extend(np.nonzero(adj[j])[0].tolist())
            comp += 1
        oracle = {}
        for i, lab in enumerate(labels):
            oracle.setdefault(lab, []).append(i)
        assert sorted(map(sorted, got)) == sorted(map(sorted, oracle.values()))


def _fusion_cfg(**kw):
    defaults = dict(merge_eps_m=0.375, room=Room(), require_multinode=False)
    defaults.update(kw)
    return FusionConfig(**defaults)


def test_fuse_single_peak_passthrough():
    poses = {0: _pose(0.0, 5.0, 0.0)}
    peaks = {0: [_peak(10.0, 0.0)]}
    out = fuse(peaks, poses, _fusion_cfg())
    assert len(out) == 1
    assert np.allclose(out[0].position, [5.0, 5.0])
    assert out[0].sources == frozenset({0})


def test_fuse_two_saps_same_point_merges():
    room = Room()
    saps = place_saps(room, 2)
    poses = {s.sap_id: s for s in saps}
    # both SAPs observe the room center
    peaks = {
        0: [_peak(10.0, 0.0, sap_id=0)],
        1: [_peak(10.0, 0.0, sap_id=1)],
    }
    out = fuse(peaks, poses, _fusion_cfg(require_multinode=True))
    assert len(out) == 1
    assert out[0].sources == frozenset({0, 1})
    assert np.allclose(out[0].position, [5.0, 5.0], atol=1e-9)


def test_fuse_multinode_filter_drops_singletons():
    poses = {0: _pose(0.0, 5.0, 0.0), 1: _pose(10.0, 5.0, np.pi)}
    peaks = {
        0: [_peak(4.0, 0.0, sap_id=0)],   # (2, 5), only SAP 0
        1: [_peak(4.0, 0.0, sap_id=1)],   # (8, 5), only SAP 1
    }
    out = fuse(peaks, poses, _fusion_cfg(require_multinode=True))
    assert out == []
    out_nofilter = fuse(peaks, poses, _fusion_cfg())
    assert len(out_nofilter) == 2


def test_fuse_room_filter():
    poses = {0: _pose(0.0, 5.0, 0.0)}
    inside = _peak(4.0, 0.0)
    beyond = _peak(25.0, 0.0)  # 12.5 m into a 10 m room
    out = fuse({0: [inside, beyond]}, poses, _fusion_cfg())
    assert len(out) == 1
    assert out[0].position[0] == pytest.approx(2.0)


def test_fuse_room_margin_keeps_near_wall():
    poses = {0: _pose(0.0, 5.0, 0.0)}
    near_wall = _peak(20.8, 0.0)  # x = 10.4, inside the 0.5 m margin
    out = fuse({0: [near_wall]}, poses, _fusion_cfg(room_margin_m=0.5))
    assert len(out) == 1


def test_fuse_power_weighted_centroid():
    poses = {0: _pose(0.0, 5.0, 0.0)}
    # two intra-SAP peaks 0.2 m apart, one 10 dB stronger
    strong = _peak(10.0, 0.0, power_dbm=-40.0)
    weak = _peak(10.4, 0.0, power_dbm=-50.0)
    out = fuse({0: [strong, weak]}, poses, _fusion_cfg())
    assert len(out) == 1
    w_s, w_w = 10 ** ((-40 - 30) / 10), 10 ** ((-50 - 30) / 10)
    expected_x = (5.0 * w_s + 5.2 * w_w) / (w_s + w_w)
    assert out[0].position[0] == pytest.approx(expected_x, rel=1e-9)
    # merged power adds in watts
    assert out[0].power_dbm == pytest.approx(10 * np.log10(w_s + w_w) + 30)
    assert out[0].members == 2


def test_fuse_never_multiplies_estimates():
    rng = np.random.default_rng(43)
    poses = {i: p for i, p in enumerate(place_saps(Room(), 4))}
    for _ in range(10):
        peaks = {
            i: [
                _peak(rng.uniform(2, 25), rng.uniform(-1.2, 1.2), sap_id=i)
                for _ in range(rng.integers(0, 6))
            ]
            for i in range(4)
        }
        n_in = sum(len(v) for v in peaks.values())
        out = fuse(peaks, poses, _fusion_cfg())
        assert len(out) <= n_in


def test_fuse_order_invariance():
    rng = np.random.default_rng(44)
    poses = {i: p for i, p in enumerate(place_saps(Room(), 3))}
    peaks = {
        i: [
            _peak(rng.uniform(2, 20), rng.uniform(-1.0, 1.0), rng.uniform(-60, -40), i)
            for _ in range(4)
        ]
        for i in range(3)
    }
    ref = fuse(peaks, poses, _fusion_cfg())
    ref_set = sorted(
        (round(d.position[0], 9), round(d.position[1], 9), round(d.power_dbm, 9))
        for d in ref
    )
    for perm in itertools.permutations(range(3)):
        shuffled = {i: list(reversed(peaks[i])) for i in perm}
        got = fuse(shuffled, poses, _fusion_cfg())
        got_set = sorted(
            (round(d.position[0], 9), round(d.position[1], 9), round(d.power_dbm, 9))
            for d in got
        )
        assert got_set == ref_set


def test_fuse_centroid_in_convex_hull():
    rng = np.random.default_rng(45)
    poses = {i: p for i, p in enumerate(place_saps(Room(), 4))}
    peaks = {
        i: [
            _peak(rng.uniform(2, 20), rng.uniform(-1.0, 1.0), rng.uniform(-60, -40), i)
            for _ in range(5)
        ]
        for i in range(4)
    }
    all_pts = np.array(
        [to_global(p, poses[i]) for i in range(4) for p in peaks[i]]
    )
    lo, hi = all_pts.min(axis=0), all_pts.max(axis=0)
    for d in fuse(peaks, poses, _fusion_cfg(room_margin_m=100.0)):
        # bounding-box relaxation of the hull is enough for a weighted mean
        assert np.all(d.position >= lo - 1e-9)
        assert np.all(d.position <= hi + 1e-9)


def test_detections_to_json():
    d = GlobalDetection(np.array([1.0, 2.0]), -45.0, frozenset({0, 2}), 3)
    parsed = json.loads(detections_to_json([d]))
    assert parsed == [
        {"position": [1.0, 2.0], "power_dbm": -45.0, "sources": [0, 2], "members": 3}
    ]
