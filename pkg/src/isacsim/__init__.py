"""Multi-static OFDM radar sensing simulator.

Pipeline: scene generation -> free-space raytracing -> channel transfer
function synthesis -> OFDM modulation/noise/equalization -> range-angle
periodogram -> CFAR successive-cancellation peak extraction -> multi-node
fusion -> detection metrics.  The experiment harness wraps the pipeline in
seeded Monte-Carlo parameter sweeps.
"""

from isacsim.scene import Room, SapPose, Target, Scene, place_saps, spawn_targets
from isacsim.raytrace import LinkBudget, Path, PathSet, trace_paths, build_ctf
from isacsim.ofdm import OfdmConfig, NoiseSpec
from isacsim.periodogram import WindowSpec, Periodogram, compute_periodogram
from isacsim.extraction import CfarSpec, PeakReport, extract_peaks
from isacsim.fusion import FusionConfig, GlobalDetection, fuse
from isacsim.evaluation import match_detections, detection_metrics

__version__ = "0.1.0"

__all__ = [
    "Room",
    "SapPose",
    "Target",
    "Scene",
    "place_saps",
    "spawn_targets",
    "LinkBudget",
    "Path",
    "PathSet",
    "trace_paths",
    "build_ctf",
    "OfdmConfig",
    "NoiseSpec",
    "WindowSpec",
    "Periodogram",
    "compute_periodogram",
    "CfarSpec",
    "PeakReport",
    "extract_peaks",
    "FusionConfig",
    "GlobalDetection",
    "fuse",
    "match_detections",
    "detection_metrics",
    "__version__",
]
