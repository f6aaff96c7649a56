"""Command-line interface.

Subcommands:
  run       one drop; optional periodogram / scene dumps
  sweep     Monte-Carlo parameter sweep, CSV + manifest output
  baseline  single-impulsive-target reference curve over noise power
  validate  calibration and invariant checks

Config comes from an optional YAML file; ``--set key=value`` flags
override individual fields.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from isacsim.config import SimConfig
from isacsim.harness import (
    SweepSpec,
    dump_periodogram,
    run_baseline,
    run_drop,
    run_sweep,
    SWEEP_AXES,
)


def _parse_set(pairs):
    out = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise SystemExit(f"--set expects key=value, got {pair!r}")
        key, raw = pair.split("=", 1)
        try:
            out[key] = json.loads(raw)
        except json.JSONDecodeError:
            out[key] = raw
    return out


def _load_config(args) -> SimConfig:
    overrides = _parse_set(getattr(args, "set", None))
    if args.config:
        return SimConfig.from_yaml(args.config, overrides)
    return SimConfig.from_dict(overrides)


def _add_common(p):
    p.add_argument("--config", type=Path, default=None, help="YAML config file")
    p.add_argument("--set", action="append", metavar="KEY=VALUE",
                   help="override a config field (repeatable)")
    p.add_argument("--seed", type=int, required=True, help="root RNG seed")
    p.add_argument("--out", type=Path, required=True, help="output directory")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="isacsim", description="multi-static OFDM radar sensing simulator"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a single drop")
    _add_common(p_run)
    p_run.add_argument("--dump-periodograms", action="store_true",
                       help="write per-SAP periodogram grids")

    p_sweep = sub.add_parser("sweep", help="run a parameter sweep")
    _add_common(p_sweep)
    p_sweep.add_argument("--axis", choices=SWEEP_AXES, required=True)
    p_sweep.add_argument("--values", required=True,
                         help="comma-separated axis values")
    p_sweep.add_argument("--drops", type=int, required=True,
                         help="Monte-Carlo drops per sweep point")

    p_base = sub.add_parser("baseline", help="single-target reference curve")
    _add_common(p_base)
    p_base.add_argument("--values", required=True,
                        help="comma-separated noise powers in dBm")
    p_base.add_argument("--drops", type=int, required=True)

    p_val = sub.add_parser("validate", help="calibration / invariant checks")

    args = parser.parse_args(argv)

    if args.command == "validate":
        from isacsim import validate

        results, ok = validate.run_all()
        for name, passed, detail in results:
            print(f"{'PASS' if passed else 'FAIL'}  {name}: {detail}")
        return 0 if ok else 1

    cfg = _load_config(args)

    if args.command == "run":
        args.out.mkdir(parents=True, exist_ok=True)
        result = run_drop(cfg, args.seed)
        summary = {
            "seed": args.seed,
            "n_targets": result.n_targets,
            "per_sap_peak_counts": result.per_sap_peak_counts,
            "fused_count": result.fused_count,
            "p_det": result.metrics.p_det,
            "precision": result.metrics.precision,
            "f1": result.metrics.f1,
            "p_occ": result.metrics.p_occ,
            "elapsed_s": result.elapsed_s,
        }
        (args.out / "drop.json").write_text(json.dumps(summary, indent=2) + "\n")
        if args.dump_periodograms:
            _dump_drop_periodograms(cfg, args.seed, args.out)
        print(json.dumps(summary, indent=2))
        return 0

    if args.command == "sweep":
        values = [_coerce(v) for v in args.values.split(",")]
        spec = SweepSpec(
            axis=args.axis,
            values=tuple(values),
            drops_per_point=args.drops,
            base=cfg,
            seed=args.seed,
        )
        rows = run_sweep(spec, args.out,
                         progress=_progress if sys.stderr.isatty() else None)
        print(f"wrote {len(rows)} rows to {args.out / 'results.csv'}")
        return 0

    if args.command == "baseline":
        values = [float(v) for v in args.values.split(",")]
        rows = run_baseline(cfg, values, args.drops, args.seed, args.out)
        print(f"wrote {len(rows)} rows to {args.out / 'baseline.csv'}")
        return 0

    return 2


def _coerce(v: str):
    try:
        f = float(v)
        return int(f) if f.is_integer() else f
    except ValueError:
        return v


def _progress(value, drop):
    print(f"\r  point {value}: drop {drop + 1}", end="", file=sys.stderr)


def _dump_drop_periodograms(cfg: SimConfig, seed: int, out: Path):
    """Re-run the per-SAP chain, dumping grids, peaks, scene, and estimates."""
    import numpy as np

    from isacsim.extraction import extract_peaks
    from isacsim.fusion import FusionConfig, detections_to_json, fuse
    from isacsim.harness import noise_power_dbm
    from isacsim.ofdm import (
        NoiseSpec,
        apply_channel_and_noise,
        equalize,
        generate_symbols,
    )
    from isacsim.periodogram import compute_periodogram
    from isacsim.raytrace import build_ctf, trace_paths
    from isacsim.scene import make_scene, scene_to_dict

    ss = np.random.SeedSequence(seed)
    scene_ss, *stream_ss = ss.spawn(1 + 2 * cfg.n_saps)
    n_targets = cfg.n_targets
    if n_targets is None:
        pick = np.random.default_rng(scene_ss.spawn(1)[0])
        n_targets = int(pick.integers(1, cfg.max_targets + 1))
    scene = make_scene(
        cfg.room(), cfg.n_saps, n_targets, seed=scene_ss,
        mount_height=cfg.sap_mount_height_m,
        n_points=cfg.scatter_points_per_target,
        total_rcs=cfg.target_rcs_m2,
        center_height=cfg.target_center_height_m,
    )
    (out / "scene.json").write_text(json.dumps(scene_to_dict(scene), indent=2) + "\n")
    noise = NoiseSpec.from_dbm(noise_power_dbm(cfg), cfg.n_sub)
    per_sap = {}
    for i, sap in enumerate(scene.saps):
        paths = trace_paths(scene, sap, cfg.link_budget())
        H = build_ctf(paths, cfg.n_sub, cfg.n_ant, cfg.delta_f,
                      cfg.element_spacing_m, cfg.carrier_freq_hz)
        x = generate_symbols(cfg.n_sub, np.random.default_rng(stream_ss[2 * i]),
                             cfg.ofdm().symbol_power_w)
        y = apply_channel_and_noise(H, x, noise,
                                    np.random.default_rng(stream_ss[2 * i + 1]))
        pg = compute_periodogram(
            equalize(y, x), cfg.window(), cfg.delta_f, cfg.element_spacing_m,
            cfg.carrier_freq_hz, cfg.pad_factor,
        )
        dump_periodogram(pg, out / f"periodogram_sap{sap.sap_id}")
        floor = noise.sigma2 * pg.noise_floor_scale
        peaks = extract_peaks(pg, cfg.cfar(), floor, sap_id=sap.sap_id)
        per_sap[sap.sap_id] = peaks
        with open(out / f"peaks_sap{sap.sap_id}.jsonl", "w") as fh:
            for p in peaks:
                fh.write(p.to_json() + "\n")
    fused = fuse(
        per_sap,
        {s.sap_id: s for s in scene.saps},
        FusionConfig(
            merge_eps_m=2 * cfg.range_resolution_m,
            room=cfg.room(),
            require_multinode=cfg.require_multinode,
            room_margin_m=cfg.room_margin_m,
        ),
    )
    (out / "fused.json").write_text(detections_to_json(fused) + "\n")


if __name__ == "__main__":
    raise SystemExit(main())
