/** Synthetic sweep and run-dump fixtures for renderer tests. */
import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";

export function tmpDir(): string {
  return fs.mkdtempSync(path.join(os.tmpdir(), "figtest-"));
}

export interface SweepFixtureOpts {
  axis?: string;
  values?: number[];
  sapCounts?: number[];
  filters?: number[];
  config?: Record<string, unknown>;
  schemaVersion?: number;
  emptyCsv?: boolean;
  headerOnly?: boolean;
}

export function writeSweepDir(dir: string, opts: SweepFixtureOpts = {}): string {
  const axis = opts.axis ?? "noise_power_dbm";
  const values = opts.values ?? [-80, -45, -40];
  const sapCounts = opts.sapCounts ?? [1, 2, 3, 4];
  const filters = opts.filters ?? [0, 1];
  const config = {
    n_ant: 8,
    bandwidth_hz: 800e6,
    n_sub: 2984,
    ...(opts.config ?? {}),
  };
  fs.mkdirSync(dir, { recursive: true });
  const manifest = {
    csv_schema_version: opts.schemaVersion ?? 1,
    code_version: "0.1.0",
    axis,
    values,
    drops_per_point: 300,
    seed: 7,
    sap_counts: sapCounts,
    filters,
    config,
  };
  fs.writeFileSync(
    path.join(dir, "manifest.json"),
    JSON.stringify(manifest, null, 2) + "\n",
  );
  const header =
    "axis_value,n_saps,filter,p_det,ci_lo,ci_hi,precision,f1,p_occ,drops";
  const rows: string[] = [];
  if (!opts.headerOnly) {
    for (const v of values) {
      for (const n of sapCounts) {
        for (const f of filters) {
          // Smooth synthetic detection profile, distinct per series.
          const p = Math.min(0.99, 0.4 + 0.1 * n + 0.05 * f);
          const lo = Math.max(0, p - 0.04);
          const hi = Math.min(1, p + 0.04);
          rows.push(
            [v, n, f, p.toFixed(6), lo.toFixed(6), hi.toFixed(6),
             (0.8 + 0.02 * f).toFixed(6), p.toFixed(6), "0.050000", 300].join(","),
          );
        }
      }
    }
  }
  const csv = opts.emptyCsv ? "" : [header, ...rows].join("\n") + "\n";
  fs.writeFileSync(path.join(dir, "results.csv"), csv);
  return dir;
}

export function writeRunDir(dir: string, nSaps = 2): string {
  fs.mkdirSync(dir, { recursive: true });
  const scene = {
    room: { side_x: 6, side_y: 6, height: 3 },
    seed: 1,
    saps: Array.from({ length: nSaps }, (_, i) => ({
      id: i,
      position: [3, i === 0 ? 0 : 6, 2.5],
      boresight_azimuth: i === 0 ? Math.PI / 2 : -Math.PI / 2,
    })),
    targets: [{ center: [2, 3, 1.2], scatter_points: [], per_point_rcs: [] }],
  };
  fs.writeFileSync(
    path.join(dir, "scene.json"),
    JSON.stringify(scene, null, 2) + "\n",
  );
  const nFft = 64;
  const kFft = 8;
  for (let s = 0; s < nSaps; s++) {
    const sidecar = {
      schema_version: 1,
      dtype: "float64",
      order: "row-major",
      n_fft: nFft,
      k_fft: kFft,
      n_sub: 32,
      n_ant: 8,
      delta_f_hz: 480e3,
      element_spacing_m: 0.0058,
      carrier_freq_hz: 26e9,
      noise_floor_scale: 1.0,
    };
    fs.writeFileSync(
      path.join(dir, `periodogram_sap${s}.json`),
      JSON.stringify(sidecar, null, 2) + "\n",
    );
    const values = new Float64Array(nFft * kFft);
    for (let i = 0; i < values.length; i++) {
      values[i] = 1e-12 * (1 + ((i * 2654435761) % 97) / 97);
    }
    values[5 * kFft + 2] = 1e-6; // a visible peak
    fs.writeFileSync(
      path.join(dir, `periodogram_sap${s}.bin`),
      Buffer.from(values.buffer),
    );
    const peak = {
      roundtrip_m: 7.5,
      azimuth_rad: 0.4,
      power_dbm: -60,
      bin: [5, 2],
      radii: [2, 1],
      sap_id: s,
      noise_power_dbm: -85,
    };
    fs.writeFileSync(
      path.join(dir, `peaks_sap${s}.jsonl`),
      JSON.stringify(peak) + "\n",
    );
  }
  const fused = [
    { position: [2.1, 3.05, 0], power_dbm: -60, sources: [0, 1], members: 2 },
  ];
  fs.writeFileSync(
    path.join(dir, "fused.json"),
    JSON.stringify(fused) + "\n",
  );
  return dir;
}

export function count(haystack: string, needle: string): number {
  return haystack.split(needle).length - 1;
}
