/**
 * Readers for the harness artifacts: sweep CSV + manifest, periodogram
 * binary dumps with JSON sidecars, scene / peaks / fused JSON.
 */
import * as fs from "node:fs";
import * as path from "node:path";

export const SUPPORTED_SCHEMA_VERSION = 1;

export const CSV_COLUMNS = [
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
] as const;

export class SchemaVersionError extends Error {
  constructor(found: unknown, where: string) {
    super(
      `schema version mismatch in ${where}: found ${JSON.stringify(found)}, ` +
        `this renderer supports version ${SUPPORTED_SCHEMA_VERSION}`,
    );
    this.name = "SchemaVersionError";
  }
}

export interface SweepRow {
  axis_value: number;
  n_saps: number;
  filter: number;
  p_det: number;
  ci_lo: number;
  ci_hi: number;
  precision: number;
  f1: number;
  p_occ: number;
  drops: number;
}

export interface Manifest {
  csv_schema_version: number;
  code_version: string;
  axis: string;
  values: number[];
  drops_per_point: number;
  seed: number;
  sap_counts: number[];
  filters: number[];
  config: Record<string, unknown>;
}

export interface Sweep {
  manifest: Manifest;
  rows: SweepRow[];
  dir: string;
}

export function parseResultsCsv(text: string, where: string): SweepRow[] {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new Error(`empty CSV: ${where} has no header row`);
  }
  const header = lines[0].split(",");
  if (header.join(",") !== CSV_COLUMNS.join(",")) {
    throw new Error(
      `unexpected CSV header in ${where}: got "${lines[0]}", ` +
        `expected "${CSV_COLUMNS.join(",")}"`,
    );
  }
  if (lines.length === 1) {
    throw new Error(`empty CSV: ${where} has a header but no data rows`);
  }
  return lines.slice(1).map((line, i) => {
    const cells = line.split(",");
    if (cells.length !== CSV_COLUMNS.length) {
      throw new Error(`malformed CSV row ${i + 2} in ${where}: "${line}"`);
    }
    const row = {} as Record<string, number>;
    CSV_COLUMNS.forEach((col, j) => {
      const v = Number(cells[j]);
      if (!Number.isFinite(v)) {
        throw new Error(
          `non-numeric value "${cells[j]}" for ${col} at row ${i + 2} in ${where}`,
        );
      }
      row[col] = v;
    });
    return row as unknown as SweepRow;
  });
}

export function readSweep(dir: string): Sweep {
  const manifestPath = path.join(dir, "manifest.json");
  const csvPath = path.join(dir, "results.csv");
  const manifest = JSON.parse(fs.readFileSync(manifestPath, "utf8")) as Manifest;
  if (manifest.csv_schema_version !== SUPPORTED_SCHEMA_VERSION) {
    throw new SchemaVersionError(manifest.csv_schema_version, manifestPath);
  }
  const rows = parseResultsCsv(fs.readFileSync(csvPath, "utf8"), csvPath);
  return { manifest, rows, dir };
}

export interface PeriodogramSidecar {
  schema_version: number;
  dtype: string;
  order: string;
  n_fft: number;
  k_fft: number;
  n_sub: number;
  n_ant: number;
  delta_f_hz: number;
  element_spacing_m: number;
  carrier_freq_hz: number;
  noise_floor_scale: number;
}

export interface PeriodogramDump {
  sidecar: PeriodogramSidecar;
  /** Row-major [n_fft][k_fft] linear power values. */
  values: Float64Array;
}

export function readPeriodogram(prefix: string): PeriodogramDump {
  const sidecarPath = `${prefix}.json`;
  const sidecar = JSON.parse(
    fs.readFileSync(sidecarPath, "utf8"),
  ) as PeriodogramSidecar;
  if (sidecar.schema_version !== SUPPORTED_SCHEMA_VERSION) {
    throw new SchemaVersionError(sidecar.schema_version, sidecarPath);
  }
  if (sidecar.dtype !== "float64" || sidecar.order !== "row-major") {
    throw new Error(
      `unsupported dump layout in ${sidecarPath}: ` +
        `${sidecar.dtype}/${sidecar.order}`,
    );
  }
  const buf = fs.readFileSync(`${prefix}.bin`);
  const expected = sidecar.n_fft * sidecar.k_fft * 8;
  if (buf.byteLength !== expected) {
    throw new Error(
      `${prefix}.bin is ${buf.byteLength} bytes, sidecar implies ${expected}`,
    );
  }
  const values = new Float64Array(
    buf.buffer.slice(buf.byteOffset, buf.byteOffset + buf.byteLength),
  );
  return { sidecar, values };
}

export interface SceneDump {
  room: { side_x: number; side_y: number; height: number };
  seed: number | null;
  saps: { id: number; position: number[]; boresight_azimuth: number }[];
  targets: { center: number[] }[];
}

export interface PeakDump {
  roundtrip_m: number;
  azimuth_rad: number;
  power_dbm: number;
  bin: [number, number];
  radii: [number, number];
  sap_id: number;
  noise_power_dbm: number;
}

export interface FusedDetection {
  position: number[];
  power_dbm: number;
  sources: number[];
  members: number;
}

export interface RunDump {
  scene: SceneDump;
  periodograms: Map<number, PeriodogramDump>;
  peaks: Map<number, PeakDump[]>;
  fused: FusedDetection[];
}

export function readRunDir(dir: string): RunDump {
  const scene = JSON.parse(
    fs.readFileSync(path.join(dir, "scene.json"), "utf8"),
  ) as SceneDump;
  const periodograms = new Map<number, PeriodogramDump>();
  const peaks = new Map<number, PeakDump[]>();
  for (const sap of scene.saps) {
    periodograms.set(
      sap.id,
      readPeriodogram(path.join(dir, `periodogram_sap${sap.id}`)),
    );
    const text = fs.readFileSync(
      path.join(dir, `peaks_sap${sap.id}.jsonl`),
      "utf8",
    );
    peaks.set(
      sap.id,
      text
        .split(/\r?\n/)
        .filter((l) => l.length > 0)
        .map((l) => JSON.parse(l) as PeakDump),
    );
  }
  const fused = JSON.parse(
    fs.readFileSync(path.join(dir, "fused.json"), "utf8"),
  ) as FusedDetection[];
  return { scene, periodograms, peaks, fused };
}
