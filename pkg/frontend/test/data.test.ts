import * as path from "node:path";
import { describe, expect, it } from "vitest";

import {
  SchemaVersionError,
  parseResultsCsv,
  readPeriodogram,
  readRunDir,
  readSweep,
} from "../src/data.js";
import { tmpDir, writeRunDir, writeSweepDir } from "./helpers.js";

describe("parseResultsCsv", () => {
  it("parses a well-formed sweep CSV", () => {
    const dir = writeSweepDir(tmpDir());
    const sweep = readSweep(dir);
    expect(sweep.rows.length).toBe(3 * 4 * 2);
    expect(sweep.rows[0].axis_value).toBe(-80);
    expect(sweep.rows[0].drops).toBe(300);
    expect(sweep.manifest.axis).toBe("noise_power_dbm");
  });

  it("rejects a completely empty CSV", () => {
    const dir = writeSweepDir(tmpDir(), { emptyCsv: true });
    expect(() => readSweep(dir)).toThrow(/empty CSV/);
  });

  it("rejects a header-only CSV", () => {
    const dir = writeSweepDir(tmpDir(), { headerOnly: true });
    expect(() => readSweep(dir)).toThrow(/no data rows/);
  });

  it("rejects an unexpected header", () => {
    expect(() => parseResultsCsv("a,b,c\n1,2,3\n", "x.csv")).toThrow(
      /unexpected CSV header/,
    );
  });

  it("rejects non-numeric cells", () => {
    const header =
      "axis_value,n_saps,filter,p_det,ci_lo,ci_hi,precision,f1,p_occ,drops";
    expect(() =>
      parseResultsCsv(`${header}\n-80,1,0,oops,0,1,1,1,0,300\n`, "x.csv"),
    ).toThrow(/non-numeric/);
  });
});

describe("schema versioning", () => {
  it("raises a versioned error on manifest mismatch", () => {
    const dir = writeSweepDir(tmpDir(), { schemaVersion: 99 });
    expect(() => readSweep(dir)).toThrow(SchemaVersionError);
    expect(() => readSweep(dir)).toThrow(/found 99.*supports version 1/);
  });
});

describe("periodogram and run dumps", () => {
  it("round-trips the binary grid with its sidecar", () => {
    const dir = writeRunDir(tmpDir());
    const dump = readPeriodogram(path.join(dir, "periodogram_sap0"));
    expect(dump.sidecar.n_fft).toBe(64);
    expect(dump.values.length).toBe(64 * 8);
    expect(dump.values[5 * 8 + 2]).toBeCloseTo(1e-6, 12);
  });

  it("reads the full run directory", () => {
    const dir = writeRunDir(tmpDir(), 3);
    const run = readRunDir(dir);
    expect(run.periodograms.size).toBe(3);
    expect(run.peaks.get(0)!.length).toBe(1);
    expect(run.fused[0].sources).toEqual([0, 1]);
  });
});
