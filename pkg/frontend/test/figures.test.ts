import { describe, expect, it } from "vitest";

import { readRunDir, readSweep } from "../src/data.js";
import { renderBwAntMatrix } from "../src/figures/bwAntMatrix.js";
import { renderNTargets } from "../src/figures/nTargets.js";
import { renderNoiseSweep } from "../src/figures/noiseSweep.js";
import { renderRoomSize } from "../src/figures/roomSize.js";
import { renderScenarioPanels } from "../src/figures/scenarioPanels.js";
import { count, tmpDir, writeRunDir, writeSweepDir } from "./helpers.js";

describe("noise_sweep", () => {
  it("draws four CI-banded curves with labeled axes and a legend", () => {
    const sweep = readSweep(writeSweepDir(tmpDir()));
    const svg = renderNoiseSweep(sweep);
    expect(count(svg, 'class="ci-band"')).toBe(4);
    expect(count(svg, "<polyline")).toBe(4);
    expect(svg).toContain("noise power dBm");
    expect(svg).toContain("probability");
    expect(svg).toContain("1 SAP");
    expect(svg).toContain("4 SAPs");
  });

  it("is byte-identical across renders of the same input", () => {
    const dir = writeSweepDir(tmpDir());
    const a = renderNoiseSweep(readSweep(dir));
    const b = renderNoiseSweep(readSweep(dir));
    expect(a).toBe(b);
    expect(a).not.toMatch(/\d{4}-\d{2}-\d{2}/); // no dates anywhere
  });

  it("rejects a sweep over the wrong axis", () => {
    const sweep = readSweep(writeSweepDir(tmpDir(), { axis: "n_targets" }));
    expect(() => renderNoiseSweep(sweep)).toThrow(/noise_power_dbm/);
  });
});

describe("n_targets and room_size", () => {
  it("renders every (SAP count, filter) series for target counts", () => {
    const sweep = readSweep(
      writeSweepDir(tmpDir(), { axis: "n_targets", values: [1, 3, 5, 9] }),
    );
    const svg = renderNTargets(sweep);
    expect(count(svg, "<polyline")).toBe(8); // 4 SAP counts x filter on/off
    expect(svg).toContain("number of targets");
    expect(svg).toContain("2-SAP filter");
  });

  it("renders the room-size figure", () => {
    const sweep = readSweep(
      writeSweepDir(tmpDir(), { axis: "room_side", values: [4, 6, 10] }),
    );
    const svg = renderRoomSize(sweep);
    expect(svg).toContain("room side m");
    expect(count(svg, "<polyline")).toBe(8);
  });
});

describe("bw_ant_matrix", () => {
  function gridSweeps() {
    // Four antenna sweeps, one per bandwidth, giving a 4x4 grid.
    return [100e6, 200e6, 400e6, 800e6].map((bw, i) =>
      readSweep(
        writeSweepDir(tmpDir(), {
          axis: "n_antennas",
          values: [4, 8, 16, 32],
          config: { bandwidth_hz: bw },
          sapCounts: [1, 4],
          filters: [0],
        }),
      ),
    );
  }

  it("renders one marker per grid cell per SAP count", () => {
    const svg = renderBwAntMatrix(gridSweeps());
    // 4 antennas x 4 bandwidths x 2 SAP counts
    expect(count(svg, 'class="cell-marker"')).toBe(32);
    expect(svg).toContain("antennas");
    expect(svg).toContain("bandwidth MHz");
  });

  it("rejects sweeps over unrelated axes", () => {
    const sweep = readSweep(writeSweepDir(tmpDir()));
    expect(() => renderBwAntMatrix([sweep])).toThrow(/n_antennas or bandwidth/);
  });
});

describe("scenario_panels", () => {
  it("draws a heatmap per SAP plus the scene panel", () => {
    const run = readRunDir(writeRunDir(tmpDir(), 2));
    const svg = renderScenarioPanels(run);
    expect(count(svg, "periodogram")).toBe(2);
    expect(count(svg, 'class="peak-marker"')).toBe(2);
    expect(count(svg, 'class="truth-marker"')).toBe(1);
    expect(count(svg, 'class="fused-marker"')).toBe(1);
    expect(svg).toContain("sin azimuth");
  });

  it("is deterministic", () => {
    const dir = writeRunDir(tmpDir(), 2);
    expect(renderScenarioPanels(readRunDir(dir))).toBe(
      renderScenarioPanels(readRunDir(dir)),
    );
  });
});
