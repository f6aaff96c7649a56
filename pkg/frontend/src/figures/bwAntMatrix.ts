/**
 * Antenna x bandwidth matrix: one grid cell per (antenna count, bandwidth)
 * combination, split into one half-disc marker per SAP count whose fill
 * level encodes the saturated detection probability.
 *
 * Input is a set of sweep directories, each swept over either n_antennas
 * or bandwidth; the fixed coordinate of each sweep comes from its
 * manifest config.
 */
import { Sweep } from "../data.js";
import { fmt, heatColor, svgDocument, text } from "../svg.js";

interface Cell {
  antennas: number;
  bandwidthHz: number;
  /** n_saps -> p_det */
  pDet: Map<number, number>;
}

export function collectCells(sweeps: Sweep[], filter = 0): Cell[] {
  const cells = new Map<string, Cell>();
  for (const sweep of sweeps) {
    const axis = sweep.manifest.axis;
    if (axis !== "n_antennas" && axis !== "bandwidth") {
      throw new Error(
        `bw_ant_matrix needs n_antennas or bandwidth sweeps, got axis ` +
          `"${axis}" in ${sweep.dir}`,
      );
    }
    const cfg = sweep.manifest.config;
    for (const row of sweep.rows) {
      if (row.filter !== filter) continue;
      const antennas =
        axis === "n_antennas" ? row.axis_value : (cfg["n_ant"] as number);
      const bandwidthHz =
        axis === "bandwidth" ? row.axis_value : (cfg["bandwidth_hz"] as number);
      const key = `${antennas}/${bandwidthHz}`;
      let cell = cells.get(key);
      if (!cell) {
        cell = { antennas, bandwidthHz, pDet: new Map() };
        cells.set(key, cell);
      }
      cell.pDet.set(row.n_saps, row.p_det);
    }
  }
  if (cells.size === 0) {
    throw new Error("bw_ant_matrix: no cells collected from the given sweeps");
  }
  return [...cells.values()];
}

export function renderBwAntMatrix(sweeps: Sweep[], filter = 0): string {
  const cells = collectCells(sweeps, filter);
  const antennaVals = [...new Set(cells.map((c) => c.antennas))].sort(
    (a, b) => a - b,
  );
  const bwVals = [...new Set(cells.map((c) => c.bandwidthHz))].sort(
    (a, b) => a - b,
  );
  const sapCounts = [
    ...new Set(cells.flatMap((c) => [...c.pDet.keys()])),
  ].sort((a, b) => a - b);

  const cellW = 96;
  const cellH = 76;
  const left = 95;
  const top = 50;
  const width = left + antennaVals.length * cellW + 30;
  const height = top + bwVals.length * cellH + 120;

  const body: string[] = [];
  body.push(
    text(left + (antennaVals.length * cellW) / 2, 22, "detection probability by antennas and bandwidth", {
      size: 14,
      anchor: "middle",
    }),
  );

  // Grid frame and per-cell markers.
  bwVals.forEach((bw, r) => {
    // Highest bandwidth on the top row.
    const rowY = top + (bwVals.length - 1 - r) * cellH;
    body.push(
      text(left - 10, rowY + cellH / 2 + 4, `${tickMHz(bw)}`, {
        size: 11,
        anchor: "end",
      }),
    );
    antennaVals.forEach((ant, cIdx) => {
      const colX = left + cIdx * cellW;
      body.push(
        `<rect x="${fmt(colX)}" y="${fmt(rowY)}" width="${cellW}" ` +
          `height="${cellH}" fill="none" stroke="#bbbbbb" stroke-width="1"/>`,
      );
      const cell = cells.find((c) => c.antennas === ant && c.bandwidthHz === bw);
      if (!cell) return;
      const n = sapCounts.length;
      sapCounts.forEach((nSaps, i) => {
        const p = cell.pDet.get(nSaps);
        if (p === undefined) return;
        const mx = colX + ((i + 0.5) * cellW) / n;
        const my = rowY + cellH / 2 - 8;
        const radius = 9;
        // Half-disc marker: upper half outlines the slot, lower half fill
        // level encodes p_det.
        body.push(
          `<circle class="cell-marker" cx="${fmt(mx)}" cy="${fmt(my)}" r="${radius}" ` +
            `fill="${heatColor(p)}" stroke="#333333" stroke-width="0.8"/>`,
        );
        body.push(
          `<path d="M ${fmt(mx - radius)} ${fmt(my)} A ${radius} ${radius} 0 0 1 ` +
            `${fmt(mx + radius)} ${fmt(my)} Z" fill="#ffffff" fill-opacity="${fmt(
              1 - p,
            )}" stroke="none"/>`,
        );
        body.push(
          text(mx, my + radius + 12, p.toFixed(2), { size: 9, anchor: "middle" }),
        );
      });
    });
  });

  antennaVals.forEach((ant, cIdx) => {
    body.push(
      text(left + cIdx * cellW + cellW / 2, top + bwVals.length * cellH + 18, String(ant), {
        size: 11,
        anchor: "middle",
      }),
    );
  });
  body.push(
    text(
      left + (antennaVals.length * cellW) / 2,
      top + bwVals.length * cellH + 40,
      "antennas",
      { size: 13, anchor: "middle" },
    ),
  );
  body.push(
    text(24, top + (bwVals.length * cellH) / 2, "bandwidth MHz", {
      size: 13,
      anchor: "middle",
      rotate: -90,
    }),
  );

  // Legend: marker slot order within a cell, left to right.
  const ly = top + bwVals.length * cellH + 66;
  body.push(text(left, ly, "markers per cell, left to right:", { size: 11 }));
  body.push(
    text(
      left,
      ly + 16,
      sapCounts.map((n) => (n === 1 ? "1 SAP" : `${n} SAPs`)).join(", "),
      { size: 11 },
    ),
  );
  body.push(
    text(left, ly + 34, "disc fill encodes detection probability (empty 0, full 1)", {
      size: 11,
    }),
  );

  return svgDocument(width, height, body);
}

function tickMHz(hz: number): string {
  return `${Number((hz / 1e6).toPrecision(4))}`;
}
