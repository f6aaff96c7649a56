/**
 * Scenario panels from a single dumped drop: one range-angle periodogram
 * heatmap per SAP with its extracted peaks, plus a top-view scene panel
 * showing the room, SAPs, ground-truth targets, and fused estimates.
 */
import { PeakDump, PeriodogramDump, RunDump } from "../data.js";
import { fmt, heatColor, svgDocument, text } from "../svg.js";

const C0 = 299792458.0;
const DB_SPAN = 40;

interface PanelGeom {
  x0: number;
  y0: number;
  w: number;
  h: number;
}

/** Max-pool the padded range axis down to at most maxRows display rows,
 * keeping only ranges inside the room (plus margin). fftshifts the angle
 * axis so the panel runs over sin(azimuth) in [-1, 1). */
function poolGrid(
  dump: PeriodogramDump,
  maxRangeM: number,
  maxRows: number,
): { grid: number[][]; nRows: number; rangePerRow: number } {
  const { n_fft, k_fft, delta_f_hz } = dump.sidecar;
  const roundtripPerBin = C0 / (delta_f_hz * n_fft);
  const keepBins = Math.min(
    n_fft,
    Math.max(2, Math.ceil((2 * maxRangeM) / roundtripPerBin)),
  );
  const pool = Math.max(1, Math.ceil(keepBins / maxRows));
  const nRows = Math.ceil(keepBins / pool);
  const grid: number[][] = [];
  for (let r = 0; r < nRows; r++) {
    const row = new Array<number>(k_fft).fill(0);
    for (let i = r * pool; i < Math.min(keepBins, (r + 1) * pool); i++) {
      for (let k = 0; k < k_fft; k++) {
        const shifted = (k + k_fft / 2) % k_fft;
        const v = dump.values[i * k_fft + shifted];
        if (v > row[k]) row[k] = v;
      }
    }
    grid.push(row);
  }
  return { grid, nRows, rangePerRow: (pool * roundtripPerBin) / 2 };
}

function heatPanel(
  geom: PanelGeom,
  dump: PeriodogramDump,
  peaks: PeakDump[],
  maxRangeM: number,
  label: string,
): string[] {
  const out: string[] = [];
  const { grid, nRows, rangePerRow } = poolGrid(dump, maxRangeM, 150);
  const kFft = dump.sidecar.k_fft;
  let peak = 0;
  for (const row of grid) for (const v of row) if (v > peak) peak = v;
  const topDb = 10 * Math.log10(Math.max(peak, 1e-300));
  const cw = geom.w / kFft;
  const ch = geom.h / nRows;
  for (let r = 0; r < nRows; r++) {
    for (let k = 0; k < kFft; k++) {
      const db = 10 * Math.log10(Math.max(grid[r][k], 1e-300));
      const u = Math.max(0, Math.min(1, (db - (topDb - DB_SPAN)) / DB_SPAN));
      // Range grows upward from the bottom edge.
      const y = geom.y0 + geom.h - (r + 1) * ch;
      out.push(
        `<rect x="${fmt(geom.x0 + k * cw)}" y="${fmt(y)}" ` +
          `width="${fmt(cw + 0.1)}" height="${fmt(ch + 0.1)}" ` +
          `fill="${heatColor(u)}"/>`,
      );
    }
  }
  for (const p of peaks) {
    const shifted = (((p.bin[1] + kFft / 2) % kFft) + kFft) % kFft;
    const rangeM = (p.roundtrip_m ?? 0) / 2;
    const r = rangeM / rangePerRow;
    if (r > nRows) continue;
    const px = geom.x0 + (shifted + 0.5) * cw;
    const py = geom.y0 + geom.h - r * ch;
    out.push(
      `<circle class="peak-marker" cx="${fmt(px)}" cy="${fmt(py)}" r="4" ` +
        `fill="none" stroke="#ffffff" stroke-width="1.4"/>`,
    );
  }
  out.push(
    `<rect x="${fmt(geom.x0)}" y="${fmt(geom.y0)}" width="${fmt(geom.w)}" ` +
      `height="${fmt(geom.h)}" fill="none" stroke="#000000" stroke-width="1"/>`,
  );
  out.push(
    text(geom.x0 + geom.w / 2, geom.y0 - 6, label, { size: 11, anchor: "middle" }),
  );
  out.push(
    text(geom.x0 + geom.w / 2, geom.y0 + geom.h + 14, "sin azimuth (-1 to 1)", {
      size: 10,
      anchor: "middle",
    }),
  );
  out.push(
    text(geom.x0 - 6, geom.y0 + geom.h / 2, `range 0 to ${maxRangeM.toFixed(0)} m`, {
      size: 10,
      anchor: "middle",
      rotate: -90,
    }),
  );
  return out;
}

function scenePanel(geom: PanelGeom, run: RunDump): string[] {
  const out: string[] = [];
  const room = run.scene.room;
  const scale = Math.min(geom.w / room.side_x, geom.h / room.side_y);
  const px = (wx: number) => geom.x0 + wx * scale;
  const py = (wy: number) => geom.y0 + geom.h - wy * scale;
  out.push(
    `<rect x="${fmt(px(0))}" y="${fmt(py(room.side_y))}" ` +
      `width="${fmt(room.side_x * scale)}" height="${fmt(room.side_y * scale)}" ` +
      `fill="#f7f7f7" stroke="#000000" stroke-width="1.2"/>`,
  );
  for (const sap of run.scene.saps) {
    const [sx, sy] = sap.position;
    out.push(
      `<rect x="${fmt(px(sx) - 5)}" y="${fmt(py(sy) - 5)}" width="10" height="10" ` +
        `fill="#1f77b4" stroke="#000000" stroke-width="0.8"/>`,
    );
    out.push(text(px(sx) + 8, py(sy) + 4, `SAP ${sap.id}`, { size: 10 }));
  }
  for (const t of run.scene.targets) {
    const [tx, ty] = t.center;
    const cx = px(tx);
    const cy = py(ty);
    out.push(
      `<path class="truth-marker" d="M ${fmt(cx - 5)} ${fmt(cy - 5)} L ${fmt(cx + 5)} ${fmt(cy + 5)} ` +
        `M ${fmt(cx - 5)} ${fmt(cy + 5)} L ${fmt(cx + 5)} ${fmt(cy - 5)}" ` +
        `stroke="#d62728" stroke-width="1.8" fill="none"/>`,
    );
  }
  for (const d of run.fused) {
    const [dx, dy] = d.position;
    out.push(
      `<circle class="fused-marker" cx="${fmt(px(dx))}" cy="${fmt(py(dy))}" r="6" fill="none" ` +
        `stroke="#2ca02c" stroke-width="1.8"/>`,
    );
  }
  out.push(
    text(geom.x0 + geom.w / 2, geom.y0 - 6, "scene: truth (x), fused (o), SAPs (squares)", {
      size: 11,
      anchor: "middle",
    }),
  );
  return out;
}

export function renderScenarioPanels(run: RunDump): string {
  const sapIds = [...run.periodograms.keys()].sort((a, b) => a - b);
  if (sapIds.length === 0) {
    throw new Error("scenario_panels: run directory has no periodogram dumps");
  }
  const room = run.scene.room;
  const maxRange = Math.hypot(room.side_x, room.side_y);

  const panelW = 150;
  const panelH = 220;
  const gap = 46;
  const top = 40;
  const width = 40 + sapIds.length * (panelW + gap) + 250;
  const height = top + panelH + 60;

  const body: string[] = [];
  sapIds.forEach((id, i) => {
    const geom: PanelGeom = {
      x0: 40 + i * (panelW + gap),
      y0: top,
      w: panelW,
      h: panelH,
    };
    body.push(
      ...heatPanel(
        geom,
        run.periodograms.get(id)!,
        run.peaks.get(id) ?? [],
        maxRange,
        `SAP ${id} periodogram`,
      ),
    );
  });
  const sceneGeom: PanelGeom = {
    x0: 40 + sapIds.length * (panelW + gap) + 20,
    y0: top,
    w: 210,
    h: panelH,
  };
  body.push(...scenePanel(sceneGeom, run));
  return svgDocument(width, height, body);
}
