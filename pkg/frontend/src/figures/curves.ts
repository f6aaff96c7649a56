/**
 * Shared line-plot renderer for sweep CSVs: one CI-banded curve per
 * (SAP count, filter) series, probability on the y axis.
 */
import { Sweep, SweepRow } from "../data.js";
import {
  LinearScale,
  PALETTE,
  axes,
  band,
  fmt,
  legend,
  polyline,
  svgDocument,
  text,
} from "../svg.js";

export interface SeriesKey {
  nSaps: number;
  filter: number;
}

export interface CurveFigureOptions {
  title: string;
  xLabel: string;
  /** Which (n_saps, filter) series to draw; default: every series present. */
  series?: SeriesKey[];
  yField?: "p_det" | "precision" | "f1";
  xTickLabel?: (v: number) => string;
}

function seriesOf(rows: SweepRow[]): SeriesKey[] {
  const seen = new Map<string, SeriesKey>();
  for (const r of rows) {
    seen.set(`${r.n_saps}/${r.filter}`, { nSaps: r.n_saps, filter: r.filter });
  }
  return [...seen.values()].sort(
    (a, b) => a.nSaps - b.nSaps || a.filter - b.filter,
  );
}

export function seriesLabel(k: SeriesKey): string {
  const saps = k.nSaps === 1 ? "1 SAP" : `${k.nSaps} SAPs`;
  return k.filter ? `${saps}, 2-SAP filter` : saps;
}

export function renderCurveFigure(sweep: Sweep, opts: CurveFigureOptions): string {
  const rows = sweep.rows;
  const yField = opts.yField ?? "p_det";
  const keys = opts.series ?? seriesOf(rows);
  if (keys.length === 0) {
    throw new Error("no data series selected");
  }

  const width = 640;
  const height = 420;
  const x = new LinearScale(
    Math.min(...rows.map((r) => r.axis_value)),
    Math.max(...rows.map((r) => r.axis_value)),
    70,
    width - 160,
  );
  const y = new LinearScale(0, 1, height - 60, 30);

  const body: string[] = [];
  body.push(text(width / 2 - 45, 18, opts.title, { size: 14, anchor: "middle" }));
  body.push(
    ...axes({
      x,
      y,
      xLabel: opts.xLabel,
      yLabel: "probability",
      yTicks: [0, 0.2, 0.4, 0.6, 0.8, 1],
      xTickLabel: opts.xTickLabel,
    }),
  );

  const entries: { label: string; color: string; dash?: string }[] = [];
  keys.forEach((key, i) => {
    const color = PALETTE[i % PALETTE.length];
    const dash = key.filter ? "6,3" : "";
    const pts = rows
      .filter((r) => r.n_saps === key.nSaps && r.filter === key.filter)
      .sort((a, b) => a.axis_value - b.axis_value);
    if (pts.length === 0) {
      throw new Error(
        `requested series ${seriesLabel(key)} absent from ${sweep.dir}`,
      );
    }
    if (yField === "p_det") {
      const upper: [number, number][] = pts.map((r) => [
        x.map(r.axis_value),
        y.map(r.ci_hi),
      ]);
      const lower: [number, number][] = pts.map((r) => [
        x.map(r.axis_value),
        y.map(r.ci_lo),
      ]);
      body.push(band(upper, lower, color));
    }
    const line: [number, number][] = pts.map((r) => [
      x.map(r.axis_value),
      y.map(r[yField]),
    ]);
    body.push(polyline(line, color, 1.8, dash));
    for (const [px, py] of line) {
      body.push(
        `<circle cx="${fmt(px)}" cy="${fmt(py)}" r="2.6" fill="${color}"/>`,
      );
    }
    entries.push({ label: seriesLabel(key), color, dash: dash || undefined });
  });

  body.push(...legend(width - 150, 44, entries));
  return svgDocument(width, height, body);
}
