/**
 * Minimal deterministic SVG construction: linear scales, axes, line plots
 * with confidence bands, legends.  Output is a plain string with fixed
 * number formatting and no timestamps, so identical inputs give
 * byte-identical files.
 */

export const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"];

export function fmt(v: number): string {
  if (!Number.isFinite(v)) throw new Error(`non-finite coordinate ${v}`);
  // Fixed two-decimal output; normalize negative zero.
  const s = v.toFixed(2);
  return s === "-0.00" ? "0.00" : s;
}

export interface Margins {
  left: number;
  right: number;
  top: number;
  bottom: number;
}

export class LinearScale {
  constructor(
    readonly d0: number,
    readonly d1: number,
    readonly r0: number,
    readonly r1: number,
  ) {
    if (d0 === d1) throw new Error("degenerate scale domain");
  }

  map(v: number): number {
    return this.r0 + ((v - this.d0) / (this.d1 - this.d0)) * (this.r1 - this.r0);
  }

  /** Round-number ticks covering the domain, at most `n` of them. */
  ticks(n = 6): number[] {
    const span = Math.abs(this.d1 - this.d0);
    const raw = span / Math.max(1, n - 1);
    const mag = Math.pow(10, Math.floor(Math.log10(raw)));
    let step = mag;
    for (const m of [1, 2, 2.5, 5, 10]) {
      if (mag * m >= raw) {
        step = mag * m;
        break;
      }
    }
    const lo = Math.min(this.d0, this.d1);
    const hi = Math.max(this.d0, this.d1);
    const out: number[] = [];
    for (let t = Math.ceil(lo / step) * step; t <= hi + 1e-9; t += step) {
      out.push(Math.abs(t) < step * 1e-9 ? 0 : t);
    }
    return out;
  }
}

export function tickLabel(v: number): string {
  if (Number.isInteger(v)) return String(v);
  const s = v.toPrecision(4);
  return String(Number(s));
}

export function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function svgDocument(width: number, height: number, body: string[]): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
    `<rect width="${width}" height="${height}" fill="#ffffff"/>`,
    ...body,
    "</svg>",
    "",
  ].join("\n");
}

export function polyline(
  pts: [number, number][],
  stroke: string,
  width = 1.8,
  dash = "",
): string {
  const d = pts.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
  const dashAttr = dash ? ` stroke-dasharray="${dash}"` : "";
  return (
    `<polyline points="${d}" fill="none" stroke="${stroke}" ` +
    `stroke-width="${width}"${dashAttr}/>`
  );
}

/** Closed band polygon: upper edge forward, lower edge reversed. */
export function band(
  upper: [number, number][],
  lower: [number, number][],
  fill: string,
  opacity = 0.18,
): string {
  const pts = [...upper, ...[...lower].reverse()]
    .map(([x, y]) => `${fmt(x)},${fmt(y)}`)
    .join(" ");
  return `<polygon class="ci-band" points="${pts}" fill="${fill}" fill-opacity="${opacity}" stroke="none"/>`;
}

export function text(
  x: number,
  y: number,
  s: string,
  opts: { size?: number; anchor?: string; rotate?: number; fill?: string } = {},
): string {
  const size = opts.size ?? 12;
  const anchor = opts.anchor ?? "start";
  const fill = opts.fill ?? "#000000";
  const transform = opts.rotate
    ? ` transform="rotate(${opts.rotate} ${fmt(x)} ${fmt(y)})"`
    : "";
  return (
    `<text x="${fmt(x)}" y="${fmt(y)}" font-size="${size}" ` +
    `text-anchor="${anchor}" fill="${fill}"${transform}>${esc(s)}</text>`
  );
}

export interface AxesSpec {
  x: LinearScale;
  y: LinearScale;
  xLabel: string;
  yLabel: string;
  xTicks?: number[];
  yTicks?: number[];
  xTickLabel?: (v: number) => string;
}

/** Frame, ticks, tick labels, and axis labels for one plot panel. */
export function axes(spec: AxesSpec): string[] {
  const { x, y } = spec;
  const left = Math.min(x.r0, x.r1);
  const right = Math.max(x.r0, x.r1);
  const top = Math.min(y.r0, y.r1);
  const bottom = Math.max(y.r0, y.r1);
  const out: string[] = [
    `<rect x="${fmt(left)}" y="${fmt(top)}" width="${fmt(right - left)}" ` +
      `height="${fmt(bottom - top)}" fill="none" stroke="#000000" stroke-width="1"/>`,
  ];
  const xlab = spec.xTickLabel ?? tickLabel;
  for (const t of spec.xTicks ?? x.ticks()) {
    const px = x.map(t);
    out.push(
      `<line x1="${fmt(px)}" y1="${fmt(bottom)}" x2="${fmt(px)}" ` +
        `y2="${fmt(bottom + 5)}" stroke="#000000" stroke-width="1"/>`,
    );
    out.push(text(px, bottom + 18, xlab(t), { size: 11, anchor: "middle" }));
  }
  for (const t of spec.yTicks ?? y.ticks()) {
    const py = y.map(t);
    out.push(
      `<line x1="${fmt(left - 5)}" y1="${fmt(py)}" x2="${fmt(left)}" ` +
        `y2="${fmt(py)}" stroke="#000000" stroke-width="1"/>`,
    );
    out.push(text(left - 8, py + 4, tickLabel(t), { size: 11, anchor: "end" }));
  }
  out.push(
    text((left + right) / 2, bottom + 36, spec.xLabel, {
      size: 13,
      anchor: "middle",
    }),
  );
  out.push(
    text(left - 40, (top + bottom) / 2, spec.yLabel, {
      size: 13,
      anchor: "middle",
      rotate: -90,
    }),
  );
  return out;
}

export interface LegendEntry {
  label: string;
  color: string;
  dash?: string;
}

export function legend(x0: number, y0: number, entries: LegendEntry[]): string[] {
  const out: string[] = [];
  entries.forEach((e, i) => {
    const y = y0 + i * 16;
    const dashAttr = e.dash ? ` stroke-dasharray="${e.dash}"` : "";
    out.push(
      `<line x1="${fmt(x0)}" y1="${fmt(y)}" x2="${fmt(x0 + 22)}" ` +
        `y2="${fmt(y)}" stroke="${e.color}" stroke-width="2.5"${dashAttr}/>`,
    );
    out.push(text(x0 + 28, y + 4, e.label, { size: 11 }));
  });
  return out;
}

/** Grayscale heat color for a unit value in [0, 1] (0 dark, 1 bright). */
export function heatColor(u: number): string {
  const v = Math.max(0, Math.min(1, u));
  // Dark blue -> yellow ramp, piecewise linear, deterministic.
  const r = Math.round(255 * Math.min(1, 1.5 * v));
  const g = Math.round(255 * Math.max(0, Math.min(1, 1.5 * v - 0.25)));
  const b = Math.round(80 + (Math.min(1, 2 * (0.5 - Math.abs(v - 0.35))) * 120 || 0));
  return `rgb(${r},${g},${Math.max(0, Math.min(255, b))})`;
}
