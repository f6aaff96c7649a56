/**
 * Noise-sweep figure: detection probability vs noise power, one CI-banded
 * curve per SAP count (unfiltered), for a sweep over noise_power_dbm.
 */
import { Sweep } from "../data.js";
import { renderCurveFigure } from "./curves.js";

export function renderNoiseSweep(sweep: Sweep, filter = 0): string {
  if (sweep.manifest.axis !== "noise_power_dbm") {
    throw new Error(
      `noise_sweep needs a noise_power_dbm sweep, got axis ` +
        `"${sweep.manifest.axis}" in ${sweep.dir}`,
    );
  }
  const series = sweep.manifest.sap_counts.map((n) => ({
    nSaps: n,
    filter,
  }));
  return renderCurveFigure(sweep, {
    title: "detection probability vs noise power",
    xLabel: "noise power dBm",
    series,
  });
}
