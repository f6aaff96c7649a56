/**
 * Target-count figure: detection probability vs number of targets, all
 * (SAP count, filter) series present in the sweep.
 */
import { Sweep } from "../data.js";
import { renderCurveFigure } from "./curves.js";

export function renderNTargets(sweep: Sweep): string {
  if (sweep.manifest.axis !== "n_targets") {
    throw new Error(
      `n_targets needs an n_targets sweep, got axis ` +
        `"${sweep.manifest.axis}" in ${sweep.dir}`,
    );
  }
  return renderCurveFigure(sweep, {
    title: "detection probability vs target count",
    xLabel: "number of targets",
  });
}
