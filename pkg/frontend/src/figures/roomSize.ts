/**
 * Room-size figure: detection probability vs square room side length.
 */
import { Sweep } from "../data.js";
import { renderCurveFigure } from "./curves.js";

export function renderRoomSize(sweep: Sweep): string {
  if (sweep.manifest.axis !== "room_side") {
    throw new Error(
      `room_size needs a room_side sweep, got axis ` +
        `"${sweep.manifest.axis}" in ${sweep.dir}`,
    );
  }
  return renderCurveFigure(sweep, {
    title: "detection probability vs room size",
    xLabel: "room side m",
  });
}
