/**
 * Figure rendering CLI.
 *
 *   node dist/cli.js <kind> --out fig.svg [--sweep DIR]... [--run DIR] [--filter on|off]
 *
 * kinds: noise_sweep | bw_ant_matrix | n_targets | room_size | scenario_panels
 */
import * as fs from "node:fs";
import * as path from "node:path";
import { parseArgs } from "node:util";

import { readRunDir, readSweep } from "./data.js";
import { renderBwAntMatrix } from "./figures/bwAntMatrix.js";
import { renderNTargets } from "./figures/nTargets.js";
import { renderNoiseSweep } from "./figures/noiseSweep.js";
import { renderRoomSize } from "./figures/roomSize.js";
import { renderScenarioPanels } from "./figures/scenarioPanels.js";

export const KINDS = [
  "noise_sweep",
  "bw_ant_matrix",
  "n_targets",
  "room_size",
  "scenario_panels",
] as const;
export type Kind = (typeof KINDS)[number];

export interface FigureSpec {
  kind: Kind;
  sweepDirs: string[];
  runDir?: string;
  out: string;
  filter: number;
}

export function render(spec: FigureSpec): string {
  switch (spec.kind) {
    case "noise_sweep":
      return renderNoiseSweep(readSweep(one(spec.sweepDirs, spec.kind)), spec.filter);
    case "bw_ant_matrix":
      if (spec.sweepDirs.length === 0) {
        throw new Error("bw_ant_matrix needs at least one --sweep directory");
      }
      return renderBwAntMatrix(spec.sweepDirs.map(readSweep), spec.filter);
    case "n_targets":
      return renderNTargets(readSweep(one(spec.sweepDirs, spec.kind)));
    case "room_size":
      return renderRoomSize(readSweep(one(spec.sweepDirs, spec.kind)));
    case "scenario_panels":
      if (!spec.runDir) {
        throw new Error("scenario_panels needs --run DIR");
      }
      return renderScenarioPanels(readRunDir(spec.runDir));
  }
}

function one(dirs: string[], kind: string): string {
  if (dirs.length !== 1) {
    throw new Error(`${kind} needs exactly one --sweep directory`);
  }
  return dirs[0];
}

export function main(argv: string[]): number {
  const kind = argv[0] as Kind | undefined;
  if (!kind || !KINDS.includes(kind)) {
    process.stderr.write(
      `usage: cli.js <${KINDS.join("|")}> --out FILE [--sweep DIR]... ` +
        `[--run DIR] [--filter on|off]\n`,
    );
    return 2;
  }
  const { values } = parseArgs({
    args: argv.slice(1),
    options: {
      sweep: { type: "string", multiple: true },
      run: { type: "string" },
      out: { type: "string" },
      filter: { type: "string", default: "off" },
    },
  });
  if (!values.out) {
    process.stderr.write("error: --out FILE is required\n");
    return 2;
  }
  if (values.filter !== "on" && values.filter !== "off") {
    process.stderr.write("error: --filter must be on or off\n");
    return 2;
  }
  const spec: FigureSpec = {
    kind,
    sweepDirs: values.sweep ?? [],
    runDir: values.run,
    out: values.out,
    filter: values.filter === "on" ? 1 : 0,
  };
  try {
    const svg = render(spec);
    fs.mkdirSync(path.dirname(path.resolve(spec.out)), { recursive: true });
    fs.writeFileSync(spec.out, svg);
    process.stderr.write(`wrote ${spec.out}\n`);
    return 0;
  } catch (err) {
    // No blank image on failure: write nothing and report the cause.
    process.stderr.write(`error: ${(err as Error).message}\n`);
    return 1;
  }
}

const invoked = process.argv[1] ? path.basename(process.argv[1]) : "";
if (invoked === "cli.js") {
  process.exit(main(process.argv.slice(2)));
}
