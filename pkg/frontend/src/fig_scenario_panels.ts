/** Entry script for the scenario_panels figure kind. */
import { main } from "./cli.js";

process.exit(main(["scenario_panels", ...process.argv.slice(2)]));
