/** Entry script for the noise_sweep figure kind. */
import { main } from "./cli.js";

process.exit(main(["noise_sweep", ...process.argv.slice(2)]));
