/** Entry script for the n_targets figure kind. */
import { main } from "./cli.js";

process.exit(main(["n_targets", ...process.argv.slice(2)]));
