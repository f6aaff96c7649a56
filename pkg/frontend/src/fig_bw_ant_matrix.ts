/** Entry script for the bw_ant_matrix figure kind. */
import { main } from "./cli.js";

process.exit(main(["bw_ant_matrix", ...process.argv.slice(2)]));
