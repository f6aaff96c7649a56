/** Entry script for the room_size figure kind. */
import { main } from "./cli.js";

process.exit(main(["room_size", ...process.argv.slice(2)]));
