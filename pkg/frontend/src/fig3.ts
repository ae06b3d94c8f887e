import { fig3 } from "./figures.js";
import { runFigure } from "./main.js";

process.exit(runFigure(fig3, process.argv.slice(2)));
