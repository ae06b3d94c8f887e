import { fig2 } from "./figures.js";
import { runFigure } from "./main.js";

process.exit(runFigure(fig2, process.argv.slice(2)));
