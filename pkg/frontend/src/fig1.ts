import { fig1 } from "./figures.js";
import { runFigure } from "./main.js";

process.exit(runFigure(fig1, process.argv.slice(2)));
