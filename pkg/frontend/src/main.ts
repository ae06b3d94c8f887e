/** Shared entry point for the per-figure scripts: parse --in/--out, read the
 * CSV, render, write the SVG. Any error (missing file, missing columns,
 * empty CSV) exits nonzero. */

import { readFileSync, writeFileSync } from "node:fs";
import { parseArgs } from "node:util";

import { Table, parseCsv } from "./csv.js";

export function runFigure(render: (table: Table) => string, argv: string[]): number {
  let input: string | undefined;
  let output: string | undefined;
  try {
    const { values } = parseArgs({
      args: argv,
      options: {
        in: { type: "string" },
        out: { type: "string" },
      },
    });
    input = values.in;
    output = values.out;
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 2;
  }
  if (!input || !output) {
    console.error("usage: --in <sweep.csv> --out <figure.svg>");
    return 2;
  }
  try {
    const table = parseCsv(readFileSync(input, "utf8"));
    writeFileSync(output, render(table));
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
  return 0;
}
