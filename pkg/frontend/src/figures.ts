/** The three figure builders: pure functions from a parsed sweep table to an
 * SVG string. fig1/fig2 read the bound-sweep CSV; fig3 reads the
 * (a, c)-sweep CSV. */

import { Table, requireColumns, series } from "./csv.js";
import { Chart } from "./svg.js";

export function fig1(table: Table): string {
  requireColumns(table, [
    "ent_states",
    "avg_ent",
    "lower_absolute",
    "upper_multiround",
    "teleport_upper",
  ]);
  return new Chart()
    .line({
      points: [
        [0, table.rows[0].teleport_upper],
        [1, table.rows[0].teleport_upper],
      ],
      stroke: "gray",
      dashed: true,
      label: "teleportation",
    })
    .line({
      points: series(table, "ent_states", "avg_ent"),
      stroke: "gray",
      dashed: true,
      label: "average entanglement",
    })
    .line({
      points: series(table, "ent_states", "upper_multiround"),
      stroke: "crimson",
      label: "multi-round upper bound",
    })
    .line({
      points: series(table, "ent_states", "lower_absolute"),
      stroke: "navy",
      label: "lower bound",
    })
    .render("Bounds on the cost of the two-qubit measurement family");
}

export function fig2(table: Table): string {
  requireColumns(table, ["ent_states", "lower_single", "upper_single"]);
  return new Chart()
    .line({
      points: series(table, "ent_states", "upper_single"),
      stroke: "crimson",
      label: "single-round upper bound",
    })
    .line({
      points: series(table, "ent_states", "lower_single"),
      stroke: "navy",
      label: "single-round lower bound",
    })
    .render("Single-round bounds on the cost");
}

export function fig3(table: Table): string {
  requireColumns(table, ["avg_ent", "mac_lower"]);
  return new Chart()
    .line({
      points: [
        [0, 0],
        [1, 1],
      ],
      stroke: "gray",
      dashed: true,
      label: "cost = average entanglement",
    })
    .scatter({
      points: table.rows.map((r) => [r.avg_ent, r.mac_lower]),
      fill: "navy",
      label: "production lower bound",
    })
    .render("Production bound vs. average eigenstate entanglement");
}
