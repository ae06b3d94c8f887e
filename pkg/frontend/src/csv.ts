/** Reader for the sweep CSVs emitted by the `entcost` CLI: RFC 4180 with
 * CRLF line endings, a header row, and leading `#` comment lines (the seed
 * echo). All data cells are plain numbers. */

export interface Table {
  columns: string[];
  rows: Record<string, number>[];
}

export class CsvError extends Error {}

export function parseCsv(text: string): Table {
  const lines = text
    .split(/\r\n|\n/)
    .filter((line) => line.length > 0 && !line.startsWith("#"));
  if (lines.length === 0) {
    throw new CsvError("empty CSV: no header row");
  }
  const columns = lines[0].split(",");
  const rows: Record<string, number>[] = [];
  for (const line of lines.slice(1)) {
    const cells = line.split(",");
    if (cells.length !== columns.length) {
      throw new CsvError(
        `row has ${cells.length} cells, header has ${columns.length}`,
      );
    }
    const row: Record<string, number> = {};
    columns.forEach((col, i) => {
      const value = Number(cells[i]);
      if (!Number.isFinite(value)) {
        throw new CsvError(`non-numeric cell ${JSON.stringify(cells[i])} in ${col}`);
      }
      row[col] = value;
    });
    rows.push(row);
  }
  if (rows.length === 0) {
    throw new CsvError("empty CSV: no data rows");
  }
  return { columns, rows };
}

export function requireColumns(table: Table, needed: string[]): void {
  const missing = needed.filter((c) => !table.columns.includes(c));
  if (missing.length > 0) {
    throw new CsvError(`missing columns: ${missing.join(", ")}`);
  }
}

export function series(
  table: Table,
  xCol: string,
  yCol: string,
): [number, number][] {
  const pts = table.rows.map(
    (r) => [r[xCol], r[yCol]] as [number, number],
  );
  pts.sort((a, b) => a[0] - b[0]);
  return pts;
}
