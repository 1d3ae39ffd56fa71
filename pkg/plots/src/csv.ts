/**
 * Strict CSV parsing for the simulator's output files.
 *
 * The upstream writer emits comma-separated, dot-decimal, unquoted
 * fields with a single header row, so no general CSV machinery is
 * needed.  Rows whose `error` column is non-empty mark grid points that
 * failed upstream; callers skip them (with a warning) rather than
 * plotting NaNs.
 */

export class SchemaError extends Error {}

export interface Table {
  columns: string[];
  rows: string[][];
}

export function parseCsv(text: string): Table {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new SchemaError("CSV is empty");
  }
  const columns = lines[0].split(",");
  const rows = lines.slice(1).map((line, i) => {
    const fields = line.split(",");
    if (fields.length !== columns.length) {
      throw new SchemaError(
        `row ${i + 1} has ${fields.length} fields, header has ${columns.length}`,
      );
    }
    return fields;
  });
  return { columns, rows };
}

/** Index of a named column, or a SchemaError naming what is missing. */
export function requireColumn(table: Table, name: string): number {
  const idx = table.columns.indexOf(name);
  if (idx < 0) {
    throw new SchemaError(`missing column '${name}'`);
  }
  return idx;
}

export interface NumericSeries {
  x: number[];
  y: number[];
}

/**
 * Extract paired numeric columns, skipping error-marker rows.
 * Returns the series plus the number of rows skipped.
 */
export function numericSeries(
  table: Table,
  xName: string,
  yName: string,
  warn: (msg: string) => void = console.warn,
): NumericSeries {
  const xi = requireColumn(table, xName);
  const yi = requireColumn(table, yName);
  const errIdx = table.columns.indexOf("error");
  const x: number[] = [];
  const y: number[] = [];
  let skipped = 0;
  for (const row of table.rows) {
    if (errIdx >= 0 && row[errIdx] !== "") {
      skipped += 1;
      continue;
    }
    x.push(Number(row[xi]));
    y.push(Number(row[yi]));
  }
  if (skipped > 0) {
    warn(`skipped ${skipped} error-marker row(s) for column '${yName}'`);
  }
  return { x, y };
}
