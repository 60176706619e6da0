/**
 * Minimal CSV reader for the ouestim output schemas.
 *
 * The producer never quotes or escapes fields, so a plain comma split is
 * exact.  All schema/shape errors throw — the CLI turns them into a
 * non-zero exit before any output file is written.
 */

export interface Table {
  header: string[];
  rows: string[][];
}

export function parseCsv(text: string): Table {
  // python's csv module terminates rows with \r\n
  const lines = text.split(/\r?\n/).filter((line) => line.trim() !== "");
  if (lines.length === 0) {
    throw new Error("CSV file is empty");
  }
  const header = lines[0].split(",");
  const rows = lines.slice(1).map((line, i) => {
    const fields = line.split(",");
    if (fields.length !== header.length) {
      throw new Error(
        `row ${i + 1} has ${fields.length} fields, header has ${header.length}`,
      );
    }
    return fields;
  });
  if (rows.length === 0) {
    throw new Error("CSV file has a header but no data rows");
  }
  return { header, rows };
}

export function column(table: Table, name: string): string[] {
  const idx = table.header.indexOf(name);
  if (idx < 0) {
    throw new Error(
      `column "${name}" not found (have: ${table.header.join(", ")})`,
    );
  }
  return table.rows.map((row) => row[idx]);
}

/** Numeric view of a column; empty fields become NaN, bad fields throw. */
export function numericColumn(table: Table, name: string): number[] {
  return column(table, name).map((field) => {
    if (field === "" || field === "nan") return NaN;
    if (field === "inf") return Infinity;
    if (field === "-inf") return -Infinity;
    const value = Number(field);
    if (Number.isNaN(value)) {
      throw new Error(`column "${name}" has non-numeric field "${field}"`);
    }
    return value;
  });
}
