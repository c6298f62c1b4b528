/**
 * Strict reader for the simulator's CSV tables.
 *
 * The emitter writes purely numeric comma-separated tables with a single
 * header row and no quoting, so anything else is rejected loudly:
 * ragged rows, non-numeric cells, duplicate or missing columns.
 */

import { readFileSync } from 'node:fs';

export interface Table {
  /** Column names in file order. */
  readonly columns: readonly string[];
  /** Column-major values, one array per column. */
  readonly data: ReadonlyMap<string, Float64Array>;
  readonly rowCount: number;
}

export class CsvError extends Error {}

export function parseTable(text: string, source = '<csv>'): Table {
  const lines = text.split(/\r?\n/);
  while (lines.length > 0 && lines[lines.length - 1] === '') lines.pop();
  if (lines.length === 0) throw new CsvError(`${source}: empty input`);

  const columns = lines[0].split(',').map((name) => name.trim());
  if (columns.some((name) => name === '')) {
    throw new CsvError(`${source}: blank column name in header`);
  }
  if (new Set(columns).size !== columns.length) {
    throw new CsvError(`${source}: duplicate column names in header`);
  }
  if (lines.length === 1) throw new CsvError(`${source}: header but no data rows`);

  const rowCount = lines.length - 1;
  const arrays = columns.map(() => new Float64Array(rowCount));
  for (let r = 0; r < rowCount; r++) {
    const cells = lines[r + 1].split(',');
    if (cells.length !== columns.length) {
      throw new CsvError(
        `${source}: line ${r + 2} has ${cells.length} cells, expected ${columns.length}`,
      );
    }
    for (let c = 0; c < columns.length; c++) {
      const cell = cells[c].trim();
      const value = Number(cell);
      if (cell === '' || Number.isNaN(value)) {
        throw new CsvError(
          `${source}: line ${r + 2}, column '${columns[c]}': not a number: '${cells[c]}'`,
        );
      }
      arrays[c][r] = value;
    }
  }
  return {
    columns,
    data: new Map(columns.map((name, i) => [name, arrays[i]])),
    rowCount,
  };
}

export function readTableFile(path: string): Table {
  return parseTable(readFileSync(path, 'utf8'), path);
}

/** Column by name; the error lists what the table actually has. */
export function column(table: Table, name: string): Float64Array {
  const values = table.data.get(name);
  if (values === undefined) {
    throw new CsvError(`no column '${name}'; available: ${table.columns.join(', ')}`);
  }
  return values;
}
