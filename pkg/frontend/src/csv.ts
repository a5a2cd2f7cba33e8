/** Strict parser for the tracelink sweep CSV schema. */

export class SchemaError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "SchemaError";
  }
}

export const SWEEP_COLUMNS = [
  "n", "s", "m", "l", "multiplier", "mode", "graph", "trials",
  "graph_exact_rate", "group_correct_rate", "user1_correct_rate",
  "stderr_user1", "mean_distance", "failures_nomatch",
  "failures_ambiguous", "failures_wrong",
] as const;

export interface SweepRow {
  n: number;
  s: number;
  m: number;
  l: number;
  multiplier: number;
  mode: string;
  graph: string;
  trials: number;
  graph_exact_rate: number;
  group_correct_rate: number;
  user1_correct_rate: number;
  stderr_user1: number;
  mean_distance: number | null;  // null where no group match was accepted
  failures_nomatch: number;
  failures_ambiguous: number;
  failures_wrong: number;
}

const INT_COLUMNS = new Set([
  "n", "s", "m", "l", "trials",
  "failures_nomatch", "failures_ambiguous", "failures_wrong",
]);

function toNumber(raw: string, column: string, line: number): number {
  const value = Number(raw);
  if (raw.trim() === "" || Number.isNaN(value)) {
    throw new SchemaError(`line ${line}: column ${column} is not a number: "${raw}"`);
  }
  if (INT_COLUMNS.has(column) && !Number.isInteger(value)) {
    throw new SchemaError(`line ${line}: column ${column} must be an integer: "${raw}"`);
  }
  return value;
}

export function parseSweepCsv(text: string): SweepRow[] {
  const lines = text.split(/\r?\n/);
  while (lines.length > 0 && lines[lines.length - 1] === "") lines.pop();
  if (lines.length === 0) {
    throw new SchemaError("empty input: missing header row");
  }
  const header = lines[0].split(",");
  for (const column of SWEEP_COLUMNS) {
    if (!header.includes(column)) {
      throw new SchemaError(`missing column: ${column}`);
    }
  }
  const position = new Map(header.map((name, i) => [name, i]));

  const rows: SweepRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== header.length) {
      throw new SchemaError(
        `line ${i + 1}: expected ${header.length} cells, got ${cells.length}`);
    }
    const cell = (column: string) => cells[position.get(column)!];
    const num = (column: string) => toNumber(cell(column), column, i + 1);
    rows.push({
      n: num("n"),
      s: num("s"),
      m: num("m"),
      l: num("l"),
      multiplier: num("multiplier"),
      mode: cell("mode"),
      graph: cell("graph"),
      trials: num("trials"),
      graph_exact_rate: num("graph_exact_rate"),
      group_correct_rate: num("group_correct_rate"),
      user1_correct_rate: num("user1_correct_rate"),
      stderr_user1: num("stderr_user1"),
      mean_distance: cell("mean_distance") === "nan" ? null : num("mean_distance"),
      failures_nomatch: num("failures_nomatch"),
      failures_ambiguous: num("failures_ambiguous"),
      failures_wrong: num("failures_wrong"),
    });
  }
  return rows;
}
