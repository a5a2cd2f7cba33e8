import { readFileSync } from "fs";
import { expect, test } from "vitest";
import { SWEEP_COLUMNS, SchemaError, parseSweepCsv } from "../src/csv";

const HEADER = SWEEP_COLUMNS.join(",");
const ROW = "16,2,256,256,1.0,learning,recon,200,0.995,0.995,0.99," +
  "0.007035623639735147,0.009697389062738086,0,0,2";

test("parses a well-formed row with exact values", () => {
  const rows = parseSweepCsv(`${HEADER}\n${ROW}\n`);
  expect(rows).toHaveLength(1);
  const row = rows[0];
  expect(row.n).toBe(16);
  expect(row.multiplier).toBe(1.0);
  expect(row.mode).toBe("learning");
  expect(row.graph).toBe("recon");
  expect(row.user1_correct_rate).toBe(0.99);
  expect(row.stderr_user1).toBe(0.007035623639735147);
  expect(row.mean_distance).toBe(0.009697389062738086);
  expect(row.failures_wrong).toBe(2);
});

test("header-only input yields zero rows", () => {
  expect(parseSweepCsv(`${HEADER}\n`)).toEqual([]);
});

test("nan mean_distance becomes null", () => {
  const cells = ROW.split(",");
  cells[12] = "nan";
  const rows = parseSweepCsv(`${HEADER}\n${cells.join(",")}\n`);
  expect(rows[0].mean_distance).toBeNull();
});

test("missing column is a SchemaError naming the column", () => {
  const header = SWEEP_COLUMNS.filter(c => c !== "trials").join(",");
  expect(() => parseSweepCsv(`${header}\n`))
    .toThrowError(new SchemaError("missing column: trials"));
});

test("empty input is a SchemaError", () => {
  expect(() => parseSweepCsv("")).toThrow(SchemaError);
});

test("short row is a SchemaError with the line number", () => {
  expect(() => parseSweepCsv(`${HEADER}\n1,2,3\n`)).toThrow(/line 2/);
});

test("non-numeric cell is a SchemaError", () => {
  const cells = ROW.split(",");
  cells[8] = "often";
  expect(() => parseSweepCsv(`${HEADER}\n${cells.join(",")}\n`))
    .toThrow(/graph_exact_rate/);
});

test("fractional count column is a SchemaError", () => {
  const cells = ROW.split(",");
  cells[7] = "199.5";
  expect(() => parseSweepCsv(`${HEADER}\n${cells.join(",")}\n`))
    .toThrow(/trials/);
});

test("extra columns are tolerated, order is irrelevant", () => {
  const header = `note,${HEADER}`;
  const row = `hello,${ROW}`;
  const rows = parseSweepCsv(`${header}\n${row}\n`);
  expect(rows[0].n).toBe(16);
  expect(rows[0].user1_correct_rate).toBe(0.99);
});

test("fixture from the simulator CLI parses cleanly", () => {
  const rows = parseSweepCsv(readFileSync("tests/fixtures/a5_sweep.csv", "utf8"));
  expect(rows).toHaveLength(5);
  expect(rows.map(r => r.multiplier)).toEqual([0.05, 0.2, 0.5, 1.0, 2.0]);
  expect(rows.every(r => r.n === 16 && r.trials === 200)).toBe(true);
});
