#!/usr/bin/env node
/** plot: render figures from tracelink sweep CSV / bounds JSON files.
 *  Exit codes: 0 ok, 1 bad arguments or schema, 2 I/O failure, 3 no data. */

import { readFileSync, writeFileSync } from "fs";
import { parseBoundsJson } from "./bounds";
import { SchemaError, parseSweepCsv } from "./csv";
import {
  PlotSpec, X_AXES, XAxis, Y_AXES, YAxis,
  buildBoundsFigure, buildPhaseFigure,
} from "./figure";
import { renderBoundsSvg, renderPhaseSvg } from "./svg";

const USAGE = `usage:
  plot phase  --in results.csv --out fig.svg [--x multiplier] [--y user1_correct_rate] [--facet n]
  plot bounds --in bounds.json --out fig.svg`;

function parseFlags(argv: string[]): Map<string, string> | null {
  const flags = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const name = argv[i];
    const value = argv[i + 1];
    if (!name.startsWith("--") || value === undefined) return null;
    flags.set(name.slice(2), value);
  }
  return flags;
}

function readInput(path: string): string | null {
  try {
    return readFileSync(path, "utf8");
  } catch (err) {
    console.error(`cannot read ${path}: ${(err as Error).message}`);
    return null;
  }
}

function writeOutput(path: string, svg: string): number {
  try {
    writeFileSync(path, svg);
  } catch (err) {
    console.error(`cannot write ${path}: ${(err as Error).message}`);
    return 2;
  }
  console.log(`wrote ${path}`);
  return 0;
}

function phaseCommand(inPath: string, outPath: string, flags: Map<string, string>): number {
  const xAxis = flags.get("x") ?? "multiplier";
  const yAxis = flags.get("y") ?? "user1_correct_rate";
  if (!(X_AXES as readonly string[]).includes(xAxis)) {
    console.error(`--x must be one of: ${X_AXES.join(", ")}`);
    return 1;
  }
  if (!(Y_AXES as readonly string[]).includes(yAxis)) {
    console.error(`--y must be one of: ${Y_AXES.join(", ")}`);
    return 1;
  }
  const text = readInput(inPath);
  if (text === null) return 2;
  let spec: PlotSpec;
  try {
    const rows = parseSweepCsv(text);
    if (rows.length === 0) {
      console.warn(`no data rows in ${inPath}, nothing to plot`);
      return 3;
    }
    spec = {
      inputCsv: inPath, xAxis: xAxis as XAxis, yAxis: yAxis as YAxis,
      facet: flags.get("facet") ?? null, output: outPath,
    };
    return writeOutput(outPath, renderPhaseSvg(buildPhaseFigure(rows, spec)));
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`schema error: ${err.message}`);
      return 1;
    }
    throw err;
  }
}

function boundsCommand(inPath: string, outPath: string): number {
  const text = readInput(inPath);
  if (text === null) return 2;
  try {
    const reports = parseBoundsJson(text);
    if (reports.length === 0) {
      console.warn(`no bound reports in ${inPath}, nothing to plot`);
      return 3;
    }
    return writeOutput(outPath, renderBoundsSvg(buildBoundsFigure(reports)));
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`schema error: ${err.message}`);
      return 1;
    }
    throw err;
  }
}

export function main(argv: string[]): number {
  const [command, ...rest] = argv;
  const flags = parseFlags(rest);
  const inPath = flags?.get("in");
  const outPath = flags?.get("out");
  if (!flags || !inPath || !outPath) {
    console.error(USAGE);
    return 1;
  }
  if (command === "phase") return phaseCommand(inPath, outPath, flags);
  if (command === "bounds") return boundsCommand(inPath, outPath);
  console.error(USAGE);
  return 1;
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
