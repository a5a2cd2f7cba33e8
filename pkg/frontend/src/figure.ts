/** Figure object models. Values are carried through exactly as parsed;
 *  scaling to pixels happens only at render time. */

import { BoundReport } from "./bounds";
import { SchemaError, SweepRow } from "./csv";
import { wilson95 } from "./wilson";

export const X_AXES = ["multiplier", "n", "m"] as const;
export const Y_AXES = [
  "user1_correct_rate", "group_correct_rate", "graph_exact_rate",
] as const;

export type XAxis = (typeof X_AXES)[number];
export type YAxis = (typeof Y_AXES)[number];

export interface PlotSpec {
  inputCsv: string;
  xAxis: XAxis;
  yAxis: YAxis;
  facet?: string | null;  // grouping column; one curve per distinct value
  output: string;
}

export interface PhasePoint {
  x: number;
  y: number;        // the rate exactly as read from the CSV
  lo: number;       // Wilson 95% interval
  hi: number;
  trials: number;
}

export interface PhaseSeries {
  label: string;
  points: PhasePoint[];
}

export interface PhaseFigure {
  kind: "phase";
  xLabel: string;
  yLabel: string;
  referenceX: number | null;  // threshold marker, multiplier = 1
  series: PhaseSeries[];
}

export function defaultFacet(xAxis: XAxis): string {
  return xAxis === "n" ? "multiplier" : "n";
}

export function buildPhaseFigure(rows: SweepRow[], spec: PlotSpec): PhaseFigure {
  if (!X_AXES.includes(spec.xAxis)) {
    throw new SchemaError(`unknown x axis: ${spec.xAxis}`);
  }
  if (!Y_AXES.includes(spec.yAxis)) {
    throw new SchemaError(`unknown y axis: ${spec.yAxis}`);
  }
  const facet = spec.facet ?? defaultFacet(spec.xAxis);
  if (rows.length > 0 && !(facet in rows[0])) {
    throw new SchemaError(`unknown facet column: ${facet}`);
  }

  const groups = new Map<string | number, SweepRow[]>();
  for (const row of rows) {
    const key = (row as any)[facet] as string | number;
    const group = groups.get(key);
    if (group) {
      group.push(row);
    } else {
      groups.set(key, [row]);
    }
  }

  const keys = [...groups.keys()].sort((a, b) =>
    typeof a === "number" && typeof b === "number"
      ? a - b
      : String(a).localeCompare(String(b)));
  const series: PhaseSeries[] = keys.map(key => {
    const points = groups.get(key)!.map(row => {
      const rate = row[spec.yAxis];
      // rates are count/trials, so the count reconstructs exactly
      const successes = Math.round(rate * row.trials);
      const interval = wilson95(successes, row.trials);
      return {
        x: row[spec.xAxis], y: rate,
        lo: interval.lo, hi: interval.hi, trials: row.trials,
      };
    });
    points.sort((a, b) => a.x - b.x);
    return { label: `${facet}=${key}`, points };
  });

  return {
    kind: "phase",
    xLabel: spec.xAxis,
    yLabel: spec.yAxis,
    referenceX: spec.xAxis === "multiplier" ? 1 : null,
    series,
  };
}

/** Flatten the figure back to its data values, series by series. */
export function extractValues(fig: PhaseFigure): { x: number[]; y: number[] } {
  const x: number[] = [];
  const y: number[] = [];
  for (const s of fig.series) {
    for (const p of s.points) {
      x.push(p.x);
      y.push(p.y);
    }
  }
  return { x, y };
}

export interface BoundBar {
  name: string;
  analytic: number;   // exact, possibly > 1; clipped only when drawn
  empirical: number;
  stderr: number;
  satisfied: boolean;
  vacuous: boolean;
}

export interface BoundsFigure {
  kind: "bounds";
  bars: BoundBar[];
}

export function buildBoundsFigure(reports: BoundReport[]): BoundsFigure {
  return {
    kind: "bounds",
    bars: reports.map(r => ({
      name: r.name, analytic: r.analytic, empirical: r.empirical,
      stderr: r.stderr, satisfied: r.satisfied, vacuous: r.vacuous,
    })),
  };
}
