import { readFileSync } from "fs";
import { expect, test } from "vitest";
import { parseBoundsJson } from "../src/bounds";
import { parseSweepCsv } from "../src/csv";
import { buildBoundsFigure, buildPhaseFigure } from "../src/figure";
import { renderBoundsSvg, renderPhaseSvg } from "../src/svg";

const ROWS = parseSweepCsv(readFileSync("tests/fixtures/phase_two_n.csv", "utf8"));
const FIG = buildPhaseFigure(ROWS, {
  inputCsv: "x", xAxis: "multiplier", yAxis: "user1_correct_rate",
  facet: null, output: "y",
});

test("phase figure renders one polyline per series plus a legend", () => {
  const svg = renderPhaseSvg(FIG);
  expect(svg.startsWith("<svg ")).toBe(true);
  expect(svg.match(/<polyline /g)).toHaveLength(2);
  expect(svg.match(/class="legend"/g)).toHaveLength(2);
  expect(svg).toContain(">n=8<");
  expect(svg).toContain(">n=16<");
});

test("reference line is drawn dashed at multiplier 1", () => {
  const svg = renderPhaseSvg(FIG);
  const reference = svg.match(/<line class="reference"[^/]*\/>/);
  expect(reference).not.toBeNull();
  expect(reference![0]).toContain("stroke-dasharray");
});

test("every point carries its exact source values", () => {
  const svg = renderPhaseSvg(FIG);
  for (const row of ROWS) {
    expect(svg).toContain(`data-x="${row.multiplier}"`);
    expect(svg).toContain(`data-y="${row.user1_correct_rate}"`);
  }
  expect(svg.match(/<circle /g)).toHaveLength(ROWS.length);
  expect(svg.match(/data-trials="50"/g)).toHaveLength(ROWS.length);
});

test("monotone rates render as a visually monotone curve", () => {
  // y pixels grow downward, so nondecreasing rates mean nonincreasing cy
  const svg = renderPhaseSvg(FIG);
  const points = [...svg.matchAll(/<polyline points="([^"]+)"/g)]
    .map(m => m[1].split(" ").map(pair => Number(pair.split(",")[1])));
  expect(points).toHaveLength(2);
  for (const ys of points) {
    for (let i = 1; i < ys.length; i++) {
      expect(ys[i]).toBeLessThanOrEqual(ys[i - 1]);
    }
  }
});

test("rendering is deterministic", () => {
  expect(renderPhaseSvg(FIG)).toBe(renderPhaseSvg(FIG));
});

test("bounds chart pairs bars and hatches only vacuous entries", () => {
  const reports = parseBoundsJson(readFileSync("tests/fixtures/bounds.json", "utf8"));
  const svg = renderBoundsSvg(buildBoundsFigure(reports));
  expect(svg.match(/class="bound"/g)).toHaveLength(4);
  expect(svg.match(/class="analytic"/g)).toHaveLength(4);
  expect(svg.match(/class="empirical"/g)).toHaveLength(4);
  // fixture reports are all non-vacuous; the hatch appears only in the legend
  const hatched = svg.match(/fill="url\(#hatch\)"/g);
  expect(hatched).toHaveLength(1);
  for (const report of reports) {
    expect(svg).toContain(`data-analytic="${report.analytic}"`);
    expect(svg).toContain(`data-empirical="${report.empirical}"`);
  }
});

test("vacuous bound bars are hatched and clipped with a label", () => {
  const fig = buildBoundsFigure([
    { name: "pair_mismatch", analytic: 1.4043770026531193, empirical: 0.7358,
      stderr: 0.0044, trials: 10000, satisfied: true, vacuous: true },
    { name: "mean_proximity", analytic: 0.0506, empirical: 0.0269,
      stderr: 0.0016, trials: 10000, satisfied: true, vacuous: false },
  ]);
  const svg = renderBoundsSvg(fig);
  const analytic = [...svg.matchAll(/<rect class="analytic"[^/]*fill="([^"]+)"/g)]
    .map(m => m[1]);
  expect(analytic).toEqual(["url(#hatch)", "#9ecae1"]);
  expect(svg).toContain("1.40 (clipped)");
});
