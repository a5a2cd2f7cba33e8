import { expect, test } from "vitest";
import { wilson95 } from "../src/wilson";

// reference values computed independently with statsmodels
// proportion_confint(method="wilson")
const CASES: Array<[number, number, number, number]> = [
  [5, 10, 0.23659309051256394, 0.7634069094874361],
  [190, 200, 0.9104218518612239, 0.972617354399236],
  [0, 50, 0.0, 0.07134759913335874],
  [50, 50, 0.9286524008666412, 1.0],
  [99, 100, 0.9455138038212946, 0.9982325679358593],
  [72, 200, 0.2966919730456654, 0.42858471833996925],
];

test("matches the reference implementation", () => {
  for (const [successes, trials, lo, hi] of CASES) {
    const interval = wilson95(successes, trials);
    expect(interval.lo).toBeCloseTo(lo, 12);
    expect(interval.hi).toBeCloseTo(hi, 12);
  }
});

test("stays inside [0, 1] with nonzero width at the endpoints", () => {
  for (const trials of [1, 10, 1000]) {
    const atZero = wilson95(0, trials);
    const atOne = wilson95(trials, trials);
    expect(atZero.lo).toBe(0);
    expect(atZero.hi).toBeGreaterThan(0);
    expect(atOne.hi).toBe(1);
    expect(atOne.lo).toBeLessThan(1);
  }
});

test("interval brackets the point estimate and shrinks with trials", () => {
  const small = wilson95(6, 20);
  const large = wilson95(600, 2000);
  expect(small.lo).toBeLessThan(0.3);
  expect(small.hi).toBeGreaterThan(0.3);
  expect(large.hi - large.lo).toBeLessThan(small.hi - small.lo);
});

test("rejects impossible counts", () => {
  expect(() => wilson95(5, 0)).toThrow(RangeError);
  expect(() => wilson95(-1, 10)).toThrow(RangeError);
  expect(() => wilson95(11, 10)).toThrow(RangeError);
  expect(() => wilson95(0.5, 10)).toThrow(RangeError);
});
