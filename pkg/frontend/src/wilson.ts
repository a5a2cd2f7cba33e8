/** Wilson score interval for a binomial proportion at 95% confidence. */

export const Z95 = 1.959963984540054;

export interface Interval {
  lo: number;
  hi: number;
}

// Well-behaved at rates of exactly 0 or 1, which are common on both sides
// of the phase transition: the interval stays inside [0, 1] and has
// nonzero width wherever trials are finite.
export function wilson95(successes: number, trials: number): Interval {
  if (!Number.isInteger(successes) || !Number.isInteger(trials)
      || trials <= 0 || successes < 0 || successes > trials) {
    throw new RangeError(`wilson95: bad counts ${successes}/${trials}`);
  }
  const p = successes / trials;
  const z2 = Z95 * Z95;
  const denom = 1 + z2 / trials;
  const centre = p + z2 / (2 * trials);
  const spread = Z95 * Math.sqrt((p * (1 - p) + z2 / (4 * trials)) / trials);
  // the limits are exactly 0 / 1 at the endpoints; don't let rounding drift
  return {
    lo: successes === 0 ? 0 : Math.max(0, (centre - spread) / denom),
    hi: successes === trials ? 1 : Math.min(1, (centre + spread) / denom),
  };
}
