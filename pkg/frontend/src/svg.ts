/** SVG renderers. Pure string templating from a figure object; no
 *  randomness and no system state, so output is deterministic. Each data
 *  mark carries its exact source values in data-* attributes. */

import { BoundsFigure, PhaseFigure } from "./figure";

const WIDTH = 720;
const HEIGHT = 480;
const MARGIN = { top: 40, right: 170, bottom: 56, left: 64 };
const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];
const FONT = `font-family="Helvetica, Arial, sans-serif"`;

const PLOT_W = WIDTH - MARGIN.left - MARGIN.right;
const PLOT_H = HEIGHT - MARGIN.top - MARGIN.bottom;

function px(v: number): string {
  return v.toFixed(2);
}

interface Scale {
  (v: number): number;
}

function linearScale(lo: number, hi: number, outLo: number, outHi: number): Scale {
  const span = hi - lo;
  return v => outLo + ((v - lo) / span) * (outHi - outLo);
}

function yAxisGrid(yScale: Scale): string {
  const parts: string[] = [];
  for (const tick of [0, 0.25, 0.5, 0.75, 1]) {
    const y = px(yScale(tick));
    parts.push(`<line x1="${MARGIN.left}" y1="${y}" x2="${MARGIN.left + PLOT_W}" y2="${y}" stroke="#ddd"/>`);
    parts.push(`<text x="${MARGIN.left - 8}" y="${y}" text-anchor="end" dominant-baseline="middle" font-size="11" ${FONT}>${tick}</text>`);
  }
  return parts.join("\n");
}

function frame(title: string, xLabel: string, yLabel: string): string {
  return [
    `<rect x="0" y="0" width="${WIDTH}" height="${HEIGHT}" fill="white"/>`,
    `<text x="${MARGIN.left}" y="22" font-size="14" font-weight="bold" ${FONT}>${title}</text>`,
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${PLOT_W}" height="${PLOT_H}" fill="none" stroke="#333"/>`,
    `<text x="${MARGIN.left + PLOT_W / 2}" y="${HEIGHT - 12}" text-anchor="middle" font-size="12" ${FONT}>${xLabel}</text>`,
    `<text x="18" y="${MARGIN.top + PLOT_H / 2}" text-anchor="middle" font-size="12" ${FONT} transform="rotate(-90 18 ${MARGIN.top + PLOT_H / 2})">${yLabel}</text>`,
  ].join("\n");
}

export function renderPhaseSvg(fig: PhaseFigure): string {
  const xs = fig.series.flatMap(s => s.points.map(p => p.x));
  if (fig.referenceX !== null) xs.push(fig.referenceX);
  let xLo = Math.min(...xs);
  let xHi = Math.max(...xs);
  if (xLo === xHi) {
    xLo -= 0.5;
    xHi += 0.5;
  }
  const xScale = linearScale(xLo, xHi, MARGIN.left, MARGIN.left + PLOT_W);
  const yScale = linearScale(0, 1, MARGIN.top + PLOT_H, MARGIN.top);

  const parts: string[] = [frame("Identification rate vs trace length", fig.xLabel, fig.yLabel)];
  parts.push(yAxisGrid(yScale));
  for (const tick of [...new Set(xs)].sort((a, b) => a - b)) {
    const x = px(xScale(tick));
    parts.push(`<line x1="${x}" y1="${MARGIN.top + PLOT_H}" x2="${x}" y2="${MARGIN.top + PLOT_H + 5}" stroke="#333"/>`);
    parts.push(`<text x="${x}" y="${MARGIN.top + PLOT_H + 18}" text-anchor="middle" font-size="11" ${FONT}>${tick}</text>`);
  }

  if (fig.referenceX !== null) {
    const x = px(xScale(fig.referenceX));
    parts.push(`<line class="reference" x1="${x}" y1="${MARGIN.top}" x2="${x}" y2="${MARGIN.top + PLOT_H}" stroke="#888" stroke-dasharray="6 4"/>`);
    parts.push(`<text x="${x}" y="${MARGIN.top - 6}" text-anchor="middle" font-size="11" fill="#555" ${FONT}>${fig.xLabel} = ${fig.referenceX}</text>`);
  }

  fig.series.forEach((series, i) => {
    const colour = PALETTE[i % PALETTE.length];
    const bars = series.points.map(p => {
      const xc = xScale(p.x);
      const cap = 4;
      return [
        `<line x1="${px(xc)}" y1="${px(yScale(p.lo))}" x2="${px(xc)}" y2="${px(yScale(p.hi))}" stroke="${colour}"/>`,
        `<line x1="${px(xc - cap)}" y1="${px(yScale(p.lo))}" x2="${px(xc + cap)}" y2="${px(yScale(p.lo))}" stroke="${colour}"/>`,
        `<line x1="${px(xc - cap)}" y1="${px(yScale(p.hi))}" x2="${px(xc + cap)}" y2="${px(yScale(p.hi))}" stroke="${colour}"/>`,
      ].join("\n");
    });
    const line = series.points
      .map(p => `${px(xScale(p.x))},${px(yScale(p.y))}`)
      .join(" ");
    const dots = series.points.map(p =>
      `<circle cx="${px(xScale(p.x))}" cy="${px(yScale(p.y))}" r="3.5" fill="${colour}" data-x="${p.x}" data-y="${p.y}" data-trials="${p.trials}"/>`);
    parts.push(`<g class="series" data-label="${series.label}">`);
    parts.push(...bars);
    parts.push(`<polyline points="${line}" fill="none" stroke="${colour}" stroke-width="1.5"/>`);
    parts.push(...dots);
    parts.push(`</g>`);
    const ly = MARGIN.top + 14 + 18 * i;
    parts.push(`<line x1="${MARGIN.left + PLOT_W + 12}" y1="${ly}" x2="${MARGIN.left + PLOT_W + 34}" y2="${ly}" stroke="${colour}" stroke-width="2"/>`);
    parts.push(`<text class="legend" x="${MARGIN.left + PLOT_W + 40}" y="${ly + 4}" font-size="12" ${FONT}>${series.label}</text>`);
  });

  return `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">\n${parts.join("\n")}\n</svg>\n`;
}

export function renderBoundsSvg(fig: BoundsFigure): string {
  const yScale = linearScale(0, 1, MARGIN.top + PLOT_H, MARGIN.top);
  const parts: string[] = [
    `<defs><pattern id="hatch" patternUnits="userSpaceOnUse" width="6" height="6">` +
    `<rect width="6" height="6" fill="#9ecae1"/>` +
    `<path d="M0 6 L6 0" stroke="#31708f" stroke-width="1.2"/></pattern></defs>`,
    frame("Analytic bound vs Monte Carlo frequency", "bound", "probability"),
    yAxisGrid(yScale),
  ];

  const slot = PLOT_W / Math.max(fig.bars.length, 1);
  const barWidth = Math.min(40, slot / 3);
  fig.bars.forEach((bar, i) => {
    const centre = MARGIN.left + slot * (i + 0.5);
    const shown = Math.min(bar.analytic, 1);  // clip for display only
    const fill = bar.vacuous ? "url(#hatch)" : "#9ecae1";
    const ax = centre - barWidth - 2;
    const ex = centre + 2;
    parts.push(`<g class="bound" data-name="${bar.name}" data-analytic="${bar.analytic}" data-empirical="${bar.empirical}">`);
    parts.push(`<rect class="analytic" x="${px(ax)}" y="${px(yScale(shown))}" width="${px(barWidth)}" height="${px(yScale(0) - yScale(shown))}" fill="${fill}" stroke="#31708f"/>`);
    parts.push(`<rect class="empirical" x="${px(ex)}" y="${px(yScale(bar.empirical))}" width="${px(barWidth)}" height="${px(yScale(0) - yScale(bar.empirical))}" fill="#fdae6b" stroke="#a35d00"/>`);
    // +/- 2 stderr whisker on the empirical frequency
    const wx = ex + barWidth / 2;
    const wLo = Math.max(0, bar.empirical - 2 * bar.stderr);
    const wHi = Math.min(1, bar.empirical + 2 * bar.stderr);
    parts.push(`<line x1="${px(wx)}" y1="${px(yScale(wLo))}" x2="${px(wx)}" y2="${px(yScale(wHi))}" stroke="#663c00"/>`);
    const label = bar.analytic > 1
      ? `${bar.analytic.toPrecision(3)} (clipped)`
      : bar.analytic.toPrecision(3);
    parts.push(`<text x="${px(ax + barWidth / 2)}" y="${px(yScale(shown) - 4)}" text-anchor="middle" font-size="10" ${FONT}>${label}</text>`);
    parts.push(`<text x="${px(ex + barWidth / 2)}" y="${px(yScale(bar.empirical) - 4)}" text-anchor="middle" font-size="10" ${FONT}>${bar.empirical.toPrecision(3)}</text>`);
    parts.push(`<text x="${px(centre)}" y="${MARGIN.top + PLOT_H + 18}" text-anchor="middle" font-size="11" ${FONT}>${bar.name}</text>`);
    parts.push(`</g>`);
  });

  const lx = MARGIN.left + PLOT_W + 12;
  parts.push(`<rect x="${lx}" y="${MARGIN.top + 6}" width="14" height="14" fill="#9ecae1" stroke="#31708f"/>`);
  parts.push(`<text class="legend" x="${lx + 20}" y="${MARGIN.top + 17}" font-size="12" ${FONT}>analytic</text>`);
  parts.push(`<rect x="${lx}" y="${MARGIN.top + 28}" width="14" height="14" fill="#fdae6b" stroke="#a35d00"/>`);
  parts.push(`<text class="legend" x="${lx + 20}" y="${MARGIN.top + 39}" font-size="12" ${FONT}>empirical</text>`);
  parts.push(`<rect x="${lx}" y="${MARGIN.top + 50}" width="14" height="14" fill="url(#hatch)" stroke="#31708f"/>`);
  parts.push(`<text class="legend" x="${lx + 20}" y="${MARGIN.top + 61}" font-size="12" ${FONT}>vacuous (&#8805; 1)</text>`);

  return `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">\n${parts.join("\n")}\n</svg>\n`;
}
