/**
 * Multi-panel sweep figures: fidelity (solid blue) and efficiency
 * (dotted blue) on a shared left axis fixed to [0, 1], minimum bin
 * separation (solid orange) on a right axis in meV.  One panel per
 * input CSV.  Rendering never recomputes physics: everything shown
 * comes from the CSV contents.
 */

import { numericSeries, parseCsv, SchemaError, Table } from "./csv.js";
import { linearScale, niceTicks, SvgBuilder } from "./svg.js";

export interface SweepPanel {
  /** parsed CSV of one sweep */
  table: Table;
  /** x-axis label, e.g. "theta (rad)" */
  xLabel: string;
  /** panel title */
  title: string;
}

export interface SweepFigureSpec {
  panels: SweepPanel[];
  panelWidth?: number;
  panelHeight?: number;
  warn?: (msg: string) => void;
}

const BLUE = "#1f4e9c";
const ORANGE = "#e07b00";
const MARGIN = { left: 52, right: 56, top: 28, bottom: 40 };

export function renderSweepFigure(spec: SweepFigureSpec): string {
  if (spec.panels.length === 0) {
    throw new SchemaError("sweep figure needs at least one panel");
  }
  const pw = spec.panelWidth ?? 320;
  const ph = spec.panelHeight ?? 240;
  const cols = Math.min(spec.panels.length, 2);
  const rowsN = Math.ceil(spec.panels.length / cols);
  const svg = new SvgBuilder(cols * pw, rowsN * ph);
  spec.panels.forEach((panel, i) => {
    const ox = (i % cols) * pw;
    const oy = Math.floor(i / cols) * ph;
    drawPanel(svg, panel, ox, oy, pw, ph, spec.warn ?? console.warn);
  });
  return svg.toString();
}

function drawPanel(
  svg: SvgBuilder,
  panel: SweepPanel,
  ox: number,
  oy: number,
  pw: number,
  ph: number,
  warn: (msg: string) => void,
): void {
  const f = numericSeries(panel.table, "value", "fidelity_phase_opt", warn);
  const eta = numericSeries(panel.table, "value", "eta", () => undefined);
  const de = numericSeries(panel.table, "value", "delta_e_min_eV", () => undefined);
  const deMev = de.y.map((v) => v * 1e3);

  const x0 = ox + MARGIN.left;
  const x1 = ox + pw - MARGIN.right;
  const y0 = oy + ph - MARGIN.bottom;
  const y1 = oy + MARGIN.top;

  const allX = f.x;
  const xLo = Math.min(...allX);
  const xHi = Math.max(...allX);
  const sx = linearScale([xLo, xHi], [x0, x1]);
  const sLeft = linearScale([0, 1], [y0, y1]);
  const deHi = deMev.length > 0 ? Math.max(...deMev, 1e-9) : 1;
  const sRight = linearScale([0, deHi * 1.05], [y0, y1]);

  // frame and ticks
  svg.line(x0, y0, x1, y0, "#333");
  svg.line(x0, y0, x0, y1, BLUE);
  svg.line(x1, y0, x1, y1, ORANGE);
  for (const t of niceTicks(xLo, xHi, 5)) {
    svg.line(sx(t), y0, sx(t), y0 + 4, "#333");
    svg.text(sx(t), y0 + 16, trim(t), "middle", 9);
  }
  for (const t of [0, 0.25, 0.5, 0.75, 1]) {
    svg.line(x0 - 4, sLeft(t), x0, sLeft(t), BLUE);
    svg.text(x0 - 7, sLeft(t) + 3, trim(t), "end", 9);
  }
  for (const t of niceTicks(0, deHi * 1.05, 4)) {
    svg.line(x1, sRight(t), x1 + 4, sRight(t), ORANGE);
    svg.text(x1 + 7, sRight(t) + 3, trim(t), "start", 9);
  }

  const toPts = (xs: number[], ys: number[], sy: (v: number) => number) =>
    xs.map((x, i) => [sx(x), sy(ys[i])] as [number, number]);

  if (f.x.length === 1) {
    // single-row CSV: point markers instead of lines
    svg.circle(sx(f.x[0]), sLeft(f.y[0]), 3, BLUE);
    svg.circle(sx(eta.x[0]), sLeft(eta.y[0]), 3, BLUE);
    svg.circle(sx(de.x[0]), sRight(deMev[0]), 3, ORANGE);
  } else {
    svg.polyline(toPts(f.x, f.y, sLeft), BLUE, 1.8);
    svg.polyline(toPts(eta.x, eta.y, sLeft), BLUE, 1.8, "2,3");
    svg.polyline(toPts(de.x, deMev, sRight), ORANGE, 1.8);
  }

  svg.text(ox + pw / 2, oy + 16, panel.title, "middle", 12);
  svg.text(ox + pw / 2, y0 + 32, panel.xLabel, "middle", 11);
  svg.text(x0 - 36, (y0 + y1) / 2, "F (solid), η (dotted)", "middle", 10,
    ` transform="rotate(-90 ${x0 - 36} ${(y0 + y1) / 2})" fill="${BLUE}"`);
  svg.text(x1 + 40, (y0 + y1) / 2, "ΔE_min (meV)", "middle", 10,
    ` transform="rotate(90 ${x1 + 40} ${(y0 + y1) / 2})" fill="${ORANGE}"`);
}

function trim(v: number): string {
  return String(Number(v.toPrecision(4)));
}

export function renderSweepFigureFromText(
  csvTexts: string[],
  titles: string[],
  xLabels: string[],
  warn?: (msg: string) => void,
): string {
  const panels = csvTexts.map((text, i) => ({
    table: parseCsv(text),
    title: titles[i] ?? `panel ${i + 1}`,
    xLabel: xLabels[i] ?? "value",
  }));
  return renderSweepFigure({ panels, warn });
}
