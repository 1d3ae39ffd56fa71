/**
 * Population-dynamics overlay: quantum trajectories as solid lines,
 * classical rate-equation trajectories as circle markers, unitless time
 * axis.  The input CSV must carry matched pN_classical / pN_quantum
 * column pairs; anything unpaired is a schema error.
 */

import { parseCsv, requireColumn, SchemaError, Table } from "./csv.js";
import { linearScale, niceTicks, SvgBuilder } from "./svg.js";

const PALETTE = [
  "#1f4e9c",
  "#e07b00",
  "#2a8a2a",
  "#b02424",
  "#7a4fa3",
  "#6b6b4f",
  "#348f9e",
  "#a34f84",
];

export interface PopulationFigureSpec {
  table: Table;
  width?: number;
  height?: number;
  markerStride?: number;
  title?: string;
}

/** Matched (classical, quantum) column-index pairs, by state index. */
export function pairedColumns(table: Table): Array<[number, number]> {
  const classical = new Map<string, number>();
  const quantum = new Map<string, number>();
  table.columns.forEach((name, i) => {
    const m = name.match(/^(.+)_(classical|quantum)$/);
    if (m) {
      (m[2] === "classical" ? classical : quantum).set(m[1], i);
    }
  });
  if (classical.size === 0 || quantum.size === 0) {
    throw new SchemaError("no paired *_classical / *_quantum columns");
  }
  const pairs: Array<[number, number]> = [];
  for (const [state, ci] of classical) {
    const qi = quantum.get(state);
    if (qi === undefined) {
      throw new SchemaError(`missing column '${state}_quantum'`);
    }
    pairs.push([ci, qi]);
    quantum.delete(state);
  }
  if (quantum.size > 0) {
    const state = [...quantum.keys()][0];
    throw new SchemaError(`missing column '${state}_classical'`);
  }
  return pairs;
}

export function renderPopulationFigure(spec: PopulationFigureSpec): string {
  const table = spec.table;
  const ti = requireColumn(table, "t_per_gamma0");
  const pairs = pairedColumns(table);
  if (table.rows.length === 0) {
    throw new SchemaError("population CSV has no data rows");
  }
  const w = spec.width ?? 520;
  const h = spec.height ?? 360;
  const margin = { left: 56, right: 16, top: 28, bottom: 44 };
  const svg = new SvgBuilder(w, h);

  const t = table.rows.map((r) => Number(r[ti]));
  const sx = linearScale([Math.min(...t), Math.max(...t)],
    [margin.left, w - margin.right]);
  const sy = linearScale([0, 1], [h - margin.bottom, margin.top]);

  svg.line(margin.left, h - margin.bottom, w - margin.right,
    h - margin.bottom, "#333");
  svg.line(margin.left, h - margin.bottom, margin.left, margin.top, "#333");
  for (const tick of niceTicks(sx.domain[0], sx.domain[1], 6)) {
    svg.line(sx(tick), h - margin.bottom, sx(tick), h - margin.bottom + 4,
      "#333");
    svg.text(sx(tick), h - margin.bottom + 16, String(tick), "middle", 9);
  }
  for (const tick of [0, 0.25, 0.5, 0.75, 1]) {
    svg.line(margin.left - 4, sy(tick), margin.left, sy(tick), "#333");
    svg.text(margin.left - 7, sy(tick) + 3, String(tick), "end", 9);
  }

  const stride = spec.markerStride ??
    Math.max(1, Math.floor(table.rows.length / 25));
  pairs.forEach(([ci, qi], k) => {
    const color = PALETTE[k % PALETTE.length];
    const quantumPts = table.rows.map(
      (r, i) => [sx(t[i]), sy(Number(r[qi]))] as [number, number],
    );
    svg.polyline(quantumPts, color, 1.6);
    table.rows.forEach((r, i) => {
      if (i % stride === 0) {
        svg.circle(sx(t[i]), sy(Number(r[ci])), 2.6, color);
      }
    });
  });

  svg.text(w / 2, h - 8, "time (1/γ₀)", "middle", 11);
  svg.text(16, h / 2, "population", "middle", 11,
    ` transform="rotate(-90 16 ${h / 2})"`);
  if (spec.title) {
    svg.text(w / 2, 16, spec.title, "middle", 12);
  }
  svg.text(w - margin.right, margin.top - 8,
    "solid: quantum   circles: classical", "end", 9);
  return svg.toString();
}

export function renderPopulationFigureFromText(
  csvText: string,
  title?: string,
): string {
  return renderPopulationFigure({ table: parseCsv(csvText), title });
}
