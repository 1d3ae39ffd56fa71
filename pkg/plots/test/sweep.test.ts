import { describe, expect, it } from "vitest";
import { SchemaError } from "../src/csv.js";
import { renderSweepFigure, renderSweepFigureFromText } from "../src/sweep.js";
import {
  SWEEP_CSV,
  SWEEP_CSV_SINGLE_ROW,
  SWEEP_CSV_WITH_ERROR,
} from "./fixtures.js";

const silent = () => undefined;

describe("renderSweepFigure", () => {
  it("renders a valid SVG with twin axes from the golden CSV", () => {
    const svg = renderSweepFigureFromText(
      [SWEEP_CSV], ["angle sweep"], ["theta (rad)"], silent,
    );
    expect(svg).toMatch(/^<svg xmlns/);
    expect(svg).toMatch(/<\/svg>$/);
    // left-axis entanglement curves in blue, right-axis separation in orange
    expect(svg).toContain('stroke="#1f4e9c"');
    expect(svg).toContain('stroke="#e07b00"');
    // dotted efficiency curve
    expect(svg).toContain('stroke-dasharray="2,3"');
    // twin-axis labels
    expect(svg).toContain("ΔE_min (meV)");
    expect(svg).toContain("F (solid), η (dotted)");
  });

  it("maps columns to the expected curves", () => {
    const svg = renderSweepFigureFromText(
      [SWEEP_CSV], ["p"], ["x"], silent,
    );
    // three data polylines: F, eta (dashed), delta_e
    const polylines = svg.match(/<polyline /g) ?? [];
    expect(polylines.length).toBe(3);
    // the right axis tops out near max(delta_e)*1e3 = 30.6 meV
    expect(svg).toMatch(/>30</);
  });

  it("renders one panel per CSV", () => {
    const svg = renderSweepFigureFromText(
      [SWEEP_CSV, SWEEP_CSV], ["a", "b"], ["x", "x"], silent,
    );
    expect((svg.match(/<polyline /g) ?? []).length).toBe(6);
    expect(svg).toContain(">a<");
    expect(svg).toContain(">b<");
  });

  it("renders single-row CSVs as point markers", () => {
    const svg = renderSweepFigureFromText(
      [SWEEP_CSV_SINGLE_ROW], ["single"], ["x"], silent,
    );
    expect(svg).not.toContain("<polyline");
    expect((svg.match(/<circle /g) ?? []).length).toBe(3);
  });

  it("skips error-marker rows and warns", () => {
    const warnings: string[] = [];
    const svg = renderSweepFigureFromText(
      [SWEEP_CSV_WITH_ERROR], ["e"], ["x"], (m) => warnings.push(m),
    );
    expect(svg).toContain("<polyline");
    expect(warnings.length).toBeGreaterThan(0);
  });

  it("raises a schema error naming a missing column", () => {
    const broken = SWEEP_CSV.replace("fidelity_phase_opt", "fid_opt");
    expect(() =>
      renderSweepFigureFromText([broken], ["x"], ["x"], silent),
    ).toThrow(/missing column 'fidelity_phase_opt'/);
  });

  it("rejects an empty panel list", () => {
    expect(() => renderSweepFigure({ panels: [] })).toThrow(SchemaError);
  });

  it("is deterministic", () => {
    const a = renderSweepFigureFromText([SWEEP_CSV], ["t"], ["x"], silent);
    const b = renderSweepFigureFromText([SWEEP_CSV], ["t"], ["x"], silent);
    expect(a).toBe(b);
  });
});
