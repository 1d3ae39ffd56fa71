import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";
import { main } from "../src/cli.js";
import { POPULATIONS_CSV, SWEEP_CSV } from "./fixtures.js";

let dir: string;

beforeEach(() => {
  dir = mkdtempSync(join(tmpdir(), "cascade-plots-"));
  vi.spyOn(console, "log").mockImplementation(() => undefined);
  vi.spyOn(console, "error").mockImplementation(() => undefined);
  vi.spyOn(console, "warn").mockImplementation(() => undefined);
});

afterEach(() => {
  vi.restoreAllMocks();
});

describe("main", () => {
  it("exits 2 on usage errors", () => {
    expect(main([])).toBe(2);
    expect(main(["resample"])).toBe(2);
    expect(main(["sweep"])).toBe(2);
    expect(main(["sweep", "a.csv", "--format", "png"])).toBe(2);
    expect(main(["sweep", "a.csv", "--bogus"])).toBe(2);
  });

  it("exits 1 when the input file is missing", () => {
    expect(main(["sweep", join(dir, "nope.csv")])).toBe(1);
  });

  it("exits 1 on a schema error", () => {
    const bad = join(dir, "bad.csv");
    writeFileSync(bad, "a,b\n1,2\n");
    expect(main(["sweep", bad, "--out", join(dir, "x.svg")])).toBe(1);
  });

  it("renders a sweep figure", () => {
    const csv = join(dir, "theta.csv");
    const out = join(dir, "fig.svg");
    writeFileSync(csv, SWEEP_CSV);
    expect(main(["sweep", csv, "--out", out])).toBe(0);
    const svg = readFileSync(out, "utf8");
    expect(svg).toMatch(/^<svg xmlns/);
    expect(svg).toContain(">theta<"); // panel titled after the file
  });

  it("renders a populations figure", () => {
    const csv = join(dir, "populations.csv");
    const out = join(dir, "pops.svg");
    writeFileSync(csv, POPULATIONS_CSV);
    expect(main(["populations", csv, "--out", out])).toBe(0);
    expect(readFileSync(out, "utf8")).toContain("<circle");
  });
});
