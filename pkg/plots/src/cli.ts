#!/usr/bin/env node
/**
 * cascade-plots: render figures from simulator CSV outputs.
 *
 *   cascade-plots sweep <csv...> [--out file.svg] [--format svg]
 *   cascade-plots populations <csv> [--out file.svg] [--format svg]
 *
 * Sweep CSVs come from `cascadesim sweep` / `cascadesim repro`;
 * population CSVs from `cascadesim populations` or the populations_fig4
 * experiment.  Only reads the CSVs: no physics is recomputed.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { basename } from "node:path";
import { SchemaError } from "./csv.js";
import { renderPopulationFigureFromText } from "./populations.js";
import { renderSweepFigureFromText } from "./sweep.js";

interface Args {
  command: string;
  inputs: string[];
  out: string;
  format: string;
}

function parseArgs(argv: string[]): Args {
  const [command, ...rest] = argv;
  if (command !== "sweep" && command !== "populations") {
    throw new UsageError(
      "usage: cascade-plots <sweep|populations> <csv...> [--out f] [--format svg]",
    );
  }
  const inputs: string[] = [];
  let out = "";
  let format = "svg";
  for (let i = 0; i < rest.length; i++) {
    const a = rest[i];
    if (a === "--out") {
      out = rest[++i] ?? "";
    } else if (a === "--format") {
      format = rest[++i] ?? "";
    } else if (a.startsWith("--")) {
      throw new UsageError(`unknown flag ${a}`);
    } else {
      inputs.push(a);
    }
  }
  if (inputs.length === 0) {
    throw new UsageError("no input CSV given");
  }
  if (format !== "svg") {
    throw new UsageError(`unsupported format '${format}' (supported: svg)`);
  }
  if (out === "") {
    out = `${command}.${format}`;
  }
  return { command, inputs, out, format };
}

class UsageError extends Error {}

export function main(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (e) {
    if (e instanceof UsageError) {
      console.error(`error: ${e.message}`);
      return 2;
    }
    throw e;
  }
  try {
    let svg: string;
    if (args.command === "sweep") {
      const texts = args.inputs.map((p) => readFileSync(p, "utf8"));
      const titles = args.inputs.map((p) => basename(p).replace(/\.csv$/, ""));
      svg = renderSweepFigureFromText(texts, titles,
        titles.map(() => "swept value"));
    } else {
      svg = renderPopulationFigureFromText(
        readFileSync(args.inputs[0], "utf8"),
        basename(args.inputs[0]).replace(/\.csv$/, ""),
      );
    }
    writeFileSync(args.out, svg);
    console.log(`wrote ${args.out}`);
    return 0;
  } catch (e) {
    if (e instanceof SchemaError) {
      console.error(`schema error: ${e.message}`);
      return 1;
    }
    console.error(`error: ${(e as Error).message}`);
    return 1;
  }
}

if (process.argv[1] && /cli\.(ts|js)$/.test(process.argv[1])) {
  process.exit(main(process.argv.slice(2)));
}
