/**
 * Figure generator for the estimator CLI's CSV outputs.
 *
 *   node cli.js --kind qq          --input cauchy.csv      --output qq.svg
 *   node cli.js --kind consistency --input consistency.csv --output c.svg
 *   node cli.js --kind variance    --input limits.csv      --output v.svg
 *   node cli.js --kind convergence --input limits.csv      --output g.svg
 *
 * On any error (bad flags, unreadable input, wrong schema) a message goes
 * to stderr, the exit code is 1, and no output file is written.
 */

import * as fs from "fs";

import { parseCsv } from "./csv";
import {
  consistencyFigure,
  convergenceFigure,
  qqFigure,
  varianceFigure,
} from "./figures";

const KINDS = ["qq", "consistency", "variance", "convergence"] as const;
type Kind = (typeof KINDS)[number];

const USAGE =
  "usage: cli --kind <qq|consistency|variance|convergence> " +
  "--input <file.csv> --output <file.svg>";

interface Args {
  kind: Kind;
  input: string;
  output: string;
}

function parseArgs(argv: string[]): Args {
  const values: Record<string, string> = {};
  for (let i = 0; i < argv.length; i += 2) {
    const flag = argv[i];
    if (flag !== "--kind" && flag !== "--input" && flag !== "--output") {
      throw new Error(`unknown argument "${flag}"\n${USAGE}`);
    }
    const value = argv[i + 1];
    if (value === undefined || value.startsWith("--")) {
      throw new Error(`flag ${flag} needs a value\n${USAGE}`);
    }
    values[flag.slice(2)] = value;
  }
  for (const required of ["kind", "input", "output"]) {
    if (!(required in values)) {
      throw new Error(`missing --${required}\n${USAGE}`);
    }
  }
  if (!(KINDS as readonly string[]).includes(values.kind)) {
    throw new Error(
      `unknown kind "${values.kind}" (expected one of: ${KINDS.join(", ")})`,
    );
  }
  return { kind: values.kind as Kind, input: values.input, output: values.output };
}

export function runCli(argv: string[]): number {
  try {
    const args = parseArgs(argv);
    const table = parseCsv(fs.readFileSync(args.input, "utf-8"));
    let svg: string;
    let report = "";
    if (args.kind === "qq") {
      const result = qqFigure(table);
      svg = result.svg;
      report =
        `qq: points=${result.points} slope=${result.slope.toPrecision(6)} ` +
        `intercept=${result.intercept.toPrecision(6)}\n`;
    } else if (args.kind === "consistency") {
      svg = consistencyFigure(table);
    } else if (args.kind === "variance") {
      svg = varianceFigure(table);
    } else {
      svg = convergenceFigure(table);
    }
    fs.writeFileSync(args.output, svg + "\n", "utf-8");
    console.log(`${report}wrote ${args.output}`);
    return 0;
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : String(err)}`);
    return 1;
  }
}

if (require.main === module) {
  process.exit(runCli(process.argv.slice(2)));
}
