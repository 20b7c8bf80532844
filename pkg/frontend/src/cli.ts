#!/usr/bin/env node
import yargs from "yargs";
import { hideBin } from "yargs/helpers";
import { CsvFormatError } from "./csv.js";
import { render } from "./render.js";
import { centeredWindow, DataWindow, DEFAULT_CUTOFF, PlotJob } from "./types.js";

function parseWindow(spec: string | undefined): DataWindow | undefined {
  if (spec === undefined) return undefined;
  const parts = spec.split(",").map((s) => Number(s.trim()));
  if (parts.some((v) => !Number.isFinite(v))) {
    throw new Error(`cannot parse window "${spec}"`);
  }
  if (parts.length === 1) {
    if (!(parts[0] > 0)) throw new Error(`window half-width must be positive, got ${parts[0]}`);
    return centeredWindow(parts[0]);
  }
  if (parts.length === 4) {
    return { xMin: parts[0], xMax: parts[1], yMin: parts[2], yMax: parts[3] };
  }
  throw new Error(`window takes a half-width W or xmin,xmax,ymin,ymax, got "${spec}"`);
}

function runJob(job: PlotJob): void {
  const result = render(job);
  process.stdout.write(`wrote ${result.out}\n`);
}

/** Entry point; returns the process exit code. */
export async function main(argv: string[]): Promise<number> {
  let code = 0;
  const parser = yargs(argv)
    .scriptName("plot")
    .usage("$0 <command> [options]")
    .command(
      "heatmap <csv>",
      "render one snapshot CSV as a cutoff-normalized heatmap",
      (y) =>
        y
          .positional("csv", { type: "string", demandOption: true })
          .option("window", {
            type: "string",
            describe: "half-width W for [-W, W]^2, or xmin,xmax,ymin,ymax",
          })
          .option("cutoff", {
            type: "number",
            default: DEFAULT_CUTOFF,
            describe: "relative magnitude at which the color scale saturates",
          })
          .option("title", { type: "string", describe: "override the figure heading" })
          .option("out", { type: "string", demandOption: true, describe: "output PNG path" }),
      (args) =>
        runJob({
          kind: "heatmap",
          inputs: [args.csv],
          out: args.out,
          window: parseWindow(args.window),
          cutoff: args.cutoff,
          title: args.title,
        }),
    )
    .command(
      "metric <csv...>",
      "render time/value series CSVs as labeled curves on shared axes",
      (y) =>
        y
          .positional("csv", { type: "string", array: true, demandOption: true })
          .option("labels", {
            type: "string",
            array: true,
            describe: "legend labels, one per input CSV",
          })
          .option("title", { type: "string" })
          .option("out", { type: "string", demandOption: true, describe: "output PNG path" }),
      (args) => {
        if (args.labels !== undefined && args.labels.length !== args.csv.length) {
          throw new Error(
            `got ${args.labels.length} labels for ${args.csv.length} input files`,
          );
        }
        runJob({
          kind: "metric_curve",
          inputs: args.csv,
          out: args.out,
          labels: args.labels,
          title: args.title,
        });
      },
    )
    .command(
      "refinement <csv>",
      "render a resolution study CSV on log-log axes",
      (y) =>
        y
          .positional("csv", { type: "string", demandOption: true })
          .option("title", { type: "string" })
          .option("out", { type: "string", demandOption: true, describe: "output PNG path" }),
      (args) =>
        runJob({ kind: "refinement", inputs: [args.csv], out: args.out, title: args.title }),
    )
    .command(
      "sweep <csv>",
      "render a sweep summary CSV as a peak-count bar panel",
      (y) =>
        y
          .positional("csv", { type: "string", demandOption: true })
          .option("title", { type: "string" })
          .option("out", { type: "string", demandOption: true, describe: "output PNG path" }),
      (args) => runJob({ kind: "sweep_panel", inputs: [args.csv], out: args.out, title: args.title }),
    )
    .demandCommand(1, "pick a command: heatmap, metric, refinement, or sweep")
    .strict()
    .exitProcess(false)
    .fail((msg, err) => {
      process.stderr.write(`plot: ${msg ?? err.message}\n`);
      code = 1;
    });

  try {
    await parser.parseAsync();
  } catch (err) {
    // command handler exceptions reject parseAsync instead of hitting .fail
    if (code === 0) {
      const reason =
        err instanceof CsvFormatError ? `input error: ${err.message}` : (err as Error).message;
      process.stderr.write(`plot: ${reason}\n`);
      code = 1;
    }
  }
  return code;
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url === new URL(`file://${process.argv[1]}`).href;
if (invokedDirectly) {
  main(hideBin(process.argv)).then((code) => {
    process.exitCode = code;
  });
}
