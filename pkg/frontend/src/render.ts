import fs from "node:fs";
import path from "node:path";
import { heatmapFromJob } from "./heatmap.js";
import { metricFromJob, refinementFromJob, sweepFromJob } from "./series.js";
import { PlotJob } from "./types.js";

export interface RenderResult {
  /** Path the image was written to. */
  out: string;
  /** Encoded PNG bytes, as written. */
  png: Buffer;
}

/**
 * Execute one plot job and write its PNG.
 *
 * Rendering is a pure function of the input files and the job parameters:
 * repeating a job over unchanged inputs writes byte-identical images.
 */
export function render(job: PlotJob): RenderResult {
  if (job.inputs.length === 0) {
    throw new Error("plot job has no input CSVs");
  }
  let png: Buffer;
  switch (job.kind) {
    case "heatmap":
      png = heatmapFromJob(job).png;
      break;
    case "metric_curve":
      png = metricFromJob(job);
      break;
    case "refinement":
      png = refinementFromJob(job);
      break;
    case "sweep_panel":
      png = sweepFromJob(job);
      break;
    default:
      throw new Error(`unknown plot kind ${(job as PlotJob).kind}`);
  }
  fs.mkdirSync(path.dirname(path.resolve(job.out)), { recursive: true });
  fs.writeFileSync(job.out, png);
  return { out: job.out, png };
}
