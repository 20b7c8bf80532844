/** Axis-aligned data window, in the same units as the CSV coordinates. */
export interface DataWindow {
  xMin: number;
  xMax: number;
  yMin: number;
  yMax: number;
}

export type PlotKind = "heatmap" | "metric_curve" | "refinement" | "sweep_panel";

/**
 * One rendering request. Inputs are harness CSV files; the output is a PNG.
 *
 * Heatmaps consume exactly one snapshot CSV and honor `window` and `cutoff`.
 * Metric curves accept one series CSV per curve. Refinement and sweep panels
 * consume the single summary CSV their harness command writes.
 */
export interface PlotJob {
  kind: PlotKind;
  /** Input CSV paths, order preserved for curve coloring. */
  inputs: string[];
  /** Output PNG path. */
  out: string;
  /** Heatmap crop; defaults to the full extent of the snapshot grid. */
  window?: DataWindow;
  /** Relative-magnitude value at which the heatmap color scale saturates. */
  cutoff?: number;
  /** Curve legend labels; defaults are derived from the file names. */
  labels?: string[];
  /** Figure heading; defaults are derived from the first file name. */
  title?: string;
}

export const DEFAULT_CUTOFF = 0.5;

/** Square window of half-width `w` centered on the origin. */
export function centeredWindow(w: number): DataWindow {
  return { xMin: -w, xMax: w, yMin: -w, yMax: w };
}
