export {
  CsvFormatError,
  parseSnapshotName,
  readMetricCsv,
  readRefinementCsv,
  readSnapshotCsv,
  readSweepCsv,
  seriesLabel,
} from "./csv.js";
export type {
  MetricSeries,
  RefinementSeries,
  SnapshotGrid,
  SnapshotName,
  SweepRow,
  SweepSummary,
} from "./csv.js";
export { connectedComponents, relativeMagnitude, saturationMask } from "./normalize.js";
export type { RelativeField } from "./normalize.js";
export { colormapLut, curveColor, sampleColormap } from "./colormap.js";
export type { Rgb } from "./colormap.js";
export { renderHeatmap } from "./heatmap.js";
export type { HeatmapOptions, HeatmapRender } from "./heatmap.js";
export { renderMetricCurves, renderRefinement, renderSweepPanel } from "./series.js";
export { render } from "./render.js";
export type { RenderResult } from "./render.js";
export { centeredWindow, DEFAULT_CUTOFF } from "./types.js";
export type { DataWindow, PlotJob, PlotKind } from "./types.js";
