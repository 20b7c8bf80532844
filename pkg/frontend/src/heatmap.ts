import { colormapLut } from "./colormap.js";
import { parseSnapshotName, readSnapshotCsv, SnapshotGrid } from "./csv.js";
import { relativeMagnitude } from "./normalize.js";
import { drawFrame, drawXTick, drawYTick, formatTick, Frame, xToPx, yToPx } from "./axes.js";
import { Raster } from "./raster.js";
import { DataWindow, DEFAULT_CUTOFF, PlotJob } from "./types.js";

export interface HeatmapOptions {
  window?: DataWindow;
  cutoff?: number;
  title?: string;
}

/** A rendered heatmap plus the normalization array behind its pixels. */
export interface HeatmapRender {
  png: Buffer;
  /** Relative magnitudes of the cropped grid, x fastest, cutoff not applied. */
  rel: Float64Array;
  nx: number;
  ny: number;
  /** Largest |value| inside the window; 0 means a uniform zero field. */
  maxAbs: number;
  window: DataWindow;
  title: string;
}

interface Crop {
  grid: SnapshotGrid;
  window: DataWindow;
}

function fullExtent(grid: SnapshotGrid): DataWindow {
  const dx = grid.nx > 1 ? grid.x[1] - grid.x[0] : 1;
  const dy = grid.ny > 1 ? grid.y[1] - grid.y[0] : 1;
  return {
    xMin: grid.x[0] - dx / 2,
    xMax: grid.x[grid.nx - 1] + dx / 2,
    yMin: grid.y[0] - dy / 2,
    yMax: grid.y[grid.ny - 1] + dy / 2,
  };
}

function cropToWindow(file: string, grid: SnapshotGrid, window?: DataWindow): Crop {
  const extent = fullExtent(grid);
  if (window === undefined) {
    return { grid, window: extent };
  }
  if (!(window.xMin < window.xMax) || !(window.yMin < window.yMax)) {
    throw new Error(`empty window [${window.xMin}, ${window.xMax}] x [${window.yMin}, ${window.yMax}]`);
  }
  const slack = 1e-12 * Math.max(Math.abs(extent.xMax), Math.abs(extent.yMax), 1);
  if (
    window.xMin < extent.xMin - slack ||
    window.xMax > extent.xMax + slack ||
    window.yMin < extent.yMin - slack ||
    window.yMax > extent.yMax + slack
  ) {
    throw new Error(
      `window [${window.xMin}, ${window.xMax}] x [${window.yMin}, ${window.yMax}] ` +
        `exceeds the data extent of ${file}`,
    );
  }
  const xKeep: number[] = [];
  for (let i = 0; i < grid.nx; i++) {
    if (grid.x[i] >= window.xMin && grid.x[i] <= window.xMax) xKeep.push(i);
  }
  const yKeep: number[] = [];
  for (let j = 0; j < grid.ny; j++) {
    if (grid.y[j] >= window.yMin && grid.y[j] <= window.yMax) yKeep.push(j);
  }
  if (xKeep.length === 0 || yKeep.length === 0) {
    throw new Error(`window contains no cell centers of ${file}`);
  }
  const nx = xKeep.length;
  const ny = yKeep.length;
  const values = new Float64Array(nx * ny);
  for (let j = 0; j < ny; j++) {
    for (let i = 0; i < nx; i++) {
      values[j * nx + i] = grid.values[yKeep[j] * grid.nx + xKeep[i]];
    }
  }
  const x = Float64Array.from(xKeep, (i) => grid.x[i]);
  const y = Float64Array.from(yKeep, (j) => grid.y[j]);
  return { grid: { x, y, values, nx, ny }, window };
}

function defaultTitle(file: string): string {
  const name = parseSnapshotName(file);
  if (name.field === "") return name.label;
  const t = name.time === null ? "" : ` t=${name.time}`;
  return `${name.label} ${name.field}${t}`;
}

const MARGIN_LEFT = 62;
const MARGIN_RIGHT = 16;
const MARGIN_TOP = 24;
const MARGIN_BOTTOM = 34;
const TARGET_SIDE = 520;
const MAX_CELL_SCALE = 16;

/**
 * Render one snapshot CSV as a cutoff-normalized heatmap.
 *
 * Colors map |value| / max|value| over the cropped window onto the field
 * colorscale; the scale tops out at `cutoff` (default 0.5), so any cell at or
 * beyond it renders as the same saturated color. The returned `rel` array is
 * the normalization the pixels were produced from.
 */
export function renderHeatmap(file: string, options: HeatmapOptions = {}): HeatmapRender {
  const cutoff = options.cutoff ?? DEFAULT_CUTOFF;
  if (!(cutoff > 0) || !(cutoff <= 1)) {
    throw new Error(`cutoff must be in (0, 1], got ${cutoff}`);
  }
  const { grid, window } = cropToWindow(file, readSnapshotCsv(file), options.window);
  const { rel, maxAbs } = relativeMagnitude(grid.values);

  const scale = Math.max(
    1,
    Math.min(MAX_CELL_SCALE, Math.floor(TARGET_SIDE / Math.max(grid.nx, grid.ny))),
  );
  const frame: Frame = {
    left: MARGIN_LEFT,
    top: MARGIN_TOP,
    width: grid.nx * scale,
    height: grid.ny * scale,
  };
  const raster = new Raster(
    frame.left + frame.width + MARGIN_RIGHT,
    frame.top + frame.height + MARGIN_BOTTOM,
  );

  const lut = colormapLut(256);
  for (let j = 0; j < grid.ny; j++) {
    // row j sits low on the canvas when y[j] is small
    const py = frame.top + (grid.ny - 1 - j) * scale;
    for (let i = 0; i < grid.nx; i++) {
      const t = Math.min(rel[j * grid.nx + i] / cutoff, 1);
      raster.fillRect(frame.left + i * scale, py, scale, scale, lut[Math.round(t * 255)]);
    }
  }

  drawFrame(raster, frame);
  const title = options.title ?? defaultTitle(file);
  raster.text(frame.left - 1, 8, title.slice(0, Math.floor(raster.width / 6) - 1));
  for (const v of [window.xMin, (window.xMin + window.xMax) / 2, window.xMax]) {
    drawXTick(raster, frame, xToPx(frame, window.xMin, window.xMax, v), formatTick(v));
  }
  for (const v of [window.yMin, (window.yMin + window.yMax) / 2, window.yMax]) {
    drawYTick(raster, frame, yToPx(frame, window.yMin, window.yMax, v), formatTick(v));
  }

  return {
    png: raster.toPng(),
    rel,
    nx: grid.nx,
    ny: grid.ny,
    maxAbs,
    window,
    title,
  };
}

/** PlotJob adapter: single-input heatmap. */
export function heatmapFromJob(job: PlotJob): HeatmapRender {
  if (job.inputs.length !== 1) {
    throw new Error(`heatmap takes exactly one input CSV, got ${job.inputs.length}`);
  }
  return renderHeatmap(job.inputs[0], {
    window: job.window,
    cutoff: job.cutoff,
    title: job.title,
  });
}
