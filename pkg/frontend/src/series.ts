import path from "node:path";
import { curveColor } from "./colormap.js";
import { readMetricCsv, readRefinementCsv, readSweepCsv, seriesLabel } from "./csv.js";
import {
  decadeTicks,
  drawFrame,
  drawXTick,
  drawYTick,
  Frame,
  formatTick,
  niceTicks,
  xToPx,
  yToPx,
} from "./axes.js";
import { BLACK, GRAY, LIGHT_GRAY, Raster } from "./raster.js";
import { PlotJob } from "./types.js";

const WIDTH = 640;
const HEIGHT = 420;
const FRAME: Frame = { left: 70, top: 30, width: WIDTH - 70 - 22, height: HEIGHT - 30 - 48 };

function stem(file: string): string {
  return path.basename(file).replace(/\.csv$/i, "");
}

function newCanvas(title: string): Raster {
  const r = new Raster(WIDTH, HEIGHT);
  drawFrame(r, FRAME);
  r.text(FRAME.left - 1, 10, title.slice(0, Math.floor(WIDTH / 6) - 1));
  return r;
}

function drawLegend(r: Raster, labels: string[]): void {
  const widest = Math.max(...labels.map((s) => s.length));
  const x0 = FRAME.left + FRAME.width - widest * 6 - 30;
  labels.forEach((label, k) => {
    const y = FRAME.top + 10 + 12 * k;
    r.hline(x0, x0 + 16, y + 3, curveColor(k));
    r.hline(x0, x0 + 16, y + 4, curveColor(k));
    r.text(x0 + 20, y, label);
  });
}

/**
 * Render one or more time/value series as lines on shared linear axes.
 *
 * Made for distance curves D(t) from paired runs: one labeled curve per
 * input file, colors assigned in input order.
 */
export function renderMetricCurves(files: string[], options: { labels?: string[]; title?: string } = {}): Buffer {
  if (files.length === 0) throw new Error("metric plot needs at least one input CSV");
  const series = files.map(readMetricCsv);
  const labels = files.map((f, i) => options.labels?.[i] ?? seriesLabel(f));

  const allT = series.flatMap((s) => s.time);
  const allV = series.flatMap((s) => s.value);
  if (allT.length === 0) throw new Error(`no data rows in ${files.join(", ")}`);
  let tLo = Math.min(0, ...allT);
  let tHi = Math.max(...allT);
  if (tHi === tLo) tHi = tLo + 1;
  let vLo = Math.min(0, ...allV);
  let vHi = Math.max(...allV);
  if (vHi === vLo) vHi = vLo + 1;
  vHi *= 1.05;

  const r = newCanvas(options.title ?? labels.join(" vs "));
  for (const v of niceTicks(tLo, tHi, 6)) {
    drawXTick(r, FRAME, xToPx(FRAME, tLo, tHi, v), formatTick(v));
  }
  for (const v of niceTicks(vLo, vHi, 5)) {
    const py = yToPx(FRAME, vLo, vHi, v);
    r.hline(FRAME.left, FRAME.left + FRAME.width - 1, py, LIGHT_GRAY);
    drawYTick(r, FRAME, py, formatTick(v));
  }
  drawFrame(r, FRAME);

  series.forEach((s, k) => {
    const color = curveColor(k);
    for (let i = 0; i + 1 < s.time.length; i++) {
      r.line(
        xToPx(FRAME, tLo, tHi, s.time[i]),
        yToPx(FRAME, vLo, vHi, s.value[i]),
        xToPx(FRAME, tLo, tHi, s.time[i + 1]),
        yToPx(FRAME, vLo, vHi, s.value[i + 1]),
        color,
      );
    }
    for (let i = 0; i < s.time.length; i++) {
      r.marker(xToPx(FRAME, tLo, tHi, s.time[i]), yToPx(FRAME, vLo, vHi, s.value[i]), 1, color);
    }
  });
  drawLegend(r, labels);
  r.text(FRAME.left + Math.floor(FRAME.width / 2) - 3, HEIGHT - 14, "t");

  return r.toPng();
}

/** Render a resolution study (N vs error) on log-log axes with decade ticks. */
export function renderRefinement(file: string, options: { title?: string } = {}): Buffer {
  const { n, error, errorName } = readRefinementCsv(file);
  if (n.length === 0) throw new Error(`no data rows in ${file}`);
  if (n.some((v) => !(v > 0)) || error.some((v) => !(v > 0))) {
    throw new Error(`log-log refinement plot needs positive N and error values in ${file}`);
  }

  const xLo = Math.log10(Math.min(...n) / 1.3);
  const xHi = Math.log10(Math.max(...n) * 1.3);
  const yLo = Math.log10(Math.min(...error) / 1.8);
  const yHi = Math.log10(Math.max(...error) * 1.8);

  const r = newCanvas(options.title ?? `${stem(file)}: ${errorName} vs N`);
  for (const v of decadeTicks(Math.pow(10, xLo), Math.pow(10, xHi))) {
    drawXTick(r, FRAME, xToPx(FRAME, xLo, xHi, Math.log10(v)), formatTick(v));
  }
  for (const v of decadeTicks(Math.pow(10, yLo), Math.pow(10, yHi))) {
    const py = yToPx(FRAME, yLo, yHi, Math.log10(v));
    r.hline(FRAME.left, FRAME.left + FRAME.width - 1, py, LIGHT_GRAY);
    drawYTick(r, FRAME, py, formatTick(v));
  }
  drawFrame(r, FRAME);

  const color = curveColor(1);
  for (let i = 0; i + 1 < n.length; i++) {
    r.line(
      xToPx(FRAME, xLo, xHi, Math.log10(n[i])),
      yToPx(FRAME, yLo, yHi, Math.log10(error[i])),
      xToPx(FRAME, xLo, xHi, Math.log10(n[i + 1])),
      yToPx(FRAME, yLo, yHi, Math.log10(error[i + 1])),
      color,
    );
  }
  for (let i = 0; i < n.length; i++) {
    r.marker(xToPx(FRAME, xLo, xHi, Math.log10(n[i])), yToPx(FRAME, yLo, yHi, Math.log10(error[i])), 2, color);
  }
  r.text(FRAME.left + Math.floor(FRAME.width / 2) - 3, HEIGHT - 14, "N");

  return r.toPng();
}

/** Render a sweep summary as a bar panel: final peak count per swept value. */
export function renderSweepPanel(file: string, options: { title?: string } = {}): Buffer {
  const { key, rows } = readSweepCsv(file);
  if (rows.length === 0) throw new Error(`no data rows in ${file}`);

  const peakMax = Math.max(1, ...rows.map((row) => row.peaks ?? 0));
  const r = newCanvas(options.title ?? `${stem(file)}: peaks vs ${key}`);
  for (let v = 0; v <= peakMax; v++) {
    const py = yToPx(FRAME, 0, peakMax + 0.5, v);
    r.hline(FRAME.left, FRAME.left + FRAME.width - 1, py, LIGHT_GRAY);
    drawYTick(r, FRAME, py, String(v));
  }
  drawFrame(r, FRAME);

  const slot = FRAME.width / rows.length;
  const barWidth = Math.max(6, Math.floor(slot * 0.5));
  rows.forEach((row, k) => {
    const cx = Math.round(FRAME.left + slot * (k + 0.5));
    const x0 = cx - Math.floor(barWidth / 2);
    const base = FRAME.top + FRAME.height - 1;
    if (row.status === "ok" && row.peaks !== null) {
      const top = yToPx(FRAME, 0, peakMax + 0.5, row.peaks);
      r.fillRect(x0, top, barWidth, base - top + 1, curveColor(1));
      r.textRight(cx + 3, top - 9, String(row.peaks));
    } else {
      r.text(cx - 17, base - 9, "failed", [178, 24, 43]);
    }
    const label = `${key}=${formatTick(row.value)}`;
    r.text(Math.round(cx - (label.length * 6 - 1) / 2), base + 8, label, GRAY);
  });
  r.text(FRAME.left + Math.floor(FRAME.width / 2) - 3 * key.length, HEIGHT - 14, key, BLACK);

  return r.toPng();
}

/** PlotJob adapters. */
export function metricFromJob(job: PlotJob): Buffer {
  return renderMetricCurves(job.inputs, { labels: job.labels, title: job.title });
}

export function refinementFromJob(job: PlotJob): Buffer {
  if (job.inputs.length !== 1) {
    throw new Error(`refinement plot takes exactly one input CSV, got ${job.inputs.length}`);
  }
  return renderRefinement(job.inputs[0], { title: job.title });
}

export function sweepFromJob(job: PlotJob): Buffer {
  if (job.inputs.length !== 1) {
    throw new Error(`sweep panel takes exactly one input CSV, got ${job.inputs.length}`);
  }
  return renderSweepPanel(job.inputs[0], { title: job.title });
}
