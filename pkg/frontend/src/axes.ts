import { BLACK, GRAY, Raster } from "./raster.js";

/** Plot area in pixel coordinates; y runs downward as in the raster. */
export interface Frame {
  left: number;
  top: number;
  width: number;
  height: number;
}

/** Round 1-2-5 tick positions covering [lo, hi], roughly `target` of them. */
export function niceTicks(lo: number, hi: number, target = 5): number[] {
  if (!(hi > lo)) return [lo];
  const rawStep = (hi - lo) / target;
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  let step = mag;
  for (const mult of [1, 2, 5, 10]) {
    step = mult * mag;
    if (step >= rawStep) break;
  }
  const ticks: number[] = [];
  const first = Math.ceil(lo / step - 1e-9) * step;
  for (let v = first; v <= hi + step * 1e-9; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

/** Decade tick values 10^k inside [lo, hi]; both bounds must be positive. */
export function decadeTicks(lo: number, hi: number): number[] {
  const ticks: number[] = [];
  for (let k = Math.ceil(Math.log10(lo) - 1e-9); Math.pow(10, k) <= hi * (1 + 1e-9); k++) {
    ticks.push(Math.pow(10, k));
  }
  return ticks;
}

/** Compact tick label: plain decimals in a middle range, exponents outside it. */
export function formatTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e-3 && a < 1e4) {
    // up to 4 significant digits, trailing zeros dropped
    return String(Number(v.toPrecision(4)));
  }
  const exp = Math.floor(Math.log10(a));
  const mant = Number((v / Math.pow(10, exp)).toPrecision(3));
  if (mant === 1) return `1e${exp}`;
  if (mant === -1) return `-1e${exp}`;
  return `${mant}e${exp}`;
}

/** Linear map from data x to pixel column inside the frame. */
export function xToPx(frame: Frame, lo: number, hi: number, v: number): number {
  return Math.round(frame.left + ((v - lo) / (hi - lo)) * (frame.width - 1));
}

/** Linear map from data y to pixel row inside the frame (data y grows upward). */
export function yToPx(frame: Frame, lo: number, hi: number, v: number): number {
  return Math.round(frame.top + frame.height - 1 - ((v - lo) / (hi - lo)) * (frame.height - 1));
}

export function drawFrame(r: Raster, frame: Frame): void {
  r.hline(frame.left - 1, frame.left + frame.width, frame.top - 1, BLACK);
  r.hline(frame.left - 1, frame.left + frame.width, frame.top + frame.height, BLACK);
  r.vline(frame.left - 1, frame.top - 1, frame.top + frame.height, BLACK);
  r.vline(frame.left + frame.width, frame.top - 1, frame.top + frame.height, BLACK);
}

export function drawXTick(r: Raster, frame: Frame, px: number, label: string): void {
  const base = frame.top + frame.height;
  r.vline(px, base + 1, base + 4, BLACK);
  const w = label.length * 6 - 1;
  r.text(Math.round(px - w / 2), base + 7, label, GRAY);
}

export function drawYTick(r: Raster, frame: Frame, py: number, label: string): void {
  r.hline(frame.left - 5, frame.left - 2, py, BLACK);
  r.textRight(frame.left - 8, py - 3, label, GRAY);
}
