import fs from "node:fs";
import path from "node:path";
import Papa from "papaparse";

/** Raised when an input CSV is missing, ragged, or fails its schema. */
export class CsvFormatError extends Error {
  readonly file: string;
  /** 1-based line number of the offending row, when one can be named. */
  readonly line: number | null;

  constructor(file: string, line: number | null, detail: string) {
    const at = line === null ? file : `${file}:${line}`;
    super(`${at}: ${detail}`);
    this.name = "CsvFormatError";
    this.file = file;
    this.line = line;
  }
}

/** Cell-centered scalar field on a uniform grid, values in row-major order with x fastest. */
export interface SnapshotGrid {
  /** Ascending cell-center x coordinates, length nx. */
  x: Float64Array;
  /** Ascending cell-center y coordinates, length ny. */
  y: Float64Array;
  /** values[iy * nx + ix] is the cell at (x[ix], y[iy]). */
  values: Float64Array;
  nx: number;
  ny: number;
}

export interface MetricSeries {
  time: number[];
  value: number[];
}

export interface RefinementSeries {
  n: number[];
  error: number[];
  /** Header name of the error column. */
  errorName: string;
}

export interface SweepRow {
  value: number;
  status: string;
  /** Final peak count, or null when the run failed before producing one. */
  peaks: number | null;
}

export interface SweepSummary {
  /** Header name of the swept key. */
  key: string;
  rows: SweepRow[];
}

function readRows(file: string): string[][] {
  let text: string;
  try {
    text = fs.readFileSync(file, "utf8");
  } catch (err) {
    throw new CsvFormatError(file, null, `cannot read file (${(err as Error).message})`);
  }
  const parsed = Papa.parse<string[]>(text, { skipEmptyLines: true });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    const line = first.row === undefined ? null : first.row + 1;
    throw new CsvFormatError(file, line, first.message);
  }
  if (parsed.data.length === 0) {
    throw new CsvFormatError(file, null, "empty file");
  }
  return parsed.data;
}

function checkHeader(file: string, row: string[], expected: string[]): void {
  const got = row.map((c) => c.trim());
  if (got.length !== expected.length || expected.some((name, i) => got[i] !== name)) {
    throw new CsvFormatError(
      file,
      1,
      `expected header "${expected.join(",")}", got "${row.join(",")}"`,
    );
  }
}

/** Parse one data row of `width` finite numbers; `line` is its 1-based position. */
function numericRow(file: string, row: string[], line: number, width: number): number[] {
  if (row.length !== width) {
    throw new CsvFormatError(file, line, `expected ${width} columns, got ${row.length}`);
  }
  const out = new Array<number>(width);
  for (let i = 0; i < width; i++) {
    const v = Number(row[i]);
    if (!Number.isFinite(v)) {
      throw new CsvFormatError(file, line, `column ${i + 1} is not a finite number: "${row[i]}"`);
    }
    out[i] = v;
  }
  return out;
}

function axisIndex(coords: number[]): Map<number, number> {
  const sorted = Array.from(new Set(coords)).sort((a, b) => a - b);
  const index = new Map<number, number>();
  sorted.forEach((c, i) => index.set(c, i));
  return index;
}

/**
 * Read a cell-center snapshot (header x_center,y_center,value) into a dense grid.
 *
 * Row order in the file is not assumed; cells are placed by their coordinates,
 * which must form a complete cartesian product of the two center sets.
 */
export function readSnapshotCsv(file: string): SnapshotGrid {
  const rows = readRows(file);
  checkHeader(file, rows[0], ["x_center", "y_center", "value"]);

  const xs = new Array<number>(rows.length - 1);
  const ys = new Array<number>(rows.length - 1);
  const vs = new Array<number>(rows.length - 1);
  for (let r = 1; r < rows.length; r++) {
    const [x, y, v] = numericRow(file, rows[r], r + 1, 3);
    xs[r - 1] = x;
    ys[r - 1] = y;
    vs[r - 1] = v;
  }

  const xIndex = axisIndex(xs);
  const yIndex = axisIndex(ys);
  const nx = xIndex.size;
  const ny = yIndex.size;
  if (nx * ny !== vs.length) {
    throw new CsvFormatError(
      file,
      null,
      `grid is not complete: ${vs.length} cells but ${nx} x-centers by ${ny} y-centers`,
    );
  }

  const values = new Float64Array(nx * ny);
  const seen = new Uint8Array(nx * ny);
  for (let r = 0; r < vs.length; r++) {
    const flat = yIndex.get(ys[r])! * nx + xIndex.get(xs[r])!;
    if (seen[flat]) {
      throw new CsvFormatError(file, r + 2, `duplicate cell at (${xs[r]}, ${ys[r]})`);
    }
    seen[flat] = 1;
    values[flat] = vs[r];
  }

  const x = new Float64Array(nx);
  const y = new Float64Array(ny);
  for (const [c, i] of xIndex) x[i] = c;
  for (const [c, i] of yIndex) y[i] = c;
  return { x, y, values, nx, ny };
}

/** Read a metric series CSV (header time,value), e.g. a run pair's gap file. */
export function readMetricCsv(file: string): MetricSeries {
  const rows = readRows(file);
  checkHeader(file, rows[0], ["time", "value"]);
  const time: number[] = [];
  const value: number[] = [];
  for (let r = 1; r < rows.length; r++) {
    const [t, v] = numericRow(file, rows[r], r + 1, 2);
    time.push(t);
    value.push(v);
  }
  return { time, value };
}

/** Read a refinement summary CSV: header N,<error column>; N ascending. */
export function readRefinementCsv(file: string): RefinementSeries {
  const rows = readRows(file);
  const header = rows[0].map((c) => c.trim());
  if (header.length !== 2 || header[0] !== "N") {
    throw new CsvFormatError(file, 1, `expected header "N,<error>", got "${rows[0].join(",")}"`);
  }
  const n: number[] = [];
  const error: number[] = [];
  for (let r = 1; r < rows.length; r++) {
    const [nv, ev] = numericRow(file, rows[r], r + 1, 2);
    n.push(nv);
    error.push(ev);
  }
  return { n, error, errorName: header[1] };
}

/** Read a sweep summary CSV: header <key>,status,peaks_final. */
export function readSweepCsv(file: string): SweepSummary {
  const rows = readRows(file);
  const header = rows[0].map((c) => c.trim());
  if (header.length !== 3 || header[1] !== "status" || header[2] !== "peaks_final") {
    throw new CsvFormatError(
      file,
      1,
      `expected header "<key>,status,peaks_final", got "${rows[0].join(",")}"`,
    );
  }
  const out: SweepRow[] = [];
  for (let r = 1; r < rows.length; r++) {
    const row = rows[r];
    if (row.length !== 3) {
      throw new CsvFormatError(file, r + 1, `expected 3 columns, got ${row.length}`);
    }
    const value = Number(row[0]);
    if (!Number.isFinite(value)) {
      throw new CsvFormatError(file, r + 1, `column 1 is not a finite number: "${row[0]}"`);
    }
    const status = row[1].trim();
    const peaksRaw = row[2].trim();
    let peaks: number | null = null;
    if (peaksRaw !== "") {
      peaks = Number(peaksRaw);
      if (!Number.isInteger(peaks) || peaks < 0) {
        throw new CsvFormatError(file, r + 1, `peaks_final must be a count, got "${row[2]}"`);
      }
    }
    out.push({ value, status, peaks });
  }
  return { key: header[0], rows: out };
}

/** Snapshot file-name metadata: `<label>_<field>_t<time>.csv` with "." -> "p", "-" -> "m". */
export interface SnapshotName {
  label: string;
  field: string;
  time: number | null;
}

/** Recover the run label, field name, and sample time from a snapshot file name. */
export function parseSnapshotName(file: string): SnapshotName {
  const stem = path.basename(file).replace(/\.csv$/i, "");
  const m = /^(.+)_([A-Za-z]+)_t([0-9a-z]+)$/.exec(stem);
  if (m === null) {
    return { label: stem, field: "", time: null };
  }
  const decoded = Number(m[3].replace(/m/g, "-").replace(/p/g, "."));
  if (!Number.isFinite(decoded)) {
    return { label: stem, field: "", time: null };
  }
  return { label: m[1], field: m[2], time: decoded };
}

/** Default legend label for a series file: the stem, minus the harness `_gap` suffix. */
export function seriesLabel(file: string): string {
  return path.basename(file).replace(/\.csv$/i, "").replace(/_gap$/, "");
}
