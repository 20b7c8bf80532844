export type Rgb = [number, number, number];

interface Anchor {
  t: number;
  rgb: Rgb;
}

// dark navy through cyan and yellow into deep red, in the style of the
// classic rainbow maps used for vorticity fields
const FIELD_ANCHORS: Anchor[] = [
  { t: 0.0, rgb: [8, 8, 64] },
  { t: 0.2, rgb: [24, 68, 180] },
  { t: 0.4, rgb: [38, 170, 205] },
  { t: 0.6, rgb: [132, 212, 100] },
  { t: 0.8, rgb: [244, 208, 36] },
  { t: 1.0, rgb: [168, 12, 12] },
];

function lerp(a: number, b: number, f: number): number {
  return a + (b - a) * f;
}

/**
 * Sample the field colorscale at t in [0, 1]; out-of-range values clamp.
 *
 * Values at or above 1 all map to the final anchor, which is what makes the
 * saturated regions of a cutoff-normalized heatmap a single flat color.
 */
export function sampleColormap(t: number): Rgb {
  const anchors = FIELD_ANCHORS;
  if (!(t > 0)) return [...anchors[0].rgb];
  if (t >= 1) return [...anchors[anchors.length - 1].rgb];
  let hi = 1;
  while (anchors[hi].t < t) hi++;
  const lo = hi - 1;
  const f = (t - anchors[lo].t) / (anchors[hi].t - anchors[lo].t);
  return [
    Math.round(lerp(anchors[lo].rgb[0], anchors[hi].rgb[0], f)),
    Math.round(lerp(anchors[lo].rgb[1], anchors[hi].rgb[1], f)),
    Math.round(lerp(anchors[lo].rgb[2], anchors[hi].rgb[2], f)),
  ];
}

/** Precomputed colormap table with `steps` entries for tight pixel loops. */
export function colormapLut(steps: number): Rgb[] {
  if (!Number.isInteger(steps) || steps < 2) {
    throw new Error(`colormap table needs at least 2 steps, got ${steps}`);
  }
  const lut: Rgb[] = new Array(steps);
  for (let i = 0; i < steps; i++) {
    lut[i] = sampleColormap(i / (steps - 1));
  }
  return lut;
}

/** Distinct line colors for metric curves, indexed modulo the palette size. */
export function curveColor(index: number): Rgb {
  const palette: Rgb[] = [
    [178, 24, 43],
    [33, 102, 172],
    [27, 120, 55],
    [230, 140, 20],
    [118, 42, 131],
    [0, 134, 134],
  ];
  return palette[((index % palette.length) + palette.length) % palette.length];
}
