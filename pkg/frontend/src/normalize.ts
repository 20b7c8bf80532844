/** Field magnitudes rescaled so the largest equals 1 (all zeros for a zero field). */
export interface RelativeField {
  rel: Float64Array;
  maxAbs: number;
}

/**
 * Relative magnitude of a field: |v| / max|v|.
 *
 * This is the only numeric transform applied before color mapping, so the
 * maximum of `rel` is exactly 1 unless the field is identically zero.
 */
export function relativeMagnitude(values: ArrayLike<number>): RelativeField {
  let maxAbs = 0;
  for (let i = 0; i < values.length; i++) {
    const a = Math.abs(values[i]);
    if (a > maxAbs) maxAbs = a;
  }
  const rel = new Float64Array(values.length);
  if (maxAbs > 0) {
    for (let i = 0; i < values.length; i++) rel[i] = Math.abs(values[i]) / maxAbs;
  }
  return { rel, maxAbs };
}

/** 1 where the relative magnitude reaches the saturation cutoff, else 0. */
export function saturationMask(rel: ArrayLike<number>, cutoff: number): Uint8Array {
  const mask = new Uint8Array(rel.length);
  for (let i = 0; i < rel.length; i++) {
    if (rel[i] >= cutoff) mask[i] = 1;
  }
  return mask;
}

/**
 * Count 4-connected components of the nonzero cells of a width x height mask.
 *
 * Flood fill with an explicit stack; diagonal contact does not join regions.
 */
export function connectedComponents(mask: Uint8Array, width: number, height: number): number {
  if (mask.length !== width * height) {
    throw new Error(`mask length ${mask.length} does not match ${width}x${height}`);
  }
  const seen = new Uint8Array(mask.length);
  const stack: number[] = [];
  let count = 0;
  for (let start = 0; start < mask.length; start++) {
    if (!mask[start] || seen[start]) continue;
    count++;
    seen[start] = 1;
    stack.push(start);
    while (stack.length > 0) {
      const at = stack.pop()!;
      const x = at % width;
      const y = (at - x) / width;
      if (x > 0 && mask[at - 1] && !seen[at - 1]) {
        seen[at - 1] = 1;
        stack.push(at - 1);
      }
      if (x < width - 1 && mask[at + 1] && !seen[at + 1]) {
        seen[at + 1] = 1;
        stack.push(at + 1);
      }
      if (y > 0 && mask[at - width] && !seen[at - width]) {
        seen[at - width] = 1;
        stack.push(at - width);
      }
      if (y < height - 1 && mask[at + width] && !seen[at + width]) {
        seen[at + width] = 1;
        stack.push(at + width);
      }
    }
  }
  return count;
}
