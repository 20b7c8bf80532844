import { PNG } from "pngjs";
import { GLYPH_ADVANCE, GLYPH_HEIGHT, GLYPH_WIDTH, glyphFor } from "./font.js";
import type { Rgb } from "./colormap.js";

export const WHITE: Rgb = [255, 255, 255];
export const BLACK: Rgb = [32, 32, 32];
export const GRAY: Rgb = [150, 150, 150];
export const LIGHT_GRAY: Rgb = [226, 226, 226];

/** Fixed-size RGB canvas with integer pixel drawing and PNG export. */
export class Raster {
  readonly width: number;
  readonly height: number;
  readonly data: Uint8Array;

  constructor(width: number, height: number, background: Rgb = WHITE) {
    if (!Number.isInteger(width) || !Number.isInteger(height) || width < 1 || height < 1) {
      throw new Error(`invalid raster size ${width}x${height}`);
    }
    this.width = width;
    this.height = height;
    this.data = new Uint8Array(width * height * 3);
    for (let i = 0; i < width * height; i++) {
      this.data[3 * i] = background[0];
      this.data[3 * i + 1] = background[1];
      this.data[3 * i + 2] = background[2];
    }
  }

  set(x: number, y: number, rgb: Rgb): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const i = 3 * (y * this.width + x);
    this.data[i] = rgb[0];
    this.data[i + 1] = rgb[1];
    this.data[i + 2] = rgb[2];
  }

  get(x: number, y: number): Rgb {
    const i = 3 * (y * this.width + x);
    return [this.data[i], this.data[i + 1], this.data[i + 2]];
  }

  fillRect(x: number, y: number, w: number, h: number, rgb: Rgb): void {
    const x1 = Math.min(this.width, x + w);
    const y1 = Math.min(this.height, y + h);
    for (let yy = Math.max(0, y); yy < y1; yy++) {
      for (let xx = Math.max(0, x); xx < x1; xx++) {
        const i = 3 * (yy * this.width + xx);
        this.data[i] = rgb[0];
        this.data[i + 1] = rgb[1];
        this.data[i + 2] = rgb[2];
      }
    }
  }

  hline(x0: number, x1: number, y: number, rgb: Rgb): void {
    for (let x = Math.min(x0, x1); x <= Math.max(x0, x1); x++) this.set(x, y, rgb);
  }

  vline(x: number, y0: number, y1: number, rgb: Rgb): void {
    for (let y = Math.min(y0, y1); y <= Math.max(y0, y1); y++) this.set(x, y, rgb);
  }

  /** Integer line via DDA; endpoints included. */
  line(x0: number, y0: number, x1: number, y1: number, rgb: Rgb): void {
    const dx = Math.abs(x1 - x0);
    const dy = Math.abs(y1 - y0);
    const steps = Math.max(dx, dy);
    if (steps === 0) {
      this.set(x0, y0, rgb);
      return;
    }
    for (let s = 0; s <= steps; s++) {
      const x = Math.round(x0 + ((x1 - x0) * s) / steps);
      const y = Math.round(y0 + ((y1 - y0) * s) / steps);
      this.set(x, y, rgb);
    }
  }

  /** Filled square marker of side 2*r+1 centered on (x, y). */
  marker(x: number, y: number, r: number, rgb: Rgb): void {
    this.fillRect(x - r, y - r, 2 * r + 1, 2 * r + 1, rgb);
  }

  /** Draw bitmap text with its top-left corner at (x, y). */
  text(x: number, y: number, s: string, rgb: Rgb = BLACK, scale = 1): void {
    let penX = x;
    for (const ch of s) {
      const rows = glyphFor(ch);
      for (let gy = 0; gy < GLYPH_HEIGHT; gy++) {
        for (let gx = 0; gx < GLYPH_WIDTH; gx++) {
          if (rows[gy][gx] !== "#") continue;
          if (scale === 1) {
            this.set(penX + gx, y + gy, rgb);
          } else {
            this.fillRect(penX + gx * scale, y + gy * scale, scale, scale, rgb);
          }
        }
      }
      penX += GLYPH_ADVANCE * scale;
    }
  }

  /** Right-aligned variant of text(): (x, y) is the top-right corner. */
  textRight(x: number, y: number, s: string, rgb: Rgb = BLACK, scale = 1): void {
    const w = s.length === 0 ? 0 : (s.length * GLYPH_ADVANCE - 1) * scale;
    this.text(x - w, y, s, rgb, scale);
  }

  /** Encode as PNG. Same pixels always produce the same bytes. */
  toPng(): Buffer {
    const png = new PNG({ width: this.width, height: this.height });
    for (let i = 0; i < this.width * this.height; i++) {
      png.data[4 * i] = this.data[3 * i];
      png.data[4 * i + 1] = this.data[3 * i + 1];
      png.data[4 * i + 2] = this.data[3 * i + 2];
      png.data[4 * i + 3] = 255;
    }
    return PNG.sync.write(png, { colorType: 2 });
  }
}
