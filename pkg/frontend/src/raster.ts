/**
 * Tiny RGBA raster with just enough drawing for figure panels:
 * rectangles, 1px lines, bitmap text, and PNG encoding via pngjs.
 */

import { PNG } from 'pngjs';
import { GLYPH_ADVANCE, GLYPH_HEIGHT, GLYPH_WIDTH, glyphFor, textWidth } from './font.js';

export type RGB = readonly [number, number, number];

export const BLACK: RGB = [0, 0, 0];
export const WHITE: RGB = [255, 255, 255];
export const GREY: RGB = [150, 150, 150];

/** Line colors for overlaid series. */
export const PALETTE: readonly RGB[] = [
  [31, 119, 180],
  [214, 39, 40],
  [44, 160, 44],
  [255, 127, 14],
  [148, 103, 189],
  [140, 86, 75],
];

export type TextAlign = 'left' | 'center' | 'right';

export class Raster {
  readonly width: number;
  readonly height: number;
  readonly pixels: Uint8Array;

  constructor(width: number, height: number, background: RGB = WHITE) {
    if (!Number.isInteger(width) || !Number.isInteger(height) || width < 1 || height < 1) {
      throw new RangeError(`raster size must be positive integers, got ${width}x${height}`);
    }
    this.width = width;
    this.height = height;
    this.pixels = new Uint8Array(width * height * 4);
    this.fillRect(0, 0, width, height, background);
  }

  set(x: number, y: number, color: RGB): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const i = (y * this.width + x) * 4;
    this.pixels[i] = color[0];
    this.pixels[i + 1] = color[1];
    this.pixels[i + 2] = color[2];
    this.pixels[i + 3] = 255;
  }

  fillRect(x: number, y: number, w: number, h: number, color: RGB): void {
    const x0 = Math.max(0, x);
    const y0 = Math.max(0, y);
    const x1 = Math.min(this.width, x + w);
    const y1 = Math.min(this.height, y + h);
    for (let yy = y0; yy < y1; yy++) {
      for (let xx = x0; xx < x1; xx++) {
        const i = (yy * this.width + xx) * 4;
        this.pixels[i] = color[0];
        this.pixels[i + 1] = color[1];
        this.pixels[i + 2] = color[2];
        this.pixels[i + 3] = 255;
      }
    }
  }

  /** 1px Bresenham line between integer endpoints. */
  line(x0: number, y0: number, x1: number, y1: number, color: RGB): void {
    let x = Math.round(x0);
    let y = Math.round(y0);
    const xEnd = Math.round(x1);
    const yEnd = Math.round(y1);
    const dx = Math.abs(xEnd - x);
    const dy = -Math.abs(yEnd - y);
    const sx = x < xEnd ? 1 : -1;
    const sy = y < yEnd ? 1 : -1;
    let err = dx + dy;
    for (;;) {
      this.set(x, y, color);
      if (x === xEnd && y === yEnd) break;
      const e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        x += sx;
      }
      if (e2 <= dx) {
        err += dx;
        y += sy;
      }
    }
  }

  /** Bitmap text with (x, y) the top-left of the first glyph before alignment. */
  text(x: number, y: number, content: string, color: RGB = BLACK, scale = 1, align: TextAlign = 'left'): void {
    let startX = Math.round(x);
    const w = textWidth(content, scale);
    if (align === 'center') startX -= Math.round(w / 2);
    if (align === 'right') startX -= w;
    const startY = Math.round(y);
    for (let c = 0; c < content.length; c++) {
      const glyph = glyphFor(content[c]);
      const gx = startX + c * GLYPH_ADVANCE * scale;
      for (let row = 0; row < GLYPH_HEIGHT; row++) {
        for (let col = 0; col < GLYPH_WIDTH; col++) {
          if (glyph[row][col] !== 'X') continue;
          this.fillRect(gx + col * scale, startY + row * scale, scale, scale, color);
        }
      }
    }
  }

  /** Text rotated 90 degrees counterclockwise (reads bottom-up). */
  textVertical(x: number, y: number, content: string, color: RGB = BLACK, scale = 1, align: TextAlign = 'left'): void {
    let startY = Math.round(y);
    const w = textWidth(content, scale);
    if (align === 'center') startY += Math.round(w / 2);
    if (align === 'right') startY += w;
    const startX = Math.round(x);
    for (let c = 0; c < content.length; c++) {
      const glyph = glyphFor(content[c]);
      const gy = startY - c * GLYPH_ADVANCE * scale;
      for (let row = 0; row < GLYPH_HEIGHT; row++) {
        for (let col = 0; col < GLYPH_WIDTH; col++) {
          if (glyph[row][col] !== 'X') continue;
          this.fillRect(startX + row * scale, gy - col * scale, scale, scale, color);
        }
      }
    }
  }

  /** Encode as PNG; identical raster contents give identical bytes. */
  encode(): Buffer {
    const png = new PNG({ width: this.width, height: this.height });
    this.pixels.forEach((v, i) => {
      png.data[i] = v;
    });
    return PNG.sync.write(png);
  }
}

/** Clamp v into [0, 1] and map along a dark-violet-to-yellow perceptual ramp. */
export function heatColor(v: number): RGB {
  const anchors: readonly RGB[] = [
    [68, 1, 84],
    [71, 44, 122],
    [59, 81, 139],
    [44, 113, 142],
    [33, 144, 141],
    [39, 173, 129],
    [92, 200, 99],
    [170, 220, 50],
    [253, 231, 37],
  ];
  const t = Math.min(1, Math.max(0, v)) * (anchors.length - 1);
  const lo = Math.floor(t);
  const hi = Math.min(lo + 1, anchors.length - 1);
  const frac = t - lo;
  return [
    Math.round(anchors[lo][0] + frac * (anchors[hi][0] - anchors[lo][0])),
    Math.round(anchors[lo][1] + frac * (anchors[hi][1] - anchors[lo][1])),
    Math.round(anchors[lo][2] + frac * (anchors[hi][2] - anchors[lo][2])),
  ];
}
