import { PNG } from 'pngjs';
import { describe, expect, it } from 'vitest';
import { BLACK, heatColor, Raster, WHITE } from './raster.js';

function decode(buffer: Buffer): PNG {
  return PNG.sync.read(buffer);
}

function pixelAt(png: PNG, x: number, y: number): [number, number, number, number] {
  const i = (y * png.width + x) * 4;
  return [png.data[i], png.data[i + 1], png.data[i + 2], png.data[i + 3]];
}

describe('Raster', () => {
  it('encodes a PNG that round-trips pixel values', () => {
    const r = new Raster(10, 8);
    r.set(3, 2, [10, 20, 30]);
    const png = decode(r.encode());
    expect(png.width).toBe(10);
    expect(png.height).toBe(8);
    expect(pixelAt(png, 3, 2)).toEqual([10, 20, 30, 255]);
    expect(pixelAt(png, 0, 0)).toEqual([255, 255, 255, 255]);
  });

  it('clips out-of-bounds drawing instead of wrapping', () => {
    const r = new Raster(4, 4);
    r.set(-1, 0, BLACK);
    r.set(0, 7, BLACK);
    r.fillRect(2, 2, 10, 10, BLACK);
    const png = decode(r.encode());
    expect(pixelAt(png, 3, 0)).toEqual([255, 255, 255, 255]);
    expect(pixelAt(png, 3, 3)).toEqual([0, 0, 0, 255]);
  });

  it('draws Bresenham lines through both endpoints', () => {
    const r = new Raster(10, 10);
    r.line(0, 0, 9, 9, BLACK);
    const png = decode(r.encode());
    expect(pixelAt(png, 0, 0)).toEqual([0, 0, 0, 255]);
    expect(pixelAt(png, 9, 9)).toEqual([0, 0, 0, 255]);
    expect(pixelAt(png, 5, 5)).toEqual([0, 0, 0, 255]);
  });

  it('renders text as ink', () => {
    const r = new Raster(60, 12);
    r.text(1, 1, 'sigma');
    const png = decode(r.encode());
    let ink = 0;
    for (let i = 0; i < png.data.length; i += 4) {
      if (png.data[i] === 0) ink++;
    }
    expect(ink).toBeGreaterThan(20);
  });

  it('identical drawing gives byte-identical PNGs', () => {
    const draw = () => {
      const r = new Raster(50, 30);
      r.line(0, 0, 49, 29, [31, 119, 180]);
      r.text(2, 2, 'E=0.87');
      return r.encode();
    };
    expect(draw().equals(draw())).toBe(true);
  });

  it('rejects non-positive dimensions', () => {
    expect(() => new Raster(0, 5)).toThrow(RangeError);
    expect(() => new Raster(5.5, 5)).toThrow(RangeError);
  });
});

describe('heatColor', () => {
  it('spans dark violet to yellow and clamps', () => {
    expect(heatColor(0)).toEqual([68, 1, 84]);
    expect(heatColor(1)).toEqual([253, 231, 37]);
    expect(heatColor(-5)).toEqual(heatColor(0));
    expect(heatColor(2)).toEqual(heatColor(1));
  });

  it('is monotone in green mid-ramp', () => {
    const g = [0, 0.25, 0.5, 0.75, 1].map((v) => heatColor(v)[1]);
    for (let i = 1; i < g.length; i++) expect(g[i]).toBeGreaterThan(g[i - 1]);
  });
});
