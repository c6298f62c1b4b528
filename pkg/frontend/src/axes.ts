/** Shared panel frame: margins, axis box, ticks, labels, title. */

import { GLYPH_HEIGHT } from './font.js';
import { BLACK, GREY, Raster, type RGB } from './raster.js';
import { formatTick, linearScale, ticks, type Scale } from './scale.js';

export interface FrameOptions {
  width: number;
  height: number;
  xDomain: readonly [number, number];
  yDomain: readonly [number, number];
  xLabel: string;
  yLabel: string;
  title?: string;
}

export interface Frame {
  raster: Raster;
  x: Scale;
  y: Scale;
  plot: { left: number; top: number; width: number; height: number };
}

const MARGIN = { left: 64, right: 24, top: 28, bottom: 40 };

/** Widen a degenerate domain so a single point still lands mid-axis. */
export function padDomain(domain: readonly [number, number]): readonly [number, number] {
  const [lo, hi] = domain;
  if (lo !== hi) return domain;
  const pad = lo === 0 ? 1 : Math.abs(lo) * 0.5;
  return [lo - pad, hi + pad];
}

export function makeFrame(options: FrameOptions): Frame {
  const raster = new Raster(options.width, options.height);
  const plot = {
    left: MARGIN.left,
    top: MARGIN.top,
    width: options.width - MARGIN.left - MARGIN.right,
    height: options.height - MARGIN.top - MARGIN.bottom,
  };
  if (plot.width < 20 || plot.height < 20) {
    throw new RangeError(`panel ${options.width}x${options.height} too small for axes`);
  }
  const xDomain = padDomain(options.xDomain);
  const yDomain = padDomain(options.yDomain);
  const x = linearScale(xDomain, [plot.left, plot.left + plot.width]);
  const y = linearScale(yDomain, [plot.top + plot.height, plot.top]);

  const bottom = plot.top + plot.height;
  const right = plot.left + plot.width;
  raster.line(plot.left, plot.top, plot.left, bottom, BLACK);
  raster.line(plot.left, bottom, right, bottom, BLACK);
  raster.line(right, plot.top, right, bottom, GREY);
  raster.line(plot.left, plot.top, right, plot.top, GREY);

  for (const tick of ticks(xDomain[0], xDomain[1], 6)) {
    const px = Math.round(x(tick));
    raster.line(px, bottom, px, bottom + 3, BLACK);
    raster.text(px, bottom + 6, formatTick(tick), BLACK, 1, 'center');
  }
  for (const tick of ticks(yDomain[0], yDomain[1], 5)) {
    const py = Math.round(y(tick));
    raster.line(plot.left - 3, py, plot.left, py, BLACK);
    raster.text(plot.left - 6, py - Math.floor(GLYPH_HEIGHT / 2), formatTick(tick), BLACK, 1, 'right');
  }

  raster.text(plot.left + plot.width / 2, options.height - GLYPH_HEIGHT - 4, options.xLabel, BLACK, 1, 'center');
  raster.textVertical(6, plot.top + plot.height / 2, options.yLabel, BLACK, 1, 'center');
  if (options.title) {
    raster.text(options.width / 2, 8, options.title, BLACK, 2, 'center');
  }
  return { raster, x, y, plot };
}

/** Polyline through data points; lone points get a 3x3 marker. */
export function drawSeries(
  frame: Frame,
  xs: ArrayLike<number>,
  ys: ArrayLike<number>,
  color: RGB,
): void {
  if (xs.length === 1) {
    const px = Math.round(frame.x(xs[0]));
    const py = Math.round(frame.y(ys[0]));
    frame.raster.fillRect(px - 1, py - 1, 3, 3, color);
    return;
  }
  for (let i = 1; i < xs.length; i++) {
    frame.raster.line(frame.x(xs[i - 1]), frame.y(ys[i - 1]), frame.x(xs[i]), frame.y(ys[i]), color);
  }
}

/** Min/max of finite values; errors on an empty series. */
export function extent(values: ArrayLike<number>): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (let i = 0; i < values.length; i++) {
    const v = values[i];
    if (!Number.isFinite(v)) continue;
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (lo > hi) throw new RangeError('no finite values to scale');
  return [lo, hi];
}
