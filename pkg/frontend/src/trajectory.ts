/** Trajectory panel: one measures column against step, optionally several files overlaid. */

import { drawSeries, extent, makeFrame } from './axes.js';
import { column, type Table } from './csv.js';
import { BLACK, PALETTE, Raster } from './raster.js';
import { GLYPH_HEIGHT } from './font.js';

export interface NamedTable {
  /** Legend label, normally the source file's base name. */
  name: string;
  table: Table;
}

export interface TrajectoryOptions {
  col: string;
  width?: number;
  height?: number;
  title?: string;
}

export function renderTrajectory(inputs: readonly NamedTable[], options: TrajectoryOptions): Buffer {
  if (inputs.length === 0) throw new RangeError('trajectory panel needs at least one table');
  const series = inputs.map(({ name, table }) => ({
    name,
    steps: column(table, 'step'),
    values: column(table, options.col),
  }));

  let xLo = Infinity;
  let xHi = -Infinity;
  let yLo = Infinity;
  let yHi = -Infinity;
  for (const s of series) {
    const [sx0, sx1] = extent(s.steps);
    const [sy0, sy1] = extent(s.values);
    xLo = Math.min(xLo, sx0);
    xHi = Math.max(xHi, sx1);
    yLo = Math.min(yLo, sy0);
    yHi = Math.max(yHi, sy1);
  }

  const frame = makeFrame({
    width: options.width ?? 900,
    height: options.height ?? 520,
    xDomain: [xLo, xHi],
    yDomain: [Math.min(0, yLo), yHi],
    xLabel: 'step',
    yLabel: options.col,
    title: options.title ?? `${options.col} per step`,
  });
  series.forEach((s, i) => {
    drawSeries(frame, s.steps, s.values, PALETTE[i % PALETTE.length]);
  });
  if (series.length > 1) {
    drawLegend(frame.raster, frame.plot, series.map((s) => s.name));
  }
  return frame.raster.encode();
}

function drawLegend(
  raster: Raster,
  plot: { left: number; top: number; width: number },
  names: readonly string[],
): void {
  const lineLength = 14;
  let y = plot.top + 6;
  for (let i = 0; i < names.length; i++) {
    const color = PALETTE[i % PALETTE.length];
    const x0 = plot.left + plot.width - 120;
    raster.line(x0, y + 3, x0 + lineLength, y + 3, color);
    raster.text(x0 + lineLength + 4, y, names[i], BLACK);
    y += GLYPH_HEIGHT + 4;
  }
}
