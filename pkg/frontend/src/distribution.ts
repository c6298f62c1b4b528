/** Distribution panel: one column of the per-site table at a single step, against x. */

import { drawSeries, extent, makeFrame } from './axes.js';
import { column, CsvError, type Table } from './csv.js';
import { PALETTE } from './raster.js';

export interface DistributionOptions {
  col?: string;
  /** Time step to plot; defaults to the last step present. */
  step?: number;
  width?: number;
  height?: number;
  title?: string;
}

export interface StepSeries {
  step: number;
  x: number[];
  values: number[];
}

/** Rows of one time step, verbatim and in file order. */
export function extractStepSeries(table: Table, col: string, step?: number): StepSeries {
  const steps = column(table, 'step');
  const xs = column(table, 'x');
  const values = column(table, col);
  let chosen = step;
  if (chosen === undefined) {
    chosen = -Infinity;
    for (let i = 0; i < steps.length; i++) if (steps[i] > chosen) chosen = steps[i];
  }
  const outX: number[] = [];
  const outV: number[] = [];
  for (let i = 0; i < steps.length; i++) {
    if (steps[i] === chosen) {
      outX.push(xs[i]);
      outV.push(values[i]);
    }
  }
  if (outX.length === 0) {
    throw new CsvError(`no rows with step ${chosen}`);
  }
  return { step: chosen, x: outX, values: outV };
}

export function renderDistribution(table: Table, options: DistributionOptions = {}): Buffer {
  const col = options.col ?? 'prob';
  const series = extractStepSeries(table, col, options.step);
  const [vLo, vHi] = extent(series.values);
  const frame = makeFrame({
    width: options.width ?? 900,
    height: options.height ?? 520,
    xDomain: extent(series.x),
    yDomain: [Math.min(0, vLo), vHi],
    xLabel: 'x',
    yLabel: col,
    title: options.title ?? `${col} at step ${series.step}`,
  });
  drawSeries(frame, series.x, series.values, PALETTE[0]);
  return frame.raster.encode();
}
