/**
 * Carpet panel: a per-site column of the distribution table as a heatmap,
 * position across, time upward, color scaled to the column's maximum.
 */

import { column, CsvError, type Table } from './csv.js';
import { GLYPH_HEIGHT } from './font.js';
import { BLACK, heatColor, Raster, WHITE } from './raster.js';
import { formatTick, ticks } from './scale.js';

export interface CarpetOptions {
  col?: string;
  /** Pixels per cell; by default chosen so the grid stays near 800px wide. */
  cellSize?: number;
  title?: string;
}

export interface Grid {
  xs: number[];
  steps: number[];
  /** values[stepIndex][xIndex], verbatim from the table. */
  values: Float64Array[];
  max: number;
}

/** Pivot (step, x, value) rows into a dense grid; missing cells are an error. */
export function extractGrid(table: Table, col: string): Grid {
  const steps = column(table, 'step');
  const xs = column(table, 'x');
  const values = column(table, col);

  const stepIndex = indexUnique(steps);
  const xIndex = indexUnique(xs);
  const grid = stepIndex.order.map(() => {
    const row = new Float64Array(xIndex.order.length);
    row.fill(NaN);
    return row;
  });
  for (let i = 0; i < values.length; i++) {
    grid[stepIndex.of.get(steps[i])!][xIndex.of.get(xs[i])!] = values[i];
  }
  let max = 0;
  for (const row of grid) {
    for (const v of row) {
      if (Number.isNaN(v)) throw new CsvError(`table is not a full (step, x) grid in '${col}'`);
      if (v > max) max = v;
    }
  }
  return { xs: xIndex.order, steps: stepIndex.order, values: grid, max };
}

function indexUnique(values: Float64Array): { order: number[]; of: Map<number, number> } {
  const order = [...new Set(values)].sort((a, b) => a - b);
  return { order, of: new Map(order.map((v, i) => [v, i])) };
}

export function renderCarpet(table: Table, options: CarpetOptions = {}): Buffer {
  const col = options.col ?? 'mu';
  const grid = extractGrid(table, col);
  const cell = options.cellSize ?? Math.max(1, Math.floor(800 / Math.max(grid.xs.length, grid.steps.length)));

  const margin = { left: 64, right: 70, top: 28, bottom: 40 };
  const plotW = grid.xs.length * cell;
  const plotH = grid.steps.length * cell;
  const raster = new Raster(margin.left + plotW + margin.right, margin.top + plotH + margin.bottom);

  const bottom = margin.top + plotH;
  const scale = grid.max > 0 ? 1 / grid.max : 0;
  for (let s = 0; s < grid.steps.length; s++) {
    const y = bottom - (s + 1) * cell; // time runs upward
    const row = grid.values[s];
    for (let i = 0; i < row.length; i++) {
      raster.fillRect(margin.left + i * cell, y, cell, cell, heatColor(row[i] * scale));
    }
  }

  for (const tick of ticks(grid.xs[0], grid.xs[grid.xs.length - 1], 6)) {
    const i = grid.xs.findIndex((v) => v >= tick);
    if (i < 0) continue;
    const px = margin.left + i * cell + Math.floor(cell / 2);
    raster.line(px, bottom, px, bottom + 3, BLACK);
    raster.text(px, bottom + 6, formatTick(tick), BLACK, 1, 'center');
  }
  for (const tick of ticks(grid.steps[0], grid.steps[grid.steps.length - 1], 5)) {
    const s = grid.steps.findIndex((v) => v >= tick);
    if (s < 0) continue;
    const py = bottom - s * cell - Math.floor(cell / 2);
    raster.line(margin.left - 3, py, margin.left, py, BLACK);
    raster.text(margin.left - 6, py - Math.floor(GLYPH_HEIGHT / 2), formatTick(tick), BLACK, 1, 'right');
  }
  raster.text(margin.left + plotW / 2, raster.height - GLYPH_HEIGHT - 4, 'x', BLACK, 1, 'center');
  raster.textVertical(6, margin.top + plotH / 2, 'step', BLACK, 1, 'center');
  raster.text(raster.width / 2, 8, options.title ?? col, BLACK, 2, 'center');

  drawColorBar(raster, margin.left + plotW + 16, margin.top, plotH, grid.max);
  return raster.encode();
}

function drawColorBar(raster: Raster, x: number, top: number, height: number, max: number): void {
  const width = 12;
  for (let i = 0; i < height; i++) {
    const v = 1 - i / Math.max(height - 1, 1);
    raster.fillRect(x, top + i, width, 1, heatColor(v));
  }
  raster.fillRect(x, top, width, 1, BLACK);
  raster.fillRect(x, top + height - 1, width, 1, BLACK);
  raster.text(x + width + 3, top, formatTick(max), BLACK);
  raster.text(x + width + 3, top + height - GLYPH_HEIGHT, '0', BLACK);
  // separator so the bar reads as its own axis
  raster.fillRect(x - 2, top, 1, height, WHITE);
}
