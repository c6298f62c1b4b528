export { column, CsvError, parseTable, readTableFile, type Table } from './csv.js';
export { formatTick, linearScale, ticks, type Scale } from './scale.js';
export { GLYPH_ADVANCE, GLYPH_HEIGHT, GLYPH_WIDTH, glyphFor, listGlyphs, textWidth } from './font.js';
export { BLACK, GREY, heatColor, PALETTE, Raster, WHITE, type RGB } from './raster.js';
export { drawSeries, extent, makeFrame, padDomain, type Frame, type FrameOptions } from './axes.js';
export { extractStepSeries, renderDistribution, type DistributionOptions, type StepSeries } from './distribution.js';
export { renderTrajectory, type NamedTable, type TrajectoryOptions } from './trajectory.js';
export { extractGrid, renderCarpet, type CarpetOptions, type Grid } from './carpet.js';
export { main, UsageError } from './cli.js';
