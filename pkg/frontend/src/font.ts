/**
 * Minimal 5x7 bitmap font for axis labels and titles.
 *
 * Uppercase-only: lowercase input is uppercased, anything without a glyph
 * renders as '?'.  Glyphs are kept as row strings so mistakes are visible
 * in the source.
 */

export const GLYPH_WIDTH = 5;
export const GLYPH_HEIGHT = 7;
/** Horizontal advance per character, including one blank column. */
export const GLYPH_ADVANCE = GLYPH_WIDTH + 1;

const GLYPHS: Record<string, readonly string[]> = {
  ' ': ['     ', '     ', '     ', '     ', '     ', '     ', '     '],
  A: [' XXX ', 'X   X', 'X   X', 'XXXXX', 'X   X', 'X   X', 'X   X'],
  B: ['XXXX ', 'X   X', 'X   X', 'XXXX ', 'X   X', 'X   X', 'XXXX '],
  C: [' XXX ', 'X   X', 'X    ', 'X    ', 'X    ', 'X   X', ' XXX '],
  D: ['XXXX ', 'X   X', 'X   X', 'X   X', 'X   X', 'X   X', 'XXXX '],
  E: ['XXXXX', 'X    ', 'X    ', 'XXXX ', 'X    ', 'X    ', 'XXXXX'],
  F: ['XXXXX', 'X    ', 'X    ', 'XXXX ', 'X    ', 'X    ', 'X    '],
  G: [' XXX ', 'X   X', 'X    ', 'X XXX', 'X   X', 'X   X', ' XXX '],
  H: ['X   X', 'X   X', 'X   X', 'XXXXX', 'X   X', 'X   X', 'X   X'],
  I: [' XXX ', '  X  ', '  X  ', '  X  ', '  X  ', '  X  ', ' XXX '],
  J: ['  XXX', '   X ', '   X ', '   X ', '   X ', 'X  X ', ' XX  '],
  K: ['X   X', 'X  X ', 'X X  ', 'XX   ', 'X X  ', 'X  X ', 'X   X'],
  L: ['X    ', 'X    ', 'X    ', 'X    ', 'X    ', 'X    ', 'XXXXX'],
  M: ['X   X', 'XX XX', 'X X X', 'X X X', 'X   X', 'X   X', 'X   X'],
  N: ['X   X', 'XX  X', 'X X X', 'X  XX', 'X   X', 'X   X', 'X   X'],
  O: [' XXX ', 'X   X', 'X   X', 'X   X', 'X   X', 'X   X', ' XXX '],
  P: ['XXXX ', 'X   X', 'X   X', 'XXXX ', 'X    ', 'X    ', 'X    '],
  Q: [' XXX ', 'X   X', 'X   X', 'X   X', 'X X X', 'X  X ', ' XX X'],
  R: ['XXXX ', 'X   X', 'X   X', 'XXXX ', 'X X  ', 'X  X ', 'X   X'],
  S: [' XXXX', 'X    ', 'X    ', ' XXX ', '    X', '    X', 'XXXX '],
  T: ['XXXXX', '  X  ', '  X  ', '  X  ', '  X  ', '  X  ', '  X  '],
  U: ['X   X', 'X   X', 'X   X', 'X   X', 'X   X', 'X   X', ' XXX '],
  V: ['X   X', 'X   X', 'X   X', 'X   X', 'X   X', ' X X ', '  X  '],
  W: ['X   X', 'X   X', 'X   X', 'X X X', 'X X X', 'XX XX', 'X   X'],
  X: ['X   X', 'X   X', ' X X ', '  X  ', ' X X ', 'X   X', 'X   X'],
  Y: ['X   X', 'X   X', ' X X ', '  X  ', '  X  ', '  X  ', '  X  '],
  Z: ['XXXXX', '    X', '   X ', '  X  ', ' X   ', 'X    ', 'XXXXX'],
  '0': [' XXX ', 'X   X', 'X  XX', 'X X X', 'XX  X', 'X   X', ' XXX '],
  '1': ['  X  ', ' XX  ', '  X  ', '  X  ', '  X  ', '  X  ', ' XXX '],
  '2': [' XXX ', 'X   X', '    X', '   X ', '  X  ', ' X   ', 'XXXXX'],
  '3': [' XXX ', 'X   X', '    X', '  XX ', '    X', 'X   X', ' XXX '],
  '4': ['   X ', '  XX ', ' X X ', 'X  X ', 'XXXXX', '   X ', '   X '],
  '5': ['XXXXX', 'X    ', 'XXXX ', '    X', '    X', 'X   X', ' XXX '],
  '6': [' XXX ', 'X    ', 'X    ', 'XXXX ', 'X   X', 'X   X', ' XXX '],
  '7': ['XXXXX', '    X', '   X ', '  X  ', ' X   ', ' X   ', ' X   '],
  '8': [' XXX ', 'X   X', 'X   X', ' XXX ', 'X   X', 'X   X', ' XXX '],
  '9': [' XXX ', 'X   X', 'X   X', ' XXXX', '    X', '    X', ' XXX '],
  '-': ['     ', '     ', '     ', 'XXXXX', '     ', '     ', '     '],
  '+': ['     ', '  X  ', '  X  ', 'XXXXX', '  X  ', '  X  ', '     '],
  '.': ['     ', '     ', '     ', '     ', '     ', '  XX ', '  XX '],
  ',': ['     ', '     ', '     ', '     ', '  XX ', '  XX ', ' X   '],
  ':': ['     ', '  XX ', '  XX ', '     ', '  XX ', '  XX ', '     '],
  _: ['     ', '     ', '     ', '     ', '     ', '     ', 'XXXXX'],
  '/': ['    X', '    X', '   X ', '  X  ', ' X   ', 'X    ', 'X    '],
  '(': ['   X ', '  X  ', ' X   ', ' X   ', ' X   ', '  X  ', '   X '],
  ')': [' X   ', '  X  ', '   X ', '   X ', '   X ', '  X  ', ' X   '],
  '=': ['     ', '     ', 'XXXXX', '     ', 'XXXXX', '     ', '     '],
  '%': ['XX  X', 'XX  X', '   X ', '  X  ', ' X   ', 'X  XX', 'X  XX'],
  '?': [' XXX ', 'X   X', '    X', '   X ', '  X  ', '     ', '  X  '],
};

export function glyphFor(char: string): readonly string[] {
  return GLYPHS[char.toUpperCase()] ?? GLYPHS['?'];
}

export function listGlyphs(): ReadonlyMap<string, readonly string[]> {
  return new Map(Object.entries(GLYPHS));
}

/** Pixel width of a rendered string at the given integer scale. */
export function textWidth(text: string, scale = 1): number {
  if (text.length === 0) return 0;
  return (text.length * GLYPH_ADVANCE - 1) * scale;
}
