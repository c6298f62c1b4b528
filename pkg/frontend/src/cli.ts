#!/usr/bin/env node
/**
 * Command line: render one figure panel from simulator CSV output.
 *
 *   plot --kind distribution --in runs/hqw_distribution.csv --out dist.png
 *   plot --kind trajectory --in runs/hqw_measures.csv [--in more.csv] --col sigma --out sigma.png
 *   plot --kind carpet --in runs/sqw_distribution.csv --col mu --out carpet.png
 *
 * Exit code 0 on success, 2 for usage or data errors.
 */

import { writeFileSync } from 'node:fs';
import { basename } from 'node:path';
import { parseArgs } from 'node:util';
import { renderCarpet } from './carpet.js';
import { CsvError, readTableFile } from './csv.js';
import { renderDistribution } from './distribution.js';
import { renderTrajectory } from './trajectory.js';

const KINDS = ['distribution', 'trajectory', 'carpet'] as const;
type Kind = (typeof KINDS)[number];

export class UsageError extends Error {}

interface Options {
  kind: Kind;
  inputs: string[];
  col?: string;
  out: string;
  step?: number;
  width?: number;
  height?: number;
  title?: string;
}

function parseOptions(argv: string[]): Options {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      options: {
        kind: { type: 'string' },
        in: { type: 'string', multiple: true },
        col: { type: 'string' },
        out: { type: 'string' },
        step: { type: 'string' },
        width: { type: 'string' },
        height: { type: 'string' },
        title: { type: 'string' },
        help: { type: 'boolean', short: 'h' },
      },
      allowPositionals: false,
    });
  } catch (err) {
    throw new UsageError((err as Error).message);
  }
  const v = parsed.values;
  if (v.help) throw new UsageError(usage());
  if (!v.kind || !(KINDS as readonly string[]).includes(v.kind)) {
    throw new UsageError(`--kind must be one of ${KINDS.join(', ')}`);
  }
  if (!v.in || v.in.length === 0) throw new UsageError('--in FILE is required');
  if (!v.out) throw new UsageError('--out FILE is required');
  return {
    kind: v.kind as Kind,
    inputs: v.in,
    col: v.col,
    out: v.out,
    step: v.step === undefined ? undefined : parseIntFlag('--step', v.step),
    width: v.width === undefined ? undefined : parseIntFlag('--width', v.width),
    height: v.height === undefined ? undefined : parseIntFlag('--height', v.height),
    title: v.title,
  };
}

function parseIntFlag(flag: string, text: string): number {
  const value = Number(text);
  if (!Number.isInteger(value)) throw new UsageError(`${flag} expects an integer, got '${text}'`);
  return value;
}

function usage(): string {
  return (
    'usage: plot --kind {distribution,trajectory,carpet} --in FILE [--in FILE ...] ' +
    '[--col NAME] [--step N] [--width N] [--height N] [--title TEXT] --out FILE'
  );
}

function render(options: Options): Buffer {
  switch (options.kind) {
    case 'distribution': {
      if (options.inputs.length !== 1) throw new UsageError('distribution takes exactly one --in file');
      const table = readTableFile(options.inputs[0]);
      return renderDistribution(table, {
        col: options.col,
        step: options.step,
        width: options.width,
        height: options.height,
        title: options.title,
      });
    }
    case 'trajectory': {
      if (!options.col) throw new UsageError('trajectory needs --col (a measures column)');
      const inputs = options.inputs.map((path) => ({
        name: basename(path).replace(/\.[^.]+$/, ''),
        table: readTableFile(path),
      }));
      return renderTrajectory(inputs, {
        col: options.col,
        width: options.width,
        height: options.height,
        title: options.title,
      });
    }
    case 'carpet': {
      if (options.inputs.length !== 1) throw new UsageError('carpet takes exactly one --in file');
      const table = readTableFile(options.inputs[0]);
      return renderCarpet(table, {
        col: options.col,
        title: options.title,
      });
    }
  }
}

export function main(argv: string[]): number {
  try {
    const options = parseOptions(argv);
    writeFileSync(options.out, render(options));
    console.log(options.out);
    return 0;
  } catch (err) {
    if (err instanceof UsageError || err instanceof CsvError || err instanceof RangeError) {
      console.error(`error: ${err.message}`);
      return 2;
    }
    if ((err as NodeJS.ErrnoException).code !== undefined) {
      console.error(`error: ${(err as Error).message}`);
      return 2;
    }
    throw err;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url === new URL(`file://${process.argv[1]}`).href;
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
