// Thin bindings over the hdtile CLI for Node data-loader code.
//
// Each function shells out to the primary executable, exchanging images as
// binary PPM/PGM bytes and structured results as the CLI's JSON documents.
// Nothing is recomputed on this side, so results are byte-identical to the
// primary pipeline's.

import { spawnSync } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { decodePnm, encodePnm } from "./pnm.js";

export { decodePnm, encodePnm } from "./pnm.js";
export type { RawImage } from "./pnm.js";

export interface PartitionPlan {
  p_w: number;
  p_h: number;
  canvas_w: number;
  canvas_h: number;
  resized_w: number;
  resized_h: number;
  pad_bottom: number;
  clamped: boolean;
}

export interface PlanResult extends PartitionPlan {
  token_count: number;
}

export interface TileResult {
  global: Uint8Array;
  patches: Uint8Array[];
  plan: PartitionPlan;
  tokenCount: number;
}

export interface BatchSource {
  name: string;
  sampleCount: number;
  bucket: "HD25" | "HD55";
}

export interface BatchPlan {
  seed: number;
  batch_sizes: { HD25: number; HD55: number };
  steps: { bucket: "HD25" | "HD55"; sources: string[] }[];
}

export interface CliOptions {
  /** Command (argv prefix) that runs the hdtile CLI; defaults to `$HDTILE_CLI` or `hdtile`. */
  command?: string[];
}

function cliCommand(options?: CliOptions): string[] {
  if (options?.command && options.command.length > 0) {
    return options.command;
  }
  const env = process.env.HDTILE_CLI;
  if (env && env.trim().length > 0) {
    return env.trim().split(/\s+/);
  }
  return ["hdtile"];
}

export function runCli(args: string[], options?: CliOptions): string {
  const [exe, ...prefix] = cliCommand(options);
  const result = spawnSync(exe, [...prefix, ...args], {
    encoding: "utf8",
    maxBuffer: 64 * 1024 * 1024,
  });
  if (result.error) {
    throw new Error(`failed to run ${exe}: ${result.error.message}`);
  }
  if (result.status !== 0) {
    const detail = result.stderr.trim() || `exit code ${result.status}`;
    throw new Error(detail);
  }
  return result.stdout;
}

function checkPositiveInt(name: string, value: number): void {
  if (!Number.isInteger(value) || value < 1) {
    throw new Error(`${name} must be a positive integer, got ${value}`);
  }
}

/** Solve the tile grid for an image; mirrors the primary's plan_partition. */
export function plan(
  width: number,
  height: number,
  maxPatches: number,
  options?: CliOptions,
): PlanResult {
  const out = runCli(
    [
      "plan",
      "--width", String(width),
      "--height", String(height),
      "--max-patches", String(maxPatches),
    ],
    options,
  );
  return JSON.parse(out) as PlanResult;
}

/** Token count of a p_w x p_h layout. */
export function tokenCount(pW: number, pH: number, options?: CliOptions): number {
  const out = runCli(["tokens", "--pw", String(pW), "--ph", String(pH)], options);
  return Number.parseInt(out.trim(), 10);
}

/** Largest token count under a tile budget (attained by the single-column layout). */
export function maxTokenCount(maxPatches: number, options?: CliOptions): number {
  checkPositiveInt("maxPatches", maxPatches);
  return tokenCount(1, maxPatches, options);
}

/** Tile an in-memory image; byte-identical to the primary pipeline's patches. */
export function tile(
  buffer: Uint8Array,
  width: number,
  height: number,
  channels: number,
  maxPatches: number,
  options?: CliOptions,
): TileResult {
  checkPositiveInt("maxPatches", maxPatches);
  const encoded = encodePnm(buffer, width, height, channels); // validates the shape

  const workDir = mkdtempSync(join(tmpdir(), "hdtile-"));
  try {
    const inputPath = join(workDir, channels === 3 ? "input.ppm" : "input.pgm");
    writeFileSync(inputPath, encoded);
    const outDir = join(workDir, "out");
    runCli(
      [
        "tile",
        "--input", inputPath,
        "--max-patches", String(maxPatches),
        "--out-dir", outDir,
      ],
      options,
    );
    const manifest = JSON.parse(readFileSync(join(outDir, "manifest.json"), "utf8"));
    const patches = (manifest.patch_files as string[]).map(
      (name) => new Uint8Array(decodePnm(readFileSync(join(outDir, name))).data),
    );
    const global = new Uint8Array(
      decodePnm(readFileSync(join(outDir, manifest.global_file))).data,
    );
    return {
      global,
      patches,
      plan: manifest.plan as PartitionPlan,
      tokenCount: manifest.token_count as number,
    };
  } finally {
    rmSync(workDir, { recursive: true, force: true });
  }
}

/** Plan weighted, resolution-bucketed batches; mirrors the primary's plan_batches. */
export function planBatches(
  sources: BatchSource[],
  steps: number,
  batchHd25: number,
  seed: number,
  options?: CliOptions,
): BatchPlan {
  if (sources.length === 0) {
    throw new Error("at least one source is required");
  }
  const args = ["batches"];
  for (const s of sources) {
    args.push("--source", `${s.name}:${s.sampleCount}:${s.bucket}`);
  }
  args.push(
    "--steps", String(steps),
    "--batch-hd25", String(batchHd25),
    "--seed", String(seed),
  );
  return JSON.parse(runCli(args, options)) as BatchPlan;
}
