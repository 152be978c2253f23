import { spawnSync } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import type {
  BetaShapePair,
  ComputeRequest,
  ComputeResponse,
  FitOptions,
  FitOutput,
  LossBreakdown,
  LossWeights,
  OpinionTriple,
  Probabilities,
  RatingCounts,
  SubjectivityReport,
} from "./types.js";

/** Error surfaced from the numerics core, carrying its exception name. */
export class AesuCoreError extends Error {
  readonly code: string;

  constructor(code: string, message: string) {
    super(`${code}: ${message}`);
    this.name = "AesuCoreError";
    this.code = code;
  }
}

export interface ClientOptions {
  /**
   * Command used to launch the core CLI, e.g. ["aesu"] or
   * ["python3", "-m", "aesu"]. Defaults to $AESU_CLI (whitespace-split)
   * when set, otherwise probes those two candidates.
   */
  command?: string[];
}

const CANDIDATE_COMMANDS: string[][] = [["aesu"], ["python3", "-m", "aesu"]];

function resolveCommand(requested?: string[]): string[] {
  if (requested && requested.length > 0) return requested;
  const fromEnv = process.env.AESU_CLI;
  if (fromEnv && fromEnv.trim().length > 0) return fromEnv.trim().split(/\s+/);
  for (const candidate of CANDIDATE_COMMANDS) {
    const probe = spawnSync(candidate[0], [...candidate.slice(1), "--version"], {
      encoding: "utf-8",
    });
    if (probe.status === 0) return candidate;
  }
  throw new Error(
    "cannot locate the aesu CLI; install the core package or set AESU_CLI",
  );
}

function checkVector(name: string, values: number[], length = 10): void {
  if (!Array.isArray(values) || values.length !== length) {
    throw new TypeError(`${name} must be an array of ${length} numbers`);
  }
  for (const v of values) {
    if (typeof v !== "number" || !Number.isFinite(v)) {
      throw new TypeError(`${name} contains a non-finite entry`);
    }
  }
}

/**
 * Synchronous bindings to the aesu core.
 *
 * Every call is value-passing: inputs are serialized to a JSONL request
 * file, the CLI's batch compute subcommand answers into a response file,
 * and results are copied back out. No state is shared with the core
 * between calls, so a single client may be used from concurrent callers.
 */
export class AesuClient {
  private command: string[] | undefined;
  private readonly requestedCommand: string[] | undefined;

  constructor(options: ClientOptions = {}) {
    this.requestedCommand = options.command;
  }

  /** Run a batch of raw compute requests; one response per request. */
  computeBatch(requests: ComputeRequest[]): ComputeResponse[] {
    if (requests.length === 0) return [];
    this.command ??= resolveCommand(this.requestedCommand);
    const dir = mkdtempSync(join(tmpdir(), "aesu-bindings-"));
    try {
      const reqPath = join(dir, "requests.jsonl");
      const respPath = join(dir, "responses.jsonl");
      writeFileSync(
        reqPath,
        requests.map((r) => JSON.stringify(r)).join("\n") + "\n",
      );
      const proc = spawnSync(
        this.command[0],
        [...this.command.slice(1), "compute", "--requests", reqPath, "--out", respPath],
        { encoding: "utf-8" },
      );
      if (proc.error) throw proc.error;
      if (proc.status !== 0) {
        throw new Error(
          `aesu compute exited with code ${proc.status}: ${proc.stderr.trim()}`,
        );
      }
      const lines = readFileSync(respPath, "utf-8").split("\n").filter((l) => l.trim());
      if (lines.length !== requests.length) {
        throw new Error(
          `expected ${requests.length} responses, got ${lines.length}`,
        );
      }
      return lines.map((line) => JSON.parse(line) as ComputeResponse);
    } finally {
      rmSync(dir, { recursive: true, force: true });
    }
  }

  private computeOne(request: ComputeRequest): Record<string, unknown> {
    const [response] = this.computeBatch([request]);
    if (!response.ok) {
      throw new AesuCoreError(response.error, response.message);
    }
    return response;
  }

  /** Fit a beta shape to raw vote counts; delegates to the core fit. */
  fit(counts: RatingCounts, options: FitOptions = {}): FitOutput {
    checkVector("counts", counts);
    const resp = this.computeOne({
      op: "fit",
      counts,
      emd_r: options.emdR ?? 2.0,
      seed: options.seed ?? 0,
    });
    return {
      alpha: resp.alpha as number,
      beta: resp.beta as number,
      b: resp.b as number,
      d: resp.d as number,
      u: resp.u as number,
      fitEmd: resp.fit_emd as number,
      iterations: resp.iterations as number,
      converged: resp.converged as boolean,
    };
  }

  /** Evaluate the training-loss suite on a prediction/truth pair. */
  losses(
    rPred: Probabilities,
    bPred: BetaShapePair,
    rTrue: Probabilities,
    bTrue: BetaShapePair,
    weights?: LossWeights,
  ): LossBreakdown {
    checkVector("rPred", rPred);
    checkVector("rTrue", rTrue);
    const resp = this.computeOne({
      op: "losses",
      r_pred: rPred,
      b_pred: [bPred.alpha, bPred.beta],
      r_true: rTrue,
      b_true: [bTrue.alpha, bTrue.beta],
      ...(weights ? { weights } : {}),
    });
    return {
      l1: resp.l1 as number,
      l2: resp.l2 as number,
      l3: resp.l3 as number,
      total: resp.total as number,
    };
  }

  /** Discretize a beta density to ten bin probabilities. */
  b2r(shape: BetaShapePair): Probabilities {
    const resp = this.computeOne({ op: "b2r", alpha: shape.alpha, beta: shape.beta });
    return resp.probs as Probabilities;
  }

  /** Convert a beta shape to its (b, d, u) opinion. */
  opinion(shape: BetaShapePair): OpinionTriple {
    const resp = this.computeOne({
      op: "opinion",
      alpha: shape.alpha,
      beta: shape.beta,
    });
    return { b: resp.b as number, d: resp.d as number, u: resp.u as number };
  }

  /** Earth mover's distance of order r between two bin-probability vectors. */
  emd(p: Probabilities, q: Probabilities, r = 2.0): number {
    checkVector("p", p);
    checkVector("q", q);
    return this.computeOne({ op: "emd", p, q, r }).value as number;
  }

  /** KL divergence KL(p || q) with the core's epsilon smoothing. */
  kld(p: Probabilities, q: Probabilities): number {
    checkVector("p", p);
    checkVector("q", q);
    return this.computeOne({ op: "kld", p, q }).value as number;
  }

  /** Mean rating on the 1..10 score scale. */
  meanScore(p: Probabilities): number {
    checkVector("p", p);
    return this.computeOne({ op: "mean_score", p }).value as number;
  }

  /** Full subjectivity report (fit included) for raw vote counts. */
  report(counts: RatingCounts, options: FitOptions = {}): SubjectivityReport {
    checkVector("counts", counts);
    const resp = this.computeOne({
      op: "report",
      counts,
      emd_r: options.emdR ?? 2.0,
      seed: options.seed ?? 0,
    });
    return {
      std: resp.std as number,
      mad: resp.mad as number,
      med: resp.med as number,
      dud: resp.dud as number,
      aesu: resp.aesu as number,
      mean: resp.mean as number,
      binaryPleasing: resp.binary_pleasing as boolean,
    };
  }
}
