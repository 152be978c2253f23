/** Ten per-score vote counts, scores 1..10. */
export type RatingCounts = number[];

/** Ten bin probabilities summing to 1. */
export type Probabilities = number[];

/** Beta shape parameters; the core constrains both to [1, 500]. */
export interface BetaShapePair {
  alpha: number;
  beta: number;
}

/** Subjective-logic binomial opinion; components sum to 1. */
export interface OpinionTriple {
  b: number;
  d: number;
  u: number;
}

export interface FitOptions {
  /** EMD order used by the fit objective (default 2). */
  emdR?: number;
  /** Seed for the optimizer's perturbed restarts (default 0). */
  seed?: number;
}

export interface FitOutput extends OpinionTriple {
  alpha: number;
  beta: number;
  fitEmd: number;
  iterations: number;
  converged: boolean;
}

export interface LossWeights {
  w1: number;
  w2: number;
  w3: number;
  wb: number;
}

export interface LossBreakdown {
  l1: number;
  l2: number;
  l3: number;
  total: number;
}

export interface SubjectivityReport {
  std: number;
  mad: number;
  med: number;
  dud: number;
  aesu: number;
  mean: number;
  binaryPleasing: boolean;
}

/** One request line of the core's batch compute protocol. */
export type ComputeRequest =
  | { op: "fit"; counts: RatingCounts; emd_r?: number; seed?: number }
  | {
      op: "losses";
      r_pred: Probabilities;
      b_pred: [number, number];
      r_true: Probabilities;
      b_true: [number, number];
      weights?: LossWeights;
    }
  | { op: "b2r"; alpha: number; beta: number }
  | { op: "opinion"; alpha: number; beta: number }
  | { op: "emd"; p: Probabilities; q: Probabilities; r?: number }
  | { op: "kld"; p: Probabilities; q: Probabilities }
  | { op: "mean_score"; p: Probabilities }
  | { op: "report"; counts: RatingCounts; emd_r?: number; seed?: number };

export interface ComputeFailure {
  ok: false;
  /** Exception class name raised inside the core (e.g. "AllZeroCounts"). */
  error: string;
  message: string;
}

export type ComputeResponse = ({ ok: true } & Record<string, unknown>) | ComputeFailure;
