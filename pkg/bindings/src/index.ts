export { AesuClient, AesuCoreError, type ClientOptions } from "./client.js";
export type {
  BetaShapePair,
  ComputeFailure,
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
