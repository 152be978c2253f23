"""Command-line surface tying the pipeline together.

Subcommands mirror the pipeline stages: ``gen`` builds a synthetic corpus,
``fit`` fits beta shapes, ``metrics`` adds the subjectivity report and dip
test, ``classify`` attaches ternary classes, ``simulate`` runs the
recommendation comparison, ``eval`` scores predictions against ground
truth, and ``compute`` answers batch requests over JSON lines (the
surface foreign-language bindings talk to).

Exit codes: 0 success, 1 input/usage error, 2 internal error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
import traceback

import numpy as np

from . import __version__
from .beta_model import BetaShape, b2r, fit_beta, opinion_from_shape
from .decision import (
    DEFAULT_THRESHOLD_SCORE,
    RecommendationRule,
    TernaryCenter,
    compute_center,
    simulate_recommendation,
)
from .distributions import (
    RatingDistribution,
    emd,
    kld,
    mae,
    mean_score,
    normalize_counts,
    plcc,
    srocc,
)
from .errors import AesuError, DegenerateInput, IoError, MalformedLine
from .ingest import generate_synthetic, read_corpus, record_to_dict, write_results
from .losses import DEFAULT_WEIGHTS, LossWeights, total_loss
from .modality import DEFAULT_BOOT, DEFAULT_SIGNIFICANCE
from .pipeline import AnalysisOptions, analyze_corpus, classify_corpus
from .records import SyntheticSpec
from .subjectivity import full_report

__all__ = ["cli_main", "main"]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on usage errors; the CLI contract wants 1.
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def _build_parser() -> _Parser:
    parser = _Parser(prog="aesu", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p, output=True):
        p.add_argument("--input", required=True, help="corpus file to read")
        p.add_argument("--format", choices=("ava", "csv", "jsonl"), default="jsonl")
        p.add_argument("--skip-bad", action="store_true",
                       help="warn on malformed lines instead of aborting")
        if output:
            p.add_argument("--out", required=True, help="result file to write")
            p.add_argument("--out-format", choices=("jsonl", "csv"), default=None,
                           help="defaults to csv for .csv outputs, else jsonl")

    def add_fit_flags(p):
        p.add_argument("--emd-r", type=float, default=2.0)
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("fit", help="fit beta shapes and opinions")
    add_io(p)
    add_fit_flags(p)

    p = sub.add_parser("metrics", help="fit plus subjectivity report and dip test")
    add_io(p)
    add_fit_flags(p)
    p.add_argument("--boot", type=int, default=DEFAULT_BOOT)
    p.add_argument("--significance", type=float, default=DEFAULT_SIGNIFICANCE)

    p = sub.add_parser("classify", help="attach ternary classes")
    add_io(p)
    add_fit_flags(p)
    p.add_argument("--center", default="auto",
                   help="'auto' (corpus medians) or three comma-separated values B,D,U")

    p = sub.add_parser("simulate", help="compare recommendation rules")
    add_io(p, output=False)
    add_fit_flags(p)
    p.add_argument("--center", default="auto")
    p.add_argument("--threshold", type=int, default=DEFAULT_THRESHOLD_SCORE)
    p.add_argument("--rules", default="binary,ternary")
    p.add_argument("--out", default=None, help="optional JSON summary file")

    p = sub.add_parser("gen", help="generate a synthetic corpus")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--raters", type=int, required=True)
    p.add_argument("--alpha-range", default="1.2,30")
    p.add_argument("--beta-range", default="1.2,30")
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("eval", help="score predictions against ground truth")
    p.add_argument("--pred", required=True)
    p.add_argument("--truth", required=True)
    p.add_argument("--format", choices=("ava", "csv", "jsonl"), default="jsonl")
    p.add_argument("--threshold", type=int, default=DEFAULT_THRESHOLD_SCORE)
    p.add_argument("--out", default=None, help="optional JSON report file")

    p = sub.add_parser("compute", help="answer batch requests (JSONL in/out)")
    p.add_argument("--requests", required=True)
    p.add_argument("--out", required=True)

    return parser


def _out_format(args) -> str:
    if getattr(args, "out_format", None):
        return args.out_format
    return "csv" if str(args.out).endswith(".csv") else "jsonl"


def _parse_center(spec: str, records) -> TernaryCenter:
    if spec == "auto":
        return compute_center([r.opinion for r in records])
    parts = [float(x) for x in spec.split(",")]
    if len(parts) != 3:
        raise _UsageError(f"--center expects 'auto' or B,D,U, got {spec!r}")
    return TernaryCenter(*parts)


def _analyzed(args, with_report: bool, with_modality: bool = False):
    records = read_corpus(args.input, args.format, skip_bad=args.skip_bad)
    opts = AnalysisOptions(
        emd_r=args.emd_r,
        seed=args.seed,
        with_report=with_report,
        with_modality=with_modality,
        boot=getattr(args, "boot", DEFAULT_BOOT),
        significance=getattr(args, "significance", DEFAULT_SIGNIFICANCE),
    )
    return analyze_corpus(records, opts, jobs=args.jobs)


def _cmd_fit(args) -> int:
    records = _analyzed(args, with_report=False)
    write_results(records, args.out, _out_format(args))
    print(f"fitted {len(records)} records -> {args.out}")
    return 0


def _cmd_metrics(args) -> int:
    records = _analyzed(args, with_report=True, with_modality=True)
    write_results(records, args.out, _out_format(args))
    print(f"analyzed {len(records)} records -> {args.out}")
    return 0


def _needs_fit(records) -> bool:
    return any(r.opinion is None or r.predicted_mean is None for r in records)


def _cmd_classify(args) -> int:
    records = read_corpus(args.input, args.format, skip_bad=args.skip_bad)
    if _needs_fit(records):
        opts = AnalysisOptions(emd_r=args.emd_r, seed=args.seed, with_report=False)
        records = analyze_corpus(records, opts, jobs=args.jobs)
    center = _parse_center(args.center, records)
    records = classify_corpus(records, center)
    write_results(records, args.out, _out_format(args))
    counts: dict[str, int] = {}
    for r in records:
        counts[r.ternary_class] = counts.get(r.ternary_class, 0) + 1
    print(
        f"classified {len(records)} records with center "
        f"({center.b_c:.4g}, {center.d_c:.4g}, {center.u_c:.4g}): {counts}"
    )
    return 0


def _cmd_simulate(args) -> int:
    records = read_corpus(args.input, args.format, skip_bad=args.skip_bad)
    if _needs_fit(records):
        opts = AnalysisOptions(emd_r=args.emd_r, seed=args.seed, with_report=False)
        records = analyze_corpus(records, opts, jobs=args.jobs)
    center = _parse_center(args.center, records)
    rules = []
    for name in args.rules.split(","):
        name = name.strip()
        try:
            rules.append(RecommendationRule(name))
        except ValueError:
            raise _UsageError(f"unknown rule {name!r}; choose from binary, ternary")
    summary = simulate_recommendation(records, center, rules, args.threshold)
    payload = {
        "threshold_score": summary.threshold_score,
        "center": {"b": center.b_c, "d": center.d_c, "u": center.u_c},
        "n_images": len(records),
        "rules": {
            r.rule.value: {
                "n_recommended": r.n_recommended,
                "satisfaction_ratio": float(f"{r.satisfaction:.12g}"),
            }
            for r in summary.results
        },
    }
    text = json.dumps(payload, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)
    return 0


def _cmd_gen(args) -> int:
    def parse_range(s):
        lo, hi = (float(x) for x in s.split(","))
        return (lo, hi)

    spec = SyntheticSpec(
        n_images=args.n,
        raters_per_image=args.raters,
        alpha_range=parse_range(args.alpha_range),
        beta_range=parse_range(args.beta_range),
        vote_noise=args.noise,
        seed=args.seed,
    )
    records = generate_synthetic(spec)
    write_results(records, args.out, "csv" if str(args.out).endswith(".csv") else "jsonl")
    print(f"generated {len(records)} records -> {args.out}")
    return 0


_EVAL_COLUMNS = ("mean", "std", "mad", "med", "dud", "aesu")


def _metric_value(rec, name: str):
    # Prefer stored columns; recompute the count-derived ones on demand.
    if name == "mean":
        if rec.predicted_mean is not None:
            return rec.predicted_mean
        return mean_score(rec.distribution)
    rep = rec.report
    if rep is not None:
        return getattr(rep, name)
    return None


def _cmd_eval(args) -> int:
    pred = {r.image_id: r for r in read_corpus(args.pred, args.format)}
    truth = read_corpus(args.truth, args.format)
    pairs = [(pred[t.image_id], t) for t in truth if t.image_id in pred]
    if not pairs:
        raise MalformedLine("no common image_ids between pred and truth")

    report: dict = {"n_pairs": len(pairs)}
    for col in _EVAL_COLUMNS:
        xs, ys = [], []
        for p, t in pairs:
            pv, tv = _metric_value(p, col), _metric_value(t, col)
            if pv is not None and tv is not None:
                xs.append(pv)
                ys.append(tv)
        if len(xs) >= 2:
            try:
                corr = {"plcc": plcc(xs, ys), "srocc": srocc(xs, ys)}
            except DegenerateInput:
                corr = {"plcc": None, "srocc": None}
            report[col] = {**corr, "mae": mae(xs, ys)}

    emds = [emd(p.distribution, t.distribution, r=1.0) for p, t in pairs]
    klds = [kld(t.distribution, p.distribution) for p, t in pairs]
    report["distribution"] = {
        "emd_r1_mean": float(np.mean(emds)),
        "kld_mean": float(np.mean(klds)),
    }
    agree = [
        (_metric_value(p, "mean") > args.threshold)
        == (_metric_value(t, "mean") > args.threshold)
        for p, t in pairs
    ]
    report["binary_accuracy"] = float(np.mean(agree))

    text = json.dumps(report, indent=2, sort_keys=True, default=float)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)
    return 0


def _compute_one(req: dict) -> dict:
    op = req.get("op")
    if op == "fit":
        res = fit_beta(
            normalize_counts(req["counts"]),
            r=float(req.get("emd_r", 2.0)),
            seed=int(req.get("seed", 0)),
        )
        o = opinion_from_shape(res.shape)
        return {
            "alpha": res.shape.alpha,
            "beta": res.shape.beta,
            "b": o.belief,
            "d": o.disbelief,
            "u": o.uncertainty,
            "fit_emd": res.fit_emd,
            "iterations": res.iterations,
            "converged": res.converged,
        }
    if op == "losses":
        w = DEFAULT_WEIGHTS
        if "weights" in req:
            w = LossWeights(**{k: float(v) for k, v in req["weights"].items()})
        breakdown = total_loss(
            RatingDistribution(tuple(req["r_pred"])),
            BetaShape(*req["b_pred"]),
            RatingDistribution(tuple(req["r_true"])),
            BetaShape(*req["b_true"]),
            w,
        )
        return dataclasses.asdict(breakdown)
    if op == "b2r":
        return {"probs": list(b2r(BetaShape(req["alpha"], req["beta"])).probs)}
    if op == "opinion":
        o = opinion_from_shape(BetaShape(req["alpha"], req["beta"]))
        return {"b": o.belief, "d": o.disbelief, "u": o.uncertainty}
    if op == "emd":
        return {
            "value": emd(
                RatingDistribution(tuple(req["p"])),
                RatingDistribution(tuple(req["q"])),
                r=float(req.get("r", 2.0)),
            )
        }
    if op == "kld":
        return {
            "value": kld(
                RatingDistribution(tuple(req["p"])), RatingDistribution(tuple(req["q"]))
            )
        }
    if op == "mean_score":
        return {"value": mean_score(RatingDistribution(tuple(req["p"])))}
    if op == "report":
        p = normalize_counts(req["counts"])
        fit = fit_beta(p, r=float(req.get("emd_r", 2.0)), seed=int(req.get("seed", 0)))
        rep = full_report(p, fit)
        return dataclasses.asdict(rep)
    raise ValueError(f"unknown op {op!r}")


def _cmd_compute(args) -> int:
    try:
        with open(args.requests, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as e:
        raise IoError(f"cannot read {args.requests}: {e}") from e
    responses = []
    for line_no, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            req = json.loads(line)
            result = _compute_one(req)
            result["ok"] = True
            responses.append(result)
        except Exception as e:  # per-request isolation; errors go to the caller
            responses.append(
                {"ok": False, "error": type(e).__name__, "message": str(e), "line": line_no}
            )
    try:
        with open(args.out, "w", encoding="utf-8") as fh:
            for resp in responses:
                fh.write(json.dumps(resp, separators=(",", ":")) + "\n")
    except OSError as e:
        raise IoError(f"cannot write {args.out}: {e}") from e
    print(f"answered {len(responses)} requests -> {args.out}")
    return 0


_COMMANDS = {
    "fit": _cmd_fit,
    "metrics": _cmd_metrics,
    "classify": _cmd_classify,
    "simulate": _cmd_simulate,
    "gen": _cmd_gen,
    "eval": _cmd_eval,
    "compute": _cmd_compute,
}


def cli_main(argv: list[str] | None = None) -> int:
    """Entry point; returns the process exit code instead of raising."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as e:
        print(str(e), file=sys.stderr)
        return 1
    except (AesuError, OSError, ValueError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    except SystemExit as e:  # argparse --help/--version
        return int(e.code or 0)
    except Exception:
        traceback.print_exc()
        return 2


def main() -> None:
    sys.exit(cli_main(sys.argv[1:]))
