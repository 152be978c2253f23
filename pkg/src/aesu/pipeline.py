"""Per-image analysis orchestration.

Each record's analysis is independent, so corpora can fan out over a
process pool; results are gathered by input index, never by completion
order, and every per-image random stream is derived from (seed, index).
Together these make output files byte-identical for any --jobs value.
"""

from __future__ import annotations

import dataclasses
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from .beta_model import fit_beta, opinion_from_shape
from .decision import TernaryCenter, classify
from .distributions import mean_score
from .modality import DEFAULT_BOOT, DEFAULT_SIGNIFICANCE, dip_test
from .records import ImageRecord
from .subjectivity import full_report

__all__ = ["AnalysisOptions", "analyze_record", "analyze_corpus", "classify_corpus"]


@dataclasses.dataclass(frozen=True)
class AnalysisOptions:
    emd_r: float = 2.0
    seed: int = 42
    with_report: bool = True
    with_modality: bool = False
    boot: int = DEFAULT_BOOT
    significance: float = DEFAULT_SIGNIFICANCE


def analyze_record(rec: ImageRecord, index: int, opts: AnalysisOptions) -> ImageRecord:
    """Fill the analysis fields of one record.

    The fit restarts use the (seed, index) stream; the dip bootstrap uses
    the corpus-wide seed so every image shares one null table.
    """
    fit = fit_beta(rec.distribution, r=opts.emd_r, seed=[opts.seed, index])
    opinion = opinion_from_shape(fit.shape)
    updates: dict = {
        "fit": fit,
        "opinion": opinion,
        "predicted_mean": mean_score(rec.distribution),
    }
    if opts.with_report:
        updates["report"] = full_report(rec.distribution, fit)
    if opts.with_modality:
        updates["modality"] = dip_test(
            rec.distribution, boot=opts.boot, seed=opts.seed,
            significance=opts.significance,
        )
    return dataclasses.replace(rec, **updates)


def _worker(args: tuple[ImageRecord, int, AnalysisOptions]) -> ImageRecord:
    rec, index, opts = args
    return analyze_record(rec, index, opts)


def analyze_corpus(
    records: Sequence[ImageRecord],
    opts: AnalysisOptions = AnalysisOptions(),
    jobs: int = 1,
) -> list[ImageRecord]:
    """Analyze every record, optionally across processes; order preserved."""
    tasks = [(rec, i, opts) for i, rec in enumerate(records)]
    if jobs <= 1 or len(records) < 2:
        return [_worker(t) for t in tasks]
    chunk = max(1, len(tasks) // (4 * jobs))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_worker, tasks, chunksize=chunk))


def classify_corpus(records: Sequence[ImageRecord], center: TernaryCenter) -> list[ImageRecord]:
    """Attach the ternary class to every record (requires opinions)."""
    out = []
    for rec in records:
        if rec.opinion is None:
            raise ValueError(f"record {rec.image_id!r} has no opinion; run the fit first")
        out.append(
            dataclasses.replace(rec, ternary_class=classify(rec.opinion, center).value)
        )
    return out
