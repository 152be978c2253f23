"""Corpus ingestion and result persistence.

Three interchange formats:

* ``ava``   -- whitespace-separated lines of 15 integers: row index,
  image id, ten score counts (scores 1..10), two semantic tag ids, one
  challenge id.
* ``csv``   -- header ``image_id,c1,...,c10``; analyzed result files
  append the metric columns in a fixed order.
* ``jsonl`` -- one JSON object per line; the lossless round-trip format.

Numbers are serialized with 12 significant digits, which preserves a
relative 1e-10 round trip while keeping files diff-friendly and
byte-stable across runs.
"""

from __future__ import annotations

import csv
import io
import json
import warnings
from typing import Iterable, Sequence

import numpy as np

from .beta_model import BetaShape, FitResult, Opinion
from .distributions import NUM_BINS, normalize_counts
from .errors import AllZeroCounts, IoError, MalformedLine
from .modality import ModalityResult
from .records import ImageRecord, SyntheticSpec
from .subjectivity import SubjectivityReport

__all__ = [
    "RESULT_FIELDS",
    "CSV_HEADER",
    "parse_ava_line",
    "read_corpus",
    "generate_synthetic",
    "write_results",
    "record_to_dict",
    "record_from_dict",
]

#: Result-row schema, in serialization order.
RESULT_FIELDS = (
    "image_id",
    "counts",
    "alpha",
    "beta",
    "b",
    "d",
    "u",
    "fit_emd",
    "mean",
    "std",
    "mad",
    "med",
    "dud",
    "aesu",
    "dip",
    "dip_p",
    "unimodal",
    "mode_count",
    "ternary_class",
)

#: Fixed CSV column order ("counts" expands to one column per bin).
CSV_HEADER = (
    "image_id,"
    + ",".join(f"c{i}" for i in range(1, NUM_BINS + 1))
    + ",alpha,beta,b,d,u,fit_emd,mean,std,mad,med,dud,aesu,dip,dip_p,unimodal,mode_count,ternary_class"
)

_AVA_FIELD_COUNT = 15


def _fmt(x: float) -> float:
    """Round to 12 significant digits (as a float, for JSON emission)."""
    return float(f"{x:.12g}")


def parse_ava_line(line: str, line_no: int | None = None) -> ImageRecord:
    """Parse one AVA-format line into a record with counts and metadata."""
    fields = line.split()
    if len(fields) != _AVA_FIELD_COUNT:
        raise MalformedLine(
            f"expected {_AVA_FIELD_COUNT} fields, got {len(fields)}", line_no
        )
    try:
        values = [int(f) for f in fields]
    except ValueError as e:
        raise MalformedLine(f"non-integer field: {e}", line_no) from e
    counts = values[2:12]
    try:
        distribution = normalize_counts(counts)
    except AllZeroCounts as e:
        raise MalformedLine("all score counts are zero", line_no) from e
    return ImageRecord(
        image_id=str(values[1]),
        distribution=distribution,
        counts=tuple(counts),
        meta={
            "row_index": values[0],
            "tag_ids": (values[12], values[13]),
            "challenge_id": values[14],
        },
    )


def record_to_dict(rec: ImageRecord) -> dict:
    """Serialize a record to the fixed result schema (plus extras that make
    the JSONL round trip lossless)."""
    fit = rec.fit
    opinion = rec.opinion
    rep = rec.report
    mod = rec.modality
    d: dict = {
        "image_id": rec.image_id,
        "counts": list(rec.counts) if rec.counts is not None else None,
        "alpha": _fmt(fit.shape.alpha) if fit else None,
        "beta": _fmt(fit.shape.beta) if fit else None,
        "b": _fmt(opinion.belief) if opinion else None,
        "d": _fmt(opinion.disbelief) if opinion else None,
        "u": _fmt(opinion.uncertainty) if opinion else None,
        "fit_emd": _fmt(fit.fit_emd) if fit else None,
        "mean": _fmt(rec.predicted_mean) if rec.predicted_mean is not None else None,
        "std": _fmt(rep.std) if rep else None,
        "mad": _fmt(rep.mad) if rep else None,
        "med": _fmt(rep.med) if rep else None,
        "dud": _fmt(rep.dud) if rep else None,
        "aesu": _fmt(rep.aesu) if rep else None,
        "dip": _fmt(mod.dip) if mod else None,
        "dip_p": _fmt(mod.p_value) if mod else None,
        "unimodal": mod.unimodal if mod else None,
        "mode_count": mod.mode_count if mod else None,
        "ternary_class": rec.ternary_class,
    }
    if fit:
        d["fit_iterations"] = fit.iterations
        d["fit_converged"] = fit.converged
    if rec.meta:
        d["meta"] = {k: _json_safe(v) for k, v in rec.meta.items()}
    return d


def _json_safe(v):
    if isinstance(v, (np.floating, float)):
        return _fmt(float(v))
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, (tuple, list)):
        return [_json_safe(x) for x in v]
    return v


def record_from_dict(d: dict, line_no: int | None = None) -> ImageRecord:
    """Rebuild a record from a result/corpus dict (inverse of record_to_dict)."""
    try:
        image_id = str(d["image_id"])
        counts = d.get("counts")
        if counts is None:
            raise MalformedLine("record has no counts", line_no)
        counts = tuple(int(c) for c in counts)
        distribution = normalize_counts(counts)

        fit = None
        if d.get("alpha") is not None:
            fit = FitResult(
                shape=BetaShape(float(d["alpha"]), float(d["beta"])),
                fit_emd=float(d.get("fit_emd", 0.0)),
                iterations=int(d.get("fit_iterations", 0)),
                converged=bool(d.get("fit_converged", True)),
            )
        opinion = None
        if d.get("b") is not None:
            b = float(d["b"])
            disb = float(d["d"])
            u = float(d["u"])
            # 12-digit rounding of the three components can leave the sum
            # ~1e-12 off; rebalance u within a tiny budget so the strict
            # Opinion invariant holds after a round trip.
            if abs((1.0 - b - disb) - u) <= 1e-9:
                u = 1.0 - b - disb
            opinion = Opinion(b, disb, u)
        mean = float(d["mean"]) if d.get("mean") is not None else None
        report = None
        if d.get("std") is not None:
            report = SubjectivityReport(
                std=float(d["std"]),
                mad=float(d["mad"]),
                med=float(d["med"]),
                dud=float(d["dud"]),
                aesu=float(d["aesu"]),
                mean=mean if mean is not None else 0.0,
                binary_pleasing=(mean if mean is not None else 0.0) > 5.0,
            )
        modality = None
        if d.get("dip") is not None:
            modality = ModalityResult(
                dip=float(d["dip"]),
                p_value=float(d["dip_p"]),
                n=sum(counts),
                mode_count=int(d.get("mode_count") or 0),
                unimodal=bool(d.get("unimodal")),
            )
        return ImageRecord(
            image_id=image_id,
            distribution=distribution,
            counts=counts,
            fit=fit,
            opinion=opinion,
            report=report,
            modality=modality,
            predicted_mean=mean,
            ternary_class=d.get("ternary_class"),
            meta=d.get("meta", {}),
        )
    except MalformedLine:
        raise
    except (KeyError, TypeError, ValueError, AllZeroCounts) as e:
        raise MalformedLine(f"bad record: {e}", line_no) from e


def _iter_read(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            yield from enumerate(fh, start=1)
    except OSError as e:
        raise IoError(f"cannot read {path}: {e}") from e


def read_corpus(path: str, format: str, skip_bad: bool = False) -> list[ImageRecord]:
    """Read a corpus file; aborts on the first malformed line unless
    skip_bad is set, in which case bad lines produce warnings."""
    if format not in ("ava", "csv", "jsonl"):
        raise ValueError(f"unknown corpus format {format!r}")
    records: list[ImageRecord] = []

    def handle(line_no: int, parse):
        try:
            records.append(parse())
        except MalformedLine as e:
            if not skip_bad:
                raise
            warnings.warn(f"skipping {path}:{e}", stacklevel=3)

    if format == "ava":
        for line_no, line in _iter_read(path):
            if line.strip():
                handle(line_no, lambda: parse_ava_line(line, line_no))
    elif format == "jsonl":
        for line_no, line in _iter_read(path):
            if not line.strip():
                continue

            def parse_json(line=line, line_no=line_no):
                try:
                    obj = json.loads(line)
                except json.JSONDecodeError as e:
                    raise MalformedLine(f"invalid JSON: {e}", line_no) from e
                return record_from_dict(obj, line_no)

            handle(line_no, parse_json)
    else:
        records.extend(_read_csv(path, skip_bad))
    return records


def _read_csv(path: str, skip_bad: bool) -> list[ImageRecord]:
    count_cols = [f"c{i}" for i in range(1, NUM_BINS + 1)]
    records = []
    rows = _iter_read(path)
    try:
        header_no, header_line = next(rows)
    except StopIteration:
        raise MalformedLine("empty file, expected a CSV header", 1) from None
    header = next(csv.reader(io.StringIO(header_line)))
    missing = [c for c in ["image_id", *count_cols] if c not in header]
    if missing:
        raise MalformedLine(f"CSV header lacks columns {missing}", header_no)
    for line_no, line in rows:
        if not line.strip():
            continue
        try:
            row = dict(zip(header, next(csv.reader(io.StringIO(line)))))
            d: dict = {
                "image_id": row.get("image_id", ""),
                "counts": [row[c] for c in count_cols],
            }
            for key in ("alpha", "beta", "b", "d", "u", "fit_emd", "mean", "std",
                        "mad", "med", "dud", "aesu", "dip", "dip_p"):
                if row.get(key):
                    d[key] = float(row[key])
            if row.get("unimodal"):
                d["unimodal"] = row["unimodal"] == "true"
            if row.get("mode_count"):
                d["mode_count"] = int(row["mode_count"])
            if row.get("ternary_class"):
                d["ternary_class"] = row["ternary_class"]
            records.append(record_from_dict(d, line_no))
        except MalformedLine:
            if not skip_bad:
                raise
            warnings.warn(f"skipping {path}:{line_no}", stacklevel=2)
        except (ValueError, KeyError) as e:
            if not skip_bad:
                raise MalformedLine(f"bad CSV row: {e}", line_no) from e
            warnings.warn(f"skipping {path}:{line_no}: {e}", stacklevel=2)
    return records


def generate_synthetic(spec: SyntheticSpec) -> list[ImageRecord]:
    """Build a seeded synthetic corpus of vote histograms.

    Each image draws its true shape log-uniformly from the prior ranges,
    samples one beta variate per rater, bins it to a score, and then
    replaces each vote with a uniform random score with probability
    vote_noise. Image i uses the counter-derived stream (seed, i), so the
    corpus is reproducible regardless of evaluation order or parallelism.
    """
    records = []
    log_a = (np.log(spec.alpha_range[0]), np.log(spec.alpha_range[1]))
    log_b = (np.log(spec.beta_range[0]), np.log(spec.beta_range[1]))
    for i in range(spec.n_images):
        rng = np.random.default_rng([spec.seed, i])
        alpha = float(np.exp(rng.uniform(*log_a)))
        beta = float(np.exp(rng.uniform(*log_b)))
        xs = rng.beta(alpha, beta, size=spec.raters_per_image)
        scores = np.minimum((xs * NUM_BINS).astype(int) + 1, NUM_BINS)
        noisy = rng.random(spec.raters_per_image) < spec.vote_noise
        uniform_scores = rng.integers(1, NUM_BINS + 1, size=spec.raters_per_image)
        scores = np.where(noisy, uniform_scores, scores)
        counts = np.bincount(scores, minlength=NUM_BINS + 1)[1:]
        records.append(
            ImageRecord.from_counts(
                f"syn-{i:06d}",
                counts,
                meta={"true_alpha": alpha, "true_beta": beta},
            )
        )
    return records


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def write_results(records: Iterable[ImageRecord], path: str, format: str) -> None:
    """Write analyzed records; one row per image, schema per RESULT_FIELDS."""
    if format not in ("jsonl", "csv"):
        raise ValueError(f"unknown output format {format!r}")
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            if format == "jsonl":
                for rec in records:
                    fh.write(json.dumps(record_to_dict(rec), separators=(",", ":")))
                    fh.write("\n")
            else:
                fh.write(CSV_HEADER + "\n")
                for rec in records:
                    d = record_to_dict(rec)
                    counts = d["counts"] or [None] * NUM_BINS
                    cells = [d["image_id"], *counts] + [
                        d[k] for k in RESULT_FIELDS[2:]
                    ]
                    fh.write(",".join(_csv_cell(c) for c in cells) + "\n")
    except OSError as e:
        raise IoError(f"cannot write {path}: {e}") from e
