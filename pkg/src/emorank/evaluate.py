"""Scoring rankings against SemEval-2007 affective-text ground truth.

Correlations return ``None`` when undefined (an argument has zero variance).
"""

from __future__ import annotations

import csv
import json
import logging
import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .ranking import SentenceResult

logger = logging.getLogger(__name__)

SEMEVAL_LABELS = ("anger", "disgust", "fear", "joy", "sadness", "surprise")
KENDALL_VARIANT = "tau-b"
COEFFICIENTS = ("pearson", "spearman", "kendall")


class GroundTruthError(ValueError):
    pass


class EvaluationError(ValueError):
    pass


@dataclass(frozen=True)
class GroundTruthRecord:
    sentence_id: str
    text: str
    scores: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.scores) != len(SEMEVAL_LABELS):
            raise GroundTruthError(f"{self.sentence_id}: expected 6 scores, got {len(self.scores)}")
        bad = [s for s in self.scores if not 0 <= s <= 100]
        if bad:
            raise GroundTruthError(f"{self.sentence_id}: scores out of [0, 100]: {bad}")


@dataclass(frozen=True)
class CorrelationReport:
    sentence_id: str
    pearson: float | None
    spearman: float | None
    kendall: float | None
    aggregate: str = "avg"

    def get(self, name: str) -> float | None:
        return getattr(self, name)

    @property
    def undefined(self) -> bool:
        return any(self.get(c) is None for c in COEFFICIENTS)


_INSTANCE_RE = re.compile(r'<instance\s+id="([^"]+)"\s*>(.*?)</instance>', re.DOTALL)


def _read_lines(path: str | Path) -> list[str]:
    with open(path, encoding="utf-8", newline="") as fh:
        return [line.rstrip("\r\n") for line in fh]


def read_headlines(path: str | Path) -> dict[str, str]:
    """``id@headline`` lines, or the original SemEval ``<instance id="..">`` XML."""
    lines = _read_lines(path)
    headlines: dict[str, str] = {}
    if any(line.lstrip().startswith("<corpus") for line in lines[:3]):
        for sid, text in _INSTANCE_RE.findall("\n".join(lines)):
            if sid in headlines:
                raise GroundTruthError(f"{path}: duplicate id {sid}")
            headlines[sid] = text.strip()
        return headlines
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        sid, sep, text = line.partition("@")
        if not sep or not sid.strip():
            raise GroundTruthError(f"{path}:{lineno}: expected 'id@headline'")
        sid = sid.strip()
        if sid in headlines:
            raise GroundTruthError(f"{path}:{lineno}: duplicate id {sid}")
        headlines[sid] = text.strip()
    return headlines


def read_scores(path: str | Path) -> dict[str, tuple[int, ...]]:
    scores: dict[str, tuple[int, ...]] = {}
    for lineno, line in enumerate(_read_lines(path), 1):
        fields = line.split()
        if not fields:
            continue
        if len(fields) != 1 + len(SEMEVAL_LABELS):
            raise GroundTruthError(f"{path}:{lineno}: expected 'id' and 6 scores, got {len(fields)} fields")
        try:
            values = tuple(int(v) for v in fields[1:])
        except ValueError:
            raise GroundTruthError(f"{path}:{lineno}: scores must be integers") from None
        out_of_range = [v for v in values if not 0 <= v <= 100]
        if out_of_range:
            raise GroundTruthError(f"{path}:{lineno}: scores out of [0, 100]: {out_of_range}")
        if fields[0] in scores:
            raise GroundTruthError(f"{path}:{lineno}: duplicate id {fields[0]}")
        scores[fields[0]] = values
    return scores


def load_ground_truth(headlines_file: str | Path, scores_file: str | Path) -> list[GroundTruthRecord]:
    headlines = read_headlines(headlines_file)
    scores = read_scores(scores_file)
    if not scores:
        logger.warning("%s: no score records", scores_file)
        return []
    orphans = sorted(set(headlines) ^ set(scores))
    if orphans:
        raise GroundTruthError(f"ids present in only one file: {', '.join(orphans)}")
    return [GroundTruthRecord(sid, headlines[sid], scores[sid]) for sid in headlines]


def _check(x: Sequence[float], y: Sequence[float]) -> None:
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} != {len(y)}")
    if len(x) < 2:
        raise ValueError("need at least two observations")


def pearson(x: Sequence[float], y: Sequence[float]) -> float | None:
    _check(x, y)
    n = len(x)
    mx = math.fsum(x) / n
    my = math.fsum(y) / n
    dx = [a - mx for a in x]
    dy = [b - my for b in y]
    sxx = math.fsum(d * d for d in dx)
    syy = math.fsum(d * d for d in dy)
    if sxx == 0 or syy == 0:
        return None
    r = math.fsum(a * b for a, b in zip(dx, dy)) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def fractional_ranks(values: Sequence[float]) -> list[float]:
    """1-based ranks; tied values share the mean of the ranks they span."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        shared = (i + j) / 2 + 1
        for k in range(i, j + 1):
            ranks[order[k]] = shared
        i = j + 1
    return ranks


def spearman(x: Sequence[float], y: Sequence[float]) -> float | None:
    _check(x, y)
    return pearson(fractional_ranks(x), fractional_ranks(y))


def kendall(x: Sequence[float], y: Sequence[float]) -> float | None:
    """Kendall tau-b."""
    _check(x, y)
    n = len(x)
    concordant = discordant = ties_x = ties_y = 0
    for i in range(n):
        for j in range(i + 1, n):
            sx = (x[i] > x[j]) - (x[i] < x[j])
            sy = (y[i] > y[j]) - (y[i] < y[j])
            if sx == 0:
                ties_x += 1
            if sy == 0:
                ties_y += 1
            if sx * sy > 0:
                concordant += 1
            elif sx * sy < 0:
                discordant += 1
    n0 = n * (n - 1) // 2
    denom = (n0 - ties_x) * (n0 - ties_y)
    if denom == 0:
        return None
    return (concordant - discordant) / math.sqrt(denom)


def score_sentence(result: SentenceResult, truth: GroundTruthRecord, aggregate: str = "avg") -> CorrelationReport:
    if tuple(result.model.labels) != SEMEVAL_LABELS:
        raise EvaluationError(
            f"model {result.model.name} labels {result.model.labels} do not match the ground truth order {SEMEVAL_LABELS}"
        )
    return score_vector(result.sentence_id, result.vector(aggregate).values, truth, aggregate)


def score_vector(sentence_id: str, values: Sequence[float], truth: GroundTruthRecord, aggregate: str = "avg") -> CorrelationReport:
    if len(values) != len(truth.scores):
        raise EvaluationError(f"{sentence_id}: {len(values)} values against {len(truth.scores)} scores")
    if not any(values):
        logger.warning("sentence %s: degenerate result vector, correlations undefined", sentence_id)
    truth_values = [float(s) for s in truth.scores]
    return CorrelationReport(
        sentence_id=str(sentence_id),
        pearson=pearson(values, truth_values),
        spearman=spearman(values, truth_values),
        kendall=kendall(values, truth_values),
        aggregate=aggregate,
    )


def summarize(reports: Iterable[CorrelationReport]) -> dict:
    """Mean, min and max per coefficient; undefined entries are counted and skipped."""
    reports = list(reports)
    summary: dict = {"count": len(reports), "kendall_variant": KENDALL_VARIANT}
    for name in COEFFICIENTS:
        values = [r.get(name) for r in reports]
        defined = [v for v in values if v is not None]
        summary[name] = {
            "mean": math.fsum(defined) / len(defined) if defined else None,
            "min": min(defined) if defined else None,
            "max": max(defined) if defined else None,
            "undefined": len(values) - len(defined),
        }
    return summary


def _cell(value: float | None) -> str:
    return "" if value is None else f"{value:.6f}"


def write_evaluation(reports: Iterable[CorrelationReport], csv_path: str | Path, summary_path: str | Path | None = None) -> dict:
    reports = list(reports)
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["sentence_id", "aggregate", *COEFFICIENTS])
        for r in reports:
            writer.writerow([r.sentence_id, r.aggregate, *(_cell(r.get(c)) for c in COEFFICIENTS)])
    summary = {agg: summarize(r for r in reports if r.aggregate == agg) for agg in sorted({r.aggregate for r in reports})}
    if summary_path is not None:
        with open(summary_path, "w", encoding="utf-8") as fh:
            json.dump(summary, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return summary
