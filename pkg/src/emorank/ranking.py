"""Emotion vectors per term, Average/Max aggregation per sentence, and rankings."""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .emomodel import EmotionModel
from .freqsource.base import CountProvider, FrequencyTriple
from .freqsource.fetch import FetchResult, fetch_triples
from .preprocess import LanguageProfile, TokenList, preprocess
from .proximity import ContextError, MeasureKind, PmingContext, build_pming_context, measure_record, proximity

logger = logging.getLogger(__name__)

SUM_TOLERANCE = 1e-6
AGGREGATES = ("avg", "max")


class IncompleteDataError(KeyError):
    pass


class AggregationError(ValueError):
    pass


@dataclass(frozen=True)
class EmotionVector:
    """Nonnegative values aligned to the model's labels; L1-normalized unless all zero."""

    model: EmotionModel
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if len(self.values) != self.model.n:
            raise ValueError(f"vector has {len(self.values)} values, model {self.model.name} has {self.model.n}")
        if any(not math.isfinite(v) or v < 0 for v in self.values):
            raise ValueError(f"vector values must be finite and nonnegative: {self.values}")
        total = sum(self.values)
        if total > 0 and abs(total - 1.0) > SUM_TOLERANCE:
            raise ValueError(f"vector sums to {total}, expected 1")

    @classmethod
    def normalized(cls, model: EmotionModel, raw: Sequence[float]) -> "EmotionVector":
        total = math.fsum(raw)
        if total <= 0:
            return cls.zeros(model)
        return cls(model, tuple(v / total for v in raw))

    @classmethod
    def zeros(cls, model: EmotionModel) -> "EmotionVector":
        return cls(model, (0.0,) * model.n)

    @property
    def degenerate(self) -> bool:
        return not any(self.values)

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.model.labels, self.values))


def term_vector(
    term: str,
    triples: Mapping[str, FrequencyTriple],
    kind: MeasureKind | str,
    ctx: PmingContext | None,
    model: EmotionModel,
) -> EmotionVector:
    raw = []
    for emotion in model.labels:
        if emotion not in triples:
            raise IncompleteDataError(f"no counts for ({term!r}, {emotion!r})")
        raw.append(proximity(kind, triples[emotion], ctx))
    vector = EmotionVector.normalized(model, raw)
    if vector.degenerate:
        logger.info("term %r has no co-occurrence evidence", term)
    return vector


def aggregate(vectors: Iterable[EmotionVector], how: str, model: EmotionModel | None = None) -> EmotionVector:
    """Column-wise mean or max over the non-degenerate vectors, renormalized."""
    vectors = list(vectors)
    if model is None:
        if not vectors:
            raise AggregationError("nothing to aggregate and no model given")
        model = vectors[0].model
    if any(v.model != model for v in vectors):
        raise AggregationError("vectors belong to different emotion models")
    if how not in AGGREGATES:
        raise AggregationError(f"unknown aggregate {how!r}")
    live = [v for v in vectors if not v.degenerate]
    if not live:
        return EmotionVector.zeros(model)
    columns = list(zip(*(v.values for v in live)))
    if how == "avg":
        raw = [math.fsum(col) / len(live) for col in columns]
    else:
        raw = [max(col) for col in columns]
    return EmotionVector.normalized(model, raw)


def rank(vector: EmotionVector) -> list[str]:
    """Labels by decreasing value; ties keep model order."""
    order = sorted(range(vector.model.n), key=lambda i: -vector.values[i])
    return [vector.model.labels[i] for i in order]


@dataclass
class SentenceResult:
    sentence_id: str
    tokens: TokenList
    model: EmotionModel
    kind: MeasureKind
    term_vectors: dict[str, EmotionVector]
    avg_vector: EmotionVector
    max_vector: EmotionVector
    ranking_avg: list[str]
    ranking_max: list[str]
    fetch: FetchResult | None = None
    context: PmingContext | None = None
    measures: dict[str, dict[str, dict]] = field(default_factory=dict)

    @property
    def degenerate(self) -> bool:
        return self.avg_vector.degenerate

    def vector(self, how: str) -> EmotionVector:
        return {"avg": self.avg_vector, "max": self.max_vector}[how]

    def ranking(self, how: str) -> list[str]:
        return {"avg": self.ranking_avg, "max": self.ranking_max}[how]

    def to_dict(self) -> dict:
        return {
            "sentence_id": self.sentence_id,
            "text": self.tokens.source,
            "model": self.model.name,
            "measure": self.kind.value,
            "tokens": list(self.tokens.tokens),
            "removed": [list(r) for r in self.tokens.removed],
            "term_vectors": {t: list(v.values) for t, v in self.term_vectors.items()},
            "avg": list(self.avg_vector.values),
            "max": list(self.max_vector.values),
            "ranking_avg": self.ranking_avg,
            "ranking_max": self.ranking_max,
            "context": self.context.to_dict() if self.context else None,
            "triples": {
                f"{w}|{e}": t.to_dict() for (w, e), t in (self.fetch.triples.items() if self.fetch else ())
            },
        }


def compute_result(
    sentence_id: str,
    tokens: TokenList,
    fetch: FetchResult,
    kind: MeasureKind | str,
    model: EmotionModel,
    rho: float = 0.5,
    context: PmingContext | None = None,
) -> SentenceResult:
    """Score already-fetched counts. ``context`` overrides the per-sentence PMING context."""
    kind = MeasureKind(kind)
    if context is None and fetch.triples:
        try:
            context = build_pming_context(fetch.triples.values(), rho)
        except ContextError:
            evidence = any(t.fxy > 0 for t in fetch.triples.values())
            if kind is MeasureKind.PMING and evidence:
                raise
            context = None
    term_vectors: dict[str, EmotionVector] = {}
    measures: dict[str, dict[str, dict]] = {}
    for word in tokens.tokens:
        triples = fetch.for_word(word)
        if kind is MeasureKind.PMING and context is None:
            # no co-occurrence anywhere in the sentence
            term_vectors[word] = EmotionVector.zeros(model)
            measures[word] = {em: measure_record(MeasureKind.PMI, t) | {"proximity": 0.0} for em, t in triples.items()}
            continue
        term_vectors[word] = term_vector(word, triples, kind, context, model)
        measures[word] = {em: measure_record(kind, triples[em], context) for em in model.labels}
    avg = aggregate(term_vectors.values(), "avg", model)
    mx = aggregate(term_vectors.values(), "max", model)
    if avg.degenerate:
        logger.warning("sentence %s: no emotional evidence, degenerate ranking", sentence_id)
    return SentenceResult(
        sentence_id=str(sentence_id),
        tokens=tokens,
        model=model,
        kind=kind,
        term_vectors=term_vectors,
        avg_vector=avg,
        max_vector=mx,
        ranking_avg=rank(avg),
        ranking_max=rank(mx),
        fetch=fetch,
        context=context,
        measures=measures,
    )


def process_sentence(
    sentence_id: str,
    sentence: str,
    provider: CountProvider,
    kind: MeasureKind | str,
    model: EmotionModel,
    profile: LanguageProfile | str = "english",
    rho: float = 0.5,
    dump_dir: str | Path | None = None,
) -> SentenceResult:
    """Preprocess, fetch counts, score and rank one sentence."""
    tokens = preprocess(sentence, profile)
    fetch = fetch_triples(provider, tokens, model, dump_dir=dump_dir)
    return compute_result(sentence_id, tokens, fetch, kind, model, rho)


def _fmt(value: float) -> str:
    return f"{value:.6f}"


def write_words_csv(results: Iterable[SentenceResult], path: str | Path, model: EmotionModel) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["sentence_id", "term", *model.labels, "top_emotion"])
        for result in results:
            for term, vector in result.term_vectors.items():
                top = "" if vector.degenerate else rank(vector)[0]
                writer.writerow([result.sentence_id, term, *map(_fmt, vector.values), top])


def write_sentences_csv(
    results: Iterable[SentenceResult], path: str | Path, model: EmotionModel, aggregates: Sequence[str] = AGGREGATES
) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["sentence_id", "aggregate", *model.labels, "rank"])
        for result in results:
            for how in aggregates:
                vector = result.vector(how)
                writer.writerow([result.sentence_id, how, *map(_fmt, vector.values), ">".join(result.ranking(how))])


def read_sentences_csv(path: str | Path) -> tuple[list[str], list[dict]]:
    """Rows of a sentences.csv as dicts with a ``values`` list; returns (labels, rows)."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        labels = header[2:-1]
        rows = [
            {
                "sentence_id": row[0],
                "aggregate": row[1],
                "values": [float(v) for v in row[2:-1]],
                "rank": row[-1].split(">") if row[-1] else [],
            }
            for row in reader
            if row
        ]
    return labels, rows
