from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from ..emomodel import EmotionModel
from ..preprocess import TokenList
from .base import CountProvider, FrequencyTriple, ProviderError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QueryBudget:
    """Expected lookups for ``k`` emotions and ``w`` words with directed pair queries."""

    k: int
    w: int

    @property
    def total(self) -> int:
        return self.k + self.w + 2 * self.k * self.w

    @property
    def symmetric_total(self) -> int:
        return self.k + self.w + self.k * self.w

    def expected(self, directed: bool) -> int:
        return self.total if directed else self.symmetric_total


@dataclass
class Occurrences:
    """The three occurrence documents: emotion counts, word counts and word-emotion pairs."""

    emotions: dict[str, int] = field(default_factory=dict)
    words: dict[str, int] = field(default_factory=dict)
    pairs: dict[str, dict[str, int]] = field(default_factory=dict)

    def merge(self, other: "Occurrences") -> None:
        self.emotions.update(other.emotions)
        self.words.update(other.words)
        self.pairs.update(other.pairs)

    def dump(self, directory: str | Path) -> None:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        for name, doc in (("emotions.json", self.emotions), ("words.json", self.words), ("pairs.json", self.pairs)):
            with open(directory / name, "w", encoding="utf-8") as fh:
                json.dump(doc, fh, indent=2, sort_keys=True)
                fh.write("\n")


class FetchError(ProviderError):
    def __init__(self, message: str, failing: tuple[str, ...], partial: Occurrences):
        super().__init__(message)
        self.failing = failing
        self.partial = partial


@dataclass
class FetchResult:
    triples: dict[tuple[str, str], FrequencyTriple]
    occurrences: Occurrences
    budget: QueryBudget
    lookups: int
    m: int

    def for_word(self, word: str) -> dict[str, FrequencyTriple]:
        return {em: t for (w, em), t in self.triples.items() if w == word}


def fetch_triples(
    provider: CountProvider,
    words: TokenList | Sequence[str],
    model: EmotionModel,
    dump_dir: str | Path | None = None,
) -> FetchResult:
    """Look up every count needed to score ``words`` against ``model``.

    Single-term counts are fetched once each. On failure the partial
    occurrences are written to ``dump_dir`` (if given) before re-raising.
    """
    tokens = list(words.tokens if isinstance(words, TokenList) else words)
    budget = QueryBudget(model.n, len(tokens))
    occ = Occurrences()
    singles: dict[str, int] = {}
    lookups = 0
    failing: tuple[str, ...] = ()

    def single(term: str) -> int:
        nonlocal lookups, failing
        if term not in singles:
            failing = (term,)
            lookups += 1
            singles[term] = provider.count(term)
        return singles[term]

    def directed(x: str, y: str) -> int:
        nonlocal lookups, failing
        failing = (x, y)
        lookups += 1
        return provider.cooccurrence(x, y)

    triples: dict[tuple[str, str], FrequencyTriple] = {}
    try:
        for emotion in model.labels:
            occ.emotions[emotion] = single(emotion)
        if not tokens:
            logger.warning("no words left after preprocessing; only emotion counts fetched")
        for word in tokens:
            occ.words[word] = single(word)
        for word in tokens:
            for emotion in model.labels:
                forward = directed(word, emotion)
                backward = directed(emotion, word) if provider.directed else forward
                used = min(forward, backward)
                occ.pairs[f"{word}|{emotion}"] = {"fxy_wd_em": forward, "fxy_em_wd": backward, "used": used}
                triples[(word, emotion)] = FrequencyTriple(singles[word], singles[emotion], used, provider.m)
    except ProviderError as exc:
        if dump_dir is not None:
            occ.dump(dump_dir)
        raise FetchError(f"lookup failed for {failing}: {exc}", failing, occ) from exc
    if dump_dir is not None:
        occ.dump(dump_dir)
    return FetchResult(triples, occ, budget, lookups, provider.m)
