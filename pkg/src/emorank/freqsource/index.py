"""In-memory inverted index used as a deterministic stand-in for a search engine."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from ..preprocess import tokenize


class IngestionError(ValueError):
    pass


@dataclass(frozen=True)
class CorpusIndex:
    """Presence postings: each term maps to the ids of documents containing it."""

    docs: int
    postings: Mapping[str, frozenset[str]]
    name: str = "index"
    directed: bool = False

    @property
    def m(self) -> int:
        return self.docs

    def df(self, term: str) -> int:
        return len(self.postings.get(term.lower(), ()))

    def count(self, term: str) -> int:
        return self.df(term)

    def cooccurrence(self, x: str, y: str) -> int:
        px = self.postings.get(x.lower())
        py = self.postings.get(y.lower())
        if not px or not py:
            return 0
        if len(py) < len(px):
            px, py = py, px
        return sum(1 for doc in px if doc in py)

    def to_dict(self) -> dict:
        return {
            "docs": self.docs,
            "postings": {t: sorted(ids) for t, ids in sorted(self.postings.items())},
        }

    def save(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, sort_keys=True)
            fh.write("\n")

    @classmethod
    def load(cls, path: str | Path) -> "CorpusIndex":
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
        if not isinstance(doc, dict) or "docs" not in doc or "postings" not in doc:
            raise IngestionError(f"{path}: not an index file")
        return cls(int(doc["docs"]), {t: frozenset(ids) for t, ids in doc["postings"].items()})


def build_index(documents: Iterable[tuple[object, str]]) -> CorpusIndex:
    postings: dict[str, set[str]] = {}
    seen: set[str] = set()
    for doc_id, text in documents:
        key = str(doc_id)
        if key in seen:
            raise IngestionError(f"duplicate document id {doc_id!r}")
        seen.add(key)
        for token in set(tokenize(text)):
            postings.setdefault(token, set()).add(key)
    if not seen:
        raise IngestionError("corpus is empty; corpus size must be at least 1")
    return CorpusIndex(len(seen), {t: frozenset(ids) for t, ids in postings.items()})


def read_ndjson(path: str | Path) -> list[tuple[str, str]]:
    """Read ``{"id": ..., "text": ...}`` lines."""
    documents = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                row = json.loads(line)
                documents.append((str(row["id"]), str(row["text"])))
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise IngestionError(f"{path}:{lineno}: bad corpus line ({exc})") from exc
    return documents


def load_corpus(path: str | Path) -> CorpusIndex:
    """Load a prebuilt index (``.json``) or build one from an NDJSON corpus."""
    path = Path(path)
    if path.suffix == ".json":
        return CorpusIndex.load(path)
    return build_index(read_ndjson(path))
