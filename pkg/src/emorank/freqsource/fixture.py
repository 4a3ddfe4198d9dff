from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Mapping

from .base import ProviderError

logger = logging.getLogger(__name__)


def pair_key(x: str, y: str) -> str:
    a, b = sorted((x, y))
    return f"{a}|{b}"


class FixtureProvider:
    """Counts read from a JSON table: ``{"m": int, "singles": {...}, "pairs": {"x|y": n}}``.

    Missing keys count as 0 (with a warning) unless ``missing="error"``.
    """

    directed = False

    def __init__(
        self,
        m: int,
        singles: Mapping[str, int],
        pairs: Mapping[str, int],
        missing: str = "zero",
        name: str = "fixture",
    ):
        if missing not in ("zero", "error"):
            raise ValueError(f"missing policy must be 'zero' or 'error', got {missing!r}")
        if m < 1:
            raise ValueError("fixture m must be >= 1")
        self.m = int(m)
        self.name = name
        self.missing = missing
        self.singles = {k.lower(): int(v) for k, v in singles.items()}
        self.pairs: dict[str, int] = {}
        for key, value in pairs.items():
            x, sep, y = key.lower().partition("|")
            if not sep:
                raise ValueError(f"bad pair key {key!r}")
            self.pairs[pair_key(x, y)] = int(value)

    @classmethod
    def from_file(cls, path: str | Path, missing: str = "zero") -> "FixtureProvider":
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
        try:
            return cls(doc["m"], doc.get("singles", {}), doc.get("pairs", {}), missing=missing)
        except KeyError as exc:
            raise ValueError(f"{path}: fixture is missing {exc}") from None

    @classmethod
    def from_occurrence_dumps(cls, directory: str | Path, m: int, missing: str = "zero") -> "FixtureProvider":
        """Replay ``emotions.json``, ``words.json`` and ``pairs.json`` from a previous run."""
        directory = Path(directory)
        singles: dict[str, int] = {}
        for name in ("emotions.json", "words.json"):
            with open(directory / name, encoding="utf-8") as fh:
                singles.update(json.load(fh))
        with open(directory / "pairs.json", encoding="utf-8") as fh:
            pairs = {key: entry["used"] for key, entry in json.load(fh).items()}
        return cls(m, singles, pairs, missing=missing, name="replay")

    def to_dict(self) -> dict:
        return {"m": self.m, "singles": dict(sorted(self.singles.items())), "pairs": dict(sorted(self.pairs.items()))}

    def _missing(self, key: str) -> int:
        if self.missing == "error":
            raise ProviderError(f"fixture has no entry for {key!r}")
        logger.warning("fixture has no entry for %r; using 0", key)
        return 0

    def count(self, term: str) -> int:
        term = term.lower()
        if term in self.singles:
            return self.singles[term]
        return self._missing(term)

    def cooccurrence(self, x: str, y: str) -> int:
        key = pair_key(x.lower(), y.lower())
        if key in self.pairs:
            return self.pairs[key]
        return self._missing(key)
