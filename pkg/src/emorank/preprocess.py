"""Sentence tokenization and content-word filtering."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Mapping

from ._assets import BUNDLED_ASSETS, assets_dir

# Word characters, with apostrophes kept only between letters ("husband's").
_TOKEN_RE = re.compile(r"[^\W_]+(?:'[^\W_]+)*")
_APOSTROPHES = str.maketrans({"’": "'", "‘": "'", "ʼ": "'"})
_CARDINAL_RE = re.compile(r"^[0-9]+$")

STOPWORD = "stopword"
ORDINAL = "ordinal"
CARDINAL = "cardinal"
LENGTH = "length"
DUPLICATE = "duplicate"


class ProfileError(ValueError):
    pass


@dataclass(frozen=True)
class LanguageProfile:
    name: str
    stopwords: frozenset[str]
    ordinal_pattern: re.Pattern[str]
    min_keep_length: int = 4
    version: str = ""

    @classmethod
    def from_dict(cls, doc: Mapping[str, Any]) -> "LanguageProfile":
        for key in ("name", "stopwords", "ordinal_pattern"):
            if key not in doc:
                raise ProfileError(f"profile is missing {key!r}")
        try:
            pattern = re.compile(doc["ordinal_pattern"])
        except re.error as exc:
            raise ProfileError(f"ordinal_pattern: {exc}") from exc
        min_len = doc.get("min_keep_length", 4)
        if not isinstance(min_len, int) or min_len < 1:
            raise ProfileError("min_keep_length must be a positive integer")
        return cls(
            name=doc["name"],
            stopwords=frozenset(w.lower() for w in doc["stopwords"]),
            ordinal_pattern=pattern,
            min_keep_length=min_len,
            version=doc.get("version", ""),
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "version": self.version,
            "stopwords": sorted(self.stopwords),
            "ordinal_pattern": self.ordinal_pattern.pattern,
            "min_keep_length": self.min_keep_length,
        }


def profile_path(name: str, directory: Path | None = None) -> Path:
    for base in (directory or assets_dir(), BUNDLED_ASSETS):
        path = base / "profiles" / f"{name}.json"
        if path.is_file():
            return path
    raise ProfileError(f"unknown language profile {name!r}")


def load_profile(name_or_path: str | Path = "english", directory: Path | None = None) -> LanguageProfile:
    path = Path(name_or_path)
    if not (path.suffix == ".json" and path.is_file()):
        path = profile_path(str(name_or_path), directory)
    with open(path, encoding="utf-8") as fh:
        return LanguageProfile.from_dict(json.load(fh))


@dataclass
class TokenList:
    source: str
    tokens: list[str] = field(default_factory=list)
    removed: list[tuple[str, str]] = field(default_factory=list)
    raw: list[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.tokens)


def tokenize(sentence: str) -> list[str]:
    """Lowercased word tokens; punctuation and hyphens split, inner apostrophes kept."""
    return _TOKEN_RE.findall(sentence.translate(_APOSTROPHES).lower())


def removal_reason(token: str, profile: LanguageProfile) -> str | None:
    """First matching removal rule, in precedence order, or None if the token is kept."""
    if token in profile.stopwords:
        return STOPWORD
    if profile.ordinal_pattern.match(token):
        return ORDINAL
    if _CARDINAL_RE.match(token):
        return CARDINAL
    if len(token) < profile.min_keep_length:
        return LENGTH
    return None


def filter_tokens(raw: Iterable[str], profile: LanguageProfile | str = "english", source: str = "") -> TokenList:
    if isinstance(profile, str):
        profile = load_profile(profile)
    result = TokenList(source=source)
    kept: set[str] = set()
    for token in raw:
        token = token.lower()
        result.raw.append(token)
        reason = removal_reason(token, profile)
        if reason is None and token in kept:
            reason = DUPLICATE
        if reason is None:
            kept.add(token)
            result.tokens.append(token)
        else:
            result.removed.append((token, reason))
    return result


def preprocess(sentence: str, profile: LanguageProfile | str = "english") -> TokenList:
    return filter_tokens(tokenize(sentence), profile, source=sentence)
