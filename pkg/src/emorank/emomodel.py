"""Basic-emotion models as named, ordered label sets.

Models live as JSON assets (``{"name": ..., "labels": [...]}``) so a new
model is added by dropping a file into ``<assets>/models``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping

from ._assets import BUNDLED_ASSETS, assets_dir


class ModelError(ValueError):
    """Base class for emotion model errors."""


class ModelSchemaError(ModelError):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class DuplicateLabelError(ModelError):
    def __init__(self, duplicates: list[str]):
        super().__init__(f"duplicate labels: {', '.join(duplicates)}")
        self.duplicates = duplicates


@dataclass(frozen=True)
class EmotionModel:
    """An emotion model. Label order fixes the dimension order of every vector."""

    name: str
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(self.labels))
        if not isinstance(self.name, str) or not self.name.strip():
            raise ModelSchemaError("name", "must be a non-empty string")
        if len(self.labels) < 2:
            raise ModelSchemaError("labels", "at least two labels are required")
        for i, label in enumerate(self.labels):
            if not isinstance(label, str) or not label:
                raise ModelSchemaError(f"labels[{i}]", "must be a non-empty string")
            if label != label.lower():
                raise ModelSchemaError(f"labels[{i}]", f"{label!r} is not lowercase")
            if any(ch.isspace() for ch in label):
                # multi-word expressions are not queryable as a single term
                raise ModelSchemaError(f"labels[{i}]", f"{label!r} contains whitespace")
        seen: set[str] = set()
        dups: list[str] = []
        for label in self.labels:
            if label in seen and label not in dups:
                dups.append(label)
            seen.add(label)
        if dups:
            raise DuplicateLabelError(dups)

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "labels": list(self.labels)}


def load_model(asset: Mapping[str, Any] | str | Path) -> EmotionModel:
    """Build a validated model from a parsed document or a JSON file path."""
    if isinstance(asset, (str, Path)):
        with open(asset, encoding="utf-8") as fh:
            try:
                asset = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ModelSchemaError("<document>", f"invalid JSON: {exc}") from exc
    if not isinstance(asset, Mapping):
        raise ModelSchemaError("<document>", "must be a JSON object")
    if "name" not in asset:
        raise ModelSchemaError("name", "missing")
    if "labels" not in asset:
        raise ModelSchemaError("labels", "missing")
    labels = asset["labels"]
    if not isinstance(labels, list) or not labels:
        raise ModelSchemaError("labels", "must be a non-empty array")
    return EmotionModel(asset["name"], tuple(labels))


def _scan(directory: Path) -> dict[str, EmotionModel]:
    models: dict[str, EmotionModel] = {}
    if not directory.is_dir():
        return models
    for path in sorted(directory.glob("*.json")):
        model = load_model(path)
        models[model.name] = model
    return models


def builtin_models() -> list[EmotionModel]:
    """Ekman, Plutchik and Lovheim, as bundled with the package."""
    models = _scan(BUNDLED_ASSETS / "models")
    return [models[name] for name in ("ekman", "plutchik", "lovheim")]


def available_models(directory: Path | None = None) -> dict[str, EmotionModel]:
    """Builtin models overlaid with any models found under ``<assets>/models``."""
    models = {m.name: m for m in builtin_models()}
    models.update(_scan((directory or assets_dir()) / "models"))
    return models


def get_model(name: str, directory: Path | None = None) -> EmotionModel:
    """A model by name, or loaded directly when ``name`` is a path to a JSON file."""
    if name.endswith(".json") and Path(name).is_file():
        return load_model(Path(name))
    models = available_models(directory)
    try:
        return models[name]
    except KeyError:
        raise ModelError(f"unknown model {name!r}; available: {', '.join(sorted(models))}") from None
