from __future__ import annotations

import hashlib
import os
from pathlib import Path

ASSETS_ENV = "EMORANK_ASSETS"
BUNDLED_ASSETS = Path(__file__).parent / "assets"


def assets_dir() -> Path:
    """Active assets directory: ``$EMORANK_ASSETS`` if set, else the bundled one."""
    override = os.environ.get(ASSETS_ENV)
    return Path(override) if override else BUNDLED_ASSETS


def sha256_file(path: str | os.PathLike) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()
