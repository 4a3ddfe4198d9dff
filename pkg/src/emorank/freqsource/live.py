"""Hit counts scraped from a live search engine result page.

Each lookup uses a fresh, cookie-free HTTP session. Ban pages, HTTP 429 and
implausibly low counts trigger a random back-off and a retry; a random pause
also follows every successful lookup. One request is in flight at a time.
"""

from __future__ import annotations

import json
import logging
import random
import re
import threading
import time
import urllib.error
import urllib.parse
import urllib.request
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .base import ProviderError

logger = logging.getLogger(__name__)

Transport = Callable[[str], "tuple[int, str]"]

DEFAULT_M = 10**10
_USER_AGENT = "Mozilla/5.0 (X11; Linux x86_64; rv:128.0) Gecko/20100101 Firefox/128.0"


class BanError(ProviderError):
    def __init__(self, message: str, status: int | None):
        super().__init__(message)
        self.status = status


class ScrapeFormatError(ProviderError):
    pass


@dataclass(frozen=True)
class EngineConfig:
    name: str
    url_template: str
    count_pattern: str
    ban_patterns: tuple[str, ...] = ()
    delay_ms: tuple[int, int] = (2000, 8000)
    retries: int = 5
    m: int = DEFAULT_M
    min_plausible_count: int = 0
    quote_pairs: bool = False
    timeout: float = 30.0

    def __post_init__(self) -> None:
        if "{query}" not in self.url_template:
            raise ValueError("url_template must contain a {query} placeholder")
        if re.compile(self.count_pattern).groups != 1:
            raise ValueError("count_pattern must have exactly one capture group")
        lo, hi = self.delay_ms
        if not 0 <= lo <= hi:
            raise ValueError(f"bad delay bounds {self.delay_ms}")
        if self.retries < 1:
            raise ValueError("retries must be >= 1")
        if self.m < 1:
            raise ValueError("m must be >= 1")

    @classmethod
    def from_dict(cls, doc: dict) -> "EngineConfig":
        missing = [k for k in ("name", "url_template", "count_pattern") if k not in doc]
        if missing:
            raise ValueError(f"engine config is missing {', '.join(missing)}")
        kwargs = dict(doc)
        kwargs["ban_patterns"] = tuple(doc.get("ban_patterns", ()))
        if "delay_ms" in doc:
            kwargs["delay_ms"] = tuple(doc["delay_ms"])
        known = cls.__dataclass_fields__
        return cls(**{k: v for k, v in kwargs.items() if k in known})

    @classmethod
    def from_file(cls, path: str | Path) -> "EngineConfig":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def urllib_transport(timeout: float = 30.0) -> Transport:
    def fetch(url: str) -> tuple[int, str]:
        # a new opener per request carries no cookies between lookups
        opener = urllib.request.build_opener()
        request = urllib.request.Request(url, headers={"User-Agent": _USER_AGENT, "Accept-Language": "en"})
        try:
            with opener.open(request, timeout=timeout) as resp:
                return resp.status, resp.read().decode("utf-8", errors="replace")
        except urllib.error.HTTPError as exc:
            return exc.code, exc.read().decode("utf-8", errors="replace")

    return fetch


@dataclass
class LiveClient:
    config: EngineConfig
    transport: Transport | None = None
    sleep: Callable[[float], None] = time.sleep
    rng: random.Random = field(default_factory=random.Random)

    def __post_init__(self) -> None:
        if self.transport is None:
            self.transport = urllib_transport(self.config.timeout)
        self._count_re = re.compile(self.config.count_pattern)
        self._ban_res = [re.compile(p, re.IGNORECASE) for p in self.config.ban_patterns]
        self._lock = threading.Lock()

    def url_for(self, query: str) -> str:
        return self.config.url_template.replace("{query}", urllib.parse.quote_plus(query))

    def pause(self) -> None:
        lo, hi = self.config.delay_ms
        self.sleep(self.rng.uniform(lo, hi) / 1000.0)

    def extract_count(self, body: str) -> int | None:
        match = self._count_re.search(body)
        if match is None:
            return None
        digits = re.sub(r"[^0-9]", "", match.group(1))
        return int(digits) if digits else None


def live_lookup(client: LiveClient, query: str) -> int:
    """Fetch the result count the engine reports for ``query``."""
    config = client.config
    status: int | None = None
    with client._lock:
        for attempt in range(1, config.retries + 1):
            try:
                status, body = client.transport(client.url_for(query))
            except OSError as exc:
                problem = f"network failure: {exc}"
            else:
                if status == 429:
                    problem = "HTTP 429"
                elif any(p.search(body) for p in client._ban_res):
                    problem = "block page"
                elif status >= 400:
                    problem = f"HTTP {status}"
                else:
                    count = client.extract_count(body)
                    if count is None:
                        raise ScrapeFormatError(
                            f"{config.name}: result count not found for {query!r} (status {status})"
                        )
                    if count < config.min_plausible_count:
                        problem = f"implausible count {count}"
                    else:
                        client.pause()
                        return count
            logger.warning("%s: ban warning for %r (%s), attempt %d/%d", config.name, query, problem, attempt, config.retries)
            if attempt < config.retries:
                client.pause()
    raise BanError(f"{config.name}: gave up on {query!r} after {config.retries} attempts ({problem})", status)


class LiveProvider:
    """Live engine provider; pair queries are directed, so both orders are issued."""

    directed = True

    def __init__(self, client: LiveClient):
        self.client = client
        self.name = client.config.name
        self.m = client.config.m

    @classmethod
    def from_file(cls, path: str | Path, **client_kwargs) -> "LiveProvider":
        return cls(LiveClient(EngineConfig.from_file(path), **client_kwargs))

    def count(self, term: str) -> int:
        return live_lookup(self.client, term)

    def cooccurrence(self, x: str, y: str) -> int:
        query = f'"{x}" "{y}"' if self.client.config.quote_pairs else f"{x} {y}"
        return live_lookup(self.client, query)
