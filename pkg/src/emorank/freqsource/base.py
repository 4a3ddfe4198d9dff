from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol, runtime_checkable


class ProviderError(RuntimeError):
    """A count lookup failed."""


@dataclass(frozen=True)
class FrequencyTriple:
    """Document counts consumed by every proximity measure.

    ``fx`` counts the word, ``fy`` the emotion, ``fxy`` their co-presence
    and ``m`` the corpus size.
    """

    fx: int
    fy: int
    fxy: int
    m: int

    def __post_init__(self) -> None:
        if min(self.fx, self.fy, self.fxy) < 0:
            raise ValueError(f"negative count in {self}")
        if self.m < 1:
            raise ValueError(f"corpus size must be >= 1, got {self.m}")

    @property
    def consistent(self) -> bool:
        """True when the counts could come from one document collection."""
        return self.fxy <= min(self.fx, self.fy) and max(self.fx, self.fy) <= self.m

    def swapped(self) -> "FrequencyTriple":
        return FrequencyTriple(self.fy, self.fx, self.fxy, self.m)

    def to_dict(self) -> dict[str, int]:
        return {"fx": self.fx, "fy": self.fy, "fxy": self.fxy, "m": self.m}


@runtime_checkable
class CountProvider(Protocol):
    """Source of document counts.

    ``directed`` providers answer each co-occurrence query for one word
    order only, so pairs are looked up in both orders.
    """

    name: str
    m: int
    directed: bool

    def count(self, term: str) -> int: ...

    def cooccurrence(self, x: str, y: str) -> int: ...


def count_single(provider: CountProvider, term: str) -> int:
    if not term:
        raise ValueError("term must be non-empty")
    return provider.count(term)


def count_pair(provider: CountProvider, x: str, y: str) -> int:
    """Co-presence count of ``x`` and ``y``; directed providers return the smaller order."""
    if not x or not y:
        raise ValueError("terms must be non-empty")
    if provider.directed:
        return min(provider.cooccurrence(x, y), provider.cooccurrence(y, x))
    return provider.cooccurrence(x, y)


class CountingProvider:
    """Wraps a provider and records every lookup it forwards."""

    def __init__(self, inner: CountProvider):
        self.inner = inner
        self.name = inner.name
        self.m = inner.m
        self.directed = inner.directed
        self.queries: list[tuple[str, ...]] = []

    @property
    def lookups(self) -> int:
        return len(self.queries)

    def count(self, term: str) -> int:
        self.queries.append((term,))
        return self.inner.count(term)

    def cooccurrence(self, x: str, y: str) -> int:
        self.queries.append((x, y))
        return self.inner.cooccurrence(x, y)
