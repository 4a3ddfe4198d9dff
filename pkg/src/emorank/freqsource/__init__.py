"""Document-count providers: local inverted index, JSON fixture and live search engine."""

from .base import CountingProvider, CountProvider, FrequencyTriple, ProviderError, count_pair, count_single
from .fetch import FetchError, FetchResult, Occurrences, QueryBudget, fetch_triples
from .fixture import FixtureProvider, pair_key
from .index import CorpusIndex, IngestionError, build_index, load_corpus, read_ndjson
from .live import BanError, EngineConfig, LiveClient, LiveProvider, ScrapeFormatError, live_lookup

__all__ = [
    "BanError",
    "CorpusIndex",
    "CountProvider",
    "CountingProvider",
    "EngineConfig",
    "FetchError",
    "FetchResult",
    "FixtureProvider",
    "FrequencyTriple",
    "IngestionError",
    "LiveClient",
    "LiveProvider",
    "Occurrences",
    "ProviderError",
    "QueryBudget",
    "ScrapeFormatError",
    "build_index",
    "count_pair",
    "count_single",
    "fetch_triples",
    "live_lookup",
    "load_corpus",
    "pair_key",
    "read_ndjson",
]
