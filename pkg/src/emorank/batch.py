"""Batch pipeline: read sentences, acquire counts, score, evaluate and write every output file."""

from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Callable, Sequence

from . import __version__
from ._assets import assets_dir, sha256_file
from .emomodel import EmotionModel, ModelError, get_model
from .evaluate import (
    KENDALL_VARIANT,
    SEMEVAL_LABELS,
    GroundTruthError,
    GroundTruthRecord,
    load_ground_truth,
    score_sentence,
    write_evaluation,
)
from .freqsource import (
    CountProvider,
    EngineConfig,
    FetchError,
    FetchResult,
    FixtureProvider,
    IngestionError,
    LiveClient,
    LiveProvider,
    Occurrences,
    fetch_triples,
    load_corpus,
)
from .preprocess import LanguageProfile, ProfileError, TokenList, load_profile, preprocess
from .proximity import ContextError, MeasureKind, PmingContext, build_pming_context
from .radar import emit_radar
from .ranking import SentenceResult, compute_result, write_sentences_csv, write_words_csv

logger = logging.getLogger(__name__)


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    model: str = "ekman"
    measure: str = "pmi"
    rho: float = 0.5
    profile: str = "english"
    corpus: str | None = None
    fixture: str | None = None
    engine: str | None = None
    sentences: str | None = None
    truth_headlines: str | None = None
    truth_scores: str | None = None
    out: str = "out"
    aggregate: str = "both"
    workers: int | None = None
    fail_fast: bool = False
    context_scope: str = "sentence"
    radar: bool = False

    @classmethod
    def from_dict(cls, doc: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in doc.items() if k in known})

    @property
    def aggregates(self) -> tuple[str, ...]:
        return ("avg", "max") if self.aggregate == "both" else (self.aggregate,)


@dataclass
class Resolved:
    """Everything a run needs, loaded and validated before any output is written."""

    config: RunConfig
    model: EmotionModel
    profile: LanguageProfile
    kind: MeasureKind
    provider: CountProvider
    provider_kind: str
    provider_path: Path
    sentences: list[tuple[str, str]]
    truth: dict[str, GroundTruthRecord] = field(default_factory=dict)


def read_sentences(path: str | Path) -> list[tuple[str, str]]:
    """``id@text`` lines (the headline file format)."""
    sentences = []
    seen = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\r\n")
            if not line.strip():
                continue
            sid, sep, text = line.partition("@")
            if not sep:
                raise ConfigError(f"{path}:{lineno}: expected 'id@text'")
            sid = sid.strip()
            if sid in seen:
                raise ConfigError(f"{path}:{lineno}: duplicate sentence id {sid}")
            seen.add(sid)
            sentences.append((sid, text.strip()))
    return sentences


def resolve(config: RunConfig, provider_factory: Callable[[RunConfig], CountProvider] | None = None) -> Resolved:
    specs = [(k, getattr(config, k)) for k in ("corpus", "fixture", "engine") if getattr(config, k)]
    if len(specs) != 1:
        raise ConfigError("exactly one of --corpus, --fixture or --engine is required")
    provider_kind, provider_path = specs[0][0], Path(specs[0][1])
    if not provider_path.is_file():
        raise ConfigError(f"cannot read {provider_kind} file {provider_path}")
    try:
        kind = MeasureKind(config.measure)
    except ValueError:
        raise ConfigError(f"unknown measure {config.measure!r}") from None
    if not 0.0 <= config.rho <= 1.0:
        raise ConfigError(f"rho must lie in [0, 1], got {config.rho}")
    if config.aggregate not in ("avg", "max", "both"):
        raise ConfigError(f"unknown aggregate {config.aggregate!r}")
    if config.context_scope not in ("sentence", "dataset"):
        raise ConfigError(f"unknown context scope {config.context_scope!r}")
    if config.workers is not None and config.workers < 1:
        raise ConfigError("--workers must be at least 1")
    try:
        model = get_model(config.model)
        profile = load_profile(config.profile)
    except (ModelError, ProfileError, OSError, json.JSONDecodeError) as exc:
        raise ConfigError(str(exc)) from exc

    truth: dict[str, GroundTruthRecord] = {}
    if bool(config.truth_headlines) != bool(config.truth_scores):
        raise ConfigError("--truth-headlines and --truth-scores go together")
    if config.truth_headlines:
        if tuple(model.labels) != SEMEVAL_LABELS:
            raise ConfigError(f"ground truth is scored on {SEMEVAL_LABELS}; model {model.name} does not match")
        try:
            truth = {r.sentence_id: r for r in load_ground_truth(config.truth_headlines, config.truth_scores)}
        except (GroundTruthError, OSError) as exc:
            raise ConfigError(str(exc)) from exc

    try:
        if config.sentences:
            sentences = read_sentences(config.sentences)
        elif truth:
            sentences = [(sid, r.text) for sid, r in truth.items()]
        elif config.truth_headlines:
            sentences = []
        else:
            raise ConfigError("--sentences or ground-truth files are required")
    except OSError as exc:
        raise ConfigError(str(exc)) from exc

    try:
        if provider_factory is not None:
            provider = provider_factory(config)
        elif provider_kind == "corpus":
            provider = load_corpus(provider_path)
        elif provider_kind == "fixture":
            provider = FixtureProvider.from_file(provider_path)
        else:
            provider = LiveProvider(LiveClient(EngineConfig.from_file(provider_path)))
    except (IngestionError, ValueError, OSError) as exc:
        raise ConfigError(f"{provider_kind} {provider_path}: {exc}") from exc

    return Resolved(config, model, profile, kind, provider, provider_kind, provider_path, sentences, truth)


@dataclass
class _Acquired:
    sentence_id: str
    tokens: TokenList | None = None
    fetch: FetchResult | None = None
    error: str | None = None
    partial: Occurrences | None = None


def _acquire(res: Resolved, sid: str, text: str) -> _Acquired:
    try:
        tokens = preprocess(text, res.profile)
        return _Acquired(sid, tokens, fetch_triples(res.provider, tokens, res.model))
    except FetchError as exc:
        return _Acquired(sid, error=f"{type(exc).__name__}: {exc}", partial=exc.partial)
    except Exception as exc:  # attributed to the sentence, never fatal to the batch
        return _Acquired(sid, error=f"{type(exc).__name__}: {exc}")


def _write_json(path: Path, doc) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, ensure_ascii=False)
        fh.write("\n")


def measures_document(results: Sequence[SentenceResult], res: Resolved, m: int, contexts: dict) -> dict:
    doc: dict = {r.sentence_id: r.measures for r in results}
    doc["_meta"] = {
        "measure": res.kind.value,
        "rho": res.config.rho,
        "m": m,
        "context_scope": res.config.context_scope,
        "contexts": contexts,
        "model": res.model.to_dict(),
        "sentences": {r.sentence_id: r.tokens.source for r in results},
    }
    return doc


def run_batch(config: RunConfig, provider_factory: Callable[[RunConfig], CountProvider] | None = None) -> int:
    """Run the whole pipeline. Returns 0 on full success, 1 if any sentence failed.

    Raises :class:`ConfigError` before writing anything when the configuration is invalid.
    """
    res = resolve(config, provider_factory)
    out = Path(config.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"cannot create output directory {out}: {exc}") from exc
    if not res.sentences:
        logger.warning("no sentences to process")

    workers = config.workers or (1 if res.provider_kind == "engine" else (os.cpu_count() or 1))
    errors: dict[str, str] = {}
    acquired: list[_Acquired] = []
    if config.fail_fast or workers == 1:
        for sid, text in res.sentences:
            item = _acquire(res, sid, text)
            acquired.append(item)
            if item.error and config.fail_fast:
                break
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            acquired = list(pool.map(lambda st: _acquire(res, *st), res.sentences))

    occurrences = Occurrences()
    for item in acquired:
        if item.error:
            errors[item.sentence_id] = item.error
            if item.partial is not None:
                occurrences.merge(item.partial)
        else:
            occurrences.merge(item.fetch.occurrences)

    shared_ctx: PmingContext | None = None
    if config.context_scope == "dataset":
        triples = [t for item in acquired if item.fetch for t in item.fetch.triples.values()]
        try:
            shared_ctx = build_pming_context(triples, config.rho)
        except ContextError as exc:
            if res.kind is MeasureKind.PMING:
                for item in acquired:
                    if not item.error:
                        errors[item.sentence_id] = f"ContextError: {exc}"

    results: list[SentenceResult] = []
    for item in acquired:
        if item.sentence_id in errors:
            if config.fail_fast:
                break
            continue
        try:
            results.append(
                compute_result(item.sentence_id, item.tokens, item.fetch, res.kind, res.model, config.rho, shared_ctx)
            )
        except Exception as exc:
            errors[item.sentence_id] = f"{type(exc).__name__}: {exc}"
            if config.fail_fast:
                break

    contexts = {r.sentence_id: (r.context.to_dict() if r.context else None) for r in results}
    occurrences.dump(out)
    _write_json(out / "measures.json", measures_document(results, res, res.provider.m, contexts))
    write_words_csv(results, out / "words.csv", res.model)
    write_sentences_csv(results, out / "sentences.csv", res.model, config.aggregates)

    if config.truth_headlines:
        reports = []
        for r in results:
            truth = res.truth.get(r.sentence_id)
            if truth is None:
                errors[r.sentence_id] = "no ground truth for sentence"
                continue
            reports.extend(score_sentence(r, truth, how) for how in config.aggregates)
        write_evaluation(reports, out / "evaluation.csv", out / "summary.json")

    if config.radar:
        radar_dir = out / "radar"
        radar_dir.mkdir(exist_ok=True)
        for r in results:
            for how in config.aggregates:
                (radar_dir / f"{r.sentence_id}-{how}.svg").write_text(emit_radar(r, how), encoding="utf-8")

    _write_json(out / "run-metadata.json", run_metadata(res, contexts))
    _write_json(out / "errors.json", [{"sentence_id": sid, "error": msg} for sid, msg in errors.items()])
    for sid, msg in errors.items():
        logger.error("sentence %s failed: %s", sid, msg)
    return 1 if errors else 0


def run_metadata(res: Resolved, contexts: dict) -> dict:
    config = asdict(res.config)
    config.pop("out")
    checksums = {res.provider_kind: sha256_file(res.provider_path)}
    for key in ("sentences", "truth_headlines", "truth_scores"):
        if getattr(res.config, key):
            checksums[key] = sha256_file(getattr(res.config, key))
    profile = res.profile.to_dict()
    return {
        "package_version": __version__,
        "config": config,
        "assets_dir_overridden": assets_dir() != Path(__file__).parent / "assets",
        "checksums": checksums,
        "model": res.model.to_dict(),
        "profile": profile,
        "provider": {"kind": res.provider_kind, "name": res.provider.name, "m": res.provider.m},
        "measure": {"kind": res.kind.value, "rho": res.config.rho, "context_scope": res.config.context_scope},
        "contexts": contexts,
        "kendall_variant": KENDALL_VARIANT,
    }
