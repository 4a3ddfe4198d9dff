"""Command-line entry point: ``emorank run|radar|eval|assets|index``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import fields
from pathlib import Path

from ._assets import BUNDLED_ASSETS, assets_dir
from .batch import ConfigError, RunConfig, run_batch
from .emomodel import EmotionModel, builtin_models, load_model
from .evaluate import SEMEVAL_LABELS, GroundTruthError, load_ground_truth, score_vector, write_evaluation
from .freqsource import EngineConfig, FixtureProvider, IngestionError, build_index, read_ndjson
from .preprocess import LanguageProfile
from .radar import render_radar
from .ranking import EmotionVector, aggregate, read_sentences_csv

logger = logging.getLogger("emorank")


def _check_fixture(doc: dict) -> None:
    FixtureProvider(doc["m"], doc.get("singles", {}), doc.get("pairs", {}))


def list_assets(directory: str | Path | None = None) -> list[dict]:
    """Inventory of asset files with a validation status for each; never raises on bad files."""
    directory = Path(directory) if directory is not None else assets_dir()
    inventory = [
        {"kind": "model", "name": m.name, "path": "<builtin>", "status": "builtin", "error": None}
        for m in builtin_models()
    ]
    checks = {
        "models": ("model", lambda doc: load_model(doc).name),
        "profiles": ("profile", lambda doc: LanguageProfile.from_dict(doc).name),
        "engines": ("engine", lambda doc: EngineConfig.from_dict(doc).name),
        "fixtures": ("fixture", _check_fixture),
    }
    for sub, (kind, check) in checks.items():
        base = directory / sub
        if not base.is_dir():
            continue
        for path in sorted(base.iterdir()):
            if path.suffix not in (".json", ".ndjson"):
                continue
            entry = {"kind": kind, "name": path.stem, "path": str(path), "status": "valid", "error": None}
            try:
                if path.suffix == ".ndjson":
                    entry["kind"] = "corpus"
                    build_index(read_ndjson(path))
                else:
                    with open(path, encoding="utf-8") as fh:
                        doc = json.load(fh)
                    if kind == "fixture" and "m" not in doc:
                        entry["kind"] = "data"
                    else:
                        entry["name"] = check(doc) or path.stem
            except (ValueError, KeyError, TypeError, IngestionError, OSError) as exc:
                entry["status"] = "invalid"
                entry["error"] = f"{type(exc).__name__}: {exc}"
            inventory.append(entry)
    return inventory


def _add_run_parser(sub) -> None:
    p = sub.add_parser("run", help="run the batch pipeline")
    p.add_argument("--config", help="reuse the config section of a previous run-metadata.json")
    p.add_argument("--model")
    p.add_argument("--measure", choices=["confidence", "pmi", "ngd", "pming"])
    p.add_argument("--rho", type=float)
    p.add_argument("--profile")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--corpus", help="NDJSON corpus or prebuilt index JSON")
    src.add_argument("--fixture", help="JSON count fixture")
    src.add_argument("--engine", help="live search engine config JSON")
    p.add_argument("--sentences", help="'id@text' lines")
    p.add_argument("--truth-headlines")
    p.add_argument("--truth-scores")
    p.add_argument("--out")
    p.add_argument("--aggregate", choices=["avg", "max", "both"])
    p.add_argument("--workers", type=int)
    p.add_argument("--context-scope", choices=["sentence", "dataset"])
    p.add_argument("--fail-fast", action="store_true", default=None)
    p.add_argument("--radar", action="store_true", default=None, help="also write radar SVGs")


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    base: dict = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            base = json.load(fh).get("config", {})
    providers = ("corpus", "fixture", "engine")
    if any(getattr(args, k) for k in providers):
        # a provider flag replaces whichever provider the reused config named
        for k in providers:
            base[k] = getattr(args, k)
    for f in fields(RunConfig):
        value = getattr(args, f.name, None)
        if value is not None:
            base[f.name] = value
    return RunConfig.from_dict(base)


def cmd_run(args: argparse.Namespace) -> int:
    try:
        return run_batch(_config_from_args(args))
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


def cmd_radar(args: argparse.Namespace) -> int:
    with open(args.measures, encoding="utf-8") as fh:
        doc = json.load(fh)
    meta = doc.pop("_meta")
    model = EmotionModel(meta["model"]["name"], tuple(meta["model"]["labels"]))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    wanted = args.sentence_id or list(doc)
    for sid in wanted:
        if sid not in doc:
            print(f"no sentence {sid} in {args.measures}", file=sys.stderr)
            return 1
        words = doc[sid]
        vectors = [
            EmotionVector.normalized(model, [words[w][e]["proximity"] for e in model.labels]) for w in words
        ]
        vector = aggregate(vectors, args.aggregate, model)
        svg = render_radar(model.labels, vector.values, meta["sentences"].get(sid, sid), list(words))
        (out / f"{sid}-{args.aggregate}.svg").write_text(svg, encoding="utf-8")
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    labels, rows = read_sentences_csv(args.sentences_csv)
    if tuple(labels) != SEMEVAL_LABELS:
        print(f"columns {labels} do not match the ground truth order {SEMEVAL_LABELS}", file=sys.stderr)
        return 2
    try:
        truth = {r.sentence_id: r for r in load_ground_truth(args.truth_headlines, args.truth_scores)}
    except GroundTruthError as exc:
        print(f"ground truth error: {exc}", file=sys.stderr)
        return 2
    reports = [
        score_vector(row["sentence_id"], row["values"], truth[row["sentence_id"]], row["aggregate"])
        for row in rows
        if row["sentence_id"] in truth
    ]
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    summary = write_evaluation(reports, out / "evaluation.csv", out / "summary.json")
    print(json.dumps(summary, indent=2, sort_keys=True))
    return 0


def cmd_assets(args: argparse.Namespace) -> int:
    inventory = list_assets(args.dir)
    if args.json:
        print(json.dumps(inventory, indent=2))
        return 0
    for entry in inventory:
        line = f"{entry['kind']:<8} {entry['name']:<20} {entry['status']:<8} {entry['path']}"
        if entry["error"]:
            line += f"  ({entry['error']})"
        print(line)
    return 0


def cmd_index(args: argparse.Namespace) -> int:
    try:
        index = build_index(read_ndjson(args.corpus))
    except (IngestionError, OSError) as exc:
        print(f"ingestion error: {exc}", file=sys.stderr)
        return 2
    index.save(args.output)
    print(f"indexed {index.docs} documents, {len(index.postings)} terms -> {args.output}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="emorank", description="Rank basic emotions of short texts by co-occurrence proximity.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    _add_run_parser(sub)

    p = sub.add_parser("radar", help="radar SVGs from a previous run's measures.json")
    p.add_argument("--measures", required=True)
    p.add_argument("--sentence-id", action="append")
    p.add_argument("--aggregate", choices=["avg", "max"], default="avg")
    p.add_argument("--out", required=True)

    p = sub.add_parser("eval", help="score an existing sentences.csv against ground truth")
    p.add_argument("--sentences-csv", required=True)
    p.add_argument("--truth-headlines", required=True)
    p.add_argument("--truth-scores", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("assets", help="list models, profiles, engines and fixtures")
    p.add_argument("--dir", default=None, help=f"assets directory (default: $EMORANK_ASSETS or {BUNDLED_ASSETS})")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("index", help="build an index JSON from an NDJSON corpus")
    p.add_argument("corpus")
    p.add_argument("-o", "--output", required=True)
    return parser


COMMANDS = {"run": cmd_run, "radar": cmd_radar, "eval": cmd_eval, "assets": cmd_assets, "index": cmd_index}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
