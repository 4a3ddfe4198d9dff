import json
import xml.etree.ElementTree as ET

import pytest

from conftest import GOLDEN, HEADLINES_CORPUS, HEADLINES_FIXTURE, SEMEVAL_HEADLINES, SEMEVAL_SCORES, SYNTHETIC_20
from emorank.batch import ConfigError, RunConfig, run_batch
from emorank.cli import list_assets, main
from emorank.freqsource import FixtureProvider, ProviderError

OUTPUTS = ["emotions.json", "words.json", "pairs.json", "measures.json", "words.csv", "sentences.csv",
           "evaluation.csv", "summary.json", "errors.json"]


def golden_config(out, **overrides):
    doc = dict(
        measure="pming",
        fixture=str(HEADLINES_FIXTURE),
        truth_headlines=str(SEMEVAL_HEADLINES),
        truth_scores=str(SEMEVAL_SCORES),
        out=str(out),
        workers=1,
    ) | overrides
    return RunConfig(**doc)


def test_batch_matches_golden(tmp_path):
    assert run_batch(golden_config(tmp_path)) == 0
    for name in OUTPUTS:
        assert (tmp_path / name).read_bytes() == (GOLDEN / "batch" / name).read_bytes(), name
    meta = json.loads((tmp_path / "run-metadata.json").read_text())
    assert meta["kendall_variant"] == "tau-b"
    assert meta["measure"] == {"kind": "pming", "rho": 0.5, "context_scope": "sentence"}
    assert len(meta["profile"]["stopwords"]) == 179
    assert set(meta["checksums"]) == {"fixture", "truth_headlines", "truth_scores"}


def test_thread_pool_matches_sequential(tmp_path):
    run_batch(golden_config(tmp_path / "seq"))
    run_batch(golden_config(tmp_path / "pool", workers=4))
    for name in OUTPUTS:
        assert (tmp_path / "seq" / name).read_bytes() == (tmp_path / "pool" / name).read_bytes(), name


def test_replay_reproduces_measures(tmp_path):
    run_batch(golden_config(tmp_path / "a", measure="ngd", fixture=None, corpus=str(HEADLINES_CORPUS)))
    m = json.loads((tmp_path / "a" / "measures.json").read_text())["_meta"]["m"]
    replay = FixtureProvider.from_occurrence_dumps(tmp_path / "a", m=m, missing="error")
    run_batch(golden_config(tmp_path / "b", measure="ngd", fixture=None, corpus=str(HEADLINES_CORPUS)),
              provider_factory=lambda _: replay)
    assert (tmp_path / "a" / "measures.json").read_bytes() == (tmp_path / "b" / "measures.json").read_bytes()


def test_empty_input(tmp_path):
    sentences = tmp_path / "empty.txt"
    sentences.write_text("")
    out = tmp_path / "out"
    assert main(["run", "--corpus", str(SYNTHETIC_20), "--sentences", str(sentences), "--out", str(out)]) == 0
    assert (out / "sentences.csv").read_text().splitlines() == [
        "sentence_id,aggregate,anger,disgust,fear,joy,sadness,surprise,rank"
    ]
    assert json.loads((out / "errors.json").read_text()) == []


def test_unreadable_corpus(tmp_path, capsys):
    out = tmp_path / "out"
    code = main(["run", "--corpus", str(tmp_path / "missing.ndjson"), "--truth-headlines", str(SEMEVAL_HEADLINES),
                 "--truth-scores", str(SEMEVAL_SCORES), "--out", str(out)])
    assert code == 2
    assert "missing.ndjson" in capsys.readouterr().err
    assert not out.exists()


@pytest.mark.parametrize(
    "overrides",
    [dict(measure="cosine"), dict(rho=1.5), dict(model="plutchik"), dict(truth_scores=None), dict(workers=0)],
)
def test_invalid_config_writes_nothing(tmp_path, overrides):
    with pytest.raises(ConfigError):
        run_batch(golden_config(tmp_path / "out", **overrides))
    assert not (tmp_path / "out").exists()


class Flaky:
    """Fixture counts, except any lookup involving 'baghdad' fails."""

    def __init__(self):
        self.inner = FixtureProvider.from_file(HEADLINES_FIXTURE)
        self.name, self.m, self.directed = "flaky", self.inner.m, False

    def count(self, term):
        if term == "baghdad":
            raise ProviderError("lookup failed")
        return self.inner.count(term)

    def cooccurrence(self, x, y):
        return self.inner.cooccurrence(x, y)


def test_failure_is_isolated(tmp_path):
    assert run_batch(golden_config(tmp_path), provider_factory=lambda _: Flaky()) == 1
    errors = json.loads((tmp_path / "errors.json").read_text())
    assert [e["sentence_id"] for e in errors] == ["56"]
    ids = {line.split(",")[0] for line in (tmp_path / "sentences.csv").read_text().splitlines()[1:]}
    assert ids == {"12", "127", "168", "193", "247"}


def test_fail_fast_stops(tmp_path):
    assert run_batch(golden_config(tmp_path, fail_fast=True), provider_factory=lambda _: Flaky()) == 1
    ids = {line.split(",")[0] for line in (tmp_path / "sentences.csv").read_text().splitlines()[1:]}
    assert ids == {"12"}


def test_dataset_context_scope(tmp_path):
    assert run_batch(golden_config(tmp_path, context_scope="dataset")) == 0
    contexts = json.loads((tmp_path / "measures.json").read_text())["_meta"]["contexts"]
    assert len({json.dumps(c, sort_keys=True) for c in contexts.values()}) == 1


def test_run_with_radar(tmp_path):
    assert run_batch(golden_config(tmp_path, radar=True, aggregate="avg")) == 0
    svgs = sorted((tmp_path / "radar").glob("*.svg"))
    assert len(svgs) == 6
    for svg in svgs:
        ET.fromstring(svg.read_text().split("\n", 1)[1])


def test_radar_subcommand_matches_batch(tmp_path):
    run_batch(golden_config(tmp_path / "run", radar=True))
    assert main(["radar", "--measures", str(tmp_path / "run" / "measures.json"), "--sentence-id", "247",
                 "--aggregate", "max", "--out", str(tmp_path / "svg")]) == 0
    assert (tmp_path / "svg" / "247-max.svg").read_text() == (tmp_path / "run" / "radar" / "247-max.svg").read_text()


def test_eval_subcommand(tmp_path, capsys):
    code = main(["eval", "--sentences-csv", str(GOLDEN / "batch" / "sentences.csv"), "--truth-headlines",
                 str(SEMEVAL_HEADLINES), "--truth-scores", str(SEMEVAL_SCORES), "--out", str(tmp_path)])
    assert code == 0
    summary = json.loads((tmp_path / "summary.json").read_text())
    golden = json.loads((GOLDEN / "batch" / "summary.json").read_text())
    for how in ("avg", "max"):
        for name in ("pearson", "spearman", "kendall"):
            # sentences.csv stores six decimals, so the rescored means agree closely but not exactly
            if golden[how][name]["mean"] is not None:
                assert summary[how][name]["mean"] == pytest.approx(golden[how][name]["mean"], abs=1e-4)
    assert '"kendall_variant": "tau-b"' in capsys.readouterr().out


def test_config_reuse(tmp_path):
    run_batch(golden_config(tmp_path / "a"))
    assert main(["run", "--config", str(tmp_path / "a" / "run-metadata.json"), "--out", str(tmp_path / "b")]) == 0
    for name in OUTPUTS:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes(), name


def test_config_reuse_with_provider_override(tmp_path):
    run_batch(golden_config(tmp_path / "a"))
    assert main(["run", "--config", str(tmp_path / "a" / "run-metadata.json"), "--corpus", str(HEADLINES_CORPUS),
                 "--out", str(tmp_path / "b")]) == 0
    meta = json.loads((tmp_path / "b" / "run-metadata.json").read_text())
    assert meta["provider"]["kind"] == "corpus" and meta["config"]["fixture"] is None
    # the index and the fixture hold the same counts
    assert (tmp_path / "a" / "measures.json").read_text() == (tmp_path / "b" / "measures.json").read_text()


def test_index_subcommand(tmp_path):
    assert main(["index", str(SYNTHETIC_20), "-o", str(tmp_path / "index.json")]) == 0
    sentences = tmp_path / "s.txt"
    sentences.write_text("247@Gunmen kill 11 in Iraq TV raid\n")
    for source, out in ((str(SYNTHETIC_20), "a"), (str(tmp_path / "index.json"), "b")):
        main(["run", "--corpus", source, "--sentences", str(sentences), "--out", str(tmp_path / out)])
    assert (tmp_path / "a" / "measures.json").read_bytes() == (tmp_path / "b" / "measures.json").read_bytes()


def test_index_rejects_bad_corpus(tmp_path):
    bad = tmp_path / "bad.ndjson"
    bad.write_text('{"id": 1, "text": "a"}\n{"id": 1, "text": "b"}\n')
    assert main(["index", str(bad), "-o", str(tmp_path / "i.json")]) == 2


class TestAssets:
    def test_bundled(self):
        inventory = list_assets()
        models = {e["name"] for e in inventory if e["kind"] == "model"}
        assert {"ekman", "plutchik", "lovheim"} <= models
        assert all(e["status"] in ("builtin", "valid") for e in inventory), inventory
        assert {"english"} <= {e["name"] for e in inventory if e["kind"] == "profile"}
        assert {"headlines-fixture"} <= {e["name"] for e in inventory if e["kind"] == "fixture"}

    def test_empty_dir_still_lists_builtins(self, tmp_path):
        inventory = list_assets(tmp_path)
        assert [e["name"] for e in inventory] == ["ekman", "plutchik", "lovheim"]

    def test_malformed_file_is_reported(self, tmp_path):
        (tmp_path / "models").mkdir()
        (tmp_path / "models" / "broken.json").write_text("{not json")
        (tmp_path / "models" / "upper.json").write_text('{"name": "upper", "labels": ["Joy", "fear"]}')
        entries = {e["name"]: e for e in list_assets(tmp_path) if e["path"] != "<builtin>"}
        assert entries["broken"]["status"] == "invalid" and "JSONDecodeError" in entries["broken"]["error"]
        assert entries["upper"]["status"] == "invalid"

    def test_env_override(self, tmp_path, monkeypatch, capsys):
        (tmp_path / "models").mkdir()
        (tmp_path / "models" / "tiny.json").write_text('{"name": "tiny", "labels": ["calm", "rage"]}')
        monkeypatch.setenv("EMORANK_ASSETS", str(tmp_path))
        assert main(["assets", "--json"]) == 0
        names = [e["name"] for e in json.loads(capsys.readouterr().out)]
        assert names == ["ekman", "plutchik", "lovheim", "tiny"]
