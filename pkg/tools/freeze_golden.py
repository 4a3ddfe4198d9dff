"""Re-freeze the golden files under tests/golden after an audited change.

    python tools/freeze_golden.py
"""

from __future__ import annotations

import json
import shutil
from pathlib import Path

from emorank.batch import RunConfig, run_batch
from emorank.emomodel import get_model
from emorank.freqsource import FixtureProvider
from emorank.ranking import process_sentence

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "src" / "emorank" / "assets" / "fixtures"
GOLDEN = ROOT / "tests" / "golden"


def main() -> None:
    GOLDEN.mkdir(exist_ok=True)
    provider = FixtureProvider.from_file(FIXTURES / "headlines-fixture.json")
    result = process_sentence("247", "Gunmen kill 11 in Iraq TV raid", provider, "pmi", get_model("ekman"))
    with open(GOLDEN / "sentence_247.json", "w", encoding="utf-8") as fh:
        json.dump(result.to_dict(), fh, indent=2)
        fh.write("\n")

    batch = GOLDEN / "batch"
    if batch.exists():
        shutil.rmtree(batch)
    status = run_batch(
        RunConfig(
            measure="pming",
            fixture=str(FIXTURES / "headlines-fixture.json"),
            truth_headlines=str(FIXTURES / "semeval-headlines.txt"),
            truth_scores=str(FIXTURES / "semeval-scores.txt"),
            out=str(batch),
            workers=1,
        )
    )
    # paths in the metadata are machine-specific; the test compares it separately
    (batch / "run-metadata.json").unlink()
    print("batch status", status)


if __name__ == "__main__":
    main()
