import json
import re
from pathlib import Path

import pytest

from emorank.emomodel import get_model
from emorank.preprocess import load_profile

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "emorank" / "assets" / "fixtures"
GOLDEN = Path(__file__).parent / "golden"

SYNTHETIC_20 = FIXTURES / "synthetic-20.ndjson"
HEADLINES_CORPUS = FIXTURES / "headlines-corpus.ndjson"
HEADLINES_FIXTURE = FIXTURES / "headlines-fixture.json"
SEMEVAL_HEADLINES = FIXTURES / "semeval-headlines.txt"
SEMEVAL_SCORES = FIXTURES / "semeval-scores.txt"


def read_docs(path):
    with open(path) as fh:
        return [json.loads(line) for line in fh if line.strip()]


def scan_tokens(text):
    """Oracle tokenization for the ASCII fixture corpora."""
    return set(re.findall(r"[a-z0-9]+(?:'[a-z0-9]+)*", text.lower()))


def scan_df(docs, *terms):
    """Linear scan: number of documents containing every term."""
    return sum(all(t in scan_tokens(d["text"]) for t in terms) for d in docs)


@pytest.fixture(scope="session")
def ekman():
    return get_model("ekman")


@pytest.fixture(scope="session")
def english():
    return load_profile("english")
