"""Regenerate the bundled headline corpus and its count fixture.

The corpus is sampled from hand-set word/emotion affinities with a fixed seed.
The fixture counts come from a plain linear scan over the documents, not from
the package's index, so the fixture can serve as an independent oracle.

    python tools/make_fixtures.py
"""

from __future__ import annotations

import json
import random
import re
from itertools import product
from pathlib import Path

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "emorank" / "assets" / "fixtures"
EMOTIONS = ["anger", "disgust", "fear", "joy", "sadness", "surprise"]
SEED = 20161206
N_DOCS = 400

# affinity weights over EMOTIONS, in order
AFFINITY = {
    "nicole": [0, 0, 0, 3, 1, 2], "kidman": [0, 0, 0, 3, 1, 2], "asks": [1, 0, 1, 1, 1, 1],
    "help": [0, 0, 2, 1, 3, 0], "stop": [2, 1, 1, 0, 1, 0], "husband's": [1, 1, 0, 2, 2, 1],
    "drinking": [2, 3, 1, 1, 3, 0],
    "marine": [1, 0, 3, 1, 2, 0], "killed": [3, 1, 4, 0, 5, 1], "fighting": [4, 1, 3, 0, 2, 0],
    "west": [0, 0, 1, 1, 0, 1], "baghdad": [2, 1, 4, 0, 3, 0],
    "german": [0, 1, 0, 1, 0, 1], "paper": [0, 0, 0, 1, 0, 1], "shows": [0, 0, 0, 2, 0, 2],
    "soldiers": [2, 1, 3, 0, 2, 0], "desecrating": [4, 6, 1, 0, 1, 1], "skull": [1, 3, 4, 0, 1, 1],
    "growing": [1, 0, 2, 1, 0, 1], "unarmed": [2, 0, 3, 0, 2, 0], "battalion": [2, 0, 3, 0, 1, 0],
    "qaeda": [4, 3, 5, 0, 1, 0], "army": [2, 0, 3, 0, 1, 0], "using": [0, 0, 0, 1, 0, 1],
    "internet": [0, 0, 0, 2, 0, 2], "message": [1, 0, 1, 1, 0, 1],
    "gunman": [3, 1, 5, 0, 2, 1], "fine": [0, 0, 0, 3, 0, 1], "shooting": [3, 1, 5, 0, 4, 1],
    "gunmen": [3, 1, 5, 0, 2, 0], "kill": [4, 2, 4, 0, 3, 0], "iraq": [2, 1, 3, 0, 3, 0],
    "raid": [2, 0, 4, 0, 2, 1],
}
FILLER = "the a of in on at report today says new after over with from city week news".split()


def generate(rng: random.Random) -> list[dict]:
    words = sorted(AFFINITY)
    docs = []
    for i in range(N_DOCS):
        topic = rng.sample(words, rng.randint(1, 3))
        weights = [sum(AFFINITY[w][k] for w in topic) + 0.5 for k in range(len(EMOTIONS))]
        picked = set()
        for _ in range(rng.randint(0, 2)):
            picked.add(rng.choices(EMOTIONS, weights=weights)[0])
        body = topic + sorted(picked) + rng.sample(FILLER, 4)
        rng.shuffle(body)
        docs.append({"id": f"h{i:04d}", "text": " ".join(body)})
    # a background of documents mentioning emotions without topic words
    for j in range(N_DOCS // 4):
        body = [rng.choice(EMOTIONS)] + rng.sample(FILLER, 5)
        rng.shuffle(body)
        docs.append({"id": f"b{j:04d}", "text": " ".join(body)})
    return docs


def scan_fixture(docs: list[dict], terms: list[str]) -> dict:
    token_sets = [set(re.findall(r"[a-z0-9]+(?:'[a-z0-9]+)*", d["text"].lower())) for d in docs]
    singles = {t: sum(t in s for s in token_sets) for t in sorted(set(terms) | set(EMOTIONS))}
    pairs = {}
    for w, e in product(sorted(set(terms)), EMOTIONS):
        a, b = sorted((w, e))
        pairs[f"{a}|{b}"] = sum(w in s and e in s for s in token_sets)
    return {"m": len(docs), "singles": singles, "pairs": dict(sorted(pairs.items()))}


def main() -> None:
    docs = generate(random.Random(SEED))
    with open(FIXTURES / "headlines-corpus.ndjson", "w", encoding="utf-8") as fh:
        for d in docs:
            fh.write(json.dumps(d) + "\n")
    with open(FIXTURES / "headlines-fixture.json", "w", encoding="utf-8") as fh:
        json.dump(scan_fixture(docs, list(AFFINITY)), fh, indent=1)
        fh.write("\n")


if __name__ == "__main__":
    main()
