from __future__ import annotations

import random

import numpy as np
import pytest

from waverank.corpus import Collection, ingest, ingest_lines
from waverank.index import SearchIndex, build_index, derive_variant

# Three-document fixture used throughout; small enough to check by hand.
FIXTURE_LINES = ["LA O LA", "O LA LA LA", "O O LA"]


@pytest.fixture(scope="session")
def fixture_collection() -> Collection:
    return ingest_lines(FIXTURE_LINES)


@pytest.fixture(scope="session")
def fixture_index(fixture_collection) -> SearchIndex:
    return build_index(fixture_collection, "dr")


@pytest.fixture(scope="session")
def fixture_index_d(fixture_index) -> SearchIndex:
    return derive_variant(fixture_index, "d")


@pytest.fixture(scope="session")
def fixture_index_d1r1(fixture_index) -> SearchIndex:
    return derive_variant(fixture_index, "d1r1")


def random_collection(
    rng: random.Random,
    max_docs: int = 8,
    max_len: int = 8,
    vocab: int = 4,
) -> Collection:
    docs = []
    for _ in range(rng.randint(1, max_docs)):
        length = rng.randint(1, max_len)
        docs.append([f"w{rng.randrange(vocab)}" for _ in range(length)])
    return ingest(docs)


@pytest.fixture(scope="session")
def zipf_corpus() -> tuple[Collection, SearchIndex]:
    """5000 documents, Zipf-distributed 1000-term vocabulary, lengths 10-1000."""
    rng = np.random.default_rng(42)
    vocab = 1000
    weights = 1.0 / np.arange(1, vocab + 1)
    weights /= weights.sum()
    lengths = rng.integers(10, 1001, size=5000)
    docs = [
        [f"t{w}" for w in rng.choice(vocab, size=int(length), p=weights)]
        for length in lengths
    ]
    collection = ingest(docs)
    return collection, build_index(collection, "dr")
