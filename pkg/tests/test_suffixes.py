from __future__ import annotations

import random

import numpy as np
import pytest

import oracles
from waverank.suffixes import build_lcp, build_sa, extract, locus

FIXTURE_TOKENS = [2, 3, 2, 1, 3, 2, 2, 2, 1, 3, 3, 2, 1, 0]
FIXTURE_SA = [13, 12, 3, 8, 11, 2, 7, 6, 5, 0, 10, 1, 4, 9]
FIXTURE_LCP = [0, 0, 1, 2, 0, 2, 3, 1, 2, 1, 0, 3, 2, 1]


def _random_tokens(rng: random.Random, max_len: int, sigma: int) -> list[int]:
    # symbols >= 1 with a single trailing 0 sentinel, like a real collection
    body = [rng.randint(1, sigma) for _ in range(rng.randint(1, max_len))]
    return body + [0]


def test_fixture_suffix_array():
    sa = build_sa(FIXTURE_TOKENS)
    assert sa.tolist() == FIXTURE_SA


def test_fixture_lcp():
    sa = np.asarray(FIXTURE_SA, dtype=np.int64)
    assert build_lcp(FIXTURE_TOKENS, sa).tolist() == FIXTURE_LCP


def test_suffix_array_matches_naive_sort():
    rng = random.Random(2024)
    for _ in range(60):
        tokens = _random_tokens(rng, 160, rng.randint(1, 6))
        sa = build_sa(tokens)
        assert sa.tolist() == oracles.naive_suffix_array(tokens)


def test_lcp_matches_pairwise_comparison():
    rng = random.Random(77)
    for _ in range(60):
        tokens = _random_tokens(rng, 160, rng.randint(1, 6))
        sa = build_sa(tokens)
        assert build_lcp(tokens, sa).tolist() == oracles.naive_lcp(tokens, sa.tolist())


def test_build_sa_requires_unique_sentinel():
    with pytest.raises(ValueError):
        build_sa([2, 0, 3, 0])
    with pytest.raises(ValueError):
        build_sa([2, 3])
    with pytest.raises(ValueError):
        build_sa([])


def test_fixture_locus():
    sa = np.asarray(FIXTURE_SA, dtype=np.int64)
    assert locus(sa, FIXTURE_TOKENS, [2]) == (4, 9)
    assert locus(sa, FIXTURE_TOKENS, [3]) == (10, 13)
    assert locus(sa, FIXTURE_TOKENS, [2, 1]) == (4, 6)
    assert locus(sa, FIXTURE_TOKENS, [3, 2, 2]) == (12, 12)
    assert locus(sa, FIXTURE_TOKENS, [0]) == (0, 0)
    assert locus(sa, FIXTURE_TOKENS, [2, 2, 2, 2]) is None
    assert locus(sa, FIXTURE_TOKENS, [9]) is None


def test_locus_rejects_empty_pattern():
    sa = np.asarray(FIXTURE_SA, dtype=np.int64)
    with pytest.raises(ValueError):
        locus(sa, FIXTURE_TOKENS, [])


def test_locus_matches_linear_scan():
    rng = random.Random(4321)
    for _ in range(40):
        tokens = _random_tokens(rng, 120, 4)
        sa = build_sa(tokens)
        for _ in range(25):
            plen = rng.randint(1, 3)
            pattern = [rng.randint(1, 5) for _ in range(plen)]
            assert locus(sa, tokens, pattern) == oracles.scan_locus(
                sa.tolist(), tokens, pattern
            )


def test_locus_size_counts_occurrences():
    rng = random.Random(8)
    for _ in range(20):
        tokens = _random_tokens(rng, 100, 3)
        sa = build_sa(tokens)
        for _ in range(10):
            pattern = [rng.randint(1, 4) for _ in range(rng.randint(1, 2))]
            hits = len(oracles.occurrence_positions(tokens, pattern))
            rng_pair = locus(sa, tokens, pattern)
            size = 0 if rng_pair is None else rng_pair[1] - rng_pair[0] + 1
            assert size == hits


def test_extract():
    assert extract(FIXTURE_TOKENS, 4, 3) == [3, 2, 2]
    assert extract(FIXTURE_TOKENS, 12, 2) == [1, 0]
    assert extract(FIXTURE_TOKENS, 0, 0) == []
    with pytest.raises(IndexError):
        extract(FIXTURE_TOKENS, 12, 5)
