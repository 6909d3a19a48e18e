from __future__ import annotations

import random

import pytest

from conftest import random_collection
from waverank.baseline import (
    _count_occurrences,
    build_inverted,
    daat_topk,
    direct_scan_topk,
)
from waverank.ranking import MeasureParams

FREQ = MeasureParams(kind="freq")


def test_fixture_postings(fixture_collection):
    inv = build_inverted(fixture_collection)
    assert inv.postings[2] == [(1, 2), (2, 1), (3, 3)]
    assert inv.postings[3] == [(1, 1), (2, 2), (3, 1)]
    assert 0 not in inv.postings
    assert 1 not in inv.postings


def test_count_occurrences_overlapping():
    assert _count_occurrences([2, 2, 2, 1], (2, 2)) == 2
    assert _count_occurrences([2, 3, 2, 1], (2,)) == 2
    assert _count_occurrences([2, 3], (3, 2)) == 0


def test_direct_scan_fixture(fixture_collection):
    assert direct_scan_topk(fixture_collection, [(2,)], 2, "or", FREQ) == [
        (3, 3.0),
        (1, 2.0),
    ]
    assert direct_scan_topk(fixture_collection, [(2, 2)], 4, "or", FREQ) == [(3, 2.0)]


def test_direct_scan_and_mode(fixture_collection):
    got = direct_scan_topk(fixture_collection, [(3,), (2,)], 4, "and", FREQ)
    assert got == [(3, 4.0), (1, 3.0), (2, 3.0)]
    # a phrase and a term, conjunctively
    got = direct_scan_topk(fixture_collection, [(2, 2), (3,)], 4, "and", FREQ)
    assert got == [(3, 3.0)]


def test_direct_scan_absent_elements(fixture_collection):
    assert direct_scan_topk(fixture_collection, [None], 4, "or", FREQ) == []
    assert direct_scan_topk(fixture_collection, [None, (2,)], 4, "and", FREQ) == []
    got = direct_scan_topk(fixture_collection, [None, (2,)], 1, "or", FREQ)
    assert got == [(3, 3.0)]


def test_daat_matches_direct_scan_fixture(fixture_collection):
    inv = build_inverted(fixture_collection)
    for mode in ("or", "and"):
        for kind in ("bm25", "tfidf", "lmds", "freq"):
            measure = MeasureParams(kind=kind)
            for k in (1, 2, 4):
                elements = [(3,), (2,)]
                assert daat_topk(inv, elements, k, mode, measure) == direct_scan_topk(
                    fixture_collection, elements, k, mode, measure
                )


def test_daat_rejects_phrases(fixture_collection):
    inv = build_inverted(fixture_collection)
    with pytest.raises(ValueError):
        daat_topk(inv, [(3, 2)], 2, "or", FREQ)


def test_daat_matches_direct_scan_random():
    rng = random.Random(777)
    for _ in range(150):
        col = random_collection(rng, max_docs=14, max_len=14, vocab=6)
        inv = build_inverted(col)
        ids = list(range(2, col.stats.sigma + 1))
        elements = [(rng.choice(ids),) for _ in range(rng.randint(1, 4))]
        if rng.random() < 0.2:
            elements.append(None)
        mode = rng.choice(("or", "and"))
        measure = MeasureParams(kind=rng.choice(("bm25", "tfidf", "lmds", "freq")))
        k = rng.choice((1, 2, 5, 20))
        assert daat_topk(inv, elements, k, mode, measure) == direct_scan_topk(
            col, elements, k, mode, measure
        )
