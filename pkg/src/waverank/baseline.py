"""Reference rankers the self-index must agree with.

direct_scan_topk recounts frequencies straight off the token sequence, one
document at a time; daat_topk merges an exhaustive inverted index in
ascending document order. Both share the engine's weighting and scoring
helpers, so equal counts produce bit-identical scores.
"""

from __future__ import annotations

from dataclasses import dataclass
from heapq import merge
from typing import Sequence

from .corpus import Collection, FIRST_WORD_ID
from .engine import _collapse
from .ranking import MeasureParams, QueryWeights, make_scorer


@dataclass
class InvertedIndex:
    """Per-term postings (document id, frequency), documents ascending."""

    postings: dict[int, list[tuple[int, int]]]
    collection: Collection


def build_inverted(collection: Collection) -> InvertedIndex:
    postings: dict[int, list[tuple[int, int]]] = {}
    for doc in range(collection.N):
        counts: dict[int, int] = {}
        for t in collection.doc_tokens(doc):
            if t >= FIRST_WORD_ID:
                counts[t] = counts.get(t, 0) + 1
        for t, f in counts.items():
            postings.setdefault(t, []).append((doc, f))
    return InvertedIndex(postings=postings, collection=collection)


def _rank(scored: list[tuple[int, float]], k: int) -> list[tuple[int, float]]:
    scored.sort(key=lambda df: (-df[1], df[0]))
    return scored[:k]


def daat_topk(
    inv: InvertedIndex,
    elements: Sequence,
    k: int,
    mode: str = "or",
    measure: MeasureParams | None = None,
) -> list[tuple[int, float]]:
    """Exhaustive document-at-a-time evaluation; single-token elements only."""
    measure = measure or MeasureParams()
    retained: list[tuple[list[tuple[int, int]], int]] = []
    for el, f_q in _collapse(elements):
        if el is not None and len(el) != 1:
            raise ValueError("postings cover single tokens only")
        plist = inv.postings.get(el[0]) if el is not None else None
        if not plist:
            if mode == "and":
                return []
            continue
        retained.append((plist, f_q))
    if not retained:
        return []
    stats = inv.collection.stats
    weights = QueryWeights.build(measure, stats, [(f_q, len(plist)) for plist, f_q in retained])
    scorer = make_scorer(measure, stats, weights)
    lengths = inv.collection.lengths

    m = len(retained)
    streams = [iter([(doc, ti, f) for doc, f in plist]) for ti, (plist, _) in enumerate(retained)]
    scored: list[tuple[int, float]] = []
    tfs = [0] * m
    cur = -1
    seen = 0
    for doc, ti, f in merge(*streams):
        if doc != cur:
            if cur >= 0 and (seen == m or mode == "or"):
                scored.append((cur, scorer(tfs, lengths[cur])))
            cur = doc
            tfs = [0] * m
            seen = 0
        tfs[ti] = f
        seen += 1
    if cur >= 0 and (seen == m or mode == "or"):
        scored.append((cur, scorer(tfs, lengths[cur])))
    return _rank(scored, k)


def _count_occurrences(doc_tokens: Sequence[int], pattern: tuple[int, ...]) -> int:
    if len(pattern) == 1:
        c = pattern[0]
        return sum(1 for t in doc_tokens if t == c)
    hits = 0
    plen = len(pattern)
    for i in range(len(doc_tokens) - plen + 1):
        if tuple(doc_tokens[i : i + plen]) == pattern:
            hits += 1
    return hits


def direct_scan_topk(
    collection: Collection,
    elements: Sequence,
    k: int,
    mode: str = "or",
    measure: MeasureParams | None = None,
) -> list[tuple[int, float]]:
    """Oracle ranker: rescan every document for every element."""
    measure = measure or MeasureParams()
    per_doc: list[list[int]] = []
    retained: list[tuple[tuple[int, ...], int]] = []
    for el, f_q in _collapse(elements):
        counts = None
        if el is not None:
            counts = [_count_occurrences(collection.doc_tokens(d), el) for d in range(collection.N)]
            if not any(counts):
                counts = None
        if counts is None:
            if mode == "and":
                return []
            continue
        retained.append((el, f_q))
        per_doc.append(counts)
    if not retained:
        return []
    weights = QueryWeights.build(
        measure,
        collection.stats,
        [(f_q, sum(1 for c in counts if c)) for (el, f_q), counts in zip(retained, per_doc)],
    )
    scorer = make_scorer(measure, collection.stats, weights)
    scored = []
    for d in range(collection.N):
        tfs = [counts[d] for counts in per_doc]
        if mode == "and":
            if not all(tfs):
                continue
        elif not any(tfs):
            continue
        scored.append((d, scorer(tfs, collection.lengths[d])))
    return _rank(scored, k)
