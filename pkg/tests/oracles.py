"""Slow reference implementations used to cross-check the real structures.

Everything here favours obviousness over speed: suffixes are sorted as
tuples, LCPs are compared symbol by symbol, buckets are found by linear
scans. Tests treat these as ground truth.
"""

from __future__ import annotations

from typing import Sequence

from waverank.corpus import Collection


def naive_suffix_array(tokens: Sequence[int]) -> list[int]:
    return sorted(range(len(tokens)), key=lambda i: tuple(tokens[i:]))


def naive_lcp(tokens: Sequence[int], sa: Sequence[int]) -> list[int]:
    out = [0] * len(sa)
    for r in range(1, len(sa)):
        a, b = sa[r - 1], sa[r]
        k = 0
        # the unique sentinel guarantees the comparison stops in range
        while tokens[a + k] == tokens[b + k]:
            k += 1
        out[r] = k
    return out


def scan_locus(
    sa: Sequence[int], tokens: Sequence[int], pattern: Sequence[int]
) -> tuple[int, int] | None:
    pat = tuple(pattern)
    rows = [
        r
        for r, pos in enumerate(sa)
        if tuple(tokens[pos : pos + len(pat)]) == pat
    ]
    if not rows:
        return None
    assert rows == list(range(rows[0], rows[-1] + 1)), "locus rows must be contiguous"
    return rows[0], rows[-1]


def occurrence_positions(tokens: Sequence[int], pattern: Sequence[int]) -> list[int]:
    pat = tuple(pattern)
    plen = len(pat)
    return [
        i for i in range(len(tokens) - plen + 1) if tuple(tokens[i : i + plen]) == pat
    ]


def owner_doc(collection: Collection, pos: int) -> int:
    """Document owning text position pos (documents own their closing marker)."""
    slot = 0
    while (
        slot + 1 < len(collection.slot_start)
        and collection.slot_start[slot + 1] <= pos
    ):
        slot += 1
    return collection.pi[slot]


def brute_doc_frequency(collection: Collection, pattern: Sequence[int]) -> int:
    docs = {
        owner_doc(collection, pos)
        for pos in occurrence_positions(collection.tokens, pattern)
    }
    return len(docs)


def brute_term_frequency(collection: Collection, doc: int, pattern: Sequence[int]) -> int:
    return len(occurrence_positions(collection.doc_tokens(doc), pattern))


def naive_buckets(
    docarray: Sequence[int], lcp: Sequence[int]
) -> tuple[list[int], list[int], list[int]]:
    """Repetition entries by definition: every re-occurrence of a document is
    charged to the rightmost LCP minimum between its previous occurrence
    (exclusive) and itself (inclusive).

    Returns (rep_values, bucket_sizes, hbits).
    """
    n = len(docarray)
    buckets: dict[int, list[int]] = {}
    for i in range(n):
        prev = [j for j in range(i) if docarray[j] == docarray[i]]
        if not prev:
            continue
        p = prev[-1]
        window = lcp[p + 1 : i + 1]
        low = min(window)
        j = (p + 1) + max(off for off, v in enumerate(window) if v == low)
        buckets.setdefault(j, []).append(docarray[i])

    rep_values: list[int] = []
    sizes = [0] * n
    for j in sorted(buckets):
        entries = sorted(buckets[j])
        sizes[j] = len(entries)
        rep_values.extend(entries)

    hbits = [1]
    for j in range(1, n):
        hbits.extend([0] * sizes[j])
        hbits.append(1)
    return rep_values, sizes, hbits
