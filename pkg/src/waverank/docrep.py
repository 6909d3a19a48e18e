"""Document array, repetition structures, and their restricted variants.

D[i] is the document owning suffix-array position i. A repetition is a pair
of consecutive occurrences of the same document in D; repetition i (with
predecessor P[i]) is charged to the bucket j in (P[i], i] holding the
rightmost minimum of the LCP array over that window, which is the deepest
suffix-tree node whose subtree contains both occurrences. The bitvector H
encodes bucket sizes in unary, so the number of repetitions fully inside any
suffix-array interval [l, r], and from it the interval's distinct document
count, comes out of two select queries.

Buckets at LCP 0 can never fall inside the locus of a non-empty pattern, so
their entries are dropped from the searchable repetition sequence; the keep
bitvector K maps interval ends into the pruned sequence. One extra wavelet
tree over that sequence upper-bounds per-document term frequency inside a
subtree: at most (repetitions of that subtree's documents in the interval)
plus one.

The restricted single-term layout stores, per alphabet symbol, the sorted
distinct documents of the symbol's locus (concatenated: one tree) and the
pruned repetition sequence re-sorted inside each symbol's bucket span (a
second tree). Together they answer single-term queries without the full
document-array tree: a document's term frequency equals its repetition count
in the span plus one.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .bits import BitVector
from .wavelet import WaveletTree


def build_docarray(sa: np.ndarray, collection) -> np.ndarray:
    """Document id owning each suffix-array position."""
    starts = np.asarray(collection.slot_start, dtype=np.int64)
    slots = np.searchsorted(starts, np.asarray(sa, dtype=np.int64), side="right") - 1
    return np.asarray(collection.pi, dtype=np.int64)[slots]


def prev_occurrence(docarray: Sequence[int]) -> list[int | None]:
    """P[i]: previous position with the same document, None for the first."""
    last: dict[int, int] = {}
    out: list[int | None] = []
    for i, d in enumerate(docarray):
        d = int(d)
        out.append(last.get(d))
        last[d] = i
    return out


@dataclass
class RepetitionIndex:
    """Unary bucket sizes (H), pruning map (K), and pruned repetition tree."""

    H: BitVector
    keep: BitVector
    rep_tree: WaveletTree
    rep_values: list[int] | None = None  # full repetition sequence, build-time only
    rhat_values: list[int] | None = None  # pruned sequence, build-time only


def build_repetitions(docarray: Sequence[int], lcp: Sequence[int], N: int) -> RepetitionIndex:
    """Charge every repetition to its bucket and build H, K, and the tree."""
    D = [int(x) for x in docarray]
    L = [int(x) for x in lcp]
    n = len(D)
    last: dict[int, int] = {}
    stack_pos: list[int] = []
    stack_val: list[int] = []
    buckets: dict[int, list[int]] = {}
    for i, d in enumerate(D):
        v = L[i]
        while stack_val and stack_val[-1] >= v:
            stack_val.pop()
            stack_pos.pop()
        stack_val.append(v)
        stack_pos.append(i)
        p = last.get(d)
        if p is not None:
            # rightmost minimum of LCP over (p, i]: first running-min position past p
            j = stack_pos[bisect_right(stack_pos, p)]
            buckets.setdefault(j, []).append(d)
        last[d] = i

    sizes = np.zeros(n, dtype=np.int64)
    rep_values: list[int] = []
    keep_bits: list[int] = []
    for j in sorted(buckets):
        docs = sorted(buckets[j])
        sizes[j] = len(docs)
        rep_values.extend(docs)
        keep_bits.extend([1 if L[j] > 0 else 0] * len(docs))

    # H = leading 1, then per bucket j = 1..n-1 its size in zeros followed by 1;
    # the 1 for bucket j lands at j plus the inclusive cumulative bucket sizes
    hbits = np.zeros(n + len(rep_values), dtype=np.uint8)
    hbits[np.arange(n, dtype=np.int64) + np.cumsum(sizes)] = 1

    keep = BitVector(keep_bits)
    rhat = [d for d, k in zip(rep_values, keep_bits) if k]
    return RepetitionIndex(
        H=BitVector(hbits),
        keep=keep,
        rep_tree=WaveletTree(rhat, N),
        rep_values=rep_values,
        rhat_values=rhat,
    )


def reps_range(H: BitVector, l: int, r: int) -> tuple[int, int]:
    """Half-open range of repetitions charged strictly inside [l, r].

    Both ends are suffix-array positions; requires 0 <= l <= r < number of
    ones in H.
    """
    if not 0 <= l <= r < H.ones:
        raise IndexError("interval out of range")
    return H.select1(l) - l, H.select1(r) - r


def doc_frequency(H: BitVector, l: int, r: int) -> int:
    """Distinct documents in D[l..r]: interval size minus inside repetitions."""
    a, b = reps_range(H, l, r)
    return (r - l + 1) - (b - a)


def pruned_range(rep: RepetitionIndex, l: int, r: int) -> tuple[int, int]:
    """Inclusive range of [l, r]'s repetitions inside the pruned sequence."""
    a, b = reps_range(rep.H, l, r)
    return rep.keep.rank1(a), rep.keep.rank1(b) - 1


def delta(d_range: tuple[int, int], rep_range: tuple[int, int]) -> int:
    """Per-document term frequency bound for one term below one node.

    d_range / rep_range are the term's inclusive ranges in the document tree
    and the pruned repetition tree at the same node. No document below the
    node occurs more often than the node's repetition count plus one; a node
    without occurrences bounds at zero.
    """
    if d_range[0] > d_range[1]:
        return 0
    return rep_range[1] - rep_range[0] + 2


@dataclass
class RestrictedIndex:
    """Single-term layout: per-symbol distinct documents plus sorted repetitions."""

    offsets: list[int]  # prefix offsets into the distinct-document sequence
    d1_tree: WaveletTree
    r1_tree: WaveletTree
    keep: BitVector
    d1_values: list[int] | None = None
    r1_values: list[int] | None = None

    def root_doc_range(self, symbol: int) -> tuple[int, int]:
        """Inclusive root range of one symbol's distinct documents (may be empty)."""
        return self.offsets[symbol], self.offsets[symbol + 1] - 1


def build_restricted(
    docarray: Sequence[int],
    rep: RepetitionIndex,
    symbol_loci: Sequence[tuple[int, int] | None],
    N: int,
) -> RestrictedIndex:
    if rep.rhat_values is None:
        raise ValueError("restricted layout must be built alongside the repetition index")
    D = docarray
    d1: list[int] = []
    offsets = [0] * (len(symbol_loci) + 1)
    for c, loc in enumerate(symbol_loci):
        if loc is not None:
            l, r = loc
            d1.extend(sorted({int(x) for x in D[l : r + 1]}))
        offsets[c + 1] = len(d1)
    r1 = list(rep.rhat_values)
    for loc in symbol_loci:
        if loc is None:
            continue
        a, b = pruned_range(rep, loc[0], loc[1])
        if a <= b:
            r1[a : b + 1] = sorted(r1[a : b + 1])
    return RestrictedIndex(
        offsets=offsets,
        d1_tree=WaveletTree(d1, N),
        r1_tree=WaveletTree(r1, N),
        keep=rep.keep,
        d1_values=d1,
        r1_values=r1,
    )


def restricted_tf_leaf(d1_range: tuple[int, int], r1_range: tuple[int, int]) -> int:
    """Exact term frequency at a leaf of the restricted layout."""
    if d1_range[0] > d1_range[1]:
        return 0
    return r1_range[1] - r1_range[0] + 2
