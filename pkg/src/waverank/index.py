"""Search index facade: one collection plus the structures a variant needs.

Variants trade space for estimator power:
  d     document-array tree and distinct-count bitvector (estimators e0/e1)
  dr    adds the pruned repetition tree (enables estimator e2)
  d1r1  single-term layout only; smallest, estimator e2, no phrases
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import docrep, suffixes
from .bits import BitVector
from .corpus import Collection
from .docrep import RepetitionIndex, RestrictedIndex
from .engine import VARIANTS
from .wavelet import WaveletTree


@dataclass
class SearchIndex:
    collection: Collection
    sa: np.ndarray
    h: BitVector
    variant: str
    doc_tree: WaveletTree | None = None
    rep: RepetitionIndex | None = None
    restricted: RestrictedIndex | None = None
    lcp: np.ndarray | None = None
    docarray: np.ndarray | None = None  # retained at build time only
    symbol_starts: list[int] | None = None

    def __post_init__(self):
        if self.symbol_starts is None:
            counts = np.bincount(
                np.asarray(self.collection.tokens, dtype=np.int64),
                minlength=self.collection.stats.sigma + 1,
            )
            starts = np.zeros(counts.size + 1, dtype=np.int64)
            np.cumsum(counts, out=starts[1:])
            self.symbol_starts = starts.tolist()

    def locus(self, pattern: Sequence[int]) -> tuple[int, int] | None:
        """Suffix-array interval of a token-id pattern; None when absent."""
        if len(pattern) == 1:
            c = int(pattern[0])
            if not 0 <= c < len(self.symbol_starts) - 1:
                return None
            l, r = self.symbol_starts[c], self.symbol_starts[c + 1] - 1
            return (l, r) if l <= r else None
        return suffixes.locus(self.sa, self.collection.tokens, pattern)

    def doc_frequency(self, pattern: Sequence[int]) -> int:
        loc = self.locus(pattern)
        if loc is None:
            return 0
        return docrep.doc_frequency(self.h, loc[0], loc[1])

    def occurrence_count(self, pattern: Sequence[int]) -> int:
        loc = self.locus(pattern)
        if loc is None:
            return 0
        return loc[1] - loc[0] + 1


def build_index(collection: Collection, variant: str = "dr") -> SearchIndex:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    sa = suffixes.build_sa(collection.tokens)
    lcp = suffixes.build_lcp(collection.tokens, sa)
    D = docrep.build_docarray(sa, collection)
    N = collection.stats.N
    rep = docrep.build_repetitions(D, lcp, N)
    index = SearchIndex(collection=collection, sa=sa, h=rep.H, variant=variant, lcp=lcp, docarray=D)
    if variant == "d1r1":
        loci = _symbol_loci(index)
        index.restricted = docrep.build_restricted(D, rep, loci, N)
    else:
        index.doc_tree = WaveletTree(D, N)
        if variant == "dr":
            index.rep = rep
    return index


def derive_variant(index: SearchIndex, variant: str) -> SearchIndex:
    """Re-dress a freshly built index as another variant without re-indexing.

    Only works while build-time intermediates are still attached; derived
    views share the collection, suffix array, and bitvectors.
    """
    if variant == index.variant:
        return index
    if index.docarray is None:
        raise ValueError("variant can only be derived right after building")
    out = SearchIndex(
        collection=index.collection,
        sa=index.sa,
        h=index.h,
        variant=variant,
        lcp=index.lcp,
        docarray=index.docarray,
        symbol_starts=index.symbol_starts,
    )
    N = index.collection.stats.N
    if variant == "d1r1":
        rep = index.rep
        if rep is None or rep.rhat_values is None:
            rep = docrep.build_repetitions(index.docarray, index.lcp, N)
        out.restricted = docrep.build_restricted(index.docarray, rep, _symbol_loci(index), N)
        return out
    out.doc_tree = index.doc_tree if index.doc_tree is not None else WaveletTree(index.docarray, N)
    if variant == "dr":
        out.rep = index.rep if index.rep is not None else docrep.build_repetitions(index.docarray, index.lcp, N)
    return out


def _symbol_loci(index: SearchIndex) -> list[tuple[int, int] | None]:
    starts = index.symbol_starts
    out: list[tuple[int, int] | None] = []
    for c in range(len(starts) - 1):
        l, r = starts[c], starts[c + 1] - 1
        out.append((l, r) if l <= r else None)
    return out
