"""Similarity measures: BM25, TF-IDF, and language-model Dirichlet smoothing.

Every measure is monotone non-decreasing in each term frequency and monotone
non-increasing in document length, so evaluating it on per-term frequency
upper bounds and a subtree's minimum document length yields an admissible
score bound; on exact leaf inputs the same formula is the exact score. A
term with frequency zero contributes nothing.

BM25 query weights can go negative for very common terms; they are clamped
to a tiny positive constant so the per-term contribution stays monotone.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import log
from typing import Callable, Sequence

from .corpus import CollectionStats

MEASURES = ("bm25", "tfidf", "lmds", "freq")


@dataclass(frozen=True)
class MeasureParams:
    kind: str = "bm25"
    k1: float = 1.2
    b: float = 0.75
    mu: float = 2500.0
    eps: float = 1e-6  # clamp for non-positive BM25 query weights

    def __post_init__(self):
        if self.kind not in MEASURES:
            raise ValueError(f"unknown measure {self.kind!r}")
        if self.k1 <= 0 or not 0.0 <= self.b <= 1.0 or self.mu <= 0 or self.eps <= 0:
            raise ValueError("measure parameters out of range")


@dataclass(frozen=True)
class ElementWeight:
    w_q: float  # query-side weight
    f_q: int  # multiplicity in the query
    F: int  # documents containing the element


@dataclass(frozen=True)
class QueryWeights:
    elements: tuple[ElementWeight, ...]
    m: int  # total query length, multiplicities included

    @classmethod
    def build(cls, params: MeasureParams, stats: CollectionStats, per_element: Sequence[tuple[int, int]]) -> "QueryWeights":
        """per_element holds (f_q, F) pairs for the retained query elements."""
        weights = tuple(ElementWeight(query_weight(params, stats, F, f_q), f_q, F) for f_q, F in per_element)
        return cls(weights, sum(f_q for f_q, _ in per_element))


def query_weight(params: MeasureParams, stats: CollectionStats, F: int, f_q: int) -> float:
    """Query-side weight of one element occurring in F of the N documents."""
    if not 0 <= F <= stats.N:
        raise ValueError("document frequency out of range")
    if f_q < 1:
        raise ValueError("query multiplicity must be positive")
    kind = params.kind
    if kind == "bm25":
        w = f_q * log((stats.N - F + 0.5) / (F + 0.5))
        return params.eps if w <= 0.0 else w
    if F == 0:
        raise ValueError("element absent from the collection")
    if kind == "tfidf":
        return log(1.0 + stats.N / F)
    return float(f_q)  # lmds and freq weight by multiplicity


def make_scorer(
    params: MeasureParams, stats: CollectionStats, weights: QueryWeights
) -> Callable[[Sequence[int], int], float]:
    """Compile a (frequencies, doc_length) -> score function for one query.

    The same callable scores exact leaves and bounds inner nodes; engine and
    scan baselines share it so equal inputs give bit-identical floats.
    """
    elems = weights.elements
    kind = params.kind
    if kind == "bm25":
        k1, b, n_avg = params.k1, params.b, stats.n_avg
        k1p = k1 + 1.0
        wq = [e.w_q for e in elems]

        def scorer(tfs: Sequence[int], n_d: int) -> float:
            norm = k1 * (1.0 - b + b * (n_d / n_avg))
            s = 0.0
            for w, f in zip(wq, tfs):
                if f:
                    s += w * (k1p * f / (norm + f))
            return s

    elif kind == "tfidf":
        wq = [e.w_q for e in elems]

        def scorer(tfs: Sequence[int], n_d: int) -> float:
            s = 0.0
            for w, f in zip(wq, tfs):
                if f:
                    s += w * (1.0 + log(f))
            return s / n_d

    elif kind == "lmds":
        mu, n, m = params.mu, stats.n, weights.m
        coef = [(e.f_q, n / (mu * e.F)) for e in elems]

        def scorer(tfs: Sequence[int], n_d: int) -> float:
            s = m * log(mu / (n_d + mu))
            for (f_q, c), f in zip(coef, tfs):
                if f:
                    s += f_q * log(f * c + 1.0)
            return s

    else:  # freq: plain frequency accumulation, used by tests
        wq = [float(e.f_q) for e in elems]

        def scorer(tfs: Sequence[int], n_d: int) -> float:
            s = 0.0
            for w, f in zip(wq, tfs):
                if f:
                    s += w * f
            return s

    return scorer


def score(
    params: MeasureParams,
    stats: CollectionStats,
    weights: QueryWeights,
    tfs: Sequence[int],
    n_d: int,
) -> float:
    """Exact document score from per-element frequencies and document length."""
    if len(tfs) != len(weights.elements):
        raise ValueError("one frequency per element required")
    if n_d < 1:
        raise ValueError("document length must be positive")
    return make_scorer(params, stats, weights)(tfs, n_d)


def bound(
    params: MeasureParams,
    stats: CollectionStats,
    weights: QueryWeights,
    f_bounds: Sequence[int],
    n_min: int,
) -> float:
    """Admissible upper bound: same formula on frequency bounds and the
    smallest document length below the node."""
    return score(params, stats, weights, f_bounds, n_min)
