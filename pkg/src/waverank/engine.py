"""Greedy rank-safe top-k traversal over the document-array wavelet tree.

A max-heap holds tree nodes keyed by an admissible score bound computed from
per-element frequency bounds and the smallest document length below the
node; child bounds never exceed their parent's. Leaves are pushed with their
exact score (leaf ranges give exact frequencies and the true document
length), so documents can be emitted the moment a leaf is popped: everything
still queued is bounded by the popped value. Ties break toward shallower
nodes and lower indices, which keeps emission order deterministic (score
descending, then document id ascending).

Frequency bound estimators:
  e0  range size, global minimum document length
  e1  range size, per-node minimum document length via the length relabeling
  e2  pruned repetition count plus one, per-node minimum document length

The restricted single-term variant runs the same traversal over the
distinct-document tree (existence) paired with the re-sorted repetition tree
(frequency), estimator e2 only.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from heapq import heappop, heappush
from typing import Sequence

from . import docrep
from .ranking import MeasureParams, QueryWeights, make_scorer

MODES = ("or", "and")
ESTIMATORS = ("e0", "e1", "e2")
VARIANTS = ("d", "dr", "d1r1")


class ConfigError(ValueError):
    """Requested combination the loaded structures cannot serve."""


@dataclass(frozen=True)
class SearchConfig:
    k: int
    mode: str = "or"
    measure: MeasureParams = field(default_factory=MeasureParams)
    estimator: str = "e1"
    variant: str = "dr"

    def __post_init__(self):
        if self.k < 1:
            raise ConfigError("k must be at least 1")
        if self.mode not in MODES:
            raise ConfigError(f"unknown mode {self.mode!r}")
        if self.estimator not in ESTIMATORS:
            raise ConfigError(f"unknown estimator {self.estimator!r}")
        if self.variant not in VARIANTS:
            raise ConfigError(f"unknown variant {self.variant!r}")
        if self.estimator == "e2" and self.variant == "d":
            raise ConfigError("estimator e2 needs the repetition structures")
        if self.variant == "d1r1" and self.estimator != "e2":
            raise ConfigError("the restricted layout only supports estimator e2")


@dataclass
class TraversalStats:
    states_processed: int = 0
    heap_pushes: int = 0
    elapsed_us: int = 0


@dataclass(frozen=True)
class PlannedElement:
    ids: tuple[int, ...]
    f_q: int
    F: int
    d_range: tuple[int, int]
    rep_range: tuple[int, int] | None


@dataclass
class QueryPlan:
    elements: list[PlannedElement]
    weights: QueryWeights
    scorer: object


def _collapse(elements: Sequence) -> list[tuple[object, int]]:
    """Merge duplicate elements into (element, multiplicity) in first-seen order."""
    counts: dict[object, int] = {}
    order = []
    for el in elements:
        key = None if el is None else tuple(int(x) for x in el)
        if key not in counts:
            counts[key] = 0
            order.append(key)
        counts[key] += 1
    return [(el, counts[el]) for el in order]


def plan(index, config: SearchConfig, elements: Sequence) -> QueryPlan | None:
    """Resolve elements to tree ranges and weights; None means no results.

    Elements are token-id tuples; None stands for an element containing an
    unknown token. In AND mode one absent element empties the result; in OR
    mode absent elements are dropped before weighting.
    """
    if not elements:
        raise ValueError("query must contain at least one element")
    restricted = config.variant == "d1r1"
    need_rep = config.estimator == "e2"
    planned: list[tuple[tuple[int, ...], int, tuple[int, int] | None]] = []
    for el, f_q in _collapse(elements):
        if el is not None and restricted and len(el) > 1:
            raise ConfigError("the restricted layout serves single-token elements only")
        loc = index.locus(el) if el is not None else None
        if loc is None:
            if config.mode == "and":
                return None
            continue
        planned.append((el, f_q, loc))
    if not planned:
        return None

    out = []
    pairs = []
    for el, f_q, (l, r) in planned:
        F = docrep.doc_frequency(index.h, l, r)
        if restricted:
            d_range = index.restricted.root_doc_range(el[0])
        else:
            d_range = (l, r)
        rep_range = None
        if need_rep:
            keep = index.restricted.keep if restricted else index.rep.keep
            a, b = docrep.reps_range(index.h, l, r)
            rep_range = (keep.rank1(a), keep.rank1(b) - 1)
        out.append((el, f_q, F, d_range, rep_range))
        pairs.append((f_q, F))

    weights = QueryWeights.build(config.measure, index.collection.stats, pairs)
    scorer = make_scorer(config.measure, index.collection.stats, weights)
    elements_out = [
        PlannedElement(ids=el, f_q=f_q, F=F, d_range=dr, rep_range=rr)
        for (el, f_q, F, dr, rr) in out
    ]
    return QueryPlan(elements_out, weights, scorer)


def _trees(index, config: SearchConfig):
    if config.variant == "d1r1":
        return index.restricted.d1_tree, index.restricted.r1_tree
    doc_tree = index.doc_tree
    rep_tree = index.rep.rep_tree if config.estimator == "e2" else None
    return doc_tree, rep_tree


_EMPTY = (0, -1)


def top_k(index, config: SearchConfig, elements: Sequence) -> tuple[list[tuple[int, float]], TraversalStats]:
    """Top-k (document id, score) pairs, score descending then id ascending."""
    t0 = time.perf_counter_ns()
    stats = TraversalStats()
    qplan = plan(index, config, elements)
    if qplan is None:
        stats.elapsed_us = (time.perf_counter_ns() - t0) // 1000
        return [], stats

    doc_tree, rep_tree = _trees(index, config)
    height = doc_tree.height
    expand_d = doc_tree.expand_counts
    expand_r = rep_tree.expand_counts if rep_tree is not None else None
    scorer = qplan.scorer
    lengths = index.collection.lengths
    N = index.collection.stats.N
    n_min = index.collection.stats.n_min
    want_and = config.mode == "and"
    use_delta = config.estimator == "e2"
    per_node_len = config.estimator != "e0"
    k = config.k

    dr0 = tuple(e.d_range for e in qplan.elements)
    rr0 = tuple(e.rep_range for e in qplan.elements) if use_delta else None
    if use_delta:
        f0 = [docrep.delta(d, r) for d, r in zip(dr0, rr0)]
    else:
        f0 = [hi - lo + 1 if lo <= hi else 0 for lo, hi in dr0]
    root_bound = scorer(f0, n_min)

    heap = [(-root_bound, 0, 0, dr0, rr0)]
    results: list[tuple[int, float]] = []
    while heap and len(results) < k:
        neg, level, idx, dranges, rranges = heappop(heap)
        stats.states_processed += 1
        if level == height:
            results.append((idx, -neg))
            continue
        child_level = level + 1
        at_leaves = child_level == height
        left: list[tuple[int, int]] = []
        right: list[tuple[int, int]] = []
        for lo, hi in dranges:
            if lo > hi:
                left.append(_EMPTY)
                right.append(_EMPTY)
            else:
                llo, lhi, rlo, rhi = expand_d(level, idx, lo, hi)
                left.append((llo, lhi))
                right.append((rlo, rhi))
        if rranges is not None:
            left_r: list[tuple[int, int]] = []
            right_r: list[tuple[int, int]] = []
            for lo, hi in rranges:
                if lo > hi:
                    left_r.append(_EMPTY)
                    right_r.append(_EMPTY)
                else:
                    llo, lhi, rlo, rhi = expand_r(level, idx, lo, hi)
                    left_r.append((llo, lhi))
                    right_r.append((rlo, rhi))
            sides = ((2 * idx, left, left_r), (2 * idx + 1, right, right_r))
        else:
            sides = ((2 * idx, left, None), (2 * idx + 1, right, None))

        for cidx, cdr, crr in sides:
            if want_and:
                if any(lo > hi for lo, hi in cdr):
                    continue
            elif all(lo > hi for lo, hi in cdr):
                continue
            if at_leaves:
                if config.variant == "d1r1":
                    fs = [docrep.restricted_tf_leaf(d, r) for d, r in zip(cdr, crr)]
                else:
                    fs = [hi - lo + 1 if lo <= hi else 0 for lo, hi in cdr]
                value = scorer(fs, lengths[cidx])
            else:
                if use_delta:
                    fs = [docrep.delta(d, r) for d, r in zip(cdr, crr)]
                else:
                    fs = [hi - lo + 1 if lo <= hi else 0 for lo, hi in cdr]
                n_est = lengths[min(cidx << (height - child_level), N - 1)] if per_node_len else n_min
                value = scorer(fs, n_est)
            heappush(heap, (-value, child_level, cidx, tuple(cdr), tuple(crr) if crr is not None else None))
            stats.heap_pushes += 1

    stats.elapsed_us = (time.perf_counter_ns() - t0) // 1000
    return results, stats


def exhaustive_states(index, config: SearchConfig, elements: Sequence) -> int:
    """States a queue-draining run (k = number of documents) processes.

    Equals the number of viable states, which no scoring order changes, so
    the walk skips bounds entirely.
    """
    qplan = plan(index, config, elements)
    if qplan is None:
        return 0
    doc_tree, _ = _trees(index, config)
    height = doc_tree.height
    expand_d = doc_tree.expand_counts
    want_and = config.mode == "and"
    queue = deque([(0, 0, tuple(e.d_range for e in qplan.elements))])
    processed = 0
    while queue:
        level, idx, dranges = queue.popleft()
        processed += 1
        if level == height:
            continue
        left: list[tuple[int, int]] = []
        right: list[tuple[int, int]] = []
        for lo, hi in dranges:
            if lo > hi:
                left.append(_EMPTY)
                right.append(_EMPTY)
            else:
                llo, lhi, rlo, rhi = expand_d(level, idx, lo, hi)
                left.append((llo, lhi))
                right.append((rlo, rhi))
        for cidx, cdr in ((2 * idx, left), (2 * idx + 1, right)):
            if want_and:
                if any(lo > hi for lo, hi in cdr):
                    continue
            elif all(lo > hi for lo, hi in cdr):
                continue
            queue.append((level + 1, cidx, tuple(cdr)))
    return processed
