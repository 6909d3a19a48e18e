"""Suffix array construction, LCP array, and pattern locus search.

The suffix array is built by prefix doubling with numpy's stable lexsort;
the LCP array follows Kasai's algorithm. locus() finds the suffix-array
interval of exact occurrences of a token pattern by binary search with full
pattern comparison per probe.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .corpus import SENTINEL


def build_sa(tokens: Sequence[int]) -> np.ndarray:
    """Suffix array of a sequence ending in its unique smallest sentinel."""
    arr = np.asarray(tokens, dtype=np.int64)
    n = arr.size
    if n == 0:
        raise ValueError("cannot index an empty sequence")
    if arr[-1] != SENTINEL or int(np.count_nonzero(arr == SENTINEL)) != 1:
        raise ValueError("sequence must end with one unique sentinel symbol")
    rank = np.unique(arr, return_inverse=True)[1].astype(np.int64)
    if n == 1:
        return np.zeros(1, dtype=np.int64)
    k = 1
    idx = np.arange(n, dtype=np.int64)
    while True:
        second = np.full(n, -1, dtype=np.int64)
        second[: n - k] = rank[k:]
        order = np.lexsort((second, rank))
        changed = (rank[order][1:] != rank[order][:-1]) | (second[order][1:] != second[order][:-1])
        new_rank = np.empty(n, dtype=np.int64)
        new_rank[order[0]] = 0
        new_rank[order[1:]] = np.cumsum(changed)
        rank = new_rank
        if int(rank[order[-1]]) == n - 1:
            break
        k *= 2
    sa = np.empty(n, dtype=np.int64)
    sa[rank] = idx
    return sa


def build_lcp(tokens: Sequence[int], sa: np.ndarray) -> np.ndarray:
    """Longest common prefix of each suffix with its lexicographic predecessor."""
    t = list(tokens)
    n = len(t)
    sa_list = [int(x) for x in sa]
    rank = [0] * n
    for i, s in enumerate(sa_list):
        rank[s] = i
    lcp = [0] * n
    h = 0
    for i in range(n):
        r = rank[i]
        if r > 0:
            j = sa_list[r - 1]
            while i + h < n and j + h < n and t[i + h] == t[j + h]:
                h += 1
            lcp[r] = h
            if h:
                h -= 1
        else:
            h = 0
    return np.asarray(lcp, dtype=np.int64)


def _suffix_less(t: Sequence[int], suf: int, pattern: Sequence[int]) -> bool:
    """True when suffix suf sorts strictly before pattern (prefix-truncated)."""
    n = len(t)
    for k, p in enumerate(pattern):
        if suf + k >= n:
            return True  # suffix exhausted, sorts before the longer pattern
        c = t[suf + k]
        if c != p:
            return c < p
    return False  # pattern is a prefix of the suffix


def _suffix_prefix_greater(t: Sequence[int], suf: int, pattern: Sequence[int]) -> bool:
    n = len(t)
    for k, p in enumerate(pattern):
        if suf + k >= n:
            return False
        c = t[suf + k]
        if c != p:
            return c > p
    return False


def locus(sa: np.ndarray, tokens: Sequence[int], pattern: Sequence[int]) -> tuple[int, int] | None:
    """Inclusive suffix-array interval of suffixes starting with pattern.

    Returns None when the pattern does not occur; empty patterns are invalid.
    """
    if len(pattern) == 0:
        raise ValueError("pattern must be non-empty")
    n = len(sa)
    lo, hi = 0, n
    while lo < hi:
        mid = (lo + hi) // 2
        if _suffix_less(tokens, int(sa[mid]), pattern):
            lo = mid + 1
        else:
            hi = mid
    first = lo
    hi = n
    while lo < hi:
        mid = (lo + hi) // 2
        if _suffix_prefix_greater(tokens, int(sa[mid]), pattern):
            hi = mid
        else:
            lo = mid + 1
    if first == lo:
        return None
    return first, lo - 1


def extract(tokens: Sequence[int], pos: int, length: int) -> list[int]:
    """Token slice [pos, pos + length); bounds must stay inside the sequence."""
    if pos < 0 or length < 0 or pos + length > len(tokens):
        raise IndexError("extract range out of bounds")
    return [int(t) for t in tokens[pos : pos + length]]
