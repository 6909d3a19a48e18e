"""Query-time multi-word expression detection via collocation strength.

Adjacent query elements merge greedily: the pair with the strongest
association, count(ab) * n / (count(a) * count(b)), merges first (ties go
left), and merging repeats until no adjacent pair reaches the threshold.
Counts are occurrence counts from the index, so merged elements may grow
past two tokens.
"""

from __future__ import annotations

from typing import Sequence


def _count(index, cache: dict, words: tuple[str, ...]) -> int:
    hit = cache.get(words)
    if hit is None:
        ids = index.collection.element_ids(words)
        hit = index.occurrence_count(ids) if ids is not None else 0
        cache[words] = hit
    return hit


def association(index, left: Sequence[str], right: Sequence[str], cache: dict | None = None) -> float:
    """Collocation strength of two adjacent word sequences; 0 when either is absent."""
    cache = cache if cache is not None else {}
    ca = _count(index, cache, tuple(left))
    cb = _count(index, cache, tuple(right))
    if ca == 0 or cb == 0:
        return 0.0
    cab = _count(index, cache, tuple(left) + tuple(right))
    if cab == 0:
        return 0.0
    return cab * index.collection.stats.n / (ca * cb)


def parse_mwe(index, tokens: Sequence[str], threshold: float = 10.0) -> list[list[str]]:
    """Group a flat token list into elements by iterative strongest-pair merging."""
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    elements: list[tuple[str, ...]] = [(t,) for t in tokens]
    cache: dict = {}
    while len(elements) > 1:
        best = -1.0
        best_i = -1
        for i in range(len(elements) - 1):
            a = association(index, elements[i], elements[i + 1], cache)
            if a > best:
                best = a
                best_i = i
        if best < threshold:
            break
        merged = elements[best_i] + elements[best_i + 1]
        elements[best_i : best_i + 2] = [merged]
    return [list(el) for el in elements]


def format_elements(elements: Sequence[Sequence[str]]) -> str:
    """Render elements back to query syntax, quoting multi-token groups."""
    parts = []
    for el in elements:
        joined = " ".join(el)
        parts.append(f'"{joined}"' if len(el) > 1 else joined)
    return " ".join(parts)
