"""Token-level collection model with document-length relabeling.

Documents are whitespace-tokenized, every document is closed by a terminator
symbol, and one sentinel document (a single end marker) is appended last.
Document ids are then reassigned so lengths are non-decreasing: id 0 is the
sentinel, and the remaining documents get ids 1..N-1 sorted by (length,
input order). With that labeling, the smallest document length below any
wavelet-tree node over the document array is just the length of the node's
smallest covered id.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

SENTINEL = 0  # display "$", closes the whole collection
TERMINATOR = 1  # display "#", closes each document
FIRST_WORD_ID = 2

SENTINEL_NAME = "$"


class Vocabulary:
    """Bidirectional token/id map; ids 0 and 1 are reserved markers."""

    __slots__ = ("_ids", "_tokens")

    def __init__(self) -> None:
        self._ids: dict[str, int] = {}
        self._tokens: list[str] = ["$", "#"]

    def add(self, token: str) -> int:
        wid = self._ids.get(token)
        if wid is None:
            wid = len(self._tokens)
            self._ids[token] = wid
            self._tokens.append(token)
        return wid

    def lookup(self, token: str) -> int | None:
        """Id of a token, or None if it never occurred."""
        return self._ids.get(token)

    def token_of(self, wid: int) -> str:
        return self._tokens[wid]

    def __len__(self) -> int:
        return len(self._tokens)

    @classmethod
    def from_tokens(cls, tokens: Sequence[str]) -> "Vocabulary":
        vocab = cls()
        for t in tokens:
            vocab.add(t)
        return vocab


@dataclass(frozen=True)
class CollectionStats:
    N: int  # documents, sentinel included
    n: int  # total symbols, markers included
    n_avg: float
    n_min: int
    n_max: int
    sigma: int  # largest symbol id


def relabel_by_length(slot_lengths: Sequence[int]) -> tuple[list[int], list[int]]:
    """Assign document ids so lengths are non-decreasing.

    slot_lengths holds one entry per document in input order, the sentinel
    last. The sentinel always receives id 0; other documents are sorted by
    (length, input order). Returns (pi, lengths_by_id) where pi maps input
    slot to document id.
    """
    nslots = len(slot_lengths)
    sentinel_slot = nslots - 1
    order = sorted(range(nslots - 1), key=lambda s: (slot_lengths[s], s))
    pi = [0] * nslots
    lengths = [0] * nslots
    lengths[0] = slot_lengths[sentinel_slot]
    for rank, slot in enumerate(order, start=1):
        pi[slot] = rank
        lengths[rank] = slot_lengths[slot]
    return pi, lengths


def min_doc_length(lengths: Sequence[int], N: int, height: int, node) -> int:
    """Smallest document length below a document-array tree node.

    Because ids are sorted by length, this is the length of the smallest id
    the node can cover, clamped into the existing id range.
    """
    level, index = node
    smallest = index << (height - level)
    return lengths[min(smallest, N - 1)]


class Collection:
    """Relabeled concatenated token sequence plus document bookkeeping."""

    def __init__(
        self,
        tokens: list[int],
        pi: list[int],
        slot_start: list[int],
        lengths: list[int],
        names: list[str],
        vocab: Vocabulary,
    ):
        self.tokens = tokens
        self.pi = pi
        self.slot_start = slot_start
        self.lengths = lengths
        self.names = names
        self.vocab = vocab
        self.N = len(pi)
        self.slot_of = [0] * self.N
        for slot, doc in enumerate(pi):
            self.slot_of[doc] = slot
        n = len(tokens)
        self.stats = CollectionStats(
            N=self.N,
            n=n,
            n_avg=n / self.N,
            n_min=lengths[0],
            n_max=max(lengths),
            sigma=len(vocab) - 1,
        )

    def doc_tokens(self, doc: int) -> list[int]:
        """Symbol slice of one document, its closing marker included."""
        slot = self.slot_of[doc]
        start = self.slot_start[slot]
        return self.tokens[start : start + self.lengths[doc]]

    def doc_words(self, doc: int) -> list[str]:
        return [self.vocab.token_of(t) for t in self.doc_tokens(doc) if t >= FIRST_WORD_ID]

    def element_ids(self, words: Sequence[str]) -> tuple[int, ...] | None:
        """Map a word sequence to ids; None if any word is out of vocabulary."""
        ids = []
        for w in words:
            wid = self.vocab.lookup(w)
            if wid is None:
                return None
            ids.append(wid)
        return tuple(ids)


def ingest(docs: Sequence[Sequence[str]], names: Sequence[str] | None = None) -> Collection:
    """Build a relabeled collection from tokenized documents in input order."""
    if not docs:
        raise ValueError("collection must contain at least one document")
    if names is not None and len(names) != len(docs):
        raise ValueError("one name per document required")
    vocab = Vocabulary()
    slot_ids: list[list[int]] = []
    for doc in docs:
        ids = [vocab.add(t) for t in doc]
        ids.append(TERMINATOR)
        slot_ids.append(ids)
    slot_ids.append([SENTINEL])
    slot_lengths = [len(ids) for ids in slot_ids]
    pi, lengths = relabel_by_length(slot_lengths)

    tokens: list[int] = []
    slot_start: list[int] = []
    for ids in slot_ids:
        slot_start.append(len(tokens))
        tokens.extend(ids)

    doc_names = [""] * len(slot_ids)
    doc_names[0] = SENTINEL_NAME
    for slot in range(len(docs)):
        doc_names[pi[slot]] = names[slot] if names is not None else f"line{slot + 1}"
    return Collection(tokens, pi, slot_start, lengths, doc_names, vocab)


def ingest_lines(lines: Iterable[str], names: Sequence[str] | None = None) -> Collection:
    docs = [line.split() for line in lines]
    return ingest(docs, names)


def ingest_path(path: str | Path) -> Collection:
    """One document per line of a file, or per file of a directory.

    Directory entries are ordered by file name; names in the collection are
    line numbers or file names respectively.
    """
    p = Path(path)
    if p.is_dir():
        files = sorted(f for f in p.iterdir() if f.is_file())
        if not files:
            raise ValueError(f"no documents under {p}")
        docs = [f.read_text().split() for f in files]
        return ingest(docs, [f.name for f in files])
    lines = p.read_text().splitlines()
    if not lines:
        raise ValueError(f"no documents in {p}")
    return ingest([line.split() for line in lines])
