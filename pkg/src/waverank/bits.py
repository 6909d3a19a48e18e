"""Uncompressed bitvector with constant-time rank and binary-search select.

The vector keeps its payload as 64-bit little-endian words plus a cumulative
popcount per word, so rank1 is two list lookups and one masked popcount.
select1 binary-searches the cumulative table and finishes inside one word.
Instances are immutable once built.
"""

from __future__ import annotations

import struct
from bisect import bisect_right
from typing import Iterable

import numpy as np

MAGIC = b"SRFB"
FORMAT_VERSION = 1

_POPCOUNT8 = np.unpackbits(np.arange(256, dtype=np.uint8)[:, None], axis=1).sum(axis=1)


class BitVector:
    """Plain 0/1 sequence supporting rank1/rank0/select1/get.

    rank1(pos) counts set bits strictly before pos (0 <= pos <= len);
    select1(i) returns the position of the (i+1)-th set bit (0-based i).
    """

    __slots__ = ("length", "ones", "_words", "_cum")

    def __init__(self, bits: Iterable[int] | np.ndarray = ()):
        arr = np.asarray(bits, dtype=np.uint8)
        if arr.ndim != 1:
            raise ValueError("bits must be a flat sequence")
        if arr.size and arr.max() > 1:
            raise ValueError("bits must be 0 or 1")
        packed = np.packbits(arr, bitorder="little")
        pad = (-packed.size) % 8
        if pad:
            packed = np.concatenate([packed, np.zeros(pad, dtype=np.uint8)])
        self._init_from_packed(packed, int(arr.size))

    def _init_from_packed(self, packed: np.ndarray, length: int) -> None:
        words = packed.view("<u8")
        per_word = _POPCOUNT8[packed].reshape(-1, 8).sum(axis=1, dtype=np.int64)
        cum = np.zeros(words.size + 1, dtype=np.int64)
        np.cumsum(per_word, out=cum[1:])
        self._words: list[int] = words.tolist()
        self._cum: list[int] = cum.tolist()
        self.length = length
        self.ones = int(cum[-1])

    @classmethod
    def from_words(cls, words: list[int], length: int) -> "BitVector":
        if len(words) != (length + 63) // 64:
            raise ValueError("word count does not match length")
        bv = cls.__new__(cls)
        packed = np.asarray(words, dtype="<u8").view(np.uint8)
        bv._init_from_packed(packed, length)
        if bv.length % 64:
            tail = bv._words[-1] >> (bv.length % 64)
            if tail:
                raise ValueError("padding bits beyond length must be zero")
        return bv

    def __len__(self) -> int:
        return self.length

    def get(self, pos: int) -> int:
        if not 0 <= pos < self.length:
            raise IndexError("bit position out of range")
        return (self._words[pos >> 6] >> (pos & 63)) & 1

    def rank1(self, pos: int) -> int:
        """Number of set bits in [0, pos)."""
        if not 0 <= pos <= self.length:
            raise IndexError("rank position out of range")
        w = pos >> 6
        b = pos & 63
        if b == 0:
            return self._cum[w]
        return self._cum[w] + ((self._words[w] & ((1 << b) - 1)).bit_count())

    def rank0(self, pos: int) -> int:
        """Number of clear bits in [0, pos)."""
        return pos - self.rank1(pos)

    def select1(self, i: int) -> int:
        """Position of the (i+1)-th set bit; requires 0 <= i < ones."""
        if not 0 <= i < self.ones:
            raise IndexError("select index out of range")
        w = bisect_right(self._cum, i) - 1
        word = self._words[w]
        for _ in range(i - self._cum[w]):
            word &= word - 1
        return (w << 6) + (word & -word).bit_length() - 1

    def to_bytes(self) -> bytes:
        """Magic, version byte, 64-bit LE length, then 64-bit LE words."""
        head = MAGIC + bytes([FORMAT_VERSION]) + struct.pack("<Q", self.length)
        return head + np.asarray(self._words, dtype="<u8").tobytes()

    @classmethod
    def from_bytes(cls, data: bytes, offset: int = 0) -> tuple["BitVector", int]:
        """Parse one serialized vector; returns (vector, next offset)."""
        if data[offset : offset + 4] != MAGIC:
            raise ValueError("bad bitvector magic")
        if data[offset + 4] != FORMAT_VERSION:
            raise ValueError("unsupported bitvector version")
        (length,) = struct.unpack_from("<Q", data, offset + 5)
        nwords = (length + 63) // 64
        start = offset + 13
        end = start + 8 * nwords
        if end > len(data):
            raise ValueError("truncated bitvector payload")
        words = np.frombuffer(data[start:end], dtype="<u8").tolist()
        return cls.from_words(words, length), end
