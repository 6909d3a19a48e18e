"""Pointerless balanced wavelet tree over an integer sequence.

Level ell stores one concatenated bit sequence: the input reordered stably by
the top ell bits of each symbol, each position contributing bit
(height - 1 - ell) of its symbol. Node (ell, i) is the contiguous span of
positions whose symbols share the top ell bits equal to i, so the tree needs
no pointers; spans are reconstructed from prefix counts. expand_range maps a
range of positions inside a node to the corresponding ranges inside its two
children with two rank calls per child pair.
"""

from __future__ import annotations

import struct
from typing import NamedTuple, Sequence

import numpy as np

from .bits import BitVector


class NodeHandle(NamedTuple):
    level: int
    index: int


class NodeRange(NamedTuple):
    """Inclusive position range, local to a node; empty iff lo > hi."""

    node: NodeHandle
    lo: int
    hi: int

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1 if self.hi >= self.lo else 0


ROOT = NodeHandle(0, 0)


class WaveletTree:
    """Balanced wavelet tree with rank-accelerated level bitvectors."""

    __slots__ = ("seq_len", "sigma", "height", "_levels", "_starts", "_zeros_before")

    def __init__(self, seq: Sequence[int] | np.ndarray, sigma: int):
        if sigma < 1:
            raise ValueError("sigma must be positive")
        arr = np.asarray(seq, dtype=np.int64)
        if arr.ndim != 1:
            raise ValueError("sequence must be flat")
        if arr.size and (int(arr.min()) < 0 or int(arr.max()) >= sigma):
            raise ValueError("symbols must lie in [0, sigma)")
        self.sigma = sigma
        self.seq_len = int(arr.size)
        self.height = (sigma - 1).bit_length()
        self._build(arr)

    def _build(self, arr: np.ndarray) -> None:
        levels: list[BitVector] = []
        starts: list[list[int]] = []
        zeros_before: list[list[int]] = []
        h = self.height
        for ell in range(h + 1):
            keys = arr >> (h - ell)
            counts = np.bincount(keys, minlength=1 << ell) if arr.size else np.zeros(1 << ell, dtype=np.int64)
            s = np.zeros((1 << ell) + 1, dtype=np.int64)
            np.cumsum(counts, out=s[1:])
            starts.append(s.tolist())
            if ell == h:
                break
            order = np.argsort(keys, kind="stable")
            bits = (arr[order] >> (h - 1 - ell)) & 1
            bv = BitVector(bits)
            levels.append(bv)
            ones_prefix = np.zeros(arr.size + 1, dtype=np.int64)
            np.cumsum(bits, out=ones_prefix[1:])
            zeros_before.append((s[:-1] - ones_prefix[s[:-1]]).tolist())
        self._levels = levels
        self._starts = starts
        self._zeros_before = zeros_before

    # -- node geometry -----------------------------------------------------

    def node_size(self, node: NodeHandle) -> int:
        level, index = node
        if not (0 <= level <= self.height and 0 <= index < (1 << level)):
            raise ValueError("no such node")
        s = self._starts[level]
        return s[index + 1] - s[index]

    def sym_range(self, node: NodeHandle) -> tuple[int, int]:
        """Symbol interval covered by a node; upper end clamped to sigma - 1."""
        level, index = node
        width = 1 << (self.height - level)
        lo = index * width
        return lo, min(lo + width - 1, self.sigma - 1)

    def expand(self, node: NodeHandle) -> tuple[NodeHandle, NodeHandle]:
        level, index = node
        if level >= self.height:
            raise ValueError("cannot expand a leaf")
        return NodeHandle(level + 1, 2 * index), NodeHandle(level + 1, 2 * index + 1)

    # -- range navigation ----------------------------------------------------

    def expand_counts(self, level: int, index: int, lo: int, hi: int) -> tuple[int, int, int, int]:
        """Map a non-empty node-local range to both children.

        Returns (left_lo, left_hi, right_lo, right_hi), each local to the
        child and inclusive; an empty side comes back with lo > hi.
        """
        base = self._starts[level][index]
        zb = self._zeros_before[level][index]
        bv = self._levels[level]
        p = base + lo
        q = base + hi + 1
        zlo = p - bv.rank1(p) - zb
        zhi = q - bv.rank1(q) - zb
        return zlo, zhi - 1, lo - zlo, hi - zhi

    def expand_range(self, rng: NodeRange) -> tuple[NodeRange, NodeRange]:
        """Project a node range onto the node's children (empty-safe)."""
        node = rng.node
        left, right = self.expand(node)
        if rng.lo > rng.hi:
            return NodeRange(left, 0, -1), NodeRange(right, 0, -1)
        if not 0 <= rng.lo <= rng.hi < self.node_size(node):
            raise ValueError("range exceeds node span")
        llo, lhi, rlo, rhi = self.expand_counts(node.level, node.index, rng.lo, rng.hi)
        return NodeRange(left, llo, lhi), NodeRange(right, rlo, rhi)

    def root_range(self, lo: int, hi: int) -> NodeRange:
        return NodeRange(ROOT, lo, hi)

    def access(self, pos: int) -> int:
        """Symbol at a position of the original sequence."""
        if not 0 <= pos < self.seq_len:
            raise IndexError("position out of range")
        index = 0
        sym = 0
        for level in range(self.height):
            base = self._starts[level][index]
            bv = self._levels[level]
            zb = self._zeros_before[level][index]
            bit = bv.get(base + pos)
            z = (base + pos) - bv.rank1(base + pos) - zb
            if bit:
                sym = (sym << 1) | 1
                pos = pos - z
                index = 2 * index + 1
            else:
                sym <<= 1
                pos = z
                index = 2 * index
        return sym

    # -- serialization -------------------------------------------------------

    def to_bytes(self) -> bytes:
        """32-bit sigma and height, then one bitvector blob per level."""
        if self.height == 0:
            raise ValueError("height-0 tree has no serialized form")
        parts = [struct.pack("<II", self.sigma, self.height)]
        parts.extend(bv.to_bytes() for bv in self._levels)
        return b"".join(parts)

    @classmethod
    def from_bytes(cls, data: bytes, offset: int = 0) -> tuple["WaveletTree", int]:
        sigma, height = struct.unpack_from("<II", data, offset)
        if height == 0 or height != (sigma - 1).bit_length():
            raise ValueError("corrupt wavelet tree header")
        offset += 8
        levels = []
        for _ in range(height):
            bv, offset = BitVector.from_bytes(data, offset)
            levels.append(bv)
        tree = cls.__new__(cls)
        tree.sigma = sigma
        tree.height = height
        tree.seq_len = levels[0].length
        if any(bv.length != tree.seq_len for bv in levels):
            raise ValueError("level lengths disagree")
        tree._levels = levels
        tree._rebuild_spans()
        return tree, offset

    def _rebuild_spans(self) -> None:
        """Recompute node spans and per-node zero offsets from the level bits."""
        starts: list[list[int]] = [[0, self.seq_len]]
        zeros_before: list[list[int]] = []
        for level in range(self.height):
            bv = self._levels[level]
            cur = starts[level]
            zb = [bv.rank0(p) for p in cur[:-1]]
            zeros_before.append(zb)
            nxt = [0] * (2 * (len(cur) - 1) + 1)
            for i in range(len(cur) - 1):
                size = cur[i + 1] - cur[i]
                zeros = bv.rank0(cur[i + 1]) - (cur[i] - bv.rank1(cur[i]))
                nxt[2 * i + 1] = nxt[2 * i] + zeros
                nxt[2 * i + 2] = nxt[2 * i + 1] + (size - zeros)
            starts.append(nxt)
        self._starts = starts
        self._zeros_before = zeros_before

    def reconstruct(self) -> list[int]:
        return [self.access(i) for i in range(self.seq_len)]
