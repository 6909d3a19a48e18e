from __future__ import annotations

import random

import pytest

from waverank.bits import BitVector

# H bitvector of the three-document fixture, checked by hand.
H_BITS = [1, 1, 1, 1, 0, 0, 0, 1, 1, 1, 0, 1, 0, 1, 0, 1, 0, 0, 0, 1, 1, 1, 0, 1]


def test_fixture_rank_and_select():
    bv = BitVector(H_BITS)
    assert len(bv) == 24
    assert bv.ones == 14
    assert bv.rank1(0) == 0
    assert bv.rank1(8) == 5
    assert bv.rank1(24) == 14
    assert bv.rank0(24) == 10
    assert bv.select1(0) == 0
    assert bv.select1(4) == 7
    assert bv.select1(9) == 15
    assert bv.select1(13) == 23


def test_get_matches_input():
    bv = BitVector(H_BITS)
    assert [bv.get(i) for i in range(len(bv))] == H_BITS


def test_empty_vector():
    bv = BitVector([])
    assert len(bv) == 0
    assert bv.ones == 0
    assert bv.rank1(0) == 0


def test_bounds_are_rejected():
    bv = BitVector([1, 0, 1])
    with pytest.raises(IndexError):
        bv.rank1(4)
    with pytest.raises(IndexError):
        bv.rank1(-1)
    with pytest.raises(IndexError):
        bv.select1(2)
    with pytest.raises(IndexError):
        bv.select1(-1)
    with pytest.raises(IndexError):
        bv.get(3)


def test_rank_select_duality_random():
    rng = random.Random(1234)
    for _ in range(50):
        n = rng.randint(1, 400)
        bits = [rng.randint(0, 1) for _ in range(n)]
        bv = BitVector(bits)

        prefix = 0
        for pos, bit in enumerate(bits):
            assert bv.rank1(pos) == prefix
            prefix += bit
        assert bv.rank1(n) == prefix == bv.ones
        assert bv.rank0(n) == n - prefix

        ones_positions = [pos for pos, bit in enumerate(bits) if bit]
        for i, pos in enumerate(ones_positions):
            assert bv.select1(i) == pos
            assert bv.rank1(pos) == i
            assert bv.rank1(pos + 1) == i + 1


def test_word_boundaries():
    # exercise positions straddling the 64-bit word layout
    bits = [0] * 200
    for pos in (0, 63, 64, 65, 127, 128, 191, 199):
        bits[pos] = 1
    bv = BitVector(bits)
    assert bv.ones == 8
    assert bv.rank1(64) == 2
    assert bv.rank1(65) == 3
    assert bv.select1(3) == 65
    assert bv.select1(7) == 199


def test_serialization_round_trip():
    rng = random.Random(7)
    for n in (0, 1, 63, 64, 65, 130, 513):
        bits = [rng.randint(0, 1) for _ in range(n)]
        bv = BitVector(bits)
        blob = bv.to_bytes()
        back, consumed = BitVector.from_bytes(blob)
        assert consumed == len(blob)
        assert len(back) == n
        assert [back.get(i) for i in range(n)] == bits
        assert back.to_bytes() == blob


def test_from_bytes_rejects_garbage():
    bv = BitVector([1, 0, 1, 1])
    blob = bytearray(bv.to_bytes())
    blob[0] ^= 0xFF  # break the tag
    with pytest.raises(ValueError):
        BitVector.from_bytes(bytes(blob))
    with pytest.raises(ValueError):
        BitVector.from_bytes(bv.to_bytes()[:-3])
