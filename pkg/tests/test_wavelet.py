from __future__ import annotations

import random

import pytest

from waverank.wavelet import ROOT, NodeHandle, WaveletTree

# document array of the three-document fixture
DOC_ARRAY = [0, 2, 1, 3, 2, 1, 3, 3, 3, 1, 2, 1, 3, 2]


def test_fixture_shape():
    wt = WaveletTree(DOC_ARRAY, sigma=4)
    assert wt.sigma == 4
    assert wt.height == 2
    assert wt.seq_len == 14
    assert wt.reconstruct() == DOC_ARRAY


def test_fixture_access():
    wt = WaveletTree(DOC_ARRAY, sigma=4)
    assert [wt.access(i) for i in range(len(DOC_ARRAY))] == DOC_ARRAY


def test_root_expansion_of_fixture_locus():
    # positions 4..9 of the document array hold docs {2,1,3,3,3,1}
    wt = WaveletTree(DOC_ARRAY, sigma=4)
    left, right = wt.expand_range(wt.root_range(4, 9))
    assert (left.lo, left.hi) == (2, 3)
    assert (right.lo, right.hi) == (2, 5)
    assert left.node == NodeHandle(1, 0)
    assert right.node == NodeHandle(1, 1)


def test_sym_range():
    wt = WaveletTree(DOC_ARRAY, sigma=4)
    assert wt.sym_range(ROOT) == (0, 3)
    assert wt.sym_range(NodeHandle(1, 0)) == (0, 1)
    assert wt.sym_range(NodeHandle(1, 1)) == (2, 3)
    assert wt.sym_range(NodeHandle(2, 3)) == (3, 3)

    # non-power-of-two alphabet: top end clamps
    wt3 = WaveletTree([0, 1, 2, 0, 2], sigma=3)
    assert wt3.height == 2
    assert wt3.sym_range(NodeHandle(1, 1)) == (2, 2)


def test_expand_preserves_multiset():
    rng = random.Random(99)
    for _ in range(30):
        sigma = rng.randint(2, 9)
        seq = [rng.randrange(sigma) for _ in range(rng.randint(1, 120))]
        wt = WaveletTree(seq, sigma)
        stack = [wt.root_range(0, len(seq) - 1)]
        leaves: dict[int, int] = {}
        while stack:
            cur = stack.pop()
            if cur.size == 0:
                continue
            if cur.node.level == wt.height:
                sym_lo, sym_hi = wt.sym_range(cur.node)
                assert sym_lo == sym_hi
                leaves[sym_lo] = cur.size
                continue
            left, right = wt.expand_range(cur)
            assert left.size + right.size == cur.size
            stack.extend((left, right))
        expected: dict[int, int] = {}
        for s in seq:
            expected[s] = expected.get(s, 0) + 1
        assert leaves == expected


def test_reconstruct_random():
    rng = random.Random(5)
    for _ in range(40):
        sigma = rng.randint(1, 17)
        seq = [rng.randrange(sigma) for _ in range(rng.randint(0, 200))]
        wt = WaveletTree(seq, sigma)
        assert wt.reconstruct() == seq


def test_single_symbol_alphabet():
    wt = WaveletTree([0, 0, 0], sigma=1)
    assert wt.height == 0
    assert wt.reconstruct() == [0, 0, 0]
    assert wt.sym_range(ROOT) == (0, 0)


def test_empty_range_expansion():
    wt = WaveletTree(DOC_ARRAY, sigma=4)
    left, right = wt.expand_range(wt.root_range(0, -1))
    assert left.size == 0 and right.size == 0


def test_out_of_span_range_rejected():
    wt = WaveletTree(DOC_ARRAY, sigma=4)
    with pytest.raises(ValueError):
        wt.expand_range(wt.root_range(0, len(DOC_ARRAY)))


def test_serialization_round_trip():
    rng = random.Random(11)
    for _ in range(10):
        sigma = rng.randint(2, 12)
        seq = [rng.randrange(sigma) for _ in range(rng.randint(1, 150))]
        wt = WaveletTree(seq, sigma)
        blob = wt.to_bytes()
        back, consumed = WaveletTree.from_bytes(blob)
        assert consumed == len(blob)
        assert back.sigma == wt.sigma
        assert back.height == wt.height
        assert back.reconstruct() == seq
        assert back.to_bytes() == blob


def test_height_zero_tree_is_not_serializable():
    wt = WaveletTree([0, 0], sigma=1)
    with pytest.raises(ValueError):
        wt.to_bytes()
