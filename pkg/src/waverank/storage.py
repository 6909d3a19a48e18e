"""On-disk index layout: tagged binary components plus a text manifest.

Every component file starts with a four-byte tag and a version byte; integer
fields are little-endian. The manifest lists each component with its exact
byte length and carries a 64-bit fingerprint of the token sequence; loading
verifies format version, component sizes, tags, and fingerprint before any
query runs.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bits import BitVector
from .corpus import Collection, relabel_by_length, SENTINEL, TERMINATOR, Vocabulary
from .docrep import RepetitionIndex, RestrictedIndex
from .index import SearchIndex
from .wavelet import WaveletTree

FORMAT = 1
MANIFEST_NAME = "index.manifest"

TAG_COLLECTION = b"SRFC"
TAG_VOCAB = b"SRFV"
TAG_NAMES = b"SRFN"
TAG_SA = b"SRFA"
TAG_LCP = b"SRFL"
TAG_DOCTREE = b"SRFD"
TAG_H = b"SRFH"
TAG_REP = b"SRFR"
TAG_RESTRICTED = b"SRF1"

_FILES = {
    TAG_COLLECTION: "collection.bin",
    TAG_VOCAB: "vocab.bin",
    TAG_NAMES: "names.bin",
    TAG_SA: "sa.bin",
    TAG_LCP: "lcp.bin",
    TAG_DOCTREE: "docarray.wt",
    TAG_H: "hbits.bin",
    TAG_REP: "repetitions.wt",
    TAG_RESTRICTED: "restricted.wt",
}

_VERSION = 1


class IndexFormatError(Exception):
    """Stored index is missing, incomplete, or corrupt."""


def fnv1a64(data: bytes) -> int:
    h = 0xCBF29CE484222325
    for byte in data:
        h ^= byte
        h = (h * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
    return h


def _token_bytes(collection: Collection) -> bytes:
    return np.asarray(collection.tokens, dtype="<u4").tobytes()


def fingerprint(collection: Collection) -> str:
    return f"{fnv1a64(_token_bytes(collection)):016x}"


def _frame(tag: bytes, payload: bytes) -> bytes:
    return tag + bytes([_VERSION]) + payload


def _unframe(tag: bytes, data: bytes) -> bytes:
    if data[:4] != tag:
        raise IndexFormatError(f"component tag mismatch, expected {tag.decode()}")
    if data[4] != _VERSION:
        raise IndexFormatError("unsupported component version")
    return data[5:]


# -- component payloads ------------------------------------------------------


def _collection_payload(collection: Collection) -> bytes:
    head = struct.pack("<IQI", collection.N, collection.stats.n, collection.stats.sigma)
    return head + _token_bytes(collection)


def _parse_collection(payload: bytes, vocab: Vocabulary, names: list[str]) -> Collection:
    N, n, sigma = struct.unpack_from("<IQI", payload, 0)
    tokens = np.frombuffer(payload[16:], dtype="<u4")
    if tokens.size != n:
        raise IndexFormatError("token payload length mismatch")
    toks = [int(t) for t in tokens]
    if sigma != (max(toks) if toks else 0) or len(vocab) != sigma + 1:
        raise IndexFormatError("alphabet header disagrees with payload")
    slot_lengths = []
    count = 0
    for t in toks:
        count += 1
        if t == TERMINATOR:
            slot_lengths.append(count)
            count = 0
    if count != 1 or toks[-1] != SENTINEL:
        raise IndexFormatError("token sequence lacks its sentinel")
    slot_lengths.append(1)
    if len(slot_lengths) != N:
        raise IndexFormatError("document count disagrees with token sequence")
    pi, lengths = relabel_by_length(slot_lengths)
    slot_start = []
    pos = 0
    for ln in slot_lengths:
        slot_start.append(pos)
        pos += ln
    return Collection(toks, pi, slot_start, lengths, names, vocab)


def _strings_payload(strings: list[str]) -> bytes:
    parts = [struct.pack("<I", len(strings))]
    for s in strings:
        raw = s.encode("utf-8")
        parts.append(struct.pack("<I", len(raw)))
        parts.append(raw)
    return b"".join(parts)


def _parse_strings(payload: bytes) -> list[str]:
    (count,) = struct.unpack_from("<I", payload, 0)
    off = 4
    out = []
    for _ in range(count):
        (ln,) = struct.unpack_from("<I", payload, off)
        off += 4
        out.append(payload[off : off + ln].decode("utf-8"))
        off += ln
    if off != len(payload):
        raise IndexFormatError("trailing bytes after string table")
    return out


def _sa_payload(sa: np.ndarray) -> bytes:
    return struct.pack("<Q", sa.size) + np.asarray(sa, dtype="<i8").tobytes()


def _parse_sa(payload: bytes) -> np.ndarray:
    (n,) = struct.unpack_from("<Q", payload, 0)
    arr = np.frombuffer(payload[8:], dtype="<i8")
    if arr.size != n:
        raise IndexFormatError("suffix array length mismatch")
    return arr.astype(np.int64)


def _lcp_payload(lcp: np.ndarray) -> bytes:
    return struct.pack("<Q", lcp.size) + np.asarray(lcp, dtype="<u4").tobytes()


def _parse_lcp(payload: bytes) -> np.ndarray:
    (n,) = struct.unpack_from("<Q", payload, 0)
    arr = np.frombuffer(payload[8:], dtype="<u4")
    if arr.size != n:
        raise IndexFormatError("lcp array length mismatch")
    return arr.astype(np.int64)


def _rep_payload(rep: RepetitionIndex) -> bytes:
    return rep.keep.to_bytes() + rep.rep_tree.to_bytes()


def _parse_rep(payload: bytes, h: BitVector) -> RepetitionIndex:
    keep, off = BitVector.from_bytes(payload, 0)
    tree, off = WaveletTree.from_bytes(payload, off)
    if off != len(payload):
        raise IndexFormatError("trailing bytes after repetition tree")
    return RepetitionIndex(H=h, keep=keep, rep_tree=tree)


def _restricted_payload(res: RestrictedIndex) -> bytes:
    head = struct.pack("<I", len(res.offsets))
    offs = np.asarray(res.offsets, dtype="<u8").tobytes()
    return head + offs + res.keep.to_bytes() + res.d1_tree.to_bytes() + res.r1_tree.to_bytes()


def _parse_restricted(payload: bytes) -> RestrictedIndex:
    (count,) = struct.unpack_from("<I", payload, 0)
    off = 4
    offsets = np.frombuffer(payload[off : off + 8 * count], dtype="<u8").astype(np.int64).tolist()
    off += 8 * count
    keep, off = BitVector.from_bytes(payload, off)
    d1, off = WaveletTree.from_bytes(payload, off)
    r1, off = WaveletTree.from_bytes(payload, off)
    if off != len(payload):
        raise IndexFormatError("trailing bytes after restricted trees")
    return RestrictedIndex(offsets=offsets, d1_tree=d1, r1_tree=r1, keep=keep)


# -- manifest ----------------------------------------------------------------


@dataclass
class Manifest:
    variant: str
    fingerprint: str
    components: list[tuple[str, str, int]]  # (tag, file name, byte length)

    def text(self) -> str:
        lines = [f"format={FORMAT}", f"variant={self.variant}", f"fingerprint={self.fingerprint}"]
        lines += [f"component={tag}:{name}:{size}" for tag, name, size in self.components]
        return "\n".join(lines) + "\n"


def parse_manifest(text: str) -> Manifest:
    fields: dict[str, str] = {}
    components = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if "=" not in line:
            raise IndexFormatError(f"malformed manifest line: {line!r}")
        key, value = line.split("=", 1)
        if key == "component":
            parts = value.split(":")
            if len(parts) != 3 or not parts[2].isdigit():
                raise IndexFormatError(f"malformed component entry: {value!r}")
            components.append((parts[0], parts[1], int(parts[2])))
        else:
            fields[key] = value
    if fields.get("format") != str(FORMAT):
        raise IndexFormatError("unsupported or missing manifest format")
    if "variant" not in fields or "fingerprint" not in fields:
        raise IndexFormatError("manifest missing variant or fingerprint")
    if fields["variant"] not in ("d", "dr", "d1r1"):
        raise IndexFormatError(f"unknown variant {fields['variant']!r}")
    return Manifest(fields["variant"], fields["fingerprint"], components)


def _required_tags(variant: str) -> list[bytes]:
    base = [TAG_COLLECTION, TAG_VOCAB, TAG_NAMES, TAG_SA, TAG_H]
    if variant == "d":
        return base + [TAG_DOCTREE]
    if variant == "dr":
        return base + [TAG_LCP, TAG_DOCTREE, TAG_REP]
    return base + [TAG_LCP, TAG_RESTRICTED]


def save_index(index: SearchIndex, out_dir: str | Path) -> Manifest:
    """Write every component of the index's variant plus the manifest."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    payloads: dict[bytes, bytes] = {
        TAG_COLLECTION: _collection_payload(index.collection),
        TAG_VOCAB: _strings_payload(index.collection.vocab._tokens),
        TAG_NAMES: _strings_payload(index.collection.names),
        TAG_SA: _sa_payload(index.sa),
        TAG_H: index.h.to_bytes(),
    }
    if index.variant in ("dr", "d1r1"):
        if index.lcp is None:
            raise ValueError("repetition-bearing variants persist the lcp array")
        payloads[TAG_LCP] = _lcp_payload(index.lcp)
    if index.variant in ("d", "dr"):
        payloads[TAG_DOCTREE] = index.doc_tree.to_bytes()
    if index.variant == "dr":
        payloads[TAG_REP] = _rep_payload(index.rep)
    if index.variant == "d1r1":
        payloads[TAG_RESTRICTED] = _restricted_payload(index.restricted)

    components = []
    for tag in _required_tags(index.variant):
        name = _FILES[tag]
        blob = _frame(tag, payloads[tag])
        (out / name).write_bytes(blob)
        components.append((tag.decode(), name, len(blob)))
    manifest = Manifest(index.variant, fingerprint(index.collection), components)
    (out / MANIFEST_NAME).write_text(manifest.text())
    return manifest


def load_manifest(in_dir: str | Path) -> Manifest:
    path = Path(in_dir) / MANIFEST_NAME
    if not path.is_file():
        raise IndexFormatError(f"no manifest under {in_dir}")
    manifest = parse_manifest(path.read_text())
    expected = {t.decode() for t in _required_tags(manifest.variant)}
    listed = {tag for tag, _, _ in manifest.components}
    if listed != expected:
        raise IndexFormatError("manifest component set does not match its variant")
    for tag, name, size in manifest.components:
        f = Path(in_dir) / name
        if not f.is_file():
            raise IndexFormatError(f"missing component file {name}")
        if f.stat().st_size != size:
            raise IndexFormatError(f"component {name} has unexpected size")
    return manifest


def load_index(in_dir: str | Path) -> SearchIndex:
    """Load and verify a stored index; raises IndexFormatError on any defect."""
    in_dir = Path(in_dir)
    manifest = load_manifest(in_dir)
    raw: dict[str, bytes] = {}
    for tag, name, _ in manifest.components:
        raw[tag] = _unframe(tag.encode(), (in_dir / name).read_bytes())
    try:
        return _assemble(manifest, raw)
    except (ValueError, IndexError, KeyError, struct.error, UnicodeDecodeError) as exc:
        raise IndexFormatError(f"corrupt index component: {exc}") from exc


def _assemble(manifest: Manifest, raw: dict[str, bytes]) -> SearchIndex:
    vocab = Vocabulary()
    tokens_list = _parse_strings(raw[TAG_VOCAB.decode()])
    if len(tokens_list) < 2 or tokens_list[0] != "$" or tokens_list[1] != "#":
        raise IndexFormatError("vocabulary lacks its reserved markers")
    for t in tokens_list[2:]:
        vocab.add(t)
    names = _parse_strings(raw[TAG_NAMES.decode()])
    collection = _parse_collection(raw[TAG_COLLECTION.decode()], vocab, names)
    if fingerprint(collection) != manifest.fingerprint:
        raise IndexFormatError("collection fingerprint mismatch")
    if len(names) != collection.N:
        raise IndexFormatError("one name per document required")

    sa = _parse_sa(raw[TAG_SA.decode()])
    if sa.size != collection.stats.n:
        raise IndexFormatError("suffix array does not cover the collection")
    h, hend = BitVector.from_bytes(raw[TAG_H.decode()], 0)
    if hend != len(raw[TAG_H.decode()]) or h.ones != collection.stats.n:
        raise IndexFormatError("distinct-count bitvector malformed")

    index = SearchIndex(collection=collection, sa=sa, h=h, variant=manifest.variant)
    if TAG_LCP.decode() in raw:
        index.lcp = _parse_lcp(raw[TAG_LCP.decode()])
    if manifest.variant in ("d", "dr"):
        tree, end = WaveletTree.from_bytes(raw[TAG_DOCTREE.decode()], 0)
        if end != len(raw[TAG_DOCTREE.decode()]) or tree.seq_len != collection.stats.n:
            raise IndexFormatError("document tree malformed")
        if tree.sigma != collection.N:
            raise IndexFormatError("document tree alphabet mismatch")
        index.doc_tree = tree
    if manifest.variant == "dr":
        index.rep = _parse_rep(raw[TAG_REP.decode()], h)
        if index.rep.keep.length != h.length - h.ones:
            raise IndexFormatError("pruning bitvector does not cover the repetitions")
        if index.rep.rep_tree.seq_len != index.rep.keep.ones:
            raise IndexFormatError("repetition tree does not match its pruning map")
    if manifest.variant == "d1r1":
        res = _parse_restricted(raw[TAG_RESTRICTED.decode()])
        if len(res.offsets) != collection.stats.sigma + 2:
            raise IndexFormatError("restricted offsets do not cover the alphabet")
        if res.keep.length != h.length - h.ones or res.r1_tree.seq_len != res.keep.ones:
            raise IndexFormatError("restricted trees do not match the repetitions")
        index.restricted = res
    return index
