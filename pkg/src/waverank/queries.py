"""Query file and body parsing plus run-file formatting.

A query file holds one query per line: an identifier, one tab, then the
body. Inside a body, whitespace separates elements and double quotes group
a phrase element.
"""

from __future__ import annotations

import re
from typing import Sequence

RUN_TAG = "surf"

_BODY_TOKEN = re.compile(r'"([^"]*)"|(\S+)')


def parse_body(body: str) -> list[list[str]]:
    """Split a query body into elements; quoted spans become phrase elements."""
    elements = []
    for quoted, bare in _BODY_TOKEN.findall(body):
        if bare:
            elements.append([bare])
        else:
            phrase = quoted.split()
            if phrase:
                elements.append(phrase)
    if not elements:
        raise ValueError("query body is empty")
    return elements


def parse_query_file(text: str) -> list[tuple[str, str]]:
    """(qid, body) pairs from query-file text; qids must be unique."""
    out = []
    seen = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        if "\t" not in line:
            raise ValueError(f"line {lineno}: expected 'qid<TAB>body'")
        qid, body = line.split("\t", 1)
        qid = qid.strip()
        if not qid or not body.strip():
            raise ValueError(f"line {lineno}: empty qid or body")
        if qid in seen:
            raise ValueError(f"line {lineno}: duplicate qid {qid!r}")
        seen.add(qid)
        out.append((qid, body.strip()))
    if not out:
        raise ValueError("query file contains no queries")
    return out


def run_lines(qid: str, ranked: Sequence[tuple[str, float]]) -> list[str]:
    """TREC-style run lines: qid Q0 name rank score tag, ranks from 1."""
    return [
        f"{qid} Q0 {name} {rank} {score:.6f} {RUN_TAG}"
        for rank, (name, score) in enumerate(ranked, start=1)
    ]
