from __future__ import annotations

import pytest

from waverank.queries import RUN_TAG, parse_body, parse_query_file, run_lines


def test_parse_body_terms_and_phrases():
    assert parse_body("alpha beta") == [["alpha"], ["beta"]]
    assert parse_body('alpha "beta gamma" delta') == [
        ["alpha"],
        ["beta", "gamma"],
        ["delta"],
    ]
    assert parse_body('"one two"') == [["one", "two"]]


def test_parse_body_rejects_empty():
    with pytest.raises(ValueError):
        parse_body("")
    with pytest.raises(ValueError):
        parse_body("   ")


def test_parse_query_file():
    text = "q1\tLA O\nq2\t\"O LA\" LA\n"
    assert parse_query_file(text) == [("q1", "LA O"), ("q2", '"O LA" LA')]


def test_parse_query_file_rejects_duplicates_and_garbage():
    with pytest.raises(ValueError):
        parse_query_file("q1\tfoo\nq1\tbar\n")
    with pytest.raises(ValueError):
        parse_query_file("no-tab-here\n")


def test_run_lines_format():
    lines = run_lines("q7", [("doc9", 1.25), ("doc2", 0.5)])
    assert lines == [
        f"q7 Q0 doc9 1 1.250000 {RUN_TAG}",
        f"q7 Q0 doc2 2 0.500000 {RUN_TAG}",
    ]
    assert run_lines("qx", []) == []
