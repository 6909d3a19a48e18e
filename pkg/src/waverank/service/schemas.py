"""Request and response models for the retrieval service."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field

Variant = Literal["d", "dr", "d1r1"]
Mode = Literal["or", "and"]
Measure = Literal["bm25", "tfidf", "lmds"]
Estimator = Literal["e0", "e1", "e2"]


class MeasureOptions(BaseModel):
    k1: float = 1.2
    b: float = 0.75
    mu: float = 2500.0


class BuildRequest(BaseModel):
    input_path: str
    output_dir: str
    variant: Variant = "dr"


class ComponentInfo(BaseModel):
    tag: str
    file: str
    bytes: int


class CollectionInfo(BaseModel):
    documents: int
    symbols: int
    alphabet: int
    avg_doc_len: float


class BuildResponse(BaseModel):
    variant: Variant
    output_dir: str
    components: list[ComponentInfo]
    collection: CollectionInfo


class QueryItem(BaseModel):
    qid: str
    body: str


class QueryRequest(BaseModel):
    index_dir: str
    queries: list[QueryItem] = Field(min_length=1)
    k: int = Field(default=10, ge=1)
    mode: Mode = "or"
    measure: Measure = "bm25"
    estimator: Estimator = "e1"
    options: MeasureOptions = MeasureOptions()
    mwe: bool = False
    mwe_threshold: float = 10.0


class RankedDoc(BaseModel):
    name: str
    score: float


class QueryResult(BaseModel):
    qid: str
    body: str  # body actually evaluated (rewritten when mwe is on)
    docs: list[RankedDoc]


class QueryResponse(BaseModel):
    results: list[QueryResult]


class BenchRequest(BaseModel):
    index_dir: str
    queries: list[QueryItem] = Field(min_length=1)
    ks: list[int] = Field(default=[10], min_length=1)
    mode: Mode = "or"
    measure: Measure = "bm25"
    estimators: list[Estimator] = Field(default=["e0", "e1", "e2"], min_length=1)
    options: MeasureOptions = MeasureOptions()


class BenchRow(BaseModel):
    qid: str
    k: int
    mode: Mode
    measure: Measure
    estimator: Estimator
    states: int
    exhaustive_states: int
    percent: float
    elapsed_us: int


class BenchResponse(BaseModel):
    rows: list[BenchRow]


class ComponentStat(BaseModel):
    tag: str
    file: str
    bytes: int
    ratio: float  # component size over the packed token-stream size


class StatsResponse(BaseModel):
    variant: Variant
    documents: int
    symbols: int
    token_stream_bytes: int
    total_bytes: int
    components: list[ComponentStat]


class MweParseRequest(BaseModel):
    index_dir: str
    query: str
    threshold: float = 10.0


class MweParseResponse(BaseModel):
    elements: list[list[str]]
    parsed: str


class HealthResponse(BaseModel):
    status: str
    version: str
