"""HTTP service exposing index building, querying, benchmarks, and stats.

Indexes are loaded from disk on first use and cached per directory; the
cache key includes the manifest's identity so a rebuilt index is reloaded.
Errors carry an exit_code field (1 for input or format problems, 2 for
incompatible option combinations) that the command-line client passes
through.
"""

from __future__ import annotations

import os
from collections import OrderedDict
from pathlib import Path
from threading import Lock

from fastapi import FastAPI, HTTPException, Query

from .. import __version__, engine, mwe, queries, storage
from ..corpus import ingest_path
from ..engine import ConfigError, SearchConfig
from ..index import build_index
from ..ranking import MeasureParams
from . import schemas

_CACHE_SLOTS = 4


class _IndexCache:
    def __init__(self) -> None:
        self._lock = Lock()
        self._entries: OrderedDict[tuple, object] = OrderedDict()

    def get(self, index_dir: str):
        path = Path(index_dir)
        manifest = path / storage.MANIFEST_NAME
        try:
            st = manifest.stat()
        except OSError:
            raise storage.IndexFormatError(f"no manifest under {index_dir}")
        key = (os.path.realpath(index_dir), st.st_mtime_ns, st.st_size)
        with self._lock:
            if key in self._entries:
                self._entries.move_to_end(key)
                return self._entries[key]
        loaded = storage.load_index(path)
        with self._lock:
            self._entries[key] = loaded
            self._entries.move_to_end(key)
            while len(self._entries) > _CACHE_SLOTS:
                self._entries.popitem(last=False)
        return loaded


def _fail(status: int, message: str, exit_code: int) -> HTTPException:
    return HTTPException(status_code=status, detail={"message": message, "exit_code": exit_code})


def _measure_params(measure: str, options: schemas.MeasureOptions) -> MeasureParams:
    return MeasureParams(kind=measure, k1=options.k1, b=options.b, mu=options.mu)


def _resolve_elements(index, body: str, use_mwe: bool, threshold: float):
    """Parse a body, optionally regroup it, and map words to id tuples."""
    elements = queries.parse_body(body)
    if use_mwe:
        flat = [t for el in elements for t in el]
        elements = mwe.parse_mwe(index, flat, threshold)
        body = mwe.format_elements(elements)
    id_elements = [index.collection.element_ids(el) for el in elements]
    return body, id_elements


def create_app() -> FastAPI:
    app = FastAPI(title="waverank", version=__version__)
    cache = _IndexCache()

    def _load(index_dir: str):
        try:
            return cache.get(index_dir)
        except storage.IndexFormatError as exc:
            raise _fail(400, str(exc), 1)

    @app.get("/healthz", response_model=schemas.HealthResponse)
    def healthz() -> schemas.HealthResponse:
        return schemas.HealthResponse(status="ok", version=__version__)

    @app.post("/build", response_model=schemas.BuildResponse)
    def build(req: schemas.BuildRequest) -> schemas.BuildResponse:
        try:
            collection = ingest_path(req.input_path)
        except (OSError, ValueError) as exc:
            raise _fail(400, f"cannot ingest {req.input_path}: {exc}", 1)
        index = build_index(collection, req.variant)
        try:
            manifest = storage.save_index(index, req.output_dir)
        except OSError as exc:
            raise _fail(400, f"cannot write index: {exc}", 1)
        stats = collection.stats
        return schemas.BuildResponse(
            variant=req.variant,
            output_dir=req.output_dir,
            components=[
                schemas.ComponentInfo(tag=tag, file=name, bytes=size)
                for tag, name, size in manifest.components
            ],
            collection=schemas.CollectionInfo(
                documents=stats.N, symbols=stats.n, alphabet=stats.sigma + 1, avg_doc_len=stats.n_avg
            ),
        )

    @app.post("/query", response_model=schemas.QueryResponse)
    def query(req: schemas.QueryRequest) -> schemas.QueryResponse:
        index = _load(req.index_dir)
        params = _measure_params(req.measure, req.options)
        try:
            config = SearchConfig(
                k=req.k, mode=req.mode, measure=params, estimator=req.estimator, variant=index.variant
            )
        except ConfigError as exc:
            raise _fail(400, str(exc), 2)
        results = []
        for item in req.queries:
            try:
                body, id_elements = _resolve_elements(index, item.body, req.mwe, req.mwe_threshold)
                ranked, _ = engine.top_k(index, config, id_elements)
            except ConfigError as exc:
                raise _fail(400, f"query {item.qid}: {exc}", 2)
            except ValueError as exc:
                raise _fail(400, f"query {item.qid}: {exc}", 1)
            docs = [
                schemas.RankedDoc(name=index.collection.names[doc], score=score)
                for doc, score in ranked
            ]
            results.append(schemas.QueryResult(qid=item.qid, body=body, docs=docs))
        return schemas.QueryResponse(results=results)

    @app.post("/bench", response_model=schemas.BenchResponse)
    def bench(req: schemas.BenchRequest) -> schemas.BenchResponse:
        index = _load(req.index_dir)
        params = _measure_params(req.measure, req.options)
        rows = []
        for item in req.queries:
            try:
                _, id_elements = _resolve_elements(index, item.body, False, 0.0)
            except ValueError as exc:
                raise _fail(400, f"query {item.qid}: {exc}", 1)
            denominator: int | None = None
            for estimator in req.estimators:
                try:
                    probe = SearchConfig(
                        k=1, mode=req.mode, measure=params, estimator=estimator, variant=index.variant
                    )
                except ConfigError as exc:
                    raise _fail(400, str(exc), 2)
                if denominator is None:
                    try:
                        denominator = engine.exhaustive_states(index, probe, id_elements)
                    except ConfigError as exc:
                        raise _fail(400, f"query {item.qid}: {exc}", 2)
                for k in req.ks:
                    config = SearchConfig(
                        k=k, mode=req.mode, measure=params, estimator=estimator, variant=index.variant
                    )
                    try:
                        _, tstats = engine.top_k(index, config, id_elements)
                    except ConfigError as exc:
                        raise _fail(400, f"query {item.qid}: {exc}", 2)
                    percent = 100.0 * tstats.states_processed / denominator if denominator else 0.0
                    rows.append(
                        schemas.BenchRow(
                            qid=item.qid,
                            k=k,
                            mode=req.mode,
                            measure=req.measure,
                            estimator=estimator,
                            states=tstats.states_processed,
                            exhaustive_states=denominator,
                            percent=percent,
                            elapsed_us=tstats.elapsed_us,
                        )
                    )
        return schemas.BenchResponse(rows=rows)

    @app.get("/stats", response_model=schemas.StatsResponse)
    def stats(index_dir: str = Query(...)) -> schemas.StatsResponse:
        try:
            manifest = storage.load_manifest(index_dir)
        except storage.IndexFormatError as exc:
            raise _fail(400, str(exc), 1)
        index = _load(index_dir)
        cstats = index.collection.stats
        # packed token stream: n symbols at the narrowest whole-bit width
        bits = max(1, cstats.sigma.bit_length())
        raw_bytes = (cstats.n * bits + 7) // 8
        components = [
            schemas.ComponentStat(tag=tag, file=name, bytes=size, ratio=size / raw_bytes)
            for tag, name, size in manifest.components
        ]
        return schemas.StatsResponse(
            variant=manifest.variant,
            documents=cstats.N,
            symbols=cstats.n,
            token_stream_bytes=raw_bytes,
            total_bytes=sum(c.bytes for c in components),
            components=components,
        )

    @app.post("/mwe/parse", response_model=schemas.MweParseResponse)
    def mwe_parse(req: schemas.MweParseRequest) -> schemas.MweParseResponse:
        index = _load(req.index_dir)
        try:
            flat = [t for el in queries.parse_body(req.query) for t in el]
            elements = mwe.parse_mwe(index, flat, req.threshold)
        except ValueError as exc:
            raise _fail(400, str(exc), 1)
        return schemas.MweParseResponse(elements=elements, parsed=mwe.format_elements(elements))

    return app


app = create_app()
