"""Command-line client for the retrieval service.

Every subcommand is a thin HTTP client: by default it mounts the service
in-process, with --server it talks to a running instance instead. File
handling stays on the client side: query files are parsed here, run lines
go to standard output, and benchmark rows are written as CSV.

Exit codes: 1 for input/output and index-format problems, 2 for option
combinations the index cannot serve.
"""

from __future__ import annotations

import csv
import sys
from pathlib import Path

import click
import httpx

from . import __version__, queries


def _client(server: str | None) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=None)
    # mount the service in-process; starlette's TestClient is the sync ASGI
    # bridge for httpx (its httpx-vs-httpx2 packaging warning is noise here)
    import warnings

    with warnings.catch_warnings():
        warnings.filterwarnings("ignore", message=".*httpx2.*")
        from starlette.testclient import TestClient

    from .service.app import app

    return TestClient(app)


def _check(resp: httpx.Response) -> dict:
    if resp.status_code == 200:
        return resp.json()
    try:
        detail = resp.json()["detail"]
        message, code = detail["message"], int(detail.get("exit_code", 1))
    except Exception:
        message, code = resp.text, 1
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _read_queries(path: str) -> list[dict]:
    try:
        pairs = queries.parse_query_file(Path(path).read_text())
    except OSError as exc:
        click.echo(f"error: cannot read queries: {exc}", err=True)
        sys.exit(1)
    except ValueError as exc:
        click.echo(f"error: bad query file: {exc}", err=True)
        sys.exit(1)
    return [{"qid": qid, "body": body} for qid, body in pairs]


measure_option = click.option("--measure", type=click.Choice(["bm25", "tfidf", "lmds"]), default="bm25", show_default=True)
mode_option = click.option("--mode", type=click.Choice(["or", "and"]), default="or", show_default=True)


@click.group()
@click.version_option(__version__)
@click.option("--server", default=None, metavar="URL", help="Talk to a running service instead of in-process.")
@click.pass_context
def main(ctx: click.Context, server: str | None) -> None:
    """Self-indexed top-k document retrieval."""
    ctx.obj = server


@main.command()
@click.option("--input", "input_path", required=True, help="Document file (one per line) or directory (one per file).")
@click.option("--output", "output_dir", required=True, help="Directory receiving the index components.")
@click.option("--variant", type=click.Choice(["d", "dr", "d1r1"]), default="dr", show_default=True)
@click.pass_obj
def build(server: str | None, input_path: str, output_dir: str, variant: str) -> None:
    """Index a corpus and persist it."""
    with _client(server) as client:
        payload = _check(client.post("/build", json={"input_path": input_path, "output_dir": output_dir, "variant": variant}))
    for comp in payload["components"]:
        click.echo(f"{comp['tag']}  {comp['file']:<16} {comp['bytes']} bytes")
    info = payload["collection"]
    click.echo(f"indexed {info['documents']} documents, {info['symbols']} symbols, variant {payload['variant']}")


@main.command()
@click.option("--index", "index_dir", required=True)
@click.option("--queries", "queries_path", required=True, help="File of qid<TAB>body lines.")
@click.option("--k", type=click.IntRange(min=1), default=10, show_default=True)
@mode_option
@measure_option
@click.option("--estimator", type=click.Choice(["e0", "e1", "e2"]), default="e1", show_default=True)
@click.option("--mwe", is_flag=True, help="Regroup query tokens into collocations before searching.")
@click.option("--mwe-threshold", type=float, default=10.0, show_default=True)
@click.pass_obj
def query(server, index_dir, queries_path, k, mode, measure, estimator, mwe, mwe_threshold) -> None:
    """Run queries and print TREC-style run lines."""
    body = {
        "index_dir": index_dir,
        "queries": _read_queries(queries_path),
        "k": k,
        "mode": mode,
        "measure": measure,
        "estimator": estimator,
        "mwe": mwe,
        "mwe_threshold": mwe_threshold,
    }
    with _client(server) as client:
        payload = _check(client.post("/query", json=body))
    for result in payload["results"]:
        ranked = [(doc["name"], doc["score"]) for doc in result["docs"]]
        for line in queries.run_lines(result["qid"], ranked):
            click.echo(line)


@main.command()
@click.option("--index", "index_dir", required=True)
@click.option("--queries", "queries_path", required=True)
@click.option("--k", "ks", default="10", show_default=True, help="Comma-separated result depths.")
@click.option("--csv", "csv_path", required=True, help="Output CSV path.")
@mode_option
@measure_option
@click.option("--estimator", "estimators", default="e0,e1,e2", show_default=True, help="Comma-separated estimators to sweep.")
@click.pass_obj
def bench(server, index_dir, queries_path, ks, csv_path, mode, measure, estimators) -> None:
    """Measure processed traversal states per query against the exhaustive count."""
    try:
        k_list = [int(x) for x in ks.split(",") if x.strip()]
        if not k_list or any(k < 1 for k in k_list):
            raise ValueError
    except ValueError:
        click.echo("error: --k expects positive integers", err=True)
        sys.exit(1)
    est_list = [e.strip() for e in estimators.split(",") if e.strip()]
    for e in est_list:
        if e not in ("e0", "e1", "e2"):
            click.echo(f"error: unknown estimator {e!r}", err=True)
            sys.exit(1)
    body = {
        "index_dir": index_dir,
        "queries": _read_queries(queries_path),
        "ks": k_list,
        "mode": mode,
        "measure": measure,
        "estimators": est_list,
    }
    with _client(server) as client:
        payload = _check(client.post("/bench", json=body))
    try:
        out = open(csv_path, "w", newline="")
    except OSError as exc:
        click.echo(f"error: cannot write CSV: {exc}", err=True)
        sys.exit(1)
    with out:
        writer = csv.writer(out)
        writer.writerow(["qid", "k", "mode", "measure", "estimator", "states", "exhaustive_states", "percent", "elapsed_us"])
        for row in payload["rows"]:
            writer.writerow([
                row["qid"], row["k"], row["mode"], row["measure"], row["estimator"],
                row["states"], row["exhaustive_states"], f"{row['percent']:.6f}", row["elapsed_us"],
            ])
    click.echo(f"wrote {len(payload['rows'])} rows to {csv_path}")


@main.command()
@click.option("--index", "index_dir", required=True)
@click.pass_obj
def stats(server, index_dir) -> None:
    """Print component sizes and their ratio to the packed token stream."""
    with _client(server) as client:
        payload = _check(client.get("/stats", params={"index_dir": index_dir}))
    click.echo(f"variant {payload['variant']}: {payload['documents']} documents, {payload['symbols']} symbols")
    click.echo(f"packed token stream: {payload['token_stream_bytes']} bytes")
    for comp in payload["components"]:
        click.echo(f"{comp['tag']}  {comp['file']:<16} {comp['bytes']:>12} bytes  ratio {comp['ratio']:.3f}")
    click.echo(f"total {payload['total_bytes']} bytes")


@main.command("mwe-parse")
@click.option("--index", "index_dir", required=True)
@click.option("--query", "query_text", required=True)
@click.option("--threshold", type=float, default=10.0, show_default=True)
@click.pass_obj
def mwe_parse(server, index_dir, query_text, threshold) -> None:
    """Group a query into multi-word expressions and print it."""
    with _client(server) as client:
        payload = _check(client.post("/mwe/parse", json={"index_dir": index_dir, "query": query_text, "threshold": threshold}))
    click.echo(payload["parsed"])


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host: str, port: int) -> None:
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("waverank.service.app:app", host=host, port=port)


if __name__ == "__main__":
    main()
