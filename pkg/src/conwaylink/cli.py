"""Command-line surface; a thin client over the HTTP service.

By default each invocation talks to the service in-process, so no
server needs to run.  With --server URL the same requests go over the
wire to a remote instance instead.

Exit codes: 0 success / all match; 1 mismatch, failed axiom, or fuzz
counterexample; 2 usage or parse error.
"""

from __future__ import annotations

import functools
import json
import os
import sys

import click

ENV_CATALOG = "CONWAYLINK_CATALOG"
_USAGE_STATUSES = (400, 404, 422)


def _request(server: str | None, method: str, path: str, body: dict | None):
    if server:
        import httpx

        with httpx.Client(base_url=server, timeout=300.0) as client:
            response = client.request(method, path, json=body)
            return response.status_code, response.json()
    from starlette.testclient import TestClient

    from .service import create_app

    with TestClient(create_app()) as client:
        response = client.request(method, path, json=body)
        return response.status_code, response.json()


def _call(server: str | None, path: str, body: dict) -> dict:
    """POST, exiting with the mapped code when the service refuses."""
    status, data = _request(server, "POST", path, body)
    if status != 200:
        message = data.get("error") if isinstance(data, dict) else str(data)
        click.echo(f"error: {message}", err=True)
        sys.exit(2 if status in _USAGE_STATUSES else 1)
    return data


def _emit(envelope: dict, fmt: str, text_lines: list[str], latex: str | None = None):
    if fmt == "structured":
        elapsed = envelope.get("elapsedMs")
        envelope = dict(envelope, elapsedMs=None)
        click.echo(json.dumps(envelope, indent=2, sort_keys=True))
        if elapsed is not None:
            click.echo(f"elapsed: {elapsed} ms", err=True)
    elif fmt == "latex":
        click.echo(latex if latex is not None else "\n".join(text_lines))
    else:
        for line in text_lines:
            click.echo(line)


def _diagram_body(name: str | None, pd: str | None, free_loops: int, catalog: str | None) -> dict:
    if (name is None) == (pd is None):
        raise click.UsageError("give exactly one of NAME or --pd")
    body: dict = {"freeLoops": free_loops}
    if pd is not None:
        body["pd"] = pd
    else:
        body["name"] = name
    resolved = _catalog_arg(catalog)
    if resolved:
        body["catalog"] = resolved
    return body


def _catalog_arg(value: str | None) -> str | None:
    value = value or os.environ.get(ENV_CATALOG)
    # the bundled fixture set answers to its conventional names
    if value in (None, "", "fixtures", "bundled"):
        return None
    return value


def _common(f):
    options = [
        click.option("--server", default=None, metavar="URL",
                     help="Remote service URL (default: in-process)."),
        click.option("--format", "fmt", default="text",
                     type=click.Choice(["text", "structured", "latex"]),
                     help="Output form."),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def _diagram_args(f):
    options = [
        click.argument("name", required=False),
        click.option("--pd", default=None, metavar="TEXT",
                     help="PD code, e.g. \"X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)\"."),
        click.option("--free-loops", default=0, show_default=True,
                     help="Extra crossing-free components."),
        click.option("--catalog", default=None, metavar="PATH",
                     help=f"Catalog file for NAME lookups (or ${ENV_CATALOG})."),
    ]
    for option in reversed(options):
        f = option(f)
    return f


@click.group()
def main():
    """Skein-relation link invariants over generalized Conway algebras."""


@main.command()
@_diagram_args
@click.option("--algebra", default="generic", show_default=True,
              help="generic, homflypt-style, homflypt, or radical:k=K.")
@click.option("--trace", default=None, type=int, metavar="DEPTH",
              help="Include the skein tree to this depth.")
@click.option("--memo/--no-memo", default=False, help="Memoize skein states.")
@click.option("--parallel/--no-parallel", default=False,
              help="Evaluate top-level branches on separate threads.")
@click.option("--reverse", multiple=True, type=int, metavar="I",
              help="Reverse component I before computing (repeatable).")
@click.option("--mirror", is_flag=True, help="Mirror the diagram first.")
@_common
def compute(name, pd, free_loops, catalog, algebra, trace, memo, parallel,
            reverse, mirror, fmt, server):
    """Invariant of one diagram (PD text or catalog NAME)."""
    body = _diagram_body(name, pd, free_loops, catalog)
    body.update({
        "algebra": algebra,
        "memoize": memo,
        "parallel": parallel,
        "reverse": list(reverse),
        "mirror": mirror,
    })
    if trace is not None:
        body["traceDepth"] = trace
    envelope = _call(server, "/compute", body)
    payload = envelope["payload"]
    lines = [payload["text"]]
    if "trace" in payload:
        lines.append(payload["trace"])
    _emit(envelope, fmt, lines, latex=payload["latex"])


@main.command()
@click.option("--algebra", default="generic", show_default=True)
@click.option("--n-max", default=10, show_default=True,
              help="Check the unit relation for T_1..T_n.")
@_common
def axioms(algebra, n_max, fmt, server):
    """Check the algebra axioms symbolically."""
    envelope = _call(server, "/axioms", {"algebra": algebra, "nMax": n_max})
    payload = envelope["payload"]
    lines = [
        f"{axiom}: {'ok' if entry['holds'] else 'FAILED ' + entry['detail']}"
        for axiom, entry in payload["axioms"].items()
    ]
    lines.append("all axioms hold" if payload["allHold"] else "AXIOM FAILURE")
    if payload.get("note"):
        lines.append(payload["note"])
    _emit(envelope, fmt, lines)
    sys.exit(0 if payload["allHold"] else 1)


@main.command()
@_diagram_args
@click.option("--algebra", default="generic", show_default=True)
@click.option("--trials", default=50, show_default=True)
@click.option("--seed", default=20260823, show_default=True)
@_common
def fuzz(name, pd, free_loops, catalog, algebra, trials, seed, fmt, server):
    """Re-derive one invariant under randomized choices and moves."""
    body = _diagram_body(name, pd, free_loops, catalog)
    body.update({"algebra": algebra, "trials": trials, "seed": seed})
    envelope = _call(server, "/fuzz", body)
    payload = envelope["payload"]
    lines = [f"seed {envelope['seed']}: {payload['summary']}"]
    for m in payload["mismatches"]:
        lines.append(
            f"trial {m['trial']}: got {m['value']} after {' '.join(m['moves']) or 'no moves'}"
        )
    _emit(envelope, fmt, lines)
    sys.exit(0 if payload["allOk"] else 1)


@main.command()
@click.option("--catalog", default=None, metavar="PATH",
              help=f"Catalog file (default bundled; also ${ENV_CATALOG}).")
@click.option("--algebra", default="generic", show_default=True)
@click.option("--mirror-retry", is_flag=True,
              help="Retry unmatched search rows on the mirror image.")
@_common
def verify(catalog, algebra, mirror_retry, fmt, server):
    """Compare catalog records against their expected values."""
    body = {
        "algebra": algebra,
        "mirrorRetry": mirror_retry,
    }
    resolved = _catalog_arg(catalog)
    if resolved:
        body["catalog"] = resolved
    envelope = _call(server, "/verify", body)
    payload = envelope["payload"]
    lines = list(payload["summary"])
    lines.append("all records match" if payload["allMatch"] else "VERIFY FAILED")
    _emit(envelope, fmt, lines)
    sys.exit(0 if payload["allMatch"] else 1)


@main.command()
@_diagram_args
@click.option("--crossing", default=None, type=int,
              help="Crossing id to difference at (default: every crossing).")
@click.option("--cutoff", default=4, show_default=True,
              help="Series truncation degree.")
@_common
def series(name, pd, free_loops, catalog, crossing, cutoff, fmt, server):
    """Exponential-substitution report for skein differences."""
    body = _diagram_body(name, pd, free_loops, catalog)
    body["cutoff"] = cutoff
    if crossing is not None:
        body["crossing"] = crossing
    envelope = _call(server, "/series", body)
    _emit(envelope, fmt, list(envelope["payload"]["summary"]))


@main.command()
@_diagram_args
@_common
def homflypt(name, pd, free_loops, catalog, fmt, server):
    """Compute generically, collapse the mixed variable, cross-check."""
    body = _diagram_body(name, pd, free_loops, catalog)
    envelope = _call(server, "/homflypt", body)
    payload = envelope["payload"]
    lines = [
        f"generic:   {payload['generic']}",
        f"collapsed: {payload['collapsed']}",
        f"direct:    {payload['direct']}",
        "factorizes: " + ("yes" if payload["factorizes"] else "NO"),
    ]
    _emit(envelope, fmt, lines)
    sys.exit(0 if payload["factorizes"] else 1)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8421, show_default=True)
def serve(host, port):
    """Run the HTTP service standalone."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
