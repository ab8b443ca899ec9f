"""Stateless HTTP service.

Every endpoint takes the puzzle document in the request body, runs an
independent solve, and answers with exactly the bytes the CLI would print,
so the two surfaces cannot drift apart.  400 marks malformed documents,
422 rule-level rejections such as constrained edges on the boundary.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import PlainTextResponse, Response

from .documents import DocumentError, dump_json, load_tiling, parse_document
from . import ops

RULE_CODES = {"edge_on_boundary", "edge_outside", "infinite_region", "finite_region", "tiling_mismatch"}


def _error_response(exc: DocumentError) -> Response:
    status = 422 if exc.code in RULE_CODES else 400
    return Response(dump_json(exc.to_json()), status_code=status, media_type="application/json")


def _json_response(payload: dict) -> Response:
    return Response(dump_json(payload), media_type="application/json")


async def _document_from(request: Request):
    try:
        body = await request.json()
    except Exception as exc:
        raise DocumentError("bad_json", f"request body is not JSON: {exc}", "$") from exc
    if not isinstance(body, dict):
        raise DocumentError("bad_document", "request body must be an object", "$")
    doc = parse_document(body.get("document", body))
    doc.validate()
    return doc, body


def create_app() -> FastAPI:
    app = FastAPI(title="calissons", docs_url=None, redoc_url=None)

    @app.exception_handler(DocumentError)
    async def handle_document_error(request, exc):
        return _error_response(exc)

    @app.post("/solve")
    async def solve(request: Request):
        doc, body = await _document_from(request)
        method = body.get("method", "advancing")
        which = body.get("which", "lowest")
        return _json_response(ops.op_solve(doc, method, which))

    @app.post("/decide")
    async def decide(request: Request):
        doc, _ = await _document_from(request)
        return _json_response(ops.op_decide(doc))

    @app.post("/check")
    async def check_endpoint(request: Request):
        doc, body = await _document_from(request)
        if "tiling" not in body:
            raise DocumentError("bad_tiling", "check needs a tiling field", "tiling")
        import json as _json

        tiling = load_tiling(_json.dumps(body["tiling"]), doc.region())
        return _json_response(ops.op_check(doc, tiling))

    @app.post("/extremes")
    async def extremes(request: Request):
        doc, _ = await _document_from(request)
        return _json_response(ops.op_extremes(doc))

    @app.post("/render")
    async def render(request: Request):
        doc, body = await _document_from(request)
        tiling = None
        if body.get("tiling") is not None:
            import json as _json

            tiling = load_tiling(_json.dumps(body["tiling"]), doc.region())
        fmt = body.get("format", "svg")
        text = ops.op_render(doc, tiling, fmt)
        media = "image/svg+xml" if fmt == "svg" else "text/plain"
        return PlainTextResponse(text, media_type=media)

    @app.post("/enumerate")
    async def enumerate_endpoint(request: Request):
        doc, body = await _document_from(request)
        limit = body.get("limit")
        return _json_response(ops.op_enumerate(doc, limit))

    return app
