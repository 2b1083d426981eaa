"""
Local JSON query endpoint.

GET /search?q=...&k=...  -> JSON array of result objects
GET /health              -> build manifest
"""

import json
from typing import Optional

from flask import Flask, Response, request
from werkzeug.serving import make_server

from semsearch.config import settings
from semsearch.core.exceptions import InvalidQueryError
from semsearch.core.logger import get_logger
from semsearch.engines.query import LoadedEngine

logger = get_logger("server")


def _json_response(payload: object, status: int = 200) -> Response:
    return Response(
        json.dumps(payload, ensure_ascii=False),
        status=status,
        mimetype="application/json",
    )


def create_app(loaded: LoadedEngine) -> Flask:
    app = Flask("semsearch")

    @app.route("/search", methods=["GET"])
    def search() -> Response:
        querystring = request.args.get("q", "")
        raw_k = request.args.get("k")
        k: Optional[int] = None
        if raw_k is not None:
            try:
                k = int(raw_k)
            except ValueError:
                message = f"k must be an integer, got {raw_k!r}"
                return _json_response({"error": message}, 400)
            if k < 1:
                return _json_response({"error": f"k must be >= 1, got {k}"}, 400)

        try:
            results = loaded.engine.search(querystring, k)
        except InvalidQueryError as e:
            return _json_response({"error": e.message}, 400)
        return _json_response([entry.to_dict() for entry in results])

    @app.route("/health", methods=["GET"])
    def health() -> Response:
        return _json_response(loaded.health())

    return app


def serve(
    loaded: LoadedEngine, host: Optional[str] = None, port: Optional[int] = None
) -> None:
    """Serve until interrupted; requests are handled on threads over read-only indexes.

    Raises:
        OSError: the address cannot be bound (for example, port in use)
    """
    host = host or settings.get("server.host", "127.0.0.1")
    port = port if port is not None else int(settings.get("server.port", 8765))
    try:
        server = make_server(host, port, create_app(loaded), threaded=True)
    except SystemExit as e:
        # werkzeug reports a failed bind and exits instead of raising
        raise OSError(f"cannot bind {host}:{port}") from e
    logger.info(f"Serving {loaded.artifact_dir} on http://{host}:{server.port}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        logger.info("Server stopped")
    finally:
        server.server_close()
