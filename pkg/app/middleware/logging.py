"""
Request logging middleware

Binds a request ID, method and path to every log line emitted while a
request is handled, logs completion with the elapsed time, and returns the
ID in the X-Request-ID header. Experiment runs triggered by the request
add their (dataset, algorithm) cell on top of this context.
"""

import time
import uuid
from typing import Callable

from fastapi import Request, Response
from starlette.middleware.base import BaseHTTPMiddleware

from app.core.logging import bind_request_context, clear_request_context, get_logger


class LoggingMiddleware(BaseHTTPMiddleware):
    """Per-request structured logging context."""

    async def dispatch(self, request: Request, call_next: Callable) -> Response:
        logger = get_logger(__name__)
        request_id = f"req_{uuid.uuid4().hex[:8]}"
        bind_request_context(request_id, request.method, request.url.path)
        started = time.perf_counter()
        try:
            response = await call_next(request)
        except Exception as exc:
            logger.error(
                "Request failed",
                exception_type=type(exc).__name__,
                elapsed_ms=round((time.perf_counter() - started) * 1000, 2),
                exc_info=True,
            )
            raise
        else:
            logger.info(
                "Request completed",
                status_code=response.status_code,
                elapsed_ms=round((time.perf_counter() - started) * 1000, 2),
            )
            response.headers["X-Request-ID"] = request_id
            return response
        finally:
            clear_request_context()
