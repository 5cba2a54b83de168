"""
Structured logging configuration using structlog

This module provides centralized logging configuration for the toolkit.
Development renders human-readable console lines, production renders JSON.

The command-line harness writes its reports to standard output, so it
configures logging onto standard error. The HTTP API keeps the default
stream (standard output).

Usage:
    from app.core.logging import configure_logging, get_logger

    configure_logging(stream=sys.stderr)

    logger = get_logger(__name__)
    logger.info("Rule created", order=0, n_c=1)
"""

import datetime
import logging
import sys
from typing import Any, Dict, Optional, TextIO

import structlog
from structlog.types import Processor

from app.core.config import settings


def add_timestamp(logger: Any, method_name: str, event_dict: Dict[str, Any]) -> Dict[str, Any]:
    """
    Add an ISO-8601 UTC timestamp to the event dictionary

    Args:
        logger: The logger instance (unused)
        method_name: The logging method name (unused)
        event_dict: The event dictionary to modify

    Returns:
        Modified event dictionary with timestamp
    """
    now = datetime.datetime.now(datetime.timezone.utc).replace(tzinfo=None)
    event_dict["timestamp"] = now.isoformat() + "Z"
    return event_dict


def configure_logging(level: Optional[str] = None, stream: Optional[TextIO] = None) -> None:
    """
    Configure structured logging

    Args:
        level: Level name overriding settings.LOG_LEVEL (e.g. from CLI verbosity)
        stream: Output stream, standard output when omitted
    """
    is_dev = settings.ENVIRONMENT == "development"
    level_name = (level or settings.LOG_LEVEL).upper()
    log_level = getattr(logging, level_name, logging.INFO)
    out = stream if stream is not None else sys.stdout

    shared_processors: list[Processor] = [
        structlog.contextvars.merge_contextvars,
        structlog.processors.add_log_level,
        structlog.processors.StackInfoRenderer(),
        structlog.dev.set_exc_info,
        add_timestamp,
    ]

    if is_dev:
        processors = shared_processors + [
            structlog.dev.ConsoleRenderer(colors=out.isatty())
        ]
    else:
        processors = shared_processors + [
            structlog.processors.JSONRenderer()
        ]

    structlog.configure(
        processors=processors,
        wrapper_class=structlog.make_filtering_bound_logger(log_level),
        logger_factory=structlog.WriteLoggerFactory(file=out),
        cache_logger_on_first_use=False,
    )

    logging.basicConfig(
        format="%(message)s",
        stream=out,
        level=log_level,
    )

    logging.getLogger("uvicorn.access").setLevel(logging.WARNING)


def get_logger(name: str) -> structlog.BoundLogger:
    """
    Get a structured logger instance

    Args:
        name: Logger name, typically __name__ of the calling module

    Returns:
        Configured structlog BoundLogger instance
    """
    return structlog.get_logger(name)


def bind_experiment_context(dataset: str, algorithm: str) -> None:
    """
    Bind the (dataset, algorithm) cell of the current run to every log line

    Args:
        dataset: Dataset source as given in the experiment config
        algorithm: "rules" or "rrules"
    """
    structlog.contextvars.bind_contextvars(dataset=dataset, algorithm=algorithm)


def clear_experiment_context() -> None:
    """Remove the experiment cell bound by bind_experiment_context."""
    structlog.contextvars.unbind_contextvars("dataset", "algorithm")


def bind_request_context(request_id: str, method: str, path: str) -> None:
    """
    Bind HTTP request context for the API middleware

    Args:
        request_id: Unique identifier for the request
        method: HTTP method (GET, POST, etc.)
        path: Request path
    """
    structlog.contextvars.clear_contextvars()
    structlog.contextvars.bind_contextvars(
        request_id=request_id,
        method=method,
        path=path,
    )


def clear_request_context() -> None:
    """Clear all bound context at the end of a request."""
    structlog.contextvars.clear_contextvars()
