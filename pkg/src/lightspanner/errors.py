"""Exception types shared across the package.

Plain parameter mistakes (bad eps, bad vertex id, malformed argument
combinations) raise ValueError directly; the classes here mark failures
with domain meaning that callers may want to catch separately.
"""
from __future__ import annotations


class SpannerError(Exception):
    """Base class for domain errors raised by this package."""


class DisconnectedGraphError(SpannerError):
    """A graph (or subgraph that must span) is not connected."""


class GraphFormatError(SpannerError):
    """A graph file could not be parsed. Carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class GenerationError(SpannerError):
    """Random graph generation exhausted its connectivity retries."""


class SamplingError(SpannerError):
    """Level sampling could not produce nonempty levels within its retry budget."""
