"""
Run observability: structured JSON logging and timed spans.
"""

from .run_tracer import RunTracer, RunSpan, SpanStatus, TraceContext, tracer
from .structured_logger import StructuredLogger, structured_logger

__all__ = [
    'RunTracer', 'RunSpan', 'SpanStatus', 'TraceContext', 'tracer',
    'StructuredLogger', 'structured_logger',
]
