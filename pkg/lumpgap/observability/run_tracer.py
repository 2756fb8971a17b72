# lumpgap/observability/run_tracer.py
"""
Timed spans around certificate runs, partition sweeps and scans.

Durations feed the structured log; they never reach a report.
"""
import threading
import time
import uuid
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Dict, Iterator, List, Optional


class SpanStatus(Enum):
    UNSET = "unset"
    OK = "ok"
    ERROR = "error"


@dataclass
class TraceContext:
    """Trace context passed from a run to its child spans"""
    trace_id: str
    span_id: str
    parent_span_id: Optional[str] = None

    @classmethod
    def create_root(cls) -> "TraceContext":
        return cls(trace_id=str(uuid.uuid4()), span_id=str(uuid.uuid4()))

    def create_child(self) -> "TraceContext":
        return TraceContext(
            trace_id=self.trace_id,
            span_id=str(uuid.uuid4()),
            parent_span_id=self.span_id,
        )


@dataclass
class RunSpan:
    span_id: str
    trace_id: str
    parent_span_id: Optional[str]
    operation_name: str
    start_time: float
    end_time: Optional[float] = None
    duration_ms: Optional[float] = None
    status: SpanStatus = SpanStatus.UNSET
    error_message: Optional[str] = None
    tags: Dict[str, Any] = field(default_factory=dict)

    def finish(self, status: SpanStatus = SpanStatus.OK, error: Optional[str] = None):
        self.end_time = time.perf_counter()
        self.duration_ms = (self.end_time - self.start_time) * 1000
        self.status = status
        if error:
            self.error_message = error
            self.status = SpanStatus.ERROR

    def add_tag(self, key: str, value: Any):
        self.tags[key] = value

    def context(self) -> TraceContext:
        return TraceContext(self.trace_id, self.span_id, self.parent_span_id)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["status"] = self.status.value
        return data


class RunTracer:
    """In-memory span store, safe to use from worker threads."""

    def __init__(self):
        self._traces: Dict[str, List[RunSpan]] = {}
        self._lock = threading.Lock()

    @contextmanager
    def start_span(self, operation: str, context: Optional[TraceContext] = None) -> Iterator[RunSpan]:
        """
        Usage:
        with tracer.start_span("certify.run") as span:
            span.add_tag("partitions", 90)
        """
        if context is None:
            context = TraceContext.create_root()
        span = RunSpan(
            span_id=context.span_id,
            trace_id=context.trace_id,
            parent_span_id=context.parent_span_id,
            operation_name=operation,
            start_time=time.perf_counter(),
        )
        with self._lock:
            self._traces.setdefault(span.trace_id, []).append(span)
        try:
            yield span
        except Exception as e:
            span.finish(SpanStatus.ERROR, str(e))
            raise
        else:
            span.finish(SpanStatus.OK)

    def get_trace(self, trace_id: str) -> List[RunSpan]:
        with self._lock:
            return list(self._traces.get(trace_id, []))

    def export_trace(self, trace_id: str) -> Dict[str, Any]:
        spans = self.get_trace(trace_id)
        if not spans:
            return {}
        return {
            "trace_id": trace_id,
            "total_duration_ms": max(s.duration_ms or 0 for s in spans),
            "error_count": len([s for s in spans if s.status == SpanStatus.ERROR]),
            "spans": [s.to_dict() for s in spans],
        }

    def clear(self):
        with self._lock:
            self._traces.clear()


# Global tracer instance
tracer = RunTracer()
