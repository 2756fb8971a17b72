# lumpgap/observability/structured_logger.py
"""
Structured logging for certificate runs.

JSON-lines for machine processing plus a human-readable log, both written
under a log directory chosen at configure() time. Until configured the logger
only carries a NullHandler, so library use stays silent.
"""
import json
import logging
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Optional

LOGGER_NAME = "lumpgap"


class StructuredLogger:
    """JSON event logger shared by the library and the CLI."""

    def __init__(self, name: str = LOGGER_NAME):
        self.logger = logging.getLogger(name)
        self.logger.addHandler(logging.NullHandler())
        self.log_dir: Optional[Path] = None
        self._handlers = []

    class JsonFormatter(logging.Formatter):
        """One JSON object per record, with event fields merged in."""

        def format(self, record):
            log_entry = {
                "timestamp": datetime.now(timezone.utc).isoformat(),
                "level": record.levelname,
                "logger": record.name,
                "message": record.getMessage(),
            }
            if hasattr(record, "extra_fields"):
                log_entry.update(record.extra_fields)
            return json.dumps(log_entry, default=str)

    def configure(self, log_dir: Optional[Path] = None, log_level: str = "WARNING") -> None:
        """(Re)attach file handlers; with no log_dir only the level changes."""
        for handler in self._handlers:
            self.logger.removeHandler(handler)
            handler.close()
        self._handlers = []
        self.logger.setLevel(getattr(logging, log_level.upper()))

        if log_dir is None:
            return
        self.log_dir = Path(log_dir)
        self.log_dir.mkdir(parents=True, exist_ok=True)

        json_handler = logging.FileHandler(self.log_dir / "lumpgap.jsonl")
        json_handler.setFormatter(self.JsonFormatter())
        human_handler = logging.FileHandler(self.log_dir / "lumpgap.log")
        human_handler.setFormatter(logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
        ))
        for handler in (json_handler, human_handler):
            self.logger.addHandler(handler)
            self._handlers.append(handler)

    def _emit(self, level: int, message: str, fields: Dict[str, Any]) -> None:
        self.logger.log(level, message, extra={"extra_fields": fields})

    def log_model_loaded(self, path: str, digest: str):
        self._emit(logging.INFO, f"Model loaded from {path}", {
            "event_type": "model_loaded",
            "path": path,
            "sha256": digest,
        })

    def log_validation(self, path: str, passed: bool, residuals: Dict[str, float]):
        self._emit(logging.INFO if passed else logging.WARNING,
                   f"Validation {'passed' if passed else 'failed'} for {path}", {
                       "event_type": "validation",
                       "path": path,
                       "passed": passed,
                       "residuals": residuals,
                   })

    def log_certificate_start(self, trace_id: str, partitions: int, workers: int):
        self._emit(logging.INFO, f"Certificate started over {partitions} partitions", {
            "event_type": "certificate_start",
            "trace_id": trace_id,
            "partitions": partitions,
            "workers": workers,
        })

    def log_certificate_completion(self, trace_id: str, duration_ms: float, strict_gap: bool,
                                   gap: float, maximizer: str):
        self._emit(logging.INFO, f"Certificate completed in {duration_ms:.1f}ms", {
            "event_type": "certificate_completion",
            "trace_id": trace_id,
            "duration_ms": duration_ms,
            "strict_gap": strict_gap,
            "gap": gap,
            "maximizer": maximizer,
        })

    def log_consistency_failure(self, trace_id: str, partition: str, discrepancy: float):
        self._emit(logging.ERROR, f"Closed form disagrees with compression at {partition}", {
            "event_type": "consistency_failure",
            "trace_id": trace_id,
            "partition": partition,
            "discrepancy": discrepancy,
        })

    def log_scan_point(self, trace_id: str, point: Dict[str, Any]):
        self._emit(logging.DEBUG, "Scan point evaluated", {
            "event_type": "scan_point",
            "trace_id": trace_id,
            **point,
        })

    def log_scan_summary(self, trace_id: str, counts: Dict[str, int], duration_ms: float):
        self._emit(logging.INFO, f"Scan finished: {counts.get('total', 0)} points", {
            "event_type": "scan_summary",
            "trace_id": trace_id,
            "duration_ms": duration_ms,
            **counts,
        })

    def log_trace(self, exported: Dict[str, Any]):
        self._emit(logging.DEBUG, f"Trace finished with {len(exported.get('spans', []))} spans", {
            "event_type": "trace",
            **exported,
        })

    def log_error(self, command: str, error_type: str, error_message: str):
        self._emit(logging.ERROR, f"Error in {command}: {error_message}", {
            "event_type": "command_error",
            "command": command,
            "error_type": error_type,
            "error_message": error_message,
        })


# Global logger instance
structured_logger = StructuredLogger()
