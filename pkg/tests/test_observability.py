import json
import logging

import pytest
from typer.testing import CliRunner

from conftest import MODELS
from lumpgap.certify import run_certificate, scan_grid
from lumpgap.cli import app
from lumpgap.observability import (RunTracer, SpanStatus, StructuredLogger, TraceContext,
                                   structured_logger)


def test_span_records_duration_and_tags():
    tracer = RunTracer()
    with tracer.start_span("certify.run") as span:
        span.add_tag("partitions", 90)
    spans = tracer.get_trace(span.trace_id)
    assert len(spans) == 1
    assert spans[0].status is SpanStatus.OK
    assert spans[0].duration_ms >= 0.0
    exported = tracer.export_trace(span.trace_id)
    assert exported["error_count"] == 0
    assert exported["spans"][0]["tags"] == {"partitions": 90}


def test_span_marks_errors():
    tracer = RunTracer()
    with pytest.raises(RuntimeError):
        with tracer.start_span("certify.run") as span:
            raise RuntimeError("boom")
    assert tracer.get_trace(span.trace_id)[0].status is SpanStatus.ERROR
    assert tracer.export_trace(span.trace_id)["error_count"] == 1
    tracer.clear()
    assert tracer.export_trace(span.trace_id) == {}


def test_child_context_shares_trace():
    tracer = RunTracer()
    with tracer.start_span("scan") as parent:
        pass
    root = TraceContext(trace_id=parent.trace_id, span_id=parent.span_id)
    with tracer.start_span("scan.point", root.create_child()) as child:
        pass
    assert child.parent_span_id == parent.span_id
    assert len(tracer.get_trace(parent.trace_id)) == 2


def test_certificate_events_reach_standard_logging(caplog, example_params):
    with caplog.at_level(logging.INFO, logger="lumpgap"):
        run_certificate(example_params)
    events = [getattr(r, "extra_fields", {}).get("event_type") for r in caplog.records]
    assert "certificate_start" in events
    assert "certificate_completion" in events


def test_configure_writes_json_lines(tmp_path):
    logger = StructuredLogger("lumpgap.test")
    logger.configure(tmp_path, "INFO")
    logger.log_model_loaded("models/x", "abc")
    logger.log_error("certify", "ConfigError", "bad tol")
    logger.configure(None, "WARNING")
    lines = (tmp_path / "lumpgap.jsonl").read_text().splitlines()
    records = [json.loads(line) for line in lines]
    assert [r["event_type"] for r in records] == ["model_loaded", "command_error"]
    assert records[0]["sha256"] == "abc"
    assert "bad tol" in (tmp_path / "lumpgap.log").read_text()


def test_cli_log_dir(tmp_path):
    result = CliRunner().invoke(app, ["--log-dir", str(tmp_path), "--log-level", "INFO",
                                      "certify", "--model", str(MODELS / "paper-example"),
                                      "--format", "json"])
    structured_logger.configure(None, "WARNING")
    assert result.exit_code == 0
    events = [json.loads(line)["event_type"]
              for line in (tmp_path / "lumpgap.jsonl").read_text().splitlines()]
    assert events[0] == "model_loaded"
    assert "certificate_completion" in events
    assert "duration_ms" not in json.loads(result.stdout)


def test_cli_rejects_bad_log_level():
    result = CliRunner().invoke(app, ["--log-level", "LOUD", "enumerate"])
    assert result.exit_code == 3


def test_certificate_traces_the_partition_sweep(caplog, example_params):
    with caplog.at_level(logging.DEBUG, logger="lumpgap"):
        run_certificate(example_params, workers=2)
    traces = [r.extra_fields for r in caplog.records
              if getattr(r, "extra_fields", {}).get("event_type") == "trace"]
    assert len(traces) == 1
    spans = {s["operation_name"]: s for s in traces[0]["spans"]}
    assert set(spans) == {"certify.run", "certify.partitions"}
    run, sweep = spans["certify.run"], spans["certify.partitions"]
    assert run["parent_span_id"] is None
    assert sweep["parent_span_id"] == run["span_id"]
    assert sweep["trace_id"] == run["trace_id"] == traces[0]["trace_id"]
    assert sweep["tags"] == {"partitions": 90, "workers": 2}
    assert traces[0]["error_count"] == 0


def test_scan_nests_certificates_under_one_trace(caplog, example_params):
    with caplog.at_level(logging.DEBUG, logger="lumpgap"):
        scan_grid(example_params, 0.001, 2)
    traces = [r.extra_fields for r in caplog.records
              if getattr(r, "extra_fields", {}).get("event_type") == "trace"]
    assert len(traces) == 1
    spans = traces[0]["spans"]
    scan = next(s for s in spans if s["operation_name"] == "certify.scan")
    runs = [s for s in spans if s["operation_name"] == "certify.run"]
    assert len(runs) == 8
    assert all(s["parent_span_id"] == scan["span_id"] for s in runs)
    run_ids = {s["span_id"] for s in runs}
    sweeps = [s for s in spans if s["operation_name"] == "certify.partitions"]
    assert len(sweeps) == 8
    assert all(s["parent_span_id"] in run_ids for s in sweeps)


def test_span_context_continues_the_trace():
    tracer = RunTracer()
    with tracer.start_span("certify.scan") as parent:
        with tracer.start_span("certify.run", parent.context().create_child()) as child:
            pass
    assert parent.context() == TraceContext(parent.trace_id, parent.span_id, None)
    assert child.parent_span_id == parent.span_id
    assert [s.operation_name for s in tracer.get_trace(parent.trace_id)] == ["certify.scan", "certify.run"]
