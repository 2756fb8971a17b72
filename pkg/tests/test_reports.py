import io
import json

import pytest

from lumpgap import reports
from lumpgap.certify import run_certificate, scan_grid
from lumpgap.errors import DomainError
from lumpgap.utils import calculate_file_hash, fmt, rounded


def test_fmt_fixed_decimals():
    assert fmt(0.0702908835) == "0.0702908835"
    assert fmt(1.0) == "1.0000000000"
    assert fmt(-1e-16) == "0.0000000000"
    assert fmt(-0.0) == "0.0000000000"
    assert fmt(-0.25) == "-0.2500000000"
    assert rounded(0.07029088351234) == 0.0702908835


def test_fmt_rounds_the_exact_binary_value():
    assert fmt(0.125) == "0.1250000000"
    assert fmt(2 ** -34) == "0.0000000001"


def test_fmt_never_switches_to_exponent_notation():
    for value in (0.0, 1e-12, 2 ** -34, 4e-11, 1e-300, 123.5):
        text = fmt(value)
        assert "E" not in text and "e" not in text
        assert len(text.split(".")[1]) == 10
    assert fmt(0.0) == "0.0000000000"
    assert fmt(4e-11) == "0.0000000000"
    assert fmt(123.5) == "123.5000000000"
    assert rounded(0.0) == 0.0


def test_fmt_rejects_non_finite_values():
    for value in (float("inf"), float("-inf"), float("nan")):
        with pytest.raises(DomainError):
            fmt(value)


def test_file_hash_is_sha256(tmp_path):
    path = tmp_path / "m"
    path.write_bytes(b"abc")
    assert calculate_file_hash(path) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"


def test_certificate_document_is_json_ready(example_params):
    doc = reports.certificate_document(run_certificate(example_params, source="m", digest="d"))
    text = reports.to_json(doc)
    assert json.loads(text) == doc
    assert doc["entries"][0]["rank"] == 1
    assert doc["model"] == {"params": example_params.as_strings(), "source": "m", "sha256": "d"}


def test_plain_console_has_no_escape_codes(example_params):
    buffer = io.StringIO()
    reports.render_certificate(reports.plain_console(buffer), run_certificate(example_params))
    text = buffer.getvalue()
    assert "\x1b[" not in text
    assert "[[0,1,4,5],[2],[3]]" in text
    assert max(len(line) for line in text.splitlines()) <= reports.REPORT_WIDTH


def test_scan_document_has_no_nan(identity_params):
    doc = reports.scan_document(scan_grid(identity_params, 0.01, 3))
    json.dumps(doc, allow_nan=False)
    skipped = [p for p in doc["points"] if p["status"] == "skipped"]
    assert skipped and all(p["gap"] is None for p in skipped)
