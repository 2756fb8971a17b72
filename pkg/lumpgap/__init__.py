# lumpgap/__init__.py
"""Spectral compression of the six-state block-structured reversible chain."""
__version__ = "0.1.0"

from .certify import CertificateReport, run_certificate, scan_grid
from .compression import build_frame, compress, det_compression, relaxed_benchmark
from .errors import LumpGapError
from .model import BlockModelParams, derive_spectral, load_model
from .partitions import SetPartition, classify, enumerate_partitions

__all__ = [
    "__version__",
    "BlockModelParams", "load_model", "derive_spectral",
    "SetPartition", "enumerate_partitions", "classify",
    "build_frame", "compress", "det_compression", "relaxed_benchmark",
    "CertificateReport", "run_certificate", "scan_grid",
    "LumpGapError",
]
