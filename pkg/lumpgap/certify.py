# lumpgap/certify.py
"""
Exhaustive certificate over all 90 three-cell partitions of the six-state model,
and an exploratory grid scan around a base model.
"""
import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from .closedform import closed_form_value
from .compression import det_compression
from .config import CERTIFIED_TOL, DISCREPANCY_LIMIT, MAXIMIZER_TIE_TOL, PSD_TOL, RANK_DECIMALS
from .errors import ConfigError, InternalConsistencyError
from .linalg import SymMatrix
from .model import (BlockModelParams, RegimeReport, SpectralSummary, build_T, check_regime,
                    derive_spectral, quotient_L, validate)
from .observability import TraceContext, structured_logger, tracer
from .partitions import (FamilyTag, SetPartition, block_partition, classify, enumerate_partitions,
                         family_counts, size_type_counts)


@dataclass(frozen=True)
class CertificateEntry:
    partition: SetPartition
    tag: FamilyTag
    determinant: float


@dataclass(frozen=True)
class CertificateReport:
    """Everything a certificate run establishes; contains no timing data."""
    params: Dict[str, str]
    source: Optional[str]
    digest: Optional[str]
    summary: SpectralSummary
    regime: RegimeReport
    relaxed_benchmark: float
    entries: Tuple[CertificateEntry, ...]
    maximizer: CertificateEntry
    tied_maximizers: Tuple[CertificateEntry, ...]
    block_partition_value: float
    gap: float
    tol: float
    strict_gap: bool
    max_discrepancy: float
    families: Dict[str, int]
    size_types: Dict[Tuple[int, ...], int]

    @property
    def margin(self) -> float:
        return self.gap


def _evaluate(T: SymMatrix, partitions: Sequence[SetPartition], workers: int) -> List[float]:
    if workers <= 1:
        return [det_compression(T, p) for p in partitions]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        # map keeps input order, so output does not depend on scheduling
        return list(pool.map(lambda p: det_compression(T, p), partitions))


def run_certificate(params: BlockModelParams, *, tol: float = CERTIFIED_TOL, workers: int = 1,
                    source: Optional[str] = None, digest: Optional[str] = None,
                    trace: Optional[TraceContext] = None) -> CertificateReport:
    validate(params)
    T = build_T(params)
    L = quotient_L(params)
    summary = derive_spectral(params)
    regime = check_regime(summary, L)
    partitions = enumerate_partitions(6, 3)

    with tracer.start_span("certify.run", trace) as span:
        structured_logger.log_certificate_start(span.trace_id, len(partitions), workers)
        with tracer.start_span("certify.partitions", span.context().create_child()) as sweep:
            sweep.add_tag("partitions", len(partitions))
            sweep.add_tag("workers", workers)
            values = _evaluate(T, partitions, workers)

        entries = []
        max_discrepancy = 0.0
        for part, value in zip(partitions, values):
            tag = classify(part)
            if tag.structured:
                discrepancy = abs(closed_form_value(tag, L, summary.t) - value)
                max_discrepancy = max(max_discrepancy, discrepancy)
                if discrepancy >= DISCREPANCY_LIMIT:
                    structured_logger.log_consistency_failure(span.trace_id, str(part), discrepancy)
                    raise InternalConsistencyError(
                        f"closed form for {tag.label} at {part} differs from the compression "
                        f"by {discrepancy:.3e}", discrepancy,
                    )
            entries.append(CertificateEntry(part, tag, value))

        entries.sort(key=lambda e: (-round(e.determinant, RANK_DECIMALS), e.partition.labels))
        best = max(e.determinant for e in entries)
        tied = tuple(sorted((e for e in entries if best - e.determinant <= MAXIMIZER_TIE_TOL),
                            key=lambda e: e.partition.labels))
        maximizer = tied[0]

        relaxed = summary.relaxed_benchmark
        if best > relaxed + PSD_TOL:
            raise InternalConsistencyError(
                f"partition determinant {best!r} exceeds the relaxed benchmark {relaxed!r}",
                best - relaxed,
            )
        block = block_partition()
        block_value = next(e.determinant for e in entries if e.partition == block)
        gap = relaxed - maximizer.determinant
        strict = gap > tol
        span.add_tag("strict_gap", strict)

    structured_logger.log_certificate_completion(
        span.trace_id, span.duration_ms or 0.0, strict, gap, str(maximizer.partition),
    )
    if trace is None:
        structured_logger.log_trace(tracer.export_trace(span.trace_id))
    return CertificateReport(
        params=params.as_strings(),
        source=source,
        digest=digest,
        summary=summary,
        regime=regime,
        relaxed_benchmark=relaxed,
        entries=tuple(entries),
        maximizer=maximizer,
        tied_maximizers=tied,
        block_partition_value=block_value,
        gap=gap,
        tol=tol,
        strict_gap=strict,
        max_discrepancy=max_discrepancy,
        families=family_counts(partitions),
        size_types=size_type_counts(partitions),
    )


def grid_offsets(radius: float, steps: int) -> np.ndarray:
    if radius < 0 or steps < 1:
        raise ConfigError(f"scan needs radius >= 0 and steps >= 1, got radius={radius}, steps={steps}")
    if radius == 0 or steps == 1:
        return np.array([0.0])
    return np.linspace(-radius, radius, steps)


def perturb(base: BlockModelParams, d12: float, d13: float, d23: float) -> BlockModelParams:
    """Shift the couplings and restore the row sums by adjusting a_i."""
    c12, c13, c23 = base.c12 + d12, base.c13 + d13, base.c23 + d23
    b = base.b
    a = (
        1.0 - b[0] - 2.0 * c12 - 2.0 * c13,
        1.0 - b[1] - 2.0 * c12 - 2.0 * c23,
        1.0 - b[2] - 2.0 * c13 - 2.0 * c23,
    )
    return BlockModelParams(a=a, b=b, c12=c12, c13=c13, c23=c23)


@dataclass(frozen=True, eq=False)
class ScanSummary:
    """Exploratory only: counts over a finite grid, no claims about regions."""
    radius: float
    steps: int
    points: pd.DataFrame
    counts: Dict[str, int]
    label: str = "exploratory"

    def params_at(self, index: int) -> BlockModelParams:
        row = self.points.loc[index]
        return BlockModelParams(
            a=(row["a1"], row["a2"], row["a3"]),
            b=(row["b1"], row["b2"], row["b3"]),
            c12=row["c12"], c13=row["c13"], c23=row["c23"],
        )


def scan_grid(base: BlockModelParams, radius: float, steps: int, *,
              tol: float = CERTIFIED_TOL, workers: int = 1) -> ScanSummary:
    validate(base)
    offsets = grid_offsets(radius, steps)
    rows = []

    with tracer.start_span("certify.scan") as span:
        for d12, d13, d23 in itertools.product(offsets, repeat=3):
            params = perturb(base, d12, d13, d23)
            row = dict(params.as_dict(), status="skipped", A1=None, A2=None, gap=None, gap_positive=None)
            in_bounds = all(0.0 <= v <= 1.0 for v in params.as_dict().values())
            if in_bounds:
                report = run_certificate(params, tol=tol, workers=workers,
                                         trace=span.context().create_child())
                row.update(status="evaluated", A1=report.regime.a1, A2=report.regime.a2,
                           gap=report.gap, gap_positive=report.strict_gap)
            structured_logger.log_scan_point(span.trace_id, row)
            rows.append(row)

        points = pd.DataFrame(rows)
        evaluated = points[points["status"] == "evaluated"]
        counts = {
            "total": int(len(points)),
            "evaluated": int(len(evaluated)),
            "skipped": int((points["status"] == "skipped").sum()),
            "A1": int(evaluated["A1"].astype(bool).sum()),
            "A2": int(evaluated["A2"].astype(bool).sum()),
            "gap_positive": int(evaluated["gap_positive"].astype(bool).sum()),
        }

    structured_logger.log_scan_summary(span.trace_id, counts, span.duration_ms or 0.0)
    structured_logger.log_trace(tracer.export_trace(span.trace_id))
    return ScanSummary(radius=radius, steps=steps, points=points, counts=counts)
