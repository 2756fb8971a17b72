# lumpgap/reports.py
"""
Report rendering for every subcommand.

Each report comes in two shapes: a rich rendering written to a Console and a
JSON document. Both print numbers through `fmt`/`rounded`, so the text and the
machine-readable output of one run carry the same 10-decimal values.
"""
import json
import math
from typing import IO, Any, Dict, List, Optional, Sequence

from rich import box
from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from .certify import CertificateReport, ScanSummary
from .closedform import DiagBoundRow, FamilyDeterminants, GapTheoremReport
from .model import ConstraintCheck, RegimeReport, SpectralSummary
from .partitions import FamilyTag, SetPartition, family_counts
from .utils import fmt, rounded

REPORT_WIDTH = 100


def plain_console(file: IO[str]) -> Console:
    """Fixed-width console without colour or highlighting, for files that must be byte-stable."""
    return Console(
        file=file,
        width=REPORT_WIDTH,
        color_system=None,
        force_terminal=False,
        highlight=False,
        emoji=False,
        soft_wrap=False,
    )


def to_json(document: Dict[str, Any]) -> str:
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def _yes_no(flag: bool) -> str:
    return "holds" if flag else "fails"


def _size_key(size_type: Sequence[int]) -> str:
    return ",".join(str(s) for s in size_type)


# validate

def validation_document(source: str, checks: List[ConstraintCheck]) -> Dict[str, Any]:
    return {
        "model": source,
        "passed": all(c.passed for c in checks),
        "constraints": [
            {"name": c.name, "residual": rounded(c.residual), "passed": c.passed} for c in checks
        ],
    }


def render_validation(console: Console, source: str, checks: List[ConstraintCheck]) -> None:
    table = Table(title=f"Constraints: {source}", box=box.SIMPLE_HEAD)
    table.add_column("Constraint")
    table.add_column("Residual", justify="right")
    table.add_column("Status")
    for c in checks:
        table.add_row(Text(c.name), fmt(c.residual), "pass" if c.passed else "FAIL")
    console.print(table)
    passed = all(c.passed for c in checks)
    console.print("valid model" if passed else "INVALID model", style=None if passed else "bold red")


# spectrum

def _regime_document(regime: RegimeReport) -> Dict[str, Any]:
    return {
        "A1": regime.a1,
        "A1_upper_margin": rounded(regime.a1_upper_margin),
        "A1_lower_margin": rounded(regime.a1_lower_margin),
        "A2": regime.a2,
        "A2_margins": {str(r): rounded(m) for r, m in regime.a2_margins},
    }


def _summary_document(summary: SpectralSummary) -> Dict[str, Any]:
    return {
        "kappa2": rounded(summary.kappa2),
        "kappa3": rounded(summary.kappa3),
        "beta": [rounded(b) for b in summary.beta],
        "abs_beta": [rounded(abs(b)) for b in summary.beta],
        "t": [rounded(x) for x in summary.t],
        "t_star": rounded(summary.t_star),
        "argmax": list(summary.argmax),
    }


def spectrum_document(summary: SpectralSummary, regime: RegimeReport,
                      diag_rows: List[DiagBoundRow]) -> Dict[str, Any]:
    doc = _summary_document(summary)
    doc.update(
        relaxed_benchmark=rounded(summary.relaxed_benchmark),
        spectrum_T=[rounded(x) for x in summary.spectrum_T],
        regime=_regime_document(regime),
        diag_bound=[
            {
                "index": row.index,
                "value": rounded(row.value),
                "weight": None if row.weight is None else rounded(row.weight),
                "passed": row.passed,
            }
            for row in diag_rows
        ],
    )
    return doc


def _regime_lines(regime: RegimeReport) -> List[str]:
    margins = ", ".join(f"r={r}: {fmt(m)}" for r, m in regime.a2_margins)
    return [
        f"A1 (kappa2^2 > t_* > kappa3^2): {_yes_no(regime.a1)} "
        f"(upper margin {fmt(regime.a1_upper_margin)}, lower margin {fmt(regime.a1_lower_margin)})",
        f"A2 (kappa2^2 > (3 l_rr - 1)/2 at argmax r): {_yes_no(regime.a2)} ({margins})",
    ]


def render_spectrum(console: Console, summary: SpectralSummary, regime: RegimeReport,
                    diag_rows: List[DiagBoundRow]) -> None:
    lines = [
        f"kappa2 = {fmt(summary.kappa2)}",
        f"kappa3 = {fmt(summary.kappa3)}",
        f"beta   = ({', '.join(fmt(b) for b in summary.beta)})",
        f"t      = ({', '.join(fmt(x) for x in summary.t)})",
        f"t_*    = {fmt(summary.t_star)} at r = {', '.join(str(r) for r in summary.argmax)}",
        f"relaxed benchmark = {fmt(summary.relaxed_benchmark)}",
        f"spec(T) = ({', '.join(fmt(x) for x in summary.spectrum_T)})",
    ]
    lines.extend(_regime_lines(regime))
    console.print(Panel(Text("\n".join(lines)), title="Spectrum", box=box.SQUARE))

    table = Table(title="Diagonal bound: (3 l_ii - 1)/2 between kappa3^2 and kappa2^2",
                  box=box.SIMPLE_HEAD)
    table.add_column("i", justify="right")
    table.add_column("(3 l_ii - 1)/2", justify="right")
    table.add_column("weight on kappa2^2", justify="right")
    table.add_column("Status")
    for row in diag_rows:
        weight = "n/a" if row.weight is None else fmt(row.weight)
        table.add_row(str(row.index), fmt(row.value), weight, "pass" if row.passed else "FAIL")
    console.print(table)


# enumerate

def enumeration_document(n: int, k: int, partitions: List[SetPartition],
                         tags: Optional[List[FamilyTag]] = None) -> Dict[str, Any]:
    items = []
    for i, part in enumerate(partitions):
        item: Dict[str, Any] = {"partition": part.to_list()}
        if tags is not None:
            item["family"] = tags[i].label
        items.append(item)
    doc: Dict[str, Any] = {"n": n, "k": k, "count": len(partitions), "partitions": items}
    if tags is not None:
        doc["families"] = family_counts(partitions)
    return doc


def render_enumeration(console: Console, n: int, k: int, partitions: List[SetPartition],
                       tags: Optional[List[FamilyTag]] = None) -> None:
    for i, part in enumerate(partitions):
        line = str(part) if tags is None else f"{part}  {tags[i].label}"
        console.print(line, markup=False, highlight=False)
    console.print(f"count: {len(partitions)}", markup=False, highlight=False)
    if tags is not None:
        totals = family_counts(partitions)
        console.print("families: " + " ".join(f"{name}={count}" for name, count in totals.items()),
                      markup=False, highlight=False)


# certify

def certificate_document(report: CertificateReport) -> Dict[str, Any]:
    def entry(e):
        return {"partition": e.partition.to_list(), "family": e.tag.label,
                "determinant": rounded(e.determinant)}

    ranked = []
    for rank, e in enumerate(report.entries, start=1):
        ranked.append(dict(entry(e), rank=rank))
    return {
        "model": {"params": report.params, "source": report.source, "sha256": report.digest},
        "spectral": _summary_document(report.summary),
        "regime": _regime_document(report.regime),
        "relaxed_benchmark": rounded(report.relaxed_benchmark),
        "entries": ranked,
        "maximizer": entry(report.maximizer),
        "tied_maximizers": [entry(e) for e in report.tied_maximizers],
        "block_partition_value": rounded(report.block_partition_value),
        "gap": rounded(report.gap),
        "tol": report.tol,
        "strict_gap": report.strict_gap,
        "verdict": "strict gap" if report.strict_gap else "no strict gap",
        "max_closed_form_discrepancy": rounded(report.max_discrepancy),
        "families": report.families,
        "size_types": {_size_key(s): c for s, c in report.size_types.items()},
    }


def render_certificate(console: Console, report: CertificateReport) -> None:
    best = report.maximizer
    source = report.source or "<in-memory model>"
    lines = [f"model: {source}"]
    if report.digest:
        lines.append(f"sha256: {report.digest}")
    lines += [
        f"kappa2 = {fmt(report.summary.kappa2)}, kappa3 = {fmt(report.summary.kappa3)}, "
        f"t_* = {fmt(report.summary.t_star)}",
        *_regime_lines(report.regime),
        f"relaxed benchmark:          {fmt(report.relaxed_benchmark)}",
        f"best partition determinant: {fmt(best.determinant)} at {best.partition} ({best.tag.label})",
        f"tied maximizers:            {len(report.tied_maximizers)}",
        f"block partition value:      {fmt(report.block_partition_value)}",
        f"gap:                        {fmt(report.gap)}",
        f"tolerance:                  {report.tol:g}",
        f"closed forms agree with the compression on all structured partitions "
        f"(max discrepancy {fmt(report.max_discrepancy)})",
        "families: " + " ".join(f"{k}={v}" for k, v in report.families.items()),
        "size types: " + " ".join(f"({_size_key(s)})={c}" for s, c in report.size_types.items()),
        "verdict: " + ("STRICT GAP" if report.strict_gap else "NO STRICT GAP"),
    ]
    console.print(Panel(Text("\n".join(lines)), title="Gap certificate over 90 partitions",
                        box=box.SQUARE))

    table = Table(box=box.SIMPLE_HEAD)
    table.add_column("Rank", justify="right")
    table.add_column("Partition", no_wrap=True)
    table.add_column("Family", no_wrap=True)
    table.add_column("det Q_A(T)", justify="right")
    for rank, e in enumerate(report.entries, start=1):
        table.add_row(str(rank), Text(str(e.partition)), e.tag.label, fmt(e.determinant))
    console.print(table)


# closed-forms

def closed_forms_document(families: FamilyDeterminants, diag_rows: List[DiagBoundRow],
                          gap: GapTheoremReport) -> Dict[str, Any]:
    return {
        "det_L": rounded(families.det_L),
        "ell": [rounded(x) for x in families.ell],
        "t": [rounded(x) for x in families.t],
        "max_discrepancy": rounded(families.max_discrepancy),
        "families": [
            {
                "partition": row.partition.to_list(),
                "family": row.tag.label,
                "closed_form": rounded(row.closed_form),
                "explicit": rounded(row.explicit),
                "generic": rounded(row.generic),
            }
            for row in families.rows
        ],
        "diag_bound": [
            {"index": row.index, "value": rounded(row.value), "passed": row.passed}
            for row in diag_rows
        ],
        "family_gap": {
            "regime": _regime_document(gap.regime),
            "bound": rounded(gap.bound),
            "relaxed_benchmark": rounded(gap.relaxed_benchmark),
            "applicable": gap.applicable,
            "all_strict": gap.all_strict,
            "verdict": gap.verdict,
            "rows": [
                {
                    "partition": row.partition.to_list(),
                    "family": row.tag.label,
                    "value": rounded(row.value),
                    "margin": rounded(row.margin),
                    "chain_bound": rounded(row.chain_bound),
                    "chain_ok": row.chain_ok,
                }
                for row in gap.rows
            ],
        },
    }


def render_closed_forms(console: Console, families: FamilyDeterminants,
                        diag_rows: List[DiagBoundRow], gap: GapTheoremReport) -> None:
    console.print(Text(
        f"det L = {fmt(families.det_L)}    "
        f"l_rr = ({', '.join(fmt(x) for x in families.ell)})    "
        f"t = ({', '.join(fmt(x) for x in families.t)})"
    ))

    table = Table(title="Structured families: closed form vs explicit matrix vs compression",
                  box=box.SIMPLE_HEAD)
    table.add_column("Partition", no_wrap=True)
    table.add_column("Family", no_wrap=True)
    table.add_column("Closed form", justify="right")
    table.add_column("Explicit", justify="right")
    table.add_column("Compression", justify="right")
    for row in families.rows:
        table.add_row(Text(str(row.partition)), row.tag.label, fmt(row.closed_form),
                      fmt(row.explicit), fmt(row.generic))
    console.print(table)
    console.print(f"max discrepancy: {fmt(families.max_discrepancy)}")

    bound_table = Table(title="Diagonal bound", box=box.SIMPLE_HEAD)
    bound_table.add_column("i", justify="right")
    bound_table.add_column("(3 l_ii - 1)/2", justify="right")
    bound_table.add_column("Status")
    for row in diag_rows:
        bound_table.add_row(str(row.index), fmt(row.value), "pass" if row.passed else "FAIL")
    console.print(bound_table)

    gap_table = Table(title=f"Family gap against kappa2^2 t_* = {fmt(gap.bound)}",
                      box=box.SIMPLE_HEAD)
    gap_table.add_column("Partition", no_wrap=True)
    gap_table.add_column("Family", no_wrap=True)
    gap_table.add_column("Value", justify="right")
    gap_table.add_column("Margin", justify="right")
    gap_table.add_column("Chain bound", justify="right")
    gap_table.add_column("Chain")
    for row in gap.rows:
        gap_table.add_row(Text(str(row.partition)), row.tag.label, fmt(row.value), fmt(row.margin),
                          fmt(row.chain_bound), "ok" if row.chain_ok else "--")
    console.print(gap_table)
    console.print(Text("\n".join(_regime_lines(gap.regime) + [f"verdict: {gap.verdict}"])))


# scan

def _native(value: Any) -> Any:
    if value is None:
        return None
    if isinstance(value, (bool, str)):
        return value
    if hasattr(value, "item"):
        value = value.item()
    if isinstance(value, bool):
        return value
    if isinstance(value, float):
        return None if math.isnan(value) else rounded(value)
    return value


def scan_document(summary: ScanSummary) -> Dict[str, Any]:
    points = [
        {key: _native(value) for key, value in record.items()}
        for record in summary.points.to_dict(orient="records")
    ]
    return {
        "label": summary.label,
        "radius": summary.radius,
        "steps": summary.steps,
        "counts": summary.counts,
        "points": points,
    }


def render_scan(console: Console, summary: ScanSummary) -> None:
    counts = summary.counts
    console.print(Panel(
        Text(
            f"radius {summary.radius:g}, {summary.steps} steps per coupling\n"
            + "  ".join(f"{k}: {v}" for k, v in counts.items())
        ),
        title=f"Grid scan ({summary.label}, not a certificate)",
        box=box.SQUARE,
    ))

    def flag(value: Any) -> str:
        value = _native(value)
        if value is None:
            return "-"
        return "yes" if value else "no"

    table = Table(box=box.SIMPLE_HEAD)
    for name in ("#", "c12", "c13", "c23", "status", "A1", "A2", "gap"):
        table.add_column(name, justify="right" if name in ("#", "gap") else "left")
    for index, row in summary.points.iterrows():
        gap = _native(row["gap"])
        table.add_row(
            str(index), fmt(row["c12"]), fmt(row["c13"]), fmt(row["c23"]), row["status"],
            flag(row["A1"]), flag(row["A2"]), "-" if gap is None else fmt(gap),
        )
    console.print(table)
